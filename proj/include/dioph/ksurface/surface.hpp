#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dioph/qalg/error.hpp"
#include "dioph/qalg/ratfunc.hpp"

namespace dioph::ksurface {

using qalg::BigRat;
using qalg::Poly;
using qalg::RatFunc;

class SingularGenericFibre : public Error {
 public:
  SingularGenericFibre() : Error("discriminant vanishes identically: generic fibre is not an elliptic curve") {}
};

class NotTwelveDivisible : public Error {
 public:
  explicit NotTwelveDivisible(long e)
      : Error("Euler characteristic " + std::to_string(e) + " is not a positive multiple of 12"), euler_(e) {}
  long euler() const { return euler_; }

 private:
  long euler_;
};

class InternalTableMiss : public Error {
 public:
  using Error::Error;
};

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q(t).
class WeierstrassSurface {
 public:
  /// Throws SingularGenericFibre when the discriminant is identically zero.
  WeierstrassSurface(RatFunc a1, RatFunc a2, RatFunc a3, RatFunc a4, RatFunc a6);

  static WeierstrassSurface short_form(const RatFunc& A, const RatFunc& B) { return {0, 0, 0, A, B}; }

  const RatFunc& a1() const { return a_[0]; }
  const RatFunc& a2() const { return a_[1]; }
  const RatFunc& a3() const { return a_[2]; }
  const RatFunc& a4() const { return a_[3]; }
  const RatFunc& a6() const { return a_[4]; }
  /// a1, a2, a3, a4, a6 in that order.
  const std::array<RatFunc, 5>& coefficients() const { return a_; }

  const RatFunc& b2() const { return b2_; }
  const RatFunc& b4() const { return b4_; }
  const RatFunc& b6() const { return b6_; }
  const RatFunc& b8() const { return b8_; }
  const RatFunc& c4() const { return c4_; }
  const RatFunc& c6() const { return c6_; }
  const RatFunc& discriminant() const { return delta_; }
  RatFunc j_invariant() const;

  /// Isomorphic short model y^2 = x^3 - 27 c4 x - 54 c6.
  WeierstrassSurface to_short_form() const;

  /// (x, y) -> (u^2 x, u^3 y): a_i becomes a_i / u^i.
  WeierstrassSurface rescaled(const RatFunc& u) const;

  std::string to_string() const;

  friend bool operator==(const WeierstrassSurface& a, const WeierstrassSurface& b) { return a.a_ == b.a_; }

 private:
  std::array<RatFunc, 5> a_;
  RatFunc b2_, b4_, b6_, b8_, c4_, c6_, delta_;
};

/// Closed point of P^1 over Q: an irreducible monic polynomial in t, or infinity.
class Place {
 public:
  static Place infinity() { return Place(); }
  /// `irreducible` must be monic irreducible; not re-checked.
  static Place finite(Poly irreducible) { return Place(std::move(irreducible)); }

  bool is_infinity() const { return !poly_.has_value(); }
  const Poly& poly() const { return *poly_; }
  /// Number of geometric points in the Galois orbit.
  int degree() const { return is_infinity() ? 1 : poly_->degree(); }
  /// "t", "t^2 + 1", or "inf".
  std::string name() const;

  friend bool operator==(const Place& a, const Place& b) { return a.poly_ == b.poly_; }
  /// Finite places by (degree, coefficients), infinity last.
  friend bool operator<(const Place& a, const Place& b);

 private:
  Place() = default;
  explicit Place(Poly p) : poly_(std::move(p)) {}
  std::optional<Poly> poly_;
};

/// Valuation of a nonzero rational function at a place; nullopt encodes +inf for zero.
std::optional<int> valuation(const RatFunc& f, const Place& b);

struct KodairaType {
  enum class Symbol { I0, In, II, III, IV, InStar, IVStar, IIIStar, IIStar };
  Symbol symbol = Symbol::I0;
  int n = 0;  // index for I_n and I*_n

  bool is_multiplicative() const { return symbol == Symbol::In; }
  bool is_additive() const { return symbol != Symbol::I0 && symbol != Symbol::In; }
  /// Irreducible components of the fibre.
  int components() const;
  /// "I0", "I_10", "II", "I*_2", "IV*", ...
  std::string to_string() const;

  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

/// Classification from minimal valuations of (c4, c6, Delta) in residue
/// characteristic 0. nullopt valuations stand for +inf. Throws InternalTableMiss.
KodairaType classify_char0(std::optional<int> v_c4, std::optional<int> v_c6, int v_delta);

struct FibreReport {
  Place place;
  KodairaType type;
  int m_b = 1;  // irreducible components
  int e_b = 0;  // local Euler number of one geometric fibre
  int v_delta = 0;
  std::optional<int> v_c4, v_c6;  // nullopt when c4 / c6 vanish identically
};

enum class KodairaDimension { NegInf, Zero, One };
std::string to_string(KodairaDimension k);

struct SurfaceReport {
  std::vector<FibreReport> fibres;  // bad places only
  long euler = 0;
  KodairaDimension kodaira_dim = KodairaDimension::NegInf;
};

struct MinimalizedModel {
  WeierstrassSurface model;
  /// u = uniformizer^exponent was applied; uniformizer is the place polynomial, or 1/t at infinity.
  int exponent;
};

std::vector<Place> bad_places(const WeierstrassSurface& S);
MinimalizedModel minimalize_at(const WeierstrassSurface& S, const Place& b);
FibreReport kodaira_type_at(const WeierstrassSurface& S, const Place& b);
/// Sum of deg(b) * e_b over bad places. Throws NotTwelveDivisible.
long euler_characteristic(const WeierstrassSurface& S);
/// -inf for e/12 <= 1 (e = 0 is a product with P^1), 0 for e/12 = 2, 1 beyond.
KodairaDimension kodaira_dimension(const WeierstrassSurface& S);
KodairaDimension kodaira_dimension_from_euler(long euler);
SurfaceReport surface_report(const WeierstrassSurface& S);
/// Single-line JSON. Each fibre also carries the place degree and the number of
/// geometric points it stands for.
std::string to_json(const SurfaceReport& r);

/// y^2 = x(x+1)(x+t^d).
WeierstrassSurface legendre_power(int d);
/// Pull back along f, then minimalize at every finite bad place.
WeierstrassSurface base_change(const WeierstrassSurface& S, const RatFunc& f);

/// `A = ...; B = ...` or `a1=..; a2=..; a3=..; a4=..; a6=..` (missing entries are 0).
WeierstrassSurface parse_surface(std::string_view text);

}  // namespace dioph::ksurface
