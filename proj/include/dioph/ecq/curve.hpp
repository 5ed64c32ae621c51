#pragma once

#include <array>
#include <optional>
#include <string>

#include "dioph/ksurface/surface.hpp"
#include "dioph/qalg/error.hpp"
#include "dioph/qalg/poly.hpp"

namespace dioph::ecq {

using qalg::BigInt;
using qalg::BigRat;

class SingularFibre : public Error {
 public:
  explicit SingularFibre(const BigRat& c)
      : Error("fibre at t = " + qalg::to_string(c) + " is singular"), c_(c) {}
  const BigRat& where() const { return c_; }

 private:
  BigRat c_;
};

class SingularCurve : public Error {
 public:
  SingularCurve() : Error("discriminant is zero") {}
};

class PointNotOnCurve : public Error {
 public:
  PointNotOnCurve() : Error("point does not satisfy the curve equation") {}
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
class CurveQ {
 public:
  /// Throws SingularCurve.
  CurveQ(BigRat a1, BigRat a2, BigRat a3, BigRat a4, BigRat a6);
  static CurveQ short_form(const BigRat& A, const BigRat& B) { return {0, 0, 0, A, B}; }

  const BigRat& a1() const { return a_[0]; }
  const BigRat& a2() const { return a_[1]; }
  const BigRat& a3() const { return a_[2]; }
  const BigRat& a4() const { return a_[3]; }
  const BigRat& a6() const { return a_[4]; }
  const std::array<BigRat, 5>& coefficients() const { return a_; }

  BigRat b2() const { return a1() * a1() + 4 * a2(); }
  BigRat b4() const { return 2 * a4() + a1() * a3(); }
  BigRat b6() const { return a3() * a3() + 4 * a6(); }
  BigRat b8() const;
  BigRat c4() const;
  BigRat c6() const;
  const BigRat& discriminant() const { return delta_; }
  BigRat j_invariant() const;
  bool is_integral() const;

  /// Isomorphic model y^2 = x^3 - 27 c4 x - 54 c6 (integral whenever this one is).
  CurveQ short_model() const;

  /// "[a1,a2,a3,a4,a6]".
  std::string to_string() const;

  friend bool operator==(const CurveQ& a, const CurveQ& b) { return a.a_ == b.a_; }

 private:
  std::array<BigRat, 5> a_;
  BigRat delta_;
};

/// The identity, or an affine point.
struct PointQ {
  bool infinity = true;
  BigRat x, y;

  static PointQ identity() { return {}; }
  static PointQ affine(BigRat x, BigRat y) { return {false, std::move(x), std::move(y)}; }
  friend bool operator==(const PointQ&, const PointQ&) = default;
};

bool on_curve(const CurveQ& E, const PointQ& P);
PointQ negate(const CurveQ& E, const PointQ& P);
PointQ add(const CurveQ& E, const PointQ& P, const PointQ& Q);
PointQ multiply(const CurveQ& E, const PointQ& P, long k);

/// Coordinate change (x, y) = (u^2 x' + r, u^3 y' + s u^2 x' + t).
struct Isomorphism {
  BigRat u = 1, r = 0, s = 0, t = 0;
};
CurveQ apply(const CurveQ& E, const Isomorphism& w);
/// Maps a point of E to the model apply(E, w).
PointQ apply(const Isomorphism& w, const PointQ& P);
/// First w1 then w2.
Isomorphism compose(const Isomorphism& w1, const Isomorphism& w2);
Isomorphism inverse(const Isomorphism& w);
/// The change taking E to E.short_model().
Isomorphism to_short_model(const CurveQ& E);

/// Fibre of the surface at t = c. Throws SingularFibre or qalg::PoleAt.
CurveQ specialize(const ksurface::WeierstrassSurface& S, const BigRat& c);

}  // namespace dioph::ecq
