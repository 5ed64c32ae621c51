#pragma once

#include <gmpxx.h>

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dioph::qalg {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Canonical string for a rational: "p" or "p/q".
std::string to_string(const BigRat& q);

/// Dense univariate polynomial over Q, coefficients stored by ascending degree.
///
/// The representation is trimmed on construction (no trailing zero
/// coefficients), so two polynomials are equal iff their coefficient vectors
/// are. The zero polynomial has no coefficients and reports kZeroDegree.
class Poly {
 public:
  /// Degree reported by the zero polynomial. Never meant for arithmetic:
  /// callers branch on is_zero() first.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  Poly() = default;
  explicit Poly(std::vector<BigRat> coeffs);
  Poly(std::initializer_list<BigRat> coeffs) : Poly(std::vector<BigRat>(coeffs)) {}

  static Poly constant(const BigRat& c);
  static Poly monomial(const BigRat& c, int k);
  static Poly x() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  int degree() const { return is_zero() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }

  /// Coefficient of x^i; zero outside the stored range.
  const BigRat& coeff(int i) const;
  const BigRat& leading() const;
  std::span<const BigRat> coeffs() const { return coeffs_; }

  Poly monic() const;
  Poly derivative() const;
  BigRat eval(const BigRat& x) const;
  /// this(inner(x)).
  Poly compose(const Poly& inner) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const BigRat& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const BigRat& c) { return a *= c; }
  friend Poly operator*(const BigRat& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  /// Total order used to sort factor lists deterministically: by degree,
  /// then coefficients from the top down.
  friend bool canonical_less(const Poly& a, const Poly& b);

  /// Human-readable form in the CLI grammar, e.g. "3*t^2 - t + 1/2".
  std::string to_string(char var = 't') const;

 private:
  void trim();
  std::vector<BigRat> coeffs_;
};

Poly pow(const Poly& p, unsigned e);

/// Euclidean division; throws DivisionByZero for b == 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact quotient part of divmod
Poly operator%(const Poly& a, const Poly& b);

/// Monic gcd; gcd(a, 0) = monic(a), gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
struct ExtendedGcd {
  Poly g, s, t;
};
ExtendedGcd poly_xgcd(const Poly& a, const Poly& b);

/// Sylvester-matrix resultant. Throws ZeroPolynomial if either argument is 0.
BigRat resultant(const Poly& a, const Poly& b);

/// disc(a) = (-1)^{d(d-1)/2} res(a, a') / lc(a).
BigRat discriminant(const Poly& a);

/// Multiplicity of the irreducible `place` in a (a != 0).
int valuation(const Poly& a, const Poly& place);

}  // namespace dioph::qalg
