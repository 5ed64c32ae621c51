#pragma once

#include <string>

#include "dioph/qalg/poly.hpp"

namespace dioph::qalg {

/// Element of Q(t) in lowest terms with a monic denominator, so equality is
/// structural.
class RatFunc {
 public:
  RatFunc() : den_(Poly::constant(1)) {}
  RatFunc(const Poly& p) : num_(p), den_(Poly::constant(1)) {}  // NOLINT(implicit)
  RatFunc(const BigRat& c) : RatFunc(Poly::constant(c)) {}      // NOLINT(implicit)
  RatFunc(long c) : RatFunc(BigRat(c)) {}                       // NOLINT(implicit)
  /// Throws DivisionByZero if den is zero.
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc t() { return RatFunc(Poly::x()); }

  const Poly& numer() const { return num_; }
  const Poly& denom() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  /// Degree of the induced map P^1 -> P^1: max(deg num, deg den); 0 for constants.
  int degree() const;

  /// Throws PoleAt if the denominator vanishes at c.
  BigRat eval(const BigRat& c) const;
  RatFunc compose(const RatFunc& inner) const;
  RatFunc derivative() const;
  RatFunc inverse() const;

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string(char var = 't') const;

 private:
  Poly num_, den_;
};

/// Integer power; negative exponents invert.
RatFunc pow(const RatFunc& f, int e);

/// f(g) with f = P/Q. Throws PoleOfComposition when g is constant and lands on a pole of f.
RatFunc ratfunc_compose(const RatFunc& f, const RatFunc& g);
BigRat ratfunc_eval(const RatFunc& f, const BigRat& c);

}  // namespace dioph::qalg
