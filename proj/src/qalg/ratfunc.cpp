#include "dioph/qalg/ratfunc.hpp"

#include <algorithm>

#include "dioph/qalg/error.hpp"

namespace dioph::qalg {

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  Poly g = poly_gcd(num, den);
  Poly n = num / g;
  Poly d = den / g;
  BigRat lc = d.leading();
  num_ = n * (1 / lc);
  den_ = d * (1 / lc);
}

int RatFunc::degree() const {
  if (num_.is_zero()) return 0;
  return std::max(num_.degree(), den_.degree());
}

BigRat RatFunc::eval(const BigRat& c) const {
  BigRat d = den_.eval(c);
  if (d == 0) throw PoleAt(qalg::to_string(c));
  return num_.eval(c) / d;
}

RatFunc RatFunc::compose(const RatFunc& inner) const { return ratfunc_compose(*this, inner); }

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return RatFunc(den_, num_);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_polynomial() && b.is_polynomial()) {
    RatFunc r;
    r.num_ = (a.num_ * b.num_) * (a.den_.leading() * b.den_.leading());
    return r;
  }
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero();
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::to_string(char var) const {
  if (den_.degree() == 0) return num_.to_string(var);
  std::string n = num_.to_string(var);
  // Only sums need parentheses; products and quotients associate left.
  auto terms = std::count_if(num_.coeffs().begin(), num_.coeffs().end(), [](const BigRat& c) { return c != 0; });
  if (terms > 1) n = "(" + n + ")";
  return n + "/(" + den_.to_string(var) + ")";
}

RatFunc pow(const RatFunc& f, int e) {
  if (e < 0) return pow(f.inverse(), -e);
  return RatFunc(pow(f.numer(), static_cast<unsigned>(e)), pow(f.denom(), static_cast<unsigned>(e)));
}

// Homogenized substitution: for f = P/Q of degree D and g = A/B,
//   f(g) = sum p_i A^i B^{D-i} / sum q_i A^i B^{D-i}.
RatFunc ratfunc_compose(const RatFunc& f, const RatFunc& g) {
  if (g.is_constant()) {
    BigRat c = g.numer().is_zero() ? BigRat(0) : g.numer().coeff(0) / g.denom().coeff(0);
    if (f.denom().eval(c) == 0) throw PoleOfComposition(to_string(c));
    return RatFunc(f.eval(c));
  }
  const Poly& A = g.numer();
  const Poly& B = g.denom();
  const int D = std::max(f.numer().is_zero() ? 0 : f.numer().degree(), f.denom().degree());
  std::vector<Poly> apow{Poly::constant(1)}, bpow{Poly::constant(1)};
  for (int i = 1; i <= D; ++i) {
    apow.push_back(apow.back() * A);
    bpow.push_back(bpow.back() * B);
  }
  auto homog = [&](const Poly& P) {
    Poly acc;
    for (int i = 0; i <= P.degree(); ++i) {
      if (P.coeff(i) == 0) continue;
      acc += apow[static_cast<std::size_t>(i)] * bpow[static_cast<std::size_t>(D - i)] * P.coeff(i);
    }
    return acc;
  };
  return RatFunc(homog(f.numer()), homog(f.denom()));
}

BigRat ratfunc_eval(const RatFunc& f, const BigRat& c) { return f.eval(c); }

}  // namespace dioph::qalg
