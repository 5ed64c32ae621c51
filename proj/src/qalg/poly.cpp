#include "dioph/qalg/poly.hpp"

#include <algorithm>
#include <sstream>

#include "dioph/qalg/error.hpp"

namespace dioph::qalg {

namespace {
const BigRat kZero{0};

// p = zp / den with zp integral; den is the lcm of the coefficient denominators.
std::vector<BigInt> integral_part(std::span<const BigRat> p, BigInt& den) {
  den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> z(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) z[i] = p[i].get_num() * (den / p[i].get_den());
  return z;
}

void make_primitive(std::vector<BigInt>& z) {
  BigInt g = 0;
  for (const auto& c : z) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0) return;
  for (auto& c : z) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

void trim_z(std::vector<BigInt>& z) {
  while (!z.empty() && z.back() == 0) z.pop_back();
}

// Pseudo-remainder of a by b over Z (b nonzero), in place on a.
void pseudo_rem(std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  const std::size_t db = b.size() - 1;
  const BigInt& lb = b.back();
  BigInt c;
  while (a.size() >= b.size()) {
    c = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& x : a) x *= lb;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
    trim_z(a);
  }
}
}  // namespace

std::string to_string(const BigRat& q) { return q.get_str(); }

Poly::Poly(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::constant(const BigRat& c) { return Poly(std::vector<BigRat>{c}); }

Poly Poly::monomial(const BigRat& c, int k) {
  std::vector<BigRat> v(static_cast<std::size_t>(k) + 1, BigRat(0));
  v.back() = c;
  return Poly(std::move(v));
}

const BigRat& Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<std::size_t>(i)];
}

const BigRat& Poly::leading() const {
  if (is_zero()) throw ZeroPolynomial();
  return coeffs_.back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  BigRat inv = 1 / leading();
  for (auto& c : r.coeffs_) c *= inv;
  return r;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigRat> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Poly(std::move(v));
}

BigRat Poly::eval(const BigRat& x) const {
  BigRat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= inner;
    acc += constant(*it);
  }
  return acc;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigRat(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigRat(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // Multiply over Z and divide once: one canonicalization per output coefficient.
  BigInt da, db;
  auto za = integral_part(a.coeffs_, da);
  auto zb = integral_part(b.coeffs_, db);
  std::vector<BigInt> z(za.size() + zb.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < za.size(); ++i) {
    if (za[i] == 0) continue;
    for (std::size_t j = 0; j < zb.size(); ++j) mpz_addmul(z[i + j].get_mpz_t(), za[i].get_mpz_t(), zb[j].get_mpz_t());
  }
  BigInt d = da * db;
  std::vector<BigRat> v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) v[i] = BigRat(z[i], d);
  return Poly(std::move(v));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const BigRat& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

bool canonical_less(const Poly& a, const Poly& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
  for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
    if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
  }
  return false;
}

std::string Poly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const BigRat& c = coeffs_[k];
    if (c == 0) continue;
    BigRat mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << var;
    if (k > 1) out << "^" << k;
  }
  return out.str();
}

Poly pow(const Poly& p, unsigned e) {
  Poly result = Poly::constant(1);
  Poly base = p;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero() || a.degree() < b.degree()) return {Poly{}, a};
  const int db = b.degree();
  std::vector<BigRat> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<BigRat> quo(static_cast<std::size_t>(a.degree() - db) + 1, BigRat(0));
  const BigRat inv_lc = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    BigRat c = rem[static_cast<std::size_t>(k)] * inv_lc;
    if (c == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = c;
    for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k - db + i)] -= c * b.coeff(i);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

// Primitive remainder sequence over Z; keeps coefficient growth in check where
// Euclid over Q does not.
Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly::constant(1);
  BigInt unused;
  auto x = integral_part(a.coeffs(), unused);
  auto y = integral_part(b.coeffs(), unused);
  make_primitive(x);
  make_primitive(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    if (y.size() == 1) return Poly::constant(1);
    pseudo_rem(x, y);
    make_primitive(x);
    std::swap(x, y);
  }
  std::vector<BigRat> v(x.begin(), x.end());
  return Poly(std::move(v)).monic();
}

ExtendedGcd poly_xgcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(1), s1;
  Poly t0, t1 = Poly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  BigRat inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

// Euclidean resultant recursion:
//   res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} res(b, r),  r = a mod b.
BigRat resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) throw ZeroPolynomial();
  Poly f = a, g = b;
  BigRat acc = 1;
  while (true) {
    const int m = f.degree(), n = g.degree();
    if (n == 0) {
      BigRat p = 1;
      for (int i = 0; i < m; ++i) p *= g.leading();
      return acc * p;
    }
    Poly r = f % g;
    if (r.is_zero()) return 0;
    const int k = r.degree();
    if ((m * n) % 2 != 0) acc = -acc;
    for (int i = 0; i < m - k; ++i) acc *= g.leading();
    f = std::move(g);
    g = std::move(r);
  }
}

BigRat discriminant(const Poly& a) {
  if (a.is_zero()) throw ZeroPolynomial();
  const int d = a.degree();
  if (d < 1) return 0;
  if (d == 1) return 1;
  BigRat r = resultant(a, a.derivative()) / a.leading();
  if (((d * (d - 1)) / 2) % 2 != 0) r = -r;
  return r;
}

int valuation(const Poly& a, const Poly& place) {
  if (a.is_zero()) throw ZeroPolynomial();
  int v = 0;
  Poly cur = a;
  while (true) {
    auto [q, r] = divmod(cur, place);
    if (!r.is_zero()) return v;
    ++v;
    cur = std::move(q);
  }
}

}  // namespace dioph::qalg
