#include "dioph/ecq/intfactor.hpp"

#include <algorithm>
#include <map>

#include "dioph/qalg/error.hpp"

namespace dioph::ecq {

namespace {

constexpr unsigned long kTrialLimit = 10000;

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

bool is_prime(const BigInt& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Brent's variant of Pollard rho; returns a nontrivial factor of the composite n.
BigInt rho(const BigInt& n) {
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, q = 1, g = 1, ys;
    auto f = [&](const BigInt& v) {
      BigInt r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    unsigned long r = 1;
    const unsigned long m = 128;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      for (unsigned long k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          BigInt d = x - y;
          q = q * abs(d);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(BigInt(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const BigInt& n, std::map<BigInt, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  BigInt r;
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2;; ++k) {
      if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k)) {
        std::map<BigInt, int> sub;
        split(r, sub);
        for (const auto& [p, e] : sub) out[p] += e * static_cast<int>(k);
        return;
      }
    }
  }
  BigInt d = rho(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

std::vector<std::pair<BigInt, int>> factor_integer(const BigInt& n0) {
  if (n0 == 0) throw Error("cannot factor 0");
  BigInt n = abs(n0);
  std::map<BigInt, int> found;
  for (unsigned long p = 2; p <= kTrialLimit && n > 1; p += (p == 2 ? 1 : 2)) {
    if (BigInt(p) * p > n) break;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) found[BigInt(p)] = e;
  }
  split(n, found);
  return {found.begin(), found.end()};
}

int valuation_p(const BigInt& n, const BigInt& p) {
  if (n == 0) throw Error("valuation of 0");
  BigInt m = n;
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

int valuation_p(const BigRat& q, const BigInt& p) {
  return valuation_p(q.get_num(), p) - valuation_p(q.get_den(), p);
}

int legendre(const BigInt& a, const BigInt& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

}  // namespace dioph::ecq
