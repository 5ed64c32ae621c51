#include "dioph/qalg/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>

#include "dioph/qalg/error.hpp"

namespace dioph::qalg {

namespace {

// ---------------------------------------------------------------------------
// Integer polynomials

using ZPoly = std::vector<BigInt>;

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

// Primitive integer polynomial with positive leading coefficient, proportional to a.
ZPoly primitive_z(const Poly& a) {
  BigInt den = 1;
  for (const auto& c : a.coeffs()) den = lcm(den, BigInt(c.get_den()));
  ZPoly f;
  f.reserve(a.coeffs().size());
  for (const auto& c : a.coeffs()) f.push_back(BigInt(c * den));
  BigInt g = 0;
  for (const auto& c : f) g = gcd(g, c);
  if (f.back() < 0) g = -g;
  for (auto& c : f) c /= g;
  return f;
}

Poly to_poly(const ZPoly& f) {
  std::vector<BigRat> v(f.begin(), f.end());
  return Poly(std::move(v));
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

// Exact division over Z, nullopt when g does not divide f.
std::optional<ZPoly> zdivide_exact(const ZPoly& f, const ZPoly& g) {
  if (zdeg(f) < zdeg(g)) return std::nullopt;
  ZPoly rem = f;
  const int dg = zdeg(g);
  ZPoly quo(static_cast<std::size_t>(zdeg(f) - dg) + 1, BigInt(0));
  for (int k = zdeg(f); k >= dg; --k) {
    const BigInt& top = rem[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), g.back().get_mpz_t())) return std::nullopt;
    BigInt c = top / g.back();
    quo[static_cast<std::size_t>(k - dg)] = c;
    for (int i = 0; i <= dg; ++i) rem[static_cast<std::size_t>(k - dg + i)] -= c * g[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < dg; ++i)
    if (rem[static_cast<std::size_t>(i)] != 0) return std::nullopt;
  ztrim(quo);
  return quo;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, p an odd prime below 2^32.

using FpPoly = std::vector<std::uint64_t>;

struct Fp {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t inv(std::uint64_t a) const {
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
  }

  void trim(FpPoly& f) const {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }

  FpPoly reduce(const ZPoly& f) const {
    FpPoly r(f.size());
    mpz_class pp(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < f.size(); ++i) {
      mpz_class m;
      mpz_fdiv_r(m.get_mpz_t(), f[i].get_mpz_t(), pp.get_mpz_t());
      r[i] = m.get_ui();
    }
    trim(r);
    return r;
  }

  FpPoly sub(const FpPoly& a, const FpPoly& b) const {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
    trim(r);
    return r;
  }

  FpPoly add(const FpPoly& a, const FpPoly& b) const {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
    trim(r);
    return r;
  }

  FpPoly mul(const FpPoly& a, const FpPoly& b) const {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
  }

  std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) const {
    if (a.size() < b.size()) return {FpPoly{}, a};
    FpPoly rem = a;
    FpPoly quo(a.size() - b.size() + 1, 0);
    const std::uint64_t il = inv(b.back());
    const std::size_t db = b.size() - 1;
    for (std::size_t k = a.size() - 1;; --k) {
      std::uint64_t c = mul(rem[k], il);
      if (c != 0) {
        quo[k - db] = c;
        for (std::size_t i = 0; i <= db; ++i) rem[k - db + i] = sub(rem[k - db + i], mul(c, b[i]));
      }
      if (k == db) break;
    }
    rem.resize(db);
    trim(rem);
    trim(quo);
    return {quo, rem};
  }

  FpPoly mod(const FpPoly& a, const FpPoly& b) const { return divmod(a, b).second; }

  FpPoly monic(const FpPoly& a) const {
    if (a.empty()) return a;
    FpPoly r = a;
    std::uint64_t il = inv(a.back());
    for (auto& c : r) c = mul(c, il);
    return r;
  }

  FpPoly gcd(FpPoly a, FpPoly b) const {
    while (!b.empty()) {
      FpPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  // s*a + t*b = 1 for coprime a, b.
  std::pair<FpPoly, FpPoly> bezout(const FpPoly& a, const FpPoly& b) const {
    FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      FpPoly s2 = sub(s0, mul(q, s1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      FpPoly t2 = sub(t0, mul(q, t1));
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    std::uint64_t il = inv(r0.back());
    for (auto& c : s0) c = mul(c, il);
    for (auto& c : t0) c = mul(c, il);
    return {s0, t0};
  }

  FpPoly powmod(FpPoly base, const BigInt& e, const FpPoly& m) const {
    FpPoly result{1};
    base = mod(base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      result = mod(mul(result, result), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(mul(result, base), m);
    }
    return result;
  }

  FpPoly derivative(const FpPoly& f) const {
    if (f.size() <= 1) return {};
    FpPoly r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = mul(f[i], i % p);
    trim(r);
    return r;
  }
};

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void equal_degree_split(const Fp& F, const FpPoly& g, int d, std::uint64_t& rng, std::vector<FpPoly>& out) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  BigInt e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  while (true) {
    FpPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = splitmix(rng) % F.p;
    F.trim(a);
    if (a.size() < 2) continue;
    FpPoly b = F.powmod(a, e, g);
    b = F.sub(b, FpPoly{1});
    FpPoly h = F.gcd(g, b);
    if (h.size() > 1 && h.size() < g.size()) {
      equal_degree_split(F, h, d, rng, out);
      equal_degree_split(F, F.monic(F.divmod(g, h).first), d, rng, out);
      return;
    }
  }
}

// Cantor-Zassenhaus factorization of a monic square-free polynomial mod p.
std::vector<FpPoly> factor_mod_p(const Fp& F, FpPoly f) {
  std::vector<FpPoly> out;
  std::uint64_t rng = 0x5eed0000ULL + F.p;
  FpPoly x{0, 1};
  FpPoly h = x;
  BigInt pe(static_cast<unsigned long>(F.p));
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    h = F.powmod(h, pe, f);
    FpPoly g = F.gcd(f, F.sub(h, x));
    if (g.size() > 1) {
      equal_degree_split(F, g, d, rng, out);
      f = F.monic(F.divmod(f, g).first);
      h = F.mod(h, f);
    }
  }
  if (f.size() > 1) out.push_back(f);
  return out;
}

bool is_prime_small(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Hensel lifting mod M = p^k with mpz coefficients.

ZPoly reduce_mod(const ZPoly& f, const BigInt& M) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), f[i].get_mpz_t(), M.get_mpz_t());
  ztrim(r);
  return r;
}

ZPoly lift_poly(const FpPoly& f) {
  ZPoly r;
  r.reserve(f.size());
  for (auto c : f) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  ztrim(r);
  return r;
}

ZPoly zadd_scaled(const ZPoly& a, const FpPoly& d, const BigInt& q) {
  ZPoly r(std::max(a.size(), d.size()), BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < d.size(); ++i) r[i] += q * static_cast<unsigned long>(d[i]);
  ztrim(r);
  return r;
}

// Given F == g*h (mod p) with g monic, lift to G*H == F (mod p^k).
std::pair<ZPoly, ZPoly> hensel_lift_pair(const Fp& Fp_, const ZPoly& F, const FpPoly& g, const FpPoly& h, int k,
                                         const BigInt& M) {
  auto [s, t] = Fp_.bezout(g, h);
  ZPoly G = lift_poly(g), H = lift_poly(h);
  BigInt q(static_cast<unsigned long>(Fp_.p));
  for (int j = 1; j < k; ++j) {
    ZPoly diff = reduce_mod(zsub(F, zmul(G, H)), M);
    ZPoly e_z(diff.size());
    for (std::size_t i = 0; i < diff.size(); ++i) e_z[i] = diff[i] / q;  // exact
    FpPoly e = Fp_.reduce(e_z);
    FpPoly te = Fp_.mul(t, e);
    auto [qt, dG] = Fp_.divmod(te, g);
    FpPoly dH = Fp_.add(Fp_.mul(s, e), Fp_.mul(qt, h));
    G = zadd_scaled(G, dG, q);
    H = zadd_scaled(H, dH, q);
    q *= static_cast<unsigned long>(Fp_.p);
  }
  return {reduce_mod(G, M), reduce_mod(H, M)};
}

ZPoly symmetric(const ZPoly& f, const BigInt& M) {
  ZPoly r = reduce_mod(f, M);
  BigInt half = M / 2;
  for (auto& c : r)
    if (c > half) c -= M;
  ztrim(r);
  return r;
}

ZPoly primitive_part(ZPoly f) {
  BigInt g = 0;
  for (const auto& c : f) g = gcd(g, c);
  if (g == 0) return f;
  if (f.back() < 0) g = -g;
  for (auto& c : f) c /= g;
  return f;
}

// Factor a primitive square-free f in Z[x] (deg >= 1, lc > 0).
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  const int n = zdeg(f);
  if (n <= 1) return {f};

  // Pick the good prime with the fewest modular factors among the first few.
  std::optional<Fp> best_field;
  std::vector<FpPoly> best;
  int good = 0;
  for (std::uint64_t p = 3; good < 6 && p < 100000; p += 2) {
    if (!is_prime_small(p)) continue;
    Fp F{p};
    FpPoly fp = F.reduce(f);
    if (static_cast<int>(fp.size()) - 1 != n) continue;
    fp = F.monic(fp);
    FpPoly g = F.gcd(fp, F.derivative(fp));
    if (g.size() != 1) continue;
    ++good;
    auto facs = factor_mod_p(F, fp);
    if (!best_field || facs.size() < best.size()) {
      best_field = F;
      best = std::move(facs);
    }
    if (best.size() == 1) return {f};
  }
  const Fp F = *best_field;

  // Coefficient bound for lc(f) * (any factor): 2^n * ||f||_2 * lc.
  BigInt norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  BigInt norm = sqrt(norm2) + 1;
  BigInt bound = (norm << n) * abs(f.back()) * 2 + 1;
  int k = 1;
  BigInt M(static_cast<unsigned long>(F.p));
  while (M <= bound) {
    M *= static_cast<unsigned long>(F.p);
    ++k;
  }

  // Multi-factor lift by peeling one factor at a time.
  std::vector<ZPoly> lifted;
  ZPoly rest = f;
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    FpPoly h = F.reduce(rest);
    h = F.divmod(h, best[i]).first;
    auto [G, H] = hensel_lift_pair(F, rest, best[i], h, k, M);
    lifted.push_back(G);
    rest = H;
  }
  {
    BigInt inv_lc;
    BigInt lc = rest.back();
    mpz_invert(inv_lc.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t());
    ZPoly last = rest;
    for (auto& c : last) c *= inv_lc;
    lifted.push_back(reduce_mod(last, M));
  }

  // Recombine subsets of lifted factors.
  std::vector<ZPoly> result;
  ZPoly cur = f;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ZPoly cand{cur.back()};
      for (auto i : idx) cand = reduce_mod(zmul(cand, lifted[i]), M);
      cand = primitive_part(symmetric(cand, M));
      if (zdeg(cand) >= 1) {
        if (auto q = zdivide_exact(cur, cand)) {
          result.push_back(cand);
          cur = *q;
          for (std::size_t j = idx.size(); j-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[j]));
          found = true;
          break;
        }
      }
      // next combination
      std::size_t j = s;
      while (j > 0 && idx[j - 1] == lifted.size() - s + j - 1) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t l = j; l < s; ++l) idx[l] = idx[l - 1] + 1;
    }
    if (!found) ++s;
  }
  if (zdeg(cur) >= 1) result.push_back(primitive_part(cur));
  return result;
}

std::vector<BigInt> small_divisors(BigInt n) {
  n = abs(n);
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

// Strip rational roots of a primitive integer polynomial; appends the
// corresponding linear factors to `linear` and returns the remaining cofactor.
ZPoly extract_rational_roots(ZPoly f, std::vector<ZPoly>& linear) {
  static const BigInt kLimit("1000000000000");
  while (zdeg(f) >= 1 && f[0] == 0) {
    linear.push_back(ZPoly{0, 1});
    f.erase(f.begin());
  }
  if (zdeg(f) < 1 || abs(f[0]) > kLimit || abs(f.back()) > kLimit) return f;
  auto nums = small_divisors(f[0]);
  auto dens = small_divisors(f.back());
  if (nums.size() * dens.size() > 20000) return f;
  for (const auto& e : dens) {
    for (const auto& d0 : nums) {
      for (int sign : {1, -1}) {
        BigInt d = d0 * sign;
        if (gcd(d, e) != 1) continue;
        ZPoly lin{-d, e};
        while (zdeg(f) >= 1) {
          auto q = zdivide_exact(f, lin);
          if (!q) break;
          linear.push_back(lin);
          f = *q;
        }
      }
    }
  }
  return f;
}

Poly monic_of(const ZPoly& f) { return to_poly(f).monic(); }

}  // namespace

Poly FactoredPoly::expand() const {
  Poly r = Poly::constant(unit);
  for (const auto& f : factors) r *= pow(f.poly, static_cast<unsigned>(f.multiplicity));
  return r;
}

FactoredPoly squarefree_decomposition(const Poly& a) {
  if (a.is_zero()) throw ZeroPolynomial();
  FactoredPoly out{a.leading(), {}};
  Poly f = a.monic();
  if (f.degree() == 0) return out;
  Poly fp = f.derivative();
  Poly a0 = poly_gcd(f, fp);
  Poly b = f / a0;
  Poly c = fp / a0;
  Poly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly ai = poly_gcd(b, d);
    b = b / ai;
    c = d / ai;
    d = c - b.derivative();
    if (ai.degree() > 0) out.factors.push_back({ai, i});
    ++i;
  }
  return out;
}

FactoredPoly factor_q(const Poly& a) {
  if (a.is_zero()) throw ZeroPolynomial();
  if (a.degree() > kFactorDegreeCap) throw DegreeLimitExceeded(a.degree(), kFactorDegreeCap);
  FactoredPoly out{a.leading(), {}};
  if (a.degree() == 0) return out;

  ZPoly f = primitive_z(a);
  std::vector<ZPoly> linear;
  ZPoly rest = extract_rational_roots(f, linear);

  std::vector<Factor> acc;
  auto add = [&acc](const Poly& p, int m) {
    for (auto& e : acc) {
      if (e.poly == p) {
        e.multiplicity += m;
        return;
      }
    }
    acc.push_back({p, m});
  };
  for (const auto& l : linear) add(monic_of(l), 1);

  if (zdeg(rest) >= 1) {
    auto sqf = squarefree_decomposition(to_poly(rest));
    for (const auto& part : sqf.factors) {
      for (const auto& irr : zassenhaus(primitive_z(part.poly))) add(monic_of(irr), part.multiplicity);
    }
  }
  std::sort(acc.begin(), acc.end(), [](const Factor& x, const Factor& y) { return canonical_less(x.poly, y.poly); });
  out.factors = std::move(acc);
  return out;
}

std::vector<Poly> irreducible_factors(const Poly& a) {
  std::vector<Poly> out;
  for (auto& f : factor_q(a).factors) out.push_back(std::move(f.poly));
  return out;
}

}  // namespace dioph::qalg
