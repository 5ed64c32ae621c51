#include "dioph/ecq/ap.hpp"

#include <algorithm>
#include <cmath>

namespace dioph::ecq {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

constexpr u64 kNaiveBelow = 400;

u64 mulmod(u64 a, u64 b, u64 p) { return a * b % p; }  // p < 2^32

u64 invmod(u64 a, u64 p) {
  i64 t = 0, nt = 1, r = static_cast<i64>(p), nr = static_cast<i64>(a);
  while (nr != 0) {
    i64 q = r / nr;
    i64 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(p) : t);
}

int jacobi(u64 a, u64 n) {
  int s = 1;
  a %= n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      u64 r = n & 7;
      if (r == 3 || r == 5) s = -s;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

struct Pt {
  u64 x = 0, y = 0;
  bool inf = true;
};

// Affine arithmetic on y^2 = x^3 + a x + b over F_p.
struct Curve {
  u64 a, p;

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lam;
    if (P.x == Q.x) {
      if (P.y != Q.y || P.y == 0) return {};
      u64 num = (3 * mulmod(P.x, P.x, p) + a) % p;
      lam = mulmod(num, invmod(2 * P.y % p, p), p);
    } else {
      u64 num = (Q.y + p - P.y) % p;
      lam = mulmod(num, invmod((Q.x + p - P.x) % p, p), p);
    }
    u64 x3 = (mulmod(lam, lam, p) + 2 * p - P.x - Q.x) % p;
    u64 y3 = (mulmod(lam, (P.x + p - x3) % p, p) + p - P.y) % p;
    return {x3, y3, false};
  }

  Pt mul(Pt P, u64 k) const {
    Pt acc;
    while (k > 0) {
      if (k & 1) acc = add(acc, P);
      k >>= 1;
      if (k) P = add(P, P);
    }
    return acc;
  }
};

// Every M in [lo, hi] with M P = O.
std::vector<u64> killing_multiples(const Curve& E, const Pt& P, u64 lo, u64 hi) {
  const u64 width = hi - lo;
  const u64 m = isqrt(width / 2) + 1;
  std::vector<std::pair<u64, u64>> baby;  // (x(jP), j)
  baby.reserve(m);
  std::vector<Pt> jP(m + 1);
  Pt cur;
  for (u64 j = 1; j <= m; ++j) {
    cur = E.add(cur, P);
    if (cur.inf) {
      std::vector<u64> out;
      for (u64 M = (lo + j - 1) / j * j; M <= hi; M += j) out.push_back(M);
      return out;
    }
    jP[j] = cur;
    baby.emplace_back(cur.x, j);
  }
  std::sort(baby.begin(), baby.end());
  const u64 step = 2 * m + 1;
  const Pt S = E.mul(P, step);
  Pt Q = E.mul(P, lo);
  std::vector<u64> out;
  for (u64 base = lo; base <= hi + m; base += step) {
    if (Q.inf) {
      out.push_back(base);
    } else {
      auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(Q.x, u64{0}));
      for (; it != baby.end() && it->first == Q.x; ++it) {
        u64 j = it->second;
        if (jP[j].y == Q.y) {
          if (base >= j) out.push_back(base - j);  // Q = jP
          if (Q.y == 0) out.push_back(base + j);   // and -jP
        } else {
          out.push_back(base + j);  // Q = -jP
        }
      }
    }
    Q = E.add(Q, S);
  }
  std::vector<u64> kept;
  for (u64 M : out)
    if (M >= lo && M <= hi) kept.push_back(M);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

// Trace on the long model by counting over F_p x F_p; only for tiny p.
long trace_long_bruteforce(const CurveAnalysis& A, u64 p) {
  const auto& E = A.minimal.curve;
  auto red = [p](const BigRat& q) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), q.get_num_mpz_t(), BigInt(static_cast<unsigned long>(p)).get_mpz_t());
    return static_cast<i64>(r.get_si());
  };
  i64 a1 = red(E.a1()), a2 = red(E.a2()), a3 = red(E.a3()), a4 = red(E.a4()), a6 = red(E.a6());
  i64 P = static_cast<i64>(p);
  long count = 1;
  for (i64 x = 0; x < P; ++x)
    for (i64 y = 0; y < P; ++y) {
      i64 lhs = (y * y + a1 * x * y + a3 * y) % P;
      i64 rhs = (((x + a2) * x + a4) % P * x + a6) % P;
      if ((lhs - rhs) % P == 0) ++count;
    }
  return static_cast<long>(P) + 1 - count;
}

}  // namespace

long trace_short_naive(i64 A, i64 B, u64 p) {
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (u64 y = 1; y <= p / 2; ++y) chi[mulmod(y, y, p)] = 1;
  u64 a = static_cast<u64>((A % static_cast<i64>(p) + static_cast<i64>(p)) % static_cast<i64>(p));
  u64 b = static_cast<u64>((B % static_cast<i64>(p) + static_cast<i64>(p)) % static_cast<i64>(p));
  long s = 0;
  for (u64 x = 0; x < p; ++x) s += chi[(mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p];
  return -s;
}

long trace_short(i64 A, i64 B, u64 p) {
  if (p < kNaiveBelow) return trace_short_naive(A, B, p);
  const i64 P = static_cast<i64>(p);
  u64 a = static_cast<u64>((A % P + P) % P);
  u64 b = static_cast<u64>((B % P + P) % P);
  const long h = static_cast<long>(isqrt(4 * p));
  std::vector<long> cand;
  bool all = true;
  for (u64 x = 0, tries = 0; x < p && tries < 40; ++x) {
    u64 f = (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
    if (f == 0) continue;
    ++tries;
    // (f x, f^2) lies on y^2 = X^3 + a f^2 X + b f^3, which is E or its quadratic twist.
    int chi = jacobi(f, p);
    u64 f2 = mulmod(f, f, p);
    Curve Ed{mulmod(a, f2, p), p};
    Pt pt{mulmod(f, x, p), f2, false};
    auto Ms = killing_multiples(Ed, pt, p + 1 - static_cast<u64>(h), p + 1 + static_cast<u64>(h));
    std::vector<long> here;
    for (u64 M : Ms) here.push_back(chi == 1 ? static_cast<long>(p + 1) - static_cast<long>(M)
                                             : static_cast<long>(M) - static_cast<long>(p + 1));
    std::sort(here.begin(), here.end());
    if (all) {
      cand = here;
      all = false;
    } else {
      std::vector<long> both;
      std::set_intersection(cand.begin(), cand.end(), here.begin(), here.end(), std::back_inserter(both));
      cand = std::move(both);
    }
    if (cand.size() == 1) return cand.front();
  }
  return trace_short_naive(A, B, p);
}

long ap(const CurveAnalysis& A, u64 p) {
  BigInt P(static_cast<unsigned long>(p));
  if (const ReductionData* rd = A.at(P)) return rd->ap();
  if (p < 5) return trace_long_bruteforce(A, p);
  const auto& E = A.minimal.curve;
  BigRat c4 = E.c4(), c6 = E.c6();
  BigInt r4, r6;
  mpz_mod(r4.get_mpz_t(), BigInt(-27 * c4.get_num()).get_mpz_t(), P.get_mpz_t());
  mpz_mod(r6.get_mpz_t(), BigInt(-54 * c6.get_num()).get_mpz_t(), P.get_mpz_t());
  return trace_short(r4.get_si(), r6.get_si(), p);
}

long ap(const CurveQ& E, const BigInt& p) {
  if (!mpz_fits_ulong_p(p.get_mpz_t()) || p.get_ui() >= (1UL << 31))
    throw Error("ap: prime " + p.get_str() + " too large for point counting");
  return ap(analyze(E), p.get_ui());
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

std::vector<i64> an_coefficients(const CurveAnalysis& A, std::size_t n) {
  std::vector<i64> a(n + 1, 0);
  if (n == 0) return a;
  a[1] = 1;
  const auto& E = A.minimal.curve;
  const BigInt c4 = -27 * E.c4().get_num(), c6 = -54 * E.c6().get_num();
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(n))) {
    BigInt P(static_cast<unsigned long>(p));
    const ReductionData* rd = A.at(P);
    i64 t;
    if (rd) {
      t = rd->ap();
    } else if (p < 5) {
      t = trace_long_bruteforce(A, p);
    } else {
      i64 r4 = static_cast<i64>(mpz_fdiv_ui(c4.get_mpz_t(), p));
      i64 r6 = static_cast<i64>(mpz_fdiv_ui(c6.get_mpz_t(), p));
      t = trace_short(r4, r6, p);
    }
    // Prime powers, then multiply into every multiple coprime to p.
    std::vector<std::pair<std::uint64_t, i64>> powers{{p, t}};
    i64 prev = 1, curv = t;
    for (std::uint64_t q = static_cast<std::uint64_t>(p) * p; q <= n; q *= p) {
      i64 next = rd ? t * curv : t * curv - static_cast<i64>(p) * prev;
      prev = curv;
      curv = next;
      powers.emplace_back(q, next);
    }
    for (const auto& [q, v] : powers) a[q] = v;
  }
  // Multiplicative closure: a[n] = a[p^k] a[m] with p the smallest prime factor.
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::size_t i = 2; i <= n; ++i) {
    if (spf[i]) continue;
    for (std::size_t j = i; j <= n; j += i)
      if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
  }
  for (std::size_t k = 2; k <= n; ++k) {
    std::size_t m = k, pk = 1;
    while (m % spf[k] == 0) {
      m /= spf[k];
      pk *= spf[k];
    }
    if (m != 1) a[k] = a[pk] * a[m];
  }
  return a;
}

}  // namespace dioph::ecq
