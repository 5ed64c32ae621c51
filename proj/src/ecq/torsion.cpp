#include "dioph/ecq/torsion.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dioph/ecq/ap.hpp"

namespace dioph::ecq {

using qalg::Poly;

namespace {

std::vector<Poly> cofactors(const CurveQ& E, int n) {
  const BigRat b2 = E.b2(), b4 = E.b4(), b6 = E.b6(), b8 = E.b8();
  const Poly F{b6, 2 * b4, b2, 4};
  const Poly F2 = F * F;
  std::vector<Poly> f(std::max(n, 4) + 1);
  f[1] = Poly{1};
  f[2] = Poly{1};
  f[3] = Poly{b8, 3 * b6, 3 * b4, b2, 3};
  f[4] = Poly{b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2};
  auto cube = [](const Poly& p) { return p * p * p; };
  for (int k = 5; k <= n; ++k) {
    int m = k / 2;
    if (k % 2 == 1) {
      if (m % 2 == 0)
        f[k] = F2 * f[m + 2] * cube(f[m]) - f[m - 1] * cube(f[m + 1]);
      else
        f[k] = f[m + 2] * cube(f[m]) - F2 * f[m - 1] * cube(f[m + 1]);
    } else {
      f[k] = f[m] * (f[m + 2] * f[m - 1] * f[m - 1] - f[m - 2] * f[m + 1] * f[m + 1]);
    }
  }
  return f;
}

void check_index(int n, int lo) {
  if (n < lo || n > kMaxDivisionIndex)
    throw Error("division polynomial index " + std::to_string(n) + " outside " + std::to_string(lo) + ".." +
                std::to_string(kMaxDivisionIndex));
}

BigInt icbrt_ceil(const BigInt& n) {
  BigInt r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3);
  if (r * r * r < n) r += 1;
  return r;
}

// Integer roots of x^3 + A x + C, by bisection on the monotone pieces.
std::vector<BigInt> integer_roots(const BigInt& A, const BigInt& C) {
  auto f = [&](const BigInt& x) -> BigInt { return (x * x + A) * x + C; };
  BigInt sa;
  mpz_sqrt(sa.get_mpz_t(), BigInt(abs(A)).get_mpz_t());
  const BigInt R = 2 * std::max<BigInt>(sa + 1, icbrt_ceil(abs(C)) + 1);  // Fujiwara

  std::vector<BigInt> out;
  // First x in [lo, hi] with dir * f(x) >= 0; a root if f vanishes there.
  auto search = [&](BigInt lo, BigInt hi, int dir) {
    if (lo > hi) return;
    while (lo < hi) {
      BigInt mid = lo + (hi - lo) / 2;
      if (dir * sgn(f(mid)) < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (f(lo) == 0) out.push_back(lo);
  };
  if (A >= 0) {
    search(-R, R, 1);
  } else {
    BigInt k;
    mpz_sqrt(k.get_mpz_t(), BigInt(-A / 3).get_mpz_t());
    search(-R, -k - 1, 1);
    search(-k, k, -1);
    search(k + 1, R, 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// gcd of #E(F_p) over a handful of good primes; torsion injects into each.
long torsion_bound(const CurveAnalysis& A) {
  long g = 0;
  int used = 0;
  for (std::uint32_t p : primes_up_to(400)) {
    if (p < 5 || A.at(BigInt(p))) continue;
    long n = static_cast<long>(p) + 1 - ap(A, p);
    g = std::gcd(g, n);
    if (++used == 12) break;
  }
  return g;
}

}  // namespace

Poly division_cofactor(const CurveQ& E, int n) {
  check_index(n, 0);
  if (n == 0) return Poly{};
  return cofactors(E, n)[n];
}

Poly division_polynomial(const CurveQ& E, int n) {
  check_index(n, 1);
  Poly f = cofactors(E, n)[n];
  if (n % 2 == 1) return f;
  return f * Poly{E.b6(), 2 * E.b4(), E.b2(), 4};
}

std::optional<int> torsion_order_bounded(const CurveQ& E, const PointQ& P) {
  if (!on_curve(E, P)) throw PointNotOnCurve();
  PointQ Q = P;
  for (int k = 1; k <= 12; ++k) {
    if (Q.infinity) return k;
    Q = add(E, Q, P);
  }
  return std::nullopt;
}

bool is_mazur_admissible(int order, bool full_two_torsion) {
  if (full_two_torsion) return order == 4 || order == 8 || order == 12 || order == 16;
  return (order >= 1 && order <= 10) || order == 12;
}

std::string TorsionGroup::tag() const {
  if (full_two_torsion) return "Z/2xZ/" + std::to_string(order / 2);
  if (order == 1) return "trivial";
  return "Z/" + std::to_string(order);
}

TorsionGroup torsion_subgroup(const CurveQ& E) { return torsion_subgroup(analyze(E), E); }

TorsionGroup torsion_subgroup(const CurveAnalysis& A, const CurveQ& E) {
  TorsionGroup G;
  G.points.push_back(PointQ::identity());
  const long bound = torsion_bound(A);
  if (bound == 1) return G;

  const CurveQ& Emin = A.minimal.curve;
  const Isomorphism ws = to_short_model(Emin);
  const CurveQ Es = apply(Emin, ws);
  const BigInt a = Es.a4().get_num(), b = Es.a6().get_num();
  const BigInt D = 4 * a * a * a + 27 * b * b;

  // |D| = 2^8 3^12 |minimal discriminant|.
  std::map<BigInt, int> expo{{BigInt(2), 8}, {BigInt(3), 12}};
  for (const auto& rd : A.bad) expo[rd.p] += rd.v_delta;
  BigInt check = 1;
  for (const auto& [p, e] : expo) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
    check *= pe;
  }
  if (check != abs(D)) throw Error("internal: short model discriminant mismatch");

  std::vector<BigInt> ys{BigInt(0), BigInt(1)};
  for (const auto& [p, e] : expo) {
    std::size_t base = ys.size();
    for (std::size_t i = 1; i < base; ++i) {
      BigInt y = ys[i];
      for (int k = 1; 2 * k <= e; ++k) {
        y *= p;
        ys.push_back(y);
      }
    }
  }

  std::vector<std::pair<int, PointQ>> found;
  int two_torsion = 0;
  for (const BigInt& y : ys) {
    for (const BigInt& x : integer_roots(a, b - y * y)) {
      for (int sign : {1, -1}) {
        if (sign < 0 && y == 0) break;
        PointQ P = PointQ::affine(BigRat(x), BigRat(sign * y));
        auto k = torsion_order_bounded(Es, P);
        if (!k || (bound > 0 && bound % *k != 0)) continue;
        if (division_polynomial(Es, *k).eval(P.x) != 0)
          throw Error("internal: torsion point fails its division polynomial");
        if (*k == 2) ++two_torsion;
        found.emplace_back(*k, std::move(P));
      }
    }
  }

  G.order = static_cast<int>(found.size()) + 1;
  G.full_two_torsion = two_torsion == 3;
  int max_order = 1;
  for (const auto& f : found) max_order = std::max(max_order, f.first);
  const int expected_exponent = G.full_two_torsion ? G.order / 2 : G.order;
  if (!is_mazur_admissible(G.order, G.full_two_torsion) || max_order != expected_exponent)
    throw Error("internal: torsion points do not form an admissible group (" + std::to_string(G.order) + ")");

  std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
    if (l.first != r.first) return l.first < r.first;
    if (l.second.x != r.second.x) return l.second.x < r.second.x;
    return l.second.y < r.second.y;
  });
  const Isomorphism back = inverse(compose(A.minimal.w, ws));
  for (const auto& f : found) G.points.push_back(apply(back, f.second));
  (void)E;
  return G;
}

}  // namespace dioph::ecq
