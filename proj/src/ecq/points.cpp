#include "dioph/ecq/points.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "dioph/ecq/torsion.hpp"

namespace dioph::ecq {

std::vector<PointQ> search_points(const CurveQ& E, long H) {
  if (H < 1) return {};
  // y^2 + (a1 x + a3) y = cubic(x) has a rational y iff F(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 is a
  // rational square. With x = a/b^2 and L clearing denominators, F(x) b^6 L = M and the test is
  // whether M L is a square.
  const BigRat b2 = E.b2(), b4 = E.b4(), b6 = E.b6();
  BigInt L = 1;
  for (const BigRat* q : {&b2, &b4, &b6}) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q->get_den_mpz_t());
  const BigInt c3 = 4 * L;
  const BigInt c2 = BigRat(b2 * L).get_num(), c1 = BigRat(2 * b4 * L).get_num(), c0 = BigRat(b6 * L).get_num();

  struct Found {
    long key, b, a;
    PointQ P;
  };
  std::vector<Found> found;
  long bmax = 1;
  while ((bmax + 1) * (bmax + 1) <= H) ++bmax;
  BigInt M, S, r;
  for (long b = 1; b <= bmax; ++b) {
    const BigInt B2 = BigInt(b) * b, B4 = B2 * B2, B6 = B4 * B2;
    const BigInt k2 = c2 * B2, k1 = c1 * B4, k0 = c0 * B6;
    for (long a = -H; a <= H; ++a) {
      if (std::gcd(a, b) != 1) continue;
      const BigInt A(a);
      M = ((c3 * A + k2) * A + k1) * A + k0;
      S = M * L;
      if (sgn(S) < 0 || !mpz_perfect_square_p(S.get_mpz_t())) continue;
      mpz_sqrt(r.get_mpz_t(), S.get_mpz_t());
      // sqrt(F(x)) = r / (L b^3)
      const BigRat x(A, B2);
      const BigRat root(r, L * B2 * b);
      const BigRat lin = E.a1() * x + E.a3();
      const long key = std::max(std::labs(a), b * b);
      found.push_back({key, b, a, PointQ::affine(x, (-lin + root) / 2)});
      if (r != 0) found.push_back({key, b, a, PointQ::affine(x, (-lin - root) / 2)});
    }
  }
  std::sort(found.begin(), found.end(), [](const Found& l, const Found& r) {
    return std::tie(l.key, l.b, l.a) < std::tie(r.key, r.b, r.a) ||
           (std::tie(l.key, l.b, l.a) == std::tie(r.key, r.b, r.a) && l.P.y < r.P.y);
  });
  std::vector<PointQ> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.P));
  return out;
}

std::optional<PointQ> find_infinite_order_point(const CurveQ& E, long H) {
  for (auto& P : search_points(E, H))
    if (!torsion_order_bounded(E, P)) return P;
  return std::nullopt;
}

}  // namespace dioph::ecq
