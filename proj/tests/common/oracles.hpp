#pragma once
// Independent recomputations used by unit and acceptance tests.

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "dioph/qalg/factor.hpp"
#include "dioph/qalg/poly.hpp"

namespace oracle {

using dioph::qalg::BigInt;
using dioph::qalg::BigRat;
using dioph::qalg::Poly;

// Coefficients c_0..c_n read backwards as a polynomial of formal degree n.
inline Poly reversed(const Poly& a, int n) {
  std::vector<BigRat> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(n - i)] = a.coeff(i);
  return Poly(std::move(c));
}

// Chart (x, y) of a(x) y^2 + b(x) y + c(x): a singular point with a(x0) != 0 sits
// at y0 = -b/2a with b^2 - 4ac and T = a'b^2 - 2abb' + 4a^2c' both zero at x0.
// True when no such point exists.
inline bool chart_is_smooth(const Poly& a, const Poly& b, const Poly& c) {
  const Poly disc = b * b - Poly::constant(4) * a * c;
  const Poly T = a.derivative() * b * b - Poly::constant(2) * a * b * b.derivative() +
                 Poly::constant(4) * a * a * c.derivative();
  if (disc.is_zero() && T.is_zero()) return false;
  const Poly g = dioph::qalg::poly_gcd(disc, T);
  if (g.degree() < 1) return true;
  for (const Poly& pi : dioph::qalg::irreducible_factors(g))
    if (!(a % pi).is_zero()) return false;  // roots of pi have a != 0
  return true;
}

// Genus of f(x) = g(y) with deg g = 2, read off the bidegree (p, 2) model in
// P^1 x P^1. Every point lies in a chart where it is caught: x finite or
// x = infinity, and one of y = infinity, 0, -1 is not on the curve over x0
// because the fibre has at most two points. Smooth means genus (p - 1)(2 - 1)
// (arithmetic genus of the bidegree class, no delta corrections); nullopt when a
// singular point shows up, which the oracle does not resolve.
inline std::optional<long> bidegree_genus_q2(const std::vector<Poly>& F, int p) {
  if (F.size() != 3) return std::nullopt;
  // a vertical component would hide in every chart
  if (dioph::qalg::poly_gcd(dioph::qalg::poly_gcd(F[0], F[1]), F[2]).degree() > 0) return std::nullopt;
  for (int xflip = 0; xflip < 2; ++xflip) {
    Poly c0 = F[0], c1 = F[1], c2 = F[2];
    if (xflip) {
      c0 = reversed(c0, p);
      c1 = reversed(c1, p);
      c2 = reversed(c2, p);
    }
    // y charts with excluded points infinity, 0 and -1
    if (!chart_is_smooth(c2, c1, c0)) return std::nullopt;
    if (!chart_is_smooth(c0, c1, c2)) return std::nullopt;
    if (!chart_is_smooth(c2 - c1 + c0, c1 - Poly::constant(2) * c2, c2)) return std::nullopt;
  }
  return static_cast<long>(p - 1);
}

// y^2 = x^3 + a2 x^2 + a4 x + a6 over Q, affine points plus a flag for O.
struct Pt {
  bool inf = true;
  BigRat x, y;
};

struct ShortCurve {
  BigRat a2, a4, a6;

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    BigRat l;
    if (P.x == Q.x) {
      if (P.y + Q.y == 0) return {};
      l = (3 * P.x * P.x + 2 * a2 * P.x + a4) / (2 * P.y);
    } else {
      l = (Q.y - P.y) / (Q.x - P.x);
    }
    BigRat x3 = l * l - a2 - P.x - Q.x;
    return {false, x3, l * (P.x - x3) - P.y};
  }

  // Some multiple kP = O with k <= 12.
  bool small_order(const Pt& P) const {
    Pt Q = P;
    for (int k = 1; k <= 12; ++k) {
      if (Q.inf) return true;
      Q = add(Q, P);
    }
    return false;
  }
};

// Exhaustive search on y^2 = x (x + 1) (x + n): every x = a/b^2 with gcd(a, b) = 1,
// |a| <= H, 1 <= b, b^2 <= H; y^2 b^6 = a (a + b^2)(a + n b^2). Sorted by
// (max(|a|, b^2), b, a, y); the first point surviving the 12-multiple filter.
inline std::optional<Pt> legendre_first_nontorsion(long n, long H) {
  ShortCurve E{BigRat(1 + n), BigRat(n), BigRat(0)};
  std::vector<std::tuple<long, long, long, BigRat, Pt>> found;
  for (long b = 1; b * b <= H; ++b)
    for (long a = -H; a <= H; ++a) {
      if (std::gcd(a, b) != 1) continue;
      BigInt A(a), B2 = BigInt(b) * b;
      BigInt s = A * (A + B2) * (A + n * B2);
      if (s < 0 || !mpz_perfect_square_p(s.get_mpz_t())) continue;
      BigInt r = sqrt(s);
      BigRat x(A, B2);
      x.canonicalize();
      for (int sign : {-1, 1}) {
        BigRat y(sign * r, B2 * b);
        y.canonicalize();
        found.emplace_back(std::max(std::labs(a), b * b), b, a, y, Pt{false, x, y});
        if (r == 0) break;
      }
    }
  std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
    return std::tie(std::get<0>(l), std::get<1>(l), std::get<2>(l), std::get<3>(l)) <
           std::tie(std::get<0>(r), std::get<1>(r), std::get<2>(r), std::get<3>(r));
  });
  for (const auto& f : found)
    if (!E.small_order(std::get<4>(f))) return std::get<4>(f);
  return std::nullopt;
}

}  // namespace oracle
