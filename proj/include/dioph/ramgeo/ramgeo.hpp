#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/ksurface/surface.hpp"
#include "dioph/qalg/ratfunc.hpp"

namespace dioph::ramgeo {

using ksurface::Place;
using qalg::BigRat;
using qalg::Poly;
using qalg::RatFunc;

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

/// A Galois orbit of source points, all with ramification index e.
struct CriticalPoint {
  Place place;
  int e = 2;
};

/// A Galois orbit of branch values; `ramification` is sum(e - 1) above any single
/// geometric point of the orbit.
struct BranchValue {
  Place place;
  int ramification = 0;
};

struct BranchData {
  int degree = 0;
  std::vector<CriticalPoint> critical_points;
  std::vector<BranchValue> branch_values;  // Place order
  int total_ramification = 0;              // over the algebraic closure

  /// Geometric branch points: sum of place degrees, infinity counting 1.
  int branch_point_count() const;
};

/// Throws dioph::Error for constant f.
BranchData branch_data(const RatFunc& f);

/// 2 deg - 2 distinct geometric branch points.
bool is_mildly_ramified(const RatFunc& f);
bool is_mildly_ramified(const BranchData& b);

inline constexpr int kMildCoeffBound = 20;
inline constexpr int kMildAttemptCap = 10000;

/// Seeded search over numerator/denominator coefficients in [-20, 20]. d = 1 gives t.
RatFunc find_mildly_ramified(int d, std::uint64_t seed);

/// q (p - q) - p + 1 with p = deg f, q = deg g. Checks p prime, q >= 2,
/// p >= q + r + 1 and f mild; the result is >= r.
long fiber_product_genus_bound(const RatFunc& f, const RatFunc& g, long r);

struct FiberProductRamification {
  int p = 0, q = 0;
  long branch_count_lower = 0;  // 2 q (p - q)
  long h_branch_points = 0;     // geometric branch points of y-projection seen above f's branch values
  bool transverse = false;      // f and g share no branch value
  std::optional<long> genus_rh;  // only when transverse
};

/// Riemann-Hurwitz data of the projection (x, y) -> y of the curve f(x) = g(y).
/// Needs f mild, p prime, p > q >= 2.
FiberProductRamification fiber_product_ramification(const RatFunc& f, const RatFunc& g);

/// numer(f)(x) denom(g)(y) - numer(g)(y) denom(f)(x) as coefficients in y, each a polynomial in x.
std::vector<Poly> fiber_product_equation(const RatFunc& f, const RatFunc& g);

std::string to_json(const BranchData& b, const RatFunc& f);

}  // namespace dioph::ramgeo
