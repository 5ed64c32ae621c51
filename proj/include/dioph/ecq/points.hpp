#pragma once

#include <optional>
#include <vector>

#include "dioph/ecq/curve.hpp"

namespace dioph::ecq {

/// Affine points of the given model with x = a/b^2, gcd(a, b) = 1, |a| <= H,
/// 1 <= b <= sqrt(H), ordered by (max(|a|, b^2), b, a, y).
std::vector<PointQ> search_points(const CurveQ& E, long H);

/// First searched point of infinite order. nullopt only says none exists below H.
std::optional<PointQ> find_infinite_order_point(const CurveQ& E, long H);

}  // namespace dioph::ecq
