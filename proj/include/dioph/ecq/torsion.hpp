#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dioph/ecq/local.hpp"
#include "dioph/qalg/poly.hpp"

namespace dioph::ecq {

inline constexpr int kMaxDivisionIndex = 24;

/// Division polynomial in x with the y-dependence folded in: psi_n for odd n and
/// psi_n * psi_2 for even n, so psi_2 itself comes back as 4x^3 + b2 x^2 + 2 b4 x + b6.
/// Roots are exactly the x-coordinates of nonzero n-torsion points. 1 <= n <= 24.
qalg::Poly division_polynomial(const CurveQ& E, int n);

/// The f_n of the recurrence (psi_n = f_n for odd n, psi_n = psi_2 f_n for even n); f_0 = 0.
qalg::Poly division_cofactor(const CurveQ& E, int n);

/// Least k in 1..12 with kP = O, nullopt when there is none (then P has infinite
/// order, by Mazur). Throws PointNotOnCurve.
std::optional<int> torsion_order_bounded(const CurveQ& E, const PointQ& P);

struct TorsionGroup {
  int order = 1;
  bool full_two_torsion = false;  // Z/2 x Z/2m rather than cyclic
  std::vector<PointQ> points;     // on the input model, identity first

  /// "trivial", "Z/n" or "Z/2xZ/2m".
  std::string tag() const;
};

/// One of Mazur's 15 groups (validated; throws dioph::Error on anything else).
TorsionGroup torsion_subgroup(const CurveQ& E);
TorsionGroup torsion_subgroup(const CurveAnalysis& A, const CurveQ& E);

bool is_mazur_admissible(int order, bool full_two_torsion);

}  // namespace dioph::ecq
