#pragma once

#include <utility>
#include <vector>

#include "dioph/qalg/poly.hpp"

namespace dioph::qalg {

struct Factor {
  Poly poly;  // monic
  int multiplicity = 1;
};

/// unit * prod(poly^multiplicity) reproduces the input exactly.
struct FactoredPoly {
  BigRat unit;
  std::vector<Factor> factors;

  Poly expand() const;
};

/// Yun's square-free decomposition: factors are monic, square-free,
/// pairwise coprime, one per distinct multiplicity.
FactoredPoly squarefree_decomposition(const Poly& a);

inline constexpr int kFactorDegreeCap = 64;

/// Complete factorization into monic irreducibles over Q.
///
/// Rational roots are stripped first, the remainder is split square-free and
/// each square-free part is factored over Z by Hensel lifting a modular
/// factorization (Zassenhaus). Factors come back in canonical order.
FactoredPoly factor_q(const Poly& a);

/// Distinct monic irreducible factors of a, canonical order.
std::vector<Poly> irreducible_factors(const Poly& a);

}  // namespace dioph::qalg
