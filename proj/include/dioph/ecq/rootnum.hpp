#pragma once

#include <map>

#include "dioph/ecq/local.hpp"

namespace dioph::ecq {

class AmbiguousSign : public Error {
 public:
  using Error::Error;
};

enum class RootNumberMethod { ProductFormula, NumericFallback };

struct RootNumberResult {
  int w = 1;
  RootNumberMethod method = RootNumberMethod::ProductFormula;
  std::map<BigInt, int> local_factors;  // determined w_p at bad primes
};

struct NumericOptions {
  double tau = 1.1;
  double tol = 1e-6;
  std::size_t max_terms = std::size_t{1} << 20;
};

/// Sign of the functional equation. Uses the product of local root numbers when
/// all are determined, the numeric check otherwise.
RootNumberResult root_number(const CurveQ& E, const NumericOptions& opt = {});
RootNumberResult root_number(const CurveAnalysis& A, const NumericOptions& opt = {});

/// One evaluation with exactly `terms` coefficients. With
/// g(t) = sum a_n exp(-2 pi n t / sqrt N), the sign w satisfies g(1/tau) = w tau^2 g(tau);
/// returns w when its relative residual is below tol and the other sign's exceeds 10 tol.
/// Throws AmbiguousSign otherwise.
int root_number_numeric(const CurveQ& E, std::size_t terms, double tol = 1e-6, double tau = 1.1);
int root_number_numeric(const CurveAnalysis& A, std::size_t terms, double tol = 1e-6, double tau = 1.1);

/// Starts at 10 ceil(sqrt N) terms and doubles until two consecutive runs give the
/// same sign; AmbiguousSign past opt.max_terms.
int root_number_numeric_auto(const CurveAnalysis& A, const NumericOptions& opt = {});

/// Relative residuals (for w = +1, w = -1) of one evaluation.
std::pair<double, double> functional_equation_residuals(const CurveAnalysis& A, const std::vector<std::int64_t>& an,
                                                        std::size_t terms, double tau);

}  // namespace dioph::ecq
