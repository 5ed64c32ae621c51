#include "dioph/ecq/rootnum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dioph/ecq/ap.hpp"

namespace dioph::ecq {

namespace {

int decide(std::pair<double, double> res, double tol) {
  auto [plus, minus] = res;
  if (plus < tol && minus > 10 * tol) return 1;
  if (minus < tol && plus > 10 * tol) return -1;
  throw AmbiguousSign("functional equation residuals +1: " + std::to_string(plus) +
                      ", -1: " + std::to_string(minus));
}

std::size_t default_terms(const BigInt& N) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), N.get_mpz_t());
  if (r * r < N) r += 1;
  if (!mpz_fits_ulong_p(r.get_mpz_t()) || r > BigInt(1UL << 40)) throw AmbiguousSign("conductor too large");
  return 10 * r.get_ui();
}

}  // namespace

std::pair<double, double> functional_equation_residuals(const CurveAnalysis& A, const std::vector<std::int64_t>& an,
                                                        std::size_t terms, double tau) {
  if (an.size() <= terms) throw Error("internal: not enough coefficients");
  const long double sqrtN = std::sqrt(static_cast<long double>(A.conductor.get_d()));
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  auto g = [&](long double t) {
    const long double q = std::exp(-two_pi * t / sqrtN);
    long double qn = 1, sum = 0;
    for (std::size_t n = 1; n <= terms; ++n) {
      qn *= q;
      if (an[n] != 0) sum += static_cast<long double>(an[n]) * qn;
    }
    return sum;
  };
  const long double T = tau;
  const long double lhs = g(1 / T);
  const long double rhs = T * T * g(T);
  const long double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300L});
  return {static_cast<double>(std::fabs(lhs - rhs) / scale), static_cast<double>(std::fabs(lhs + rhs) / scale)};
}

int root_number_numeric(const CurveAnalysis& A, std::size_t terms, double tol, double tau) {
  if (terms == 0) throw AmbiguousSign("no terms");
  auto an = an_coefficients(A, terms);
  return decide(functional_equation_residuals(A, an, terms, tau), tol);
}

int root_number_numeric(const CurveQ& E, std::size_t terms, double tol, double tau) {
  return root_number_numeric(analyze(E), terms, tol, tau);
}

int root_number_numeric_auto(const CurveAnalysis& A, const NumericOptions& opt) {
  std::size_t terms = default_terms(A.conductor);
  std::vector<std::int64_t> an;
  std::optional<int> previous;
  while (terms <= opt.max_terms) {
    if (an.size() <= terms) an = an_coefficients(A, std::min(2 * terms, opt.max_terms));
    std::optional<int> now;
    try {
      now = decide(functional_equation_residuals(A, an, terms, opt.tau), opt.tol);
    } catch (const AmbiguousSign&) {
    }
    if (now && previous && *now == *previous) return *now;
    previous = now;
    terms *= 2;
  }
  throw AmbiguousSign("no stable sign up to " + std::to_string(opt.max_terms) + " terms (N = " +
                      A.conductor.get_str() + ")");
}

RootNumberResult root_number(const CurveAnalysis& A, const NumericOptions& opt) {
  RootNumberResult r;
  int product = -1;  // archimedean place
  bool complete = true;
  for (const auto& rd : A.bad) {
    if (rd.w_p) {
      r.local_factors[rd.p] = *rd.w_p;
      product *= *rd.w_p;
    } else {
      complete = false;
    }
  }
  if (complete) {
    r.w = product;
    r.method = RootNumberMethod::ProductFormula;
  } else {
    r.w = root_number_numeric_auto(A, opt);
    r.method = RootNumberMethod::NumericFallback;
  }
  return r;
}

RootNumberResult root_number(const CurveQ& E, const NumericOptions& opt) { return root_number(analyze(E), opt); }

}  // namespace dioph::ecq
