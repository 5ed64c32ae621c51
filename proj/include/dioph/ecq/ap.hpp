#pragma once

#include <cstdint>
#include <vector>

#include "dioph/ecq/local.hpp"

namespace dioph::ecq {

/// Trace of Frobenius: p + 1 - #E(F_p) at good p, otherwise 1 / -1 / 0 for split,
/// nonsplit and additive reduction.
long ap(const CurveQ& E, const BigInt& p);
long ap(const CurveAnalysis& A, std::uint64_t p);

/// #E(F_p) - p - 1 negated, for y^2 = x^3 + A x + B with p >= 5 prime and
/// 4A^3 + 27B^2 nonzero mod p. Baby-step giant-step above a small threshold.
long trace_short(std::int64_t A, std::int64_t B, std::uint64_t p);
/// Direct character sum; the oracle for trace_short.
long trace_short_naive(std::int64_t A, std::int64_t B, std::uint64_t p);

/// a_1..a_n of the L-series (index 0 unused), from a_p and the Euler factors.
std::vector<std::int64_t> an_coefficients(const CurveAnalysis& A, std::size_t n);

/// Primes up to n.
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

}  // namespace dioph::ecq
