#pragma once

#include <utility>
#include <vector>

#include "dioph/qalg/poly.hpp"

namespace dioph::ecq {

using qalg::BigInt;
using qalg::BigRat;

/// (prime, exponent) pairs in increasing prime order; |n| is factored, sign dropped.
/// Throws dioph::Error for n == 0.
std::vector<std::pair<BigInt, int>> factor_integer(const BigInt& n);

/// Exponent of the prime p in the nonzero rational q.
int valuation_p(const BigRat& q, const BigInt& p);
int valuation_p(const BigInt& n, const BigInt& p);

/// Kronecker-style Legendre symbol (a / p) for an odd prime p.
int legendre(const BigInt& a, const BigInt& p);

}  // namespace dioph::ecq
