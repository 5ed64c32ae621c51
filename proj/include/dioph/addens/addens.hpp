#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dioph/qalg/error.hpp"
#include "dioph/qalg/poly.hpp"

namespace dioph::addens {

using qalg::BigRat;

class EmptyWindow : public Error {
 public:
  EmptyWindow() : Error("window too small") {}
};

class WindowMismatch : public Error {
 public:
  WindowMismatch() : Error("sets live on different windows") {}
};

class ZeroMissing : public Error {
 public:
  ZeroMissing() : Error("0 must belong to the set") {}
};

/// S intersected with [0, K]. Members are sorted and distinct.
class NatSetWindow {
 public:
  /// Drops anything outside [0, K], sorts, deduplicates.
  NatSetWindow(std::int64_t K, std::vector<std::int64_t> members);

  std::int64_t K() const { return K_; }
  const std::vector<std::int64_t>& members() const { return members_; }
  bool contains(std::int64_t n) const;
  /// #{n in S : 1 <= n <= k}
  std::int64_t count_upto(std::int64_t k) const;

  friend bool operator==(const NatSetWindow&, const NatSetWindow&) = default;

 private:
  std::int64_t K_;
  std::vector<std::int64_t> members_;
};

/// Finite-window estimates. None of these is the limit.
struct DensityReport {
  std::int64_t K = 0;
  BigRat sigma_K;       // min over 1 <= k <= K of count(k)/k
  BigRat count_ratio;   // count(K)/K
  BigRat dyadic_lower;  // min of count(k)/k over k = K, K/2, K/4, ...
  BigRat dyadic_upper;  // max over the same checkpoints
};

BigRat schnirelmann_truncated(const NatSetWindow& S);
DensityReport density_estimates(const NatSetWindow& S);

/// (A + B) intersected with [0, K].
NatSetWindow sumset(const NatSetWindow& A, const NatSetWindow& B);

/// Least h <= h_max with hS covering [0, K]; nullopt when h_max is exceeded.
std::optional<int> basis_order(const NatSetWindow& S, int h_max);

struct CriterionResult {
  NatSetWindow augmented;  // S with 0 and 1 adjoined
  BigRat sigma_K;
  std::optional<int> h;
};

CriterionResult criterion_pipeline(const NatSetWindow& S, int h_max);

}  // namespace dioph::addens
