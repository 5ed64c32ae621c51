#include "dioph/addens/addens.hpp"

#include <algorithm>

#include <boost/dynamic_bitset.hpp>

namespace dioph::addens {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

Bits to_bits(const NatSetWindow& S) {
  Bits b(static_cast<std::size_t>(S.K()) + 1);
  for (auto n : S.members()) b.set(static_cast<std::size_t>(n));
  return b;
}

// A + S truncated at the bitset size; left shifts drop what falls past K.
Bits add(const Bits& A, const std::vector<std::int64_t>& S) {
  Bits out(A.size());
  for (auto s : S) out |= A << static_cast<std::size_t>(s);
  return out;
}

}  // namespace

NatSetWindow::NatSetWindow(std::int64_t K, std::vector<std::int64_t> members) : K_(K), members_(std::move(members)) {
  std::erase_if(members_, [K](std::int64_t n) { return n < 0 || n > K; });
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool NatSetWindow::contains(std::int64_t n) const { return std::binary_search(members_.begin(), members_.end(), n); }

std::int64_t NatSetWindow::count_upto(std::int64_t k) const {
  auto lo = std::lower_bound(members_.begin(), members_.end(), 1);
  auto hi = std::upper_bound(members_.begin(), members_.end(), k);
  return hi > lo ? hi - lo : 0;
}

BigRat schnirelmann_truncated(const NatSetWindow& S) {
  if (S.K() < 1) throw EmptyWindow();
  // running count; compare c/k < best_c/best_k by cross-multiplying
  std::int64_t best_c = 1, best_k = 1, c = 0;
  std::size_t i = 0;
  const auto& m = S.members();
  while (i < m.size() && m[i] < 1) ++i;
  for (std::int64_t k = 1; k <= S.K(); ++k) {
    while (i < m.size() && m[i] <= k) {
      ++c;
      ++i;
    }
    if (static_cast<__int128>(c) * best_k < static_cast<__int128>(best_c) * k) {
      best_c = c;
      best_k = k;
    }
    if (best_c == 0) break;
  }
  BigRat r(best_c, best_k);
  r.canonicalize();
  return r;
}

DensityReport density_estimates(const NatSetWindow& S) {
  if (S.K() < 2) throw EmptyWindow();
  DensityReport d;
  d.K = S.K();
  d.sigma_K = schnirelmann_truncated(S);
  auto at = [&](std::int64_t k) {
    BigRat r(S.count_upto(k), k);
    r.canonicalize();
    return r;
  };
  d.count_ratio = at(S.K());
  d.dyadic_lower = d.dyadic_upper = d.count_ratio;
  for (std::int64_t k = S.K() / 2; k >= 1; k /= 2) {
    BigRat r = at(k);
    d.dyadic_lower = std::min(d.dyadic_lower, r);
    d.dyadic_upper = std::max(d.dyadic_upper, r);
  }
  return d;
}

NatSetWindow sumset(const NatSetWindow& A, const NatSetWindow& B) {
  if (A.K() != B.K()) throw WindowMismatch();
  Bits s = add(to_bits(A), B.members());
  std::vector<std::int64_t> out;
  for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i)) out.push_back(static_cast<std::int64_t>(i));
  return {A.K(), std::move(out)};
}

std::optional<int> basis_order(const NatSetWindow& S, int h_max) {
  if (!S.contains(0)) throw ZeroMissing();
  Bits cur = to_bits(S);
  for (int h = 1; h <= h_max; ++h) {
    if (cur.all()) return h;
    if (h == h_max) break;
    Bits next = add(cur, S.members());
    if (next == cur) break;  // stuck below K
    cur = std::move(next);
  }
  return std::nullopt;
}

CriterionResult criterion_pipeline(const NatSetWindow& S, int h_max) {
  if (S.K() < 2) throw EmptyWindow();
  std::vector<std::int64_t> m = S.members();
  m.push_back(0);
  m.push_back(1);
  NatSetWindow aug(S.K(), std::move(m));
  BigRat sigma = schnirelmann_truncated(aug);
  auto h = basis_order(aug, h_max);
  return {std::move(aug), std::move(sigma), h};
}

}  // namespace dioph::addens
