#include <random>

#include "doctest.h"
#include "dioph/addens/addens.hpp"

using namespace dioph::addens;

namespace {

NatSetWindow where(std::int64_t K, auto pred) {
  std::vector<std::int64_t> m;
  for (std::int64_t n = 0; n <= K; ++n)
    if (pred(n)) m.push_back(n);
  return {K, m};
}

NatSetWindow random_set(std::mt19937_64& rng, std::int64_t K, double p) {
  std::bernoulli_distribution in(p);
  return where(K, [&](std::int64_t) { return in(rng); });
}

// Least number of squares summing to each n <= K, by dynamic programming.
int max_squares_needed(int K) {
  std::vector<int> best(static_cast<std::size_t>(K) + 1, 1 << 20);
  best[0] = 0;
  for (int n = 1; n <= K; ++n)
    for (int s = 1; s * s <= n; ++s) best[n] = std::min(best[n], best[n - s * s] + 1);
  return *std::max_element(best.begin(), best.end());
}

}  // namespace

TEST_CASE("window construction") {
  NatSetWindow S(10, {5, -1, 3, 3, 11, 0});
  CHECK(S.members() == std::vector<std::int64_t>{0, 3, 5});
  CHECK(S.count_upto(4) == 1);
  CHECK(S.contains(5));
  CHECK_FALSE(S.contains(4));
}

TEST_CASE("Schnirelmann density examples") {
  const std::int64_t K = 10000;
  CHECK(schnirelmann_truncated(where(K, [](auto n) { return n % 2 == 1; })) == BigRat(1, 2));
  CHECK(schnirelmann_truncated(where(K, [](auto n) { return n > 0 && n % 2 == 0; })) == 0);
  CHECK(schnirelmann_truncated(where(K, [](auto n) { return n >= 1; })) == 1);
  // 1, 2 missing after 1 gives 1/2 at k = 2; 1 and 3 only: 2/4 then falls
  CHECK(schnirelmann_truncated(NatSetWindow(4, {1, 3})) == BigRat(1, 2));
  CHECK(schnirelmann_truncated(NatSetWindow(6, {1, 3})) == BigRat(1, 3));
  CHECK_THROWS_AS(schnirelmann_truncated(NatSetWindow(0, {0})), EmptyWindow);
}

TEST_CASE("density estimates") {
  auto d = density_estimates(where(3000, [](auto n) { return n > 0 && n % 3 == 0; }));
  CHECK(d.count_ratio == BigRat(1, 3));
  CHECK(d.sigma_K == 0);
  CHECK(d.dyadic_lower <= d.count_ratio);
  CHECK(d.dyadic_upper >= d.count_ratio);
  auto all = density_estimates(where(1000, [](auto n) { return n >= 1; }));
  CHECK(all.count_ratio == 1);
  CHECK(all.dyadic_lower == 1);
  CHECK(all.dyadic_upper == 1);
  CHECK_THROWS_AS(density_estimates(NatSetWindow(1, {1})), EmptyWindow);
}

TEST_CASE("sumsets") {
  CHECK(sumset(NatSetWindow(10, {0, 1}), NatSetWindow(10, {0, 1})).members() == std::vector<std::int64_t>{0, 1, 2});
  CHECK(sumset(NatSetWindow(10, {0, 1, 2}), NatSetWindow(10, {0, 1})).members() ==
        std::vector<std::int64_t>{0, 1, 2, 3});
  CHECK(sumset(NatSetWindow(5, {4}), NatSetWindow(5, {3})).members().empty());
  CHECK_THROWS_AS(sumset(NatSetWindow(5, {}), NatSetWindow(6, {})), WindowMismatch);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i) {
    auto A = random_set(rng, 300, 0.05), B = random_set(rng, 300, 0.1), C = random_set(rng, 300, 0.02);
    CHECK(sumset(A, B) == sumset(B, A));
    CHECK(sumset(sumset(A, B), C) == sumset(A, sumset(B, C)));
    // direct pairwise oracle
    std::vector<std::int64_t> direct;
    for (auto a : A.members())
      for (auto b : B.members()) direct.push_back(a + b);
    CHECK(sumset(A, B) == NatSetWindow(300, direct));
    // hS in (h+1)S with 0 in S
    std::vector<std::int64_t> m = A.members();
    m.push_back(0);
    NatSetWindow S(300, m);
    NatSetWindow h2 = sumset(S, S), h3 = sumset(h2, S);
    for (auto x : h2.members()) CHECK(h3.contains(x));
  }
}

TEST_CASE("basis order") {
  auto squares = where(10000, [](std::int64_t n) {
    std::int64_t r = 0;
    while (r * r < n) ++r;
    return r * r == n;
  });
  CHECK(squares.contains(0));
  CHECK(max_squares_needed(10000) == 4);
  CHECK(basis_order(squares, 10) == 4);
  CHECK(basis_order(NatSetWindow(10, {0, 1}), 20) == 10);
  CHECK(basis_order(NatSetWindow(10, {0}), 50) == std::nullopt);
  CHECK(basis_order(NatSetWindow(10, {0, 1}), 9) == std::nullopt);
  CHECK_THROWS_AS(basis_order(NatSetWindow(10, {1}), 5), ZeroMissing);
}

TEST_CASE("monotonicity and the finite shadow of positive density") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 40; ++i) {
    auto S = random_set(rng, 500, 0.3);
    std::vector<std::int64_t> more = S.members();
    for (auto x : random_set(rng, 500, 0.2).members()) more.push_back(x);
    NatSetWindow T(500, more);
    CHECK(schnirelmann_truncated(S) <= schnirelmann_truncated(T));
    CHECK((schnirelmann_truncated(S) > 0) == S.contains(1));
    auto hs = criterion_pipeline(S, 600).h, ht = criterion_pipeline(T, 600).h;
    REQUIRE(hs.has_value());
    REQUIRE(ht.has_value());
    CHECK(*hs >= *ht);
  }
}

TEST_CASE("criterion pipeline") {
  auto empty = criterion_pipeline(NatSetWindow(2000, {}), 5000);
  CHECK(empty.augmented.members() == std::vector<std::int64_t>{0, 1});
  CHECK(empty.h == 2000);
  CHECK(empty.sigma_K == BigRat(1, 2000));
  auto odds = criterion_pipeline(where(1000, [](auto n) { return n % 2 == 1; }), 100);
  CHECK(odds.h == 2);
  CHECK(odds.sigma_K == BigRat(1, 2));
}
