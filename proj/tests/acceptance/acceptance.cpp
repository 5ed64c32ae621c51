// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "dioph/addens/addens.hpp"
#include "dioph/ecq/local.hpp"
#include "dioph/ecq/points.hpp"
#include "dioph/ecq/rootnum.hpp"
#include "dioph/ecq/torsion.hpp"
#include "dioph/expcli/analysis.hpp"
#include "dioph/expcli/sweep.hpp"
#include "dioph/ksurface/surface.hpp"
#include "dioph/ramgeo/ramgeo.hpp"
#include "oracles.hpp"

using namespace dioph;
using qalg::BigInt;
using qalg::BigRat;
using qalg::Poly;
using qalg::RatFunc;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      pass = false;
      detail << "violated: " << what;
    }
  }
};

int failures = 0, ran = 0;
std::vector<std::string> only;  // criterion ids named on the command line; empty runs all

void criterion(const std::string& id, double limit_s, const std::function<void(Outcome&)>& body) {
  if (!only.empty() && std::find(only.begin(), only.end(), id.substr(0, id.find(' '))) == only.end()) return;
  ++ran;
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0) o.require(secs < limit_s, "runtime " + std::to_string(secs) + " s >= " + std::to_string(limit_s) + " s");
  std::cout << id << (o.pass ? " PASS" : " FAIL") << " [" << std::fixed;
  std::cout.precision(2);
  std::cout << secs << " s] " << o.detail.str() << std::endl;
  if (!o.pass) ++failures;
}

Poly random_poly(std::mt19937_64& rng, int max_deg, int bound) {
  std::uniform_int_distribution<int> deg(0, max_deg), c(-bound, bound);
  std::vector<BigRat> v(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : v) x = c(rng);
  return Poly(std::move(v));
}

ecq::CurveQ legendre_fibre(long n) { return {0, 1 + n, 0, n, 0}; }

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

expcli::ExperimentConfig legendre_sweep(const fs::path& out, int jobs) {
  expcli::ExperimentConfig c;
  c.surface = "a2 = 1 + t; a4 = t";
  c.n_min = 2;
  c.n_max = 2000;
  c.jobs = jobs;
  c.out = out.string();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  only.assign(argv + 1, argv + argc);
  const fs::path work = fs::current_path();
  const fs::path csv1 = work / "acceptance_sweep_jobs1.csv", csv8 = work / "acceptance_sweep_jobs8.csv";

  criterion("AC1 legendre fibre audit d=1..8", 5, [](Outcome& o) {
    for (int d = 1; d <= 8; ++d) {
      auto a = expcli::audit_legendre(d);
      for (const auto& f : a.failures) o.require(false, "d=" + std::to_string(d) + ": " + f);
    }
    o.detail << "8/8 surfaces match fibre table, euler number and kodaira dimension";
  });

  criterion("AC2 euler number divisible by 12", 30, [](Outcome& o) {
    std::mt19937_64 rng(12);
    int done = 0, bad = 0;
    while (done < 50) {
      std::array<RatFunc, 5> a;
      for (auto& c : a) c = RatFunc(random_poly(rng, 6, 5));
      std::optional<ksurface::WeierstrassSurface> S;
      try {
        S.emplace(a[0], a[1], a[2], a[3], a[4]);
      } catch (const Error&) {
        continue;
      }
      if (S->j_invariant().degree() == 0) continue;  // isotrivial: not what we want to sample
      const long e = ksurface::euler_characteristic(*S);
      if (e % 12 != 0 || e <= 0) {
        ++bad;
        o.require(false, "e = " + std::to_string(e) + " for " + S->to_string());
      }
      ++done;
    }
    o.detail << done << " surfaces, " << bad << " failures";
  });

  criterion("AC3 root number product formula vs functional equation", 300, [](Outcome& o) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> small(-1, 1), c(-30, 30);
    int done = 0, agree = 0, tried = 0, minus = 0;
    while (done < 50 && tried < 200000) {
      ++tried;
      std::optional<ecq::CurveQ> E;
      try {
        E.emplace(small(rng) * small(rng) == 0 ? 0 : 1, small(rng), small(rng) == 0 ? 0 : 1, c(rng), c(rng));
      } catch (const Error&) {
        continue;
      }
      auto A = ecq::analyze(*E);
      if (A.conductor > 40000) continue;
      bool semistable = true;
      for (const auto& r : A.bad) semistable &= r.kind == ecq::ReductionKind::Multiplicative;
      if (!semistable) continue;
      auto res = ecq::root_number(A);
      if (res.method != ecq::RootNumberMethod::ProductFormula) {
        o.require(false, "local factor undetermined on semistable " + E->to_string());
        continue;
      }
      BigInt r;
      mpz_sqrt(r.get_mpz_t(), A.conductor.get_mpz_t());
      const std::size_t T = 10 * (r.get_ui() + 1);
      int w1 = ecq::root_number_numeric(A, T), w2 = ecq::root_number_numeric(A, 2 * T);
      if (w1 == res.w && w2 == res.w)
        ++agree;
      else
        o.require(false, E->to_string() + " product " + std::to_string(res.w) + " numeric " +
                             std::to_string(w1) + "/" + std::to_string(w2));
      minus += res.w == -1;
      ++done;
    }
    o.require(done == 50, "only " + std::to_string(done) + " semistable curves sampled");
    o.detail << agree << "/" << done << " agree, stable under doubling (" << minus << " with w = -1)";
  });

  expcli::SweepSummary s1;
  criterion("AC4 legendre root sweep n=2..2000", 1200, [&](Outcome& o) {
    fs::remove(csv1);
    std::ostringstream diag;
    s1 = expcli::run_sweep(legendre_sweep(csv1, 1), {true, false}, diag);
    o.require(s1.rows == 1999, "rows = " + std::to_string(s1.rows));
    o.require(s1.smooth == 1999, "smooth = " + std::to_string(s1.smooth));
    o.require(s1.unresolved == 0, "unresolved = " + std::to_string(s1.unresolved));
    o.require(s1.s_minus + s1.s_plus == s1.smooth, "S-1 and S+1 do not partition the smooth fibres");
    // Spot recomputation of every 97th row.
    auto rows = expcli::read_sweep_csv(csv1.string());
    auto S = ksurface::parse_surface(legendre_sweep(csv1, 1).surface);
    for (std::size_t i = 0; i < rows.size(); i += 97)
      o.require(expcli::compute_row(S, rows[i].n, legendre_sweep(csv1, 1), {true, false}) == rows[i],
                "row n = " + std::to_string(rows[i].n) + " not reproducible");
    o.detail << "|S-1| = " << s1.s_minus << ", |S+1| = " << s1.s_plus << ", unresolved 0; observation (conjectural 1/2): ";
    for (const auto& c : s1.checkpoints)
      if (c.x >= 256) o.detail << "x=" << c.x << ": " << static_cast<double>(c.n_root) / c.x << " ";
  });

  criterion("AC5 first infinite-order point vs exhaustive oracle", 120, [](Outcome& o) {
    int agree = 0, found = 0;
    for (long n = 2; n <= 50; ++n) {
      auto P = ecq::find_infinite_order_point(legendre_fibre(n), 1000);
      auto Q = oracle::legendre_first_nontorsion(n, 1000);
      bool same = P.has_value() == Q.has_value() && (!P || (P->x == Q->x && P->y == Q->y));
      if (same)
        ++agree;
      else
        o.require(false, "n = " + std::to_string(n));
      found += P.has_value();
    }
    o.detail << agree << "/49 agree (" << found << " with a witness)";
  });

  criterion("AC6 torsion of legendre fibres n=2..500", 120, [](Outcome& o) {
    std::map<std::string, int> tags;
    int maxord = 0;
    for (long n = 2; n <= 500; ++n) {
      auto E = legendre_fibre(n);
      auto T = ecq::torsion_subgroup(E);
      ++tags[T.tag()];
      o.require(T.full_two_torsion, "no full 2-torsion at n = " + std::to_string(n));
      o.require(ecq::is_mazur_admissible(T.order, T.full_two_torsion), "inadmissible at n = " + std::to_string(n));
      o.require(static_cast<int>(T.points.size()) == T.order, "point count at n = " + std::to_string(n));
      auto pts = ecq::search_points(E, 30);
      pts.insert(pts.end(), T.points.begin(), T.points.end());
      for (const auto& P : pts)
        if (auto k = ecq::torsion_order_bounded(E, P)) {
          maxord = std::max(maxord, *k);
          o.require(*k <= 12, "order " + std::to_string(*k) + " at n = " + std::to_string(n));
        }
    }
    for (const auto& [t, k] : tags) o.detail << t << ": " << k << ", ";
    o.detail << "largest finite order " << maxord;
  });

  criterion("AC7 fibre product genus and branch closure", 300, [](Outcome& o) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> c(-9, 9);
    int pairs = 0, oracle_checked = 0;
    for (std::uint64_t seed = 1; pairs < 20; ++seed) {
      RatFunc f = ramgeo::find_mildly_ramified(7, seed);
      auto bf = ramgeo::branch_data(f);
      std::set<std::string> fb;
      for (const auto& v : bf.branch_values) fb.insert(v.place.name());
      RatFunc g;
      for (;;) {
        Poly P{c(rng), c(rng), c(rng)}, Q{c(rng), c(rng), c(rng)};
        if (Q.is_zero()) continue;
        g = RatFunc(P, Q);
        if (g.degree() != 2) continue;
        bool disjoint = true;
        for (const auto& v : ramgeo::branch_data(g).branch_values) disjoint &= !fb.count(v.place.name());
        if (disjoint) break;
      }
      const long bound = ramgeo::fiber_product_genus_bound(f, g, 4);
      const auto fr = ramgeo::fiber_product_ramification(f, g);
      o.require(bound == 4, "bound " + std::to_string(bound) + " for seed " + std::to_string(seed));
      o.require(fr.genus_rh && *fr.genus_rh >= 4, "genus_rh below 4 or missing for seed " + std::to_string(seed));
      if (oracle_checked < 3) {
        auto og = oracle::bidegree_genus_q2(ramgeo::fiber_product_equation(f, g), 7);
        o.require(og && fr.genus_rh && *og == *fr.genus_rh, "singularity oracle disagrees for seed " + std::to_string(seed));
        ++oracle_checked;
      }
      ++pairs;
    }
    int closed = 0;
    std::uniform_int_distribution<int> dd(0, 9);
    for (int i = 0; i < 1000;) {
      Poly P = random_poly(rng, dd(rng), 9), Q = random_poly(rng, dd(rng), 9);
      if (Q.is_zero()) continue;
      RatFunc f(P, Q);
      if (f.degree() < 1) continue;
      auto b = ramgeo::branch_data(f);
      long sum = 0;
      for (const auto& cp : b.critical_points) sum += cp.place.degree() * (cp.e - 1);
      if (sum == 2L * f.degree() - 2) ++closed;
      else o.require(false, "closure fails for " + f.to_string());
      ++i;
    }
    o.detail << pairs << " pairs with bound 4 and genus_rh >= 4, oracle agrees on " << oracle_checked
             << ", closure " << closed << "/1000";
  });

  criterion("AC8 additive basis desk checks", 60, [&](Outcome& o) {
    const std::int64_t K = 10000;
    std::vector<std::int64_t> evens, odds, squares;
    for (std::int64_t n = 0; n <= K; ++n) (n % 2 ? odds : evens).push_back(n);
    for (std::int64_t s = 0; s * s <= K; ++s) squares.push_back(s * s);
    auto se = addens::schnirelmann_truncated({K, evens}), so = addens::schnirelmann_truncated({K, odds});
    o.require(se == 0, "sigma(evens) = " + se.get_str());
    o.require(so == BigRat(1, 2), "sigma(odds) = " + so.get_str());
    // least number of squares for each n <= K, by dynamic programming
    std::vector<int> best(K + 1, 1 << 20);
    best[0] = 0;
    for (std::int64_t n = 1; n <= K; ++n)
      for (std::int64_t s = 1; s * s <= n; ++s) best[n] = std::min(best[n], best[n - s * s] + 1);
    const int want = *std::max_element(best.begin(), best.end());
    auto h = addens::basis_order({K, squares}, 10);
    o.require(h && *h == want, "squares order differs from brute force " + std::to_string(want));
    std::vector<std::int64_t> minus;
    for (const auto& r : expcli::read_sweep_csv(csv1.string()))
      if (r.root_number == "-1") minus.push_back(r.n);
    o.require(!minus.empty(), "sweep gave an empty S-1");
    std::optional<int> hs;
    if (!minus.empty()) {
      auto cr = addens::criterion_pipeline({2000, minus}, 2000);
      hs = cr.h;
      o.require(cr.h.has_value(), "pipeline on S-1 did not terminate below 2000");
      o.detail << "sigma evens 0, odds 1/2, squares order " << (h ? *h : -1) << " (brute force " << want
               << "), S-1 with {0,1}: sigma_K " << cr.sigma_K.get_str() << ", h " << (hs ? *hs : -1);
    }
  });

  criterion("AC9 sweep byte-identical for jobs=1 and jobs=8", 0, [&](Outcome& o) {
    fs::remove(csv8);
    std::ostringstream diag;
    auto s8 = expcli::run_sweep(legendre_sweep(csv8, 8), {true, false}, diag);
    const std::string a = slurp(csv1), b = slurp(csv8);
    o.require(!a.empty(), "jobs=1 CSV missing");
    o.require(a == b, "CSV bytes differ");
    o.require(expcli::to_json(s8) == expcli::to_json(s1), "summaries differ");
    o.detail << a.size() << " bytes identical";
  });

  std::cout << (failures ? "ACCEPTANCE FAIL " : "ACCEPTANCE PASS ") << (ran - failures) << "/" << ran << std::endl;
  return failures ? 1 : 0;
}
