#include "dioph/ramgeo/ramgeo.hpp"

#include <map>
#include <random>

#include "json.hpp"

#include "dioph/qalg/factor.hpp"

namespace dioph::ramgeo {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

// Newton form through (i, ys[i]), i = 0..n.
Poly interpolate(const std::vector<BigRat>& ys) {
  const int n = static_cast<int>(ys.size());
  std::vector<BigRat> c(ys);
  for (int j = 1; j < n; ++j)
    for (int i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / j;
  Poly out = Poly::constant(c[n - 1]);
  for (int i = n - 2; i >= 0; --i) out = out * Poly{BigRat(-i), 1} + Poly::constant(c[i]);
  return out;
}

// Image of a Galois orbit of source points under f = P/Q.
Place image(const RatFunc& f, const Place& src) {
  const Poly &P = f.numer(), &Q = f.denom();
  if (src.is_infinity()) {
    if (P.degree() > Q.degree()) return Place::infinity();
    BigRat c = P.degree() < Q.degree() ? BigRat(0) : BigRat(P.leading() / Q.leading());
    return Place::finite(Poly{-c, 1});
  }
  const Poly& pi = src.poly();
  if ((Q % pi).is_zero()) return Place::infinity();
  // prod over roots a of pi of (y Q(a) - P(a)), sampled at y = 0..k and interpolated.
  const int k = pi.degree();
  std::vector<BigRat> vals;
  for (int y = 0; y <= k; ++y) vals.push_back(qalg::resultant(pi, Poly::constant(y) * Q - P));
  auto irr = qalg::irreducible_factors(interpolate(vals));
  if (irr.size() != 1) throw Error("internal: branch value orbit is not irreducible");
  return Place::finite(irr.front());
}

}  // namespace

int BranchData::branch_point_count() const {
  int n = 0;
  for (const auto& b : branch_values) n += b.place.degree();
  return n;
}

BranchData branch_data(const RatFunc& f) {
  const int d = f.degree();
  if (d < 1) throw Error("branch data needs a nonconstant map");
  const Poly &P = f.numer(), &Q = f.denom();
  const Poly W = P.derivative() * Q - P * Q.derivative();

  BranchData out;
  out.degree = d;
  int finite_total = 0;
  for (const auto& fac : qalg::factor_q(W).factors) {
    out.critical_points.push_back({Place::finite(fac.poly), fac.multiplicity + 1});
    finite_total += fac.poly.degree() * fac.multiplicity;
  }
  // what the finite Wronskian misses sits at infinity
  const int at_inf = 2 * d - 2 - finite_total;
  if (at_inf < 0) throw Error("internal: Wronskian degree exceeds 2d - 2");
  if (at_inf > 0) out.critical_points.push_back({Place::infinity(), at_inf + 1});

  std::map<Place, int> above;  // summed k (e - 1) over the orbit
  for (const auto& cp : out.critical_points) {
    above[image(f, cp.place)] += cp.place.degree() * (cp.e - 1);
    out.total_ramification += cp.place.degree() * (cp.e - 1);
  }
  for (const auto& [pl, r] : above) out.branch_values.push_back({pl, r / pl.degree()});
  if (out.total_ramification != 2 * d - 2) throw Error("internal: Riemann-Hurwitz fails");
  return out;
}

bool is_mildly_ramified(const BranchData& b) { return b.branch_point_count() == 2 * b.degree - 2; }

bool is_mildly_ramified(const RatFunc& f) { return is_mildly_ramified(branch_data(f)); }

RatFunc find_mildly_ramified(int d, std::uint64_t seed) {
  if (d < 1) throw Error("degree must be positive, got " + std::to_string(d));
  if (d == 1) return RatFunc::t();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-kMildCoeffBound, kMildCoeffBound);
  auto sample = [&] {
    std::vector<BigRat> c(d + 1);
    for (auto& x : c) x = coeff(rng);
    return Poly(std::move(c));
  };
  for (int attempt = 0; attempt < kMildAttemptCap; ++attempt) {
    Poly num = sample(), den = sample();
    if (den.is_zero()) continue;
    RatFunc f(num, den);
    if (f.degree() == d && is_mildly_ramified(f)) return f;
  }
  throw SearchExhausted("no mildly ramified map of degree " + std::to_string(d) + " after " +
                        std::to_string(kMildAttemptCap) + " samples");
}

long fiber_product_genus_bound(const RatFunc& f, const RatFunc& g, long r) {
  const int p = f.degree(), q = g.degree();
  if (!is_prime(p)) throw HypothesisViolated("deg f = " + std::to_string(p) + " is not prime");
  if (q < 2) throw HypothesisViolated("deg g = " + std::to_string(q) + " is below 2");
  if (r < 1) throw HypothesisViolated("r must be positive");
  if (p < q + r + 1)
    throw HypothesisViolated("need p >= q + r + 1, have p = " + std::to_string(p) + ", q = " + std::to_string(q) +
                             ", r = " + std::to_string(r));
  if (!is_mildly_ramified(f)) throw HypothesisViolated("f is not mildly ramified");
  const long bound = static_cast<long>(q) * (p - q) - p + 1;
  // q(p-q) - p + 1 = (q-1)(p-q) - (q-1) >= (q-1) r >= r
  if (bound < static_cast<long>(q - 1) * r || bound < r) throw Error("internal: genus chain broken");
  return bound;
}

FiberProductRamification fiber_product_ramification(const RatFunc& f, const RatFunc& g) {
  FiberProductRamification out;
  out.p = f.degree();
  out.q = g.degree();
  const int p = out.p, q = out.q;
  if (!is_prime(p)) throw HypothesisViolated("deg f = " + std::to_string(p) + " is not prime");
  if (q < 2 || p <= q) throw HypothesisViolated("need p > q >= 2");
  const BranchData bf = branch_data(f);
  if (!is_mildly_ramified(bf)) throw HypothesisViolated("f is not mildly ramified");
  const BranchData bg = branch_data(g);

  out.branch_count_lower = 2L * q * (p - q);
  out.transverse = true;
  long ram_sum = 0;  // sum of (e - 1) over points of the curve, for y-projection
  for (const auto& b : bf.branch_values) {
    bool shared = false;
    for (const auto& c : bg.branch_values) shared |= c.place == b.place;
    if (shared) {
      out.transverse = false;
      continue;
    }
    // g is unramified above each of these points, so each has q preimages
    out.h_branch_points += static_cast<long>(q) * b.place.degree();
    ram_sum += static_cast<long>(q) * b.place.degree() * b.ramification;
  }
  if (out.h_branch_points < out.branch_count_lower) throw Error("internal: fewer branch points than 2q(p - q)");
  if (out.transverse) {
    // points above branch values of g have f unramified and contribute nothing
    long two_g = ram_sum - 2L * p + 2;
    if (two_g % 2 != 0) throw Error("internal: odd Riemann-Hurwitz sum");
    out.genus_rh = two_g / 2;
  }
  return out;
}

std::vector<Poly> fiber_product_equation(const RatFunc& f, const RatFunc& g) {
  const Poly &P1 = f.numer(), &Q1 = f.denom(), &P2 = g.numer(), &Q2 = g.denom();
  const int n = std::max(P2.degree(), Q2.degree());
  std::vector<Poly> out;
  for (int j = 0; j <= n; ++j) {
    out.push_back(P1 * Q2.coeff(j) - Q1 * P2.coeff(j));
  }
  return out;
}

std::string to_json(const BranchData& b, const RatFunc& f) {
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["f"] = f.to_string();
  j["degree"] = b.degree;
  j["mild"] = is_mildly_ramified(b);
  j["branch_points"] = b.branch_point_count();
  j["total_ramification"] = b.total_ramification;
  auto& cps = j["critical_points"] = nlohmann::ordered_json::array();
  for (const auto& c : b.critical_points) cps.push_back({{"place", c.place.name()}, {"e", c.e}});
  auto& bvs = j["branch_values"] = nlohmann::ordered_json::array();
  for (const auto& v : b.branch_values)
    bvs.push_back({{"place", v.place.name()}, {"ramification", v.ramification}});
  return j.dump();
}

}  // namespace dioph::ramgeo
