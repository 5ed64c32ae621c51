#include "dioph/expcli/analysis.hpp"

#include <map>

#include "dioph/addens/addens.hpp"
#include "dioph/expcli/sweep.hpp"
#include "dioph/qalg/factor.hpp"
#include "json.hpp"

namespace dioph::expcli {

using ksurface::KodairaDimension;
using ksurface::Place;

LegendreAudit audit_legendre(int d) {
  LegendreAudit a;
  a.d = d;
  a.report = ksurface::surface_report(ksurface::legendre_power(d));

  std::map<Place, std::string> expected;
  expected.emplace(Place::finite(qalg::Poly::x()), "I_" + std::to_string(2 * d));
  for (const auto& pi : qalg::irreducible_factors(qalg::Poly::monomial(1, d) - qalg::Poly::constant(1)))
    expected.emplace(Place::finite(pi), "I_2");
  expected.emplace(Place::infinity(), (d % 2 ? "I*_" : "I_") + std::to_string(2 * d));

  std::map<Place, std::string> got;
  for (const auto& f : a.report.fibres) got.emplace(f.place, f.type.to_string());
  for (const auto& [pl, t] : expected) {
    auto it = got.find(pl);
    if (it == got.end())
      a.failures.push_back("missing bad fibre at " + pl.name() + " (expected " + t + ")");
    else if (it->second != t)
      a.failures.push_back("fibre at " + pl.name() + " is " + it->second + ", expected " + t);
  }
  for (const auto& [pl, t] : got)
    if (!expected.count(pl)) a.failures.push_back("unexpected bad fibre " + t + " at " + pl.name());

  const long e = d % 2 ? 6L * (d + 1) : 6L * d;
  if (a.report.euler != e)
    a.failures.push_back("euler " + std::to_string(a.report.euler) + ", expected " + std::to_string(e));
  const KodairaDimension k = d <= 2 ? KodairaDimension::NegInf : d <= 4 ? KodairaDimension::Zero : KodairaDimension::One;
  if (a.report.kodaira_dim != k)
    a.failures.push_back("kappa " + ksurface::to_string(a.report.kodaira_dim) + ", expected " + ksurface::to_string(k));
  return a;
}

std::string to_json(const std::vector<LegendreAudit>& audits) {
  nlohmann::ordered_json j;
  j["schema"] = "1";
  bool all = true;
  auto& arr = j["surfaces"] = nlohmann::ordered_json::array();
  for (const auto& a : audits) {
    all &= a.pass();
    nlohmann::ordered_json e;
    e["d"] = a.d;
    e["pass"] = a.pass();
    e["failures"] = a.failures;
    e["report"] = nlohmann::ordered_json::parse(ksurface::to_json(a.report));
    arr.push_back(e);
  }
  j["pass"] = all;
  return j.dump(2);
}

std::string fibre_report_json(const ksurface::WeierstrassSurface& S) {
  auto j = nlohmann::ordered_json::parse(ksurface::to_json(ksurface::surface_report(S)));
  j["model"] = S.to_string();
  return j.dump(2);
}

std::string run_density_analysis(const std::string& csv_path, const DensitySelection& sel) {
  static const std::vector<std::string> columns = {"n",         "smooth",      "conductor", "root_number", "rn_method",
                                                   "point_found", "point_x", "point_y",   "torsion"};
  auto col = std::find(columns.begin(), columns.end(), sel.column);
  if (col == columns.end()) throw ConfigError("unknown column '" + sel.column + "'");
  const std::vector<SweepRow> rows = read_sweep_csv(csv_path);
  std::vector<std::int64_t> picked;
  long n_max = 0;
  for (const auto& r : rows) {
    n_max = std::max(n_max, r.n);
    const std::string fields[] = {std::to_string(r.n), r.smooth ? "1" : "0", r.conductor, r.root_number, r.rn_method,
                                  r.point_found, r.point_x, r.point_y, r.torsion};
    if (fields[col - columns.begin()] == sel.value) picked.push_back(r.n);
  }
  const long K = sel.window.value_or(n_max);
  if (K < 2) throw ConfigError("window must be at least 2");
  const int h_max = sel.basis_limit.value_or(static_cast<int>(K));
  addens::NatSetWindow S(K, picked);
  const auto raw = addens::density_estimates(S);
  const auto crit = addens::criterion_pipeline(S, h_max);

  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["column"] = sel.column;
  j["select"] = sel.value;
  j["K"] = K;
  j["selected"] = S.members().size();
  j["sigma_K"] = crit.sigma_K.get_str();  // of S with 0, 1 adjoined
  j["sigma_K_selection"] = raw.sigma_K.get_str();
  j["ratio"] = raw.count_ratio.get_str();
  j["dyadic_lower"] = raw.dyadic_lower.get_str();
  j["dyadic_upper"] = raw.dyadic_upper.get_str();
  if (crit.h)
    j["h"] = *crit.h;
  else
    j["h"] = "exceeds " + std::to_string(h_max);
  j["basis_limit"] = h_max;
  j["note"] = "window estimates at K, not limits; 0 and 1 adjoined before the basis order";
  return j.dump(2);
}

}  // namespace dioph::expcli
