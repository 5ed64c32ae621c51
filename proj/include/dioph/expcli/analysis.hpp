#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dioph/ksurface/surface.hpp"

namespace dioph::expcli {

/// One Legendre power X^(d): y^2 = x(x+1)(x+t^d) against its closed forms
/// (I_2d at t = 0, I_2 over t^d = 1, I_2d or I*_2d at infinity by parity of d,
/// e = 6d or 6(d+1), kappa -inf / 0 / 1).
struct LegendreAudit {
  int d = 0;
  ksurface::SurfaceReport report;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

LegendreAudit audit_legendre(int d);
std::string to_json(const std::vector<LegendreAudit>& audits);

/// Fibre table of an arbitrary surface.
std::string fibre_report_json(const ksurface::WeierstrassSurface& S);

struct DensitySelection {
  std::string column = "root_number";
  std::string value = "-1";
  std::optional<long> window;      // default: largest n in the file
  std::optional<int> basis_limit;  // default: the window
};

/// Selected n from a sweep CSV fed through the additive-basis pipeline.
std::string run_density_analysis(const std::string& csv_path, const DensitySelection& sel);

}  // namespace dioph::expcli
