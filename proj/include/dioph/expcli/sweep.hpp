#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dioph/expcli/config.hpp"
#include "dioph/ksurface/surface.hpp"

namespace dioph::expcli {

class SchemaError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kCsvHeader = "n,smooth,conductor,root_number,rn_method,point_found,point_x,point_y,torsion";
inline constexpr long kChunk = 16;

struct SweepColumns {
  bool root = true;
  bool search = false;
};
/// "search", "root" or "both".
SweepColumns columns_for_mode(const std::string& mode);

/// One CSV row, fields already in their serialized form; empty means not computed.
struct SweepRow {
  long n = 0;
  bool smooth = false;
  std::string conductor, root_number, rn_method = "na", point_found, point_x, point_y, torsion;
  std::string error;  // diagnostics only, never written

  friend bool operator==(const SweepRow& a, const SweepRow& b) {
    return a.n == b.n && a.smooth == b.smooth && a.conductor == b.conductor && a.root_number == b.root_number &&
           a.rn_method == b.rn_method && a.point_found == b.point_found && a.point_x == b.point_x &&
           a.point_y == b.point_y && a.torsion == b.torsion;
  }
};

SweepRow compute_row(const ksurface::WeierstrassSurface& S, long n, const ExperimentConfig& cfg, SweepColumns cols);

std::string to_csv_line(const SweepRow& r);
/// nullopt for anything that is not a well-formed row.
std::optional<SweepRow> parse_csv_line(const std::string& line);
/// Strict reader; throws SchemaError naming the 1-based line of the first violation.
std::vector<SweepRow> read_sweep_csv(const std::string& path);

struct Checkpoint {
  long x = 0;
  long n_search = 0;  // n <= x with a witness point
  long n_root = 0;    // n <= x with w = -1
};

struct SweepSummary {
  SweepColumns columns;
  long rows = 0, smooth = 0;
  long s_minus = 0, s_plus = 0, unresolved = 0;
  long witnesses = 0, no_witness = 0;
  long agree[2][2] = {{0, 0}, {0, 0}};  // [witness found][w == -1]
  std::vector<long> parity_interesting;  // witness found and w = +1
  std::vector<Checkpoint> checkpoints;
  long n_min = 0, n_max = 0;
};

SweepSummary summarize(const std::vector<SweepRow>& rows, SweepColumns cols);
std::string to_json(const SweepSummary& s);

/// Writes cfg.out (resuming after its last complete row), then summarizes the whole file.
/// Progress and per-row errors go to `diag`.
SweepSummary run_sweep(const ExperimentConfig& cfg, SweepColumns cols, std::ostream& diag);

}  // namespace dioph::expcli
