#include "dioph/expcli/sweep.hpp"

#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "dioph/ecq/points.hpp"
#include "dioph/ecq/rootnum.hpp"
#include "dioph/ecq/torsion.hpp"
#include "json.hpp"

namespace dioph::expcli {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out(1);
  for (char ch : line) {
    if (ch == ',')
      out.emplace_back();
    else
      out.back() += ch;
  }
  return out;
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

// Canonical form only: lowest terms, positive denominator, no "/1".
bool is_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return is_integer(s);
  if (!is_integer(s.substr(0, slash)) || !is_integer(s.substr(slash + 1))) return false;
  qalg::BigRat q(s);
  if (q.get_den() == 0) return false;
  q.canonicalize();
  return q.get_str() == s;
}

std::string rat(const qalg::BigRat& q) { return q.get_str(); }

}  // namespace

SweepColumns columns_for_mode(const std::string& mode) {
  if (mode == "search") return {false, true};
  if (mode == "root") return {true, false};
  if (mode == "both") return {true, true};
  throw ConfigError("unknown mode '" + mode + "'");
}

SweepRow compute_row(const ksurface::WeierstrassSurface& S, long n, const ExperimentConfig& cfg, SweepColumns cols) {
  SweepRow r;
  r.n = n;
  std::optional<ecq::CurveQ> E;
  try {
    E = ecq::specialize(S, qalg::BigRat(n));
  } catch (const ecq::SingularFibre&) {
    return r;
  } catch (const qalg::PoleAt&) {
    r.error = "coefficients have a pole at t = " + std::to_string(n);
    return r;
  }
  r.smooth = true;
  try {
    const ecq::CurveAnalysis A = ecq::analyze(*E);
    r.conductor = A.conductor.get_str();
    if (cols.root) {
      try {
        ecq::NumericOptions opt;
        opt.tol = cfg.tol;
        opt.max_terms = cfg.terms_cap;
        auto w = ecq::root_number(A, opt);
        r.root_number = std::to_string(w.w);
        r.rn_method = w.method == ecq::RootNumberMethod::ProductFormula ? "product" : "numeric";
      } catch (const ecq::AmbiguousSign& e) {
        r.error = e.what();
      }
    }
    if (cols.search) {
      auto P = ecq::find_infinite_order_point(*E, cfg.height);
      r.point_found = P ? "1" : "0";
      if (P) {
        r.point_x = rat(P->x);
        r.point_y = rat(P->y);
      }
      r.torsion = ecq::torsion_subgroup(A, *E).tag();
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::string to_csv_line(const SweepRow& r) {
  std::string s = std::to_string(r.n) + (r.smooth ? ",1" : ",0");
  for (const std::string* f : {&r.conductor, &r.root_number, &r.rn_method, &r.point_found, &r.point_x, &r.point_y,
                               &r.torsion})
    s += ',' + *f;
  return s;
}

std::optional<SweepRow> parse_csv_line(const std::string& line) {
  auto f = split_fields(line);
  if (f.size() != 9) return std::nullopt;
  SweepRow r;
  if (!is_integer(f[0]) || f[0].size() > 18) return std::nullopt;
  r.n = std::stol(f[0]);
  if (f[1] != "0" && f[1] != "1") return std::nullopt;
  r.smooth = f[1] == "1";
  r.conductor = f[2];
  r.root_number = f[3];
  r.rn_method = f[4];
  r.point_found = f[5];
  r.point_x = f[6];
  r.point_y = f[7];
  r.torsion = f[8];
  if (!r.conductor.empty() && !is_integer(r.conductor)) return std::nullopt;
  if (!r.root_number.empty() && r.root_number != "1" && r.root_number != "-1") return std::nullopt;
  if (r.rn_method != "product" && r.rn_method != "numeric" && r.rn_method != "na") return std::nullopt;
  if ((r.rn_method == "na") != r.root_number.empty()) return std::nullopt;
  if (!r.point_found.empty() && r.point_found != "0" && r.point_found != "1") return std::nullopt;
  if ((r.point_found == "1") != !r.point_x.empty() || r.point_x.empty() != r.point_y.empty()) return std::nullopt;
  if (!r.point_x.empty() && (!is_rational(r.point_x) || !is_rational(r.point_y))) return std::nullopt;
  if (!r.smooth && (!r.conductor.empty() || !r.root_number.empty() || !r.point_found.empty() || !r.torsion.empty()))
    return std::nullopt;
  return r;
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw SchemaError(path + ":1: header is not the sweep schema '" + std::string(kCsvHeader) + "'");
  std::vector<SweepRow> rows;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto r = parse_csv_line(line);
    if (!r) throw SchemaError(path + ":" + std::to_string(lineno) + ": malformed row");
    if (!rows.empty() && r->n <= rows.back().n)
      throw SchemaError(path + ":" + std::to_string(lineno) + ": n is not increasing");
    rows.push_back(std::move(*r));
  }
  return rows;
}

SweepSummary summarize(const std::vector<SweepRow>& rows, SweepColumns cols) {
  SweepSummary s;
  s.columns = cols;
  s.rows = static_cast<long>(rows.size());
  if (rows.empty()) return s;
  s.n_min = rows.front().n;
  s.n_max = rows.back().n;
  for (const auto& r : rows) {
    if (!r.smooth) continue;
    ++s.smooth;
    if (cols.root) {
      if (r.root_number == "-1")
        ++s.s_minus;
      else if (r.root_number == "1")
        ++s.s_plus;
      else
        ++s.unresolved;
    }
    if (cols.search) {
      bool found = r.point_found == "1";
      found ? ++s.witnesses : ++s.no_witness;
      if (cols.root && !r.root_number.empty()) {
        bool minus = r.root_number == "-1";
        ++s.agree[found][minus];
        if (found && !minus) s.parity_interesting.push_back(r.n);
      }
    }
  }
  std::vector<long> xs;
  for (long x = 1; x <= s.n_max; x *= 2)
    if (x >= s.n_min) xs.push_back(x);
  if (xs.empty() || xs.back() != s.n_max) xs.push_back(s.n_max);
  std::size_t i = 0;
  Checkpoint run;
  for (long x : xs) {
    for (; i < rows.size() && rows[i].n <= x; ++i) {
      run.n_search += rows[i].point_found == "1";
      run.n_root += rows[i].root_number == "-1";
    }
    run.x = x;
    s.checkpoints.push_back(run);
  }
  return s;
}

std::string to_json(const SweepSummary& s) {
  auto ratio = [](long a, long b) {
    if (b == 0) return std::string();
    qalg::BigRat q(a, b);
    q.canonicalize();
    return q.get_str();
  };
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["n_min"] = s.n_min;
  j["n_max"] = s.n_max;
  j["rows"] = s.rows;
  j["smooth"] = s.smooth;
  if (s.columns.root) {
    j["s_minus"] = s.s_minus;
    j["s_plus"] = s.s_plus;
    j["unresolved"] = s.unresolved;
    j["ratio_minus"] = ratio(s.s_minus, s.smooth);
    j["ratio_plus"] = ratio(s.s_plus, s.smooth);
    j["partition_exact"] = s.unresolved == 0 && s.s_minus + s.s_plus == s.smooth;
    j["observation"] = "share of w = -1 among smooth fibres; the conjectured natural density is 1/2";
  }
  if (s.columns.search) {
    j["witnesses"] = s.witnesses;
    j["no_witness_below_H"] = s.no_witness;
  }
  if (s.columns.root && s.columns.search) {
    j["agreement"] = {{"witness_w_minus", s.agree[1][1]},
                      {"witness_w_plus", s.agree[1][0]},
                      {"none_w_minus", s.agree[0][1]},
                      {"none_w_plus", s.agree[0][0]}};
    j["parity_interesting"] = s.parity_interesting;
  }
  auto& cps = j["checkpoints"] = nlohmann::ordered_json::array();
  for (const auto& c : s.checkpoints) {
    nlohmann::ordered_json e;
    e["x"] = c.x;
    if (s.columns.search) {
      e["N_search"] = c.n_search;
      e["N_search_over_x"] = ratio(c.n_search, c.x);
    }
    if (s.columns.root) {
      e["N_root"] = c.n_root;
      e["N_root_over_x"] = ratio(c.n_root, c.x);
    }
    cps.push_back(e);
  }
  return j.dump(2);
}

SweepSummary run_sweep(const ExperimentConfig& cfg, SweepColumns cols, std::ostream& diag) {
  cfg.validate();
  const ksurface::WeierstrassSurface S = ksurface::parse_surface(cfg.surface);
  {
    bool multiplicative = false;
    for (const auto& f : ksurface::surface_report(S).fibres)
      multiplicative |= !f.place.is_infinity() && f.type.is_multiplicative();
    if (!multiplicative)
      diag << "warning: no multiplicative fibre over the affine line; the sign heuristics do not apply\n";
  }

  // Resume after the last complete, consecutive row.
  namespace fs = std::filesystem;
  long next = cfg.n_min;
  if (fs::exists(cfg.out)) {
    std::ifstream in(cfg.out, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    std::size_t pos = text.find('\n');
    if (pos == std::string::npos || text.substr(0, pos) != kCsvHeader)
      throw SchemaError(cfg.out + " exists and is not a sweep CSV; refusing to overwrite");
    std::size_t keep = pos + 1;
    while (keep < text.size()) {
      std::size_t end = text.find('\n', keep);
      if (end == std::string::npos) break;  // torn last line
      auto r = parse_csv_line(text.substr(keep, end - keep));
      if (!r || r->n != next) break;
      ++next;
      keep = end + 1;
    }
    in.close();
    if (keep < text.size()) fs::resize_file(cfg.out, keep);
    if (next > cfg.n_min) diag << "resuming " << cfg.out << " at n = " << next << "\n";
  } else {
    std::ofstream(cfg.out, std::ios::binary) << kCsvHeader << '\n';
  }

  if (next <= cfg.n_max) {
    const long count = cfg.n_max - next + 1;
    const long chunks = (count + kChunk - 1) / kChunk;
    std::vector<std::optional<std::vector<SweepRow>>> done(static_cast<std::size_t>(chunks));
    std::mutex mu;
    std::condition_variable cv;
    const int jobs = static_cast<int>(std::min<long>(cfg.jobs, chunks));
    auto worker = [&](int w) {
      for (long c = w; c < chunks; c += jobs) {
        std::vector<SweepRow> rows;
        for (long n = next + c * kChunk; n < next + (c + 1) * kChunk && n <= cfg.n_max; ++n)
          rows.push_back(compute_row(S, n, cfg, cols));
        {
          std::lock_guard lock(mu);
          done[static_cast<std::size_t>(c)] = std::move(rows);
        }
        cv.notify_all();
      }
    };
    std::vector<std::jthread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);

    std::ofstream out(cfg.out, std::ios::binary | std::ios::app);
    for (long c = 0; c < chunks; ++c) {
      std::vector<SweepRow> rows;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return done[static_cast<std::size_t>(c)].has_value(); });
        rows = std::move(*done[static_cast<std::size_t>(c)]);
        done[static_cast<std::size_t>(c)].reset();
      }
      for (const auto& r : rows) {
        out << to_csv_line(r) << '\n';
        if (!r.error.empty()) diag << "n = " << r.n << ": " << r.error << "\n";
      }
      out.flush();
    }
  }
  return summarize(read_sweep_csv(cfg.out), cols);
}

}  // namespace dioph::expcli
