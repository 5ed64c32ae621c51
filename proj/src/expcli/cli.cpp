#include "dioph/expcli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "dioph/expcli/analysis.hpp"
#include "dioph/expcli/sweep.hpp"
#include "dioph/qalg/parse.hpp"
#include "dioph/ramgeo/ramgeo.hpp"
#include "json.hpp"

namespace dioph::expcli {

namespace {

constexpr int kOk = 0, kUsage = 1, kRuntime = 2, kAuditFailed = 3;

struct SweepFlags {
  CLI::App* cmd = nullptr;
  std::string surface, out, summary, mode;
  long n_min = 0, n_max = 0, height = 0;
  std::size_t terms_cap = 0;
  double tol = 0;

  void add(CLI::App* app, bool rank) {
    cmd = app;
    app->add_option("--surface", surface, "Weierstrass coefficients, e.g. \"a2 = 1 + t; a4 = t\"");
    app->add_option("--nmin", n_min, "first t = n");
    app->add_option("--nmax", n_max, "last t = n");
    app->add_option("--out", out, "CSV output (resumed if present)");
    app->add_option("--summary", summary, "summary JSON path (default stdout)");
    app->add_option("--terms-cap", terms_cap, "numeric root number term cap")->check(CLI::PositiveNumber);
    app->add_option("--tol", tol, "numeric root number tolerance")->check(CLI::PositiveNumber);
    if (rank) {
      app->add_option("--height", height, "naive height bound H")->check(CLI::PositiveNumber);
      app->add_option("--mode", mode, "search | root | both")->check(CLI::IsMember({"search", "root", "both"}));
    }
  }

  void apply(ExperimentConfig& c) const {
    auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
    if (given("--surface")) c.surface = surface;
    if (given("--nmin")) c.n_min = n_min;
    if (given("--nmax")) c.n_max = n_max;
    if (given("--out")) c.out = out;
    if (given("--summary")) c.summary = summary;
    if (given("--terms-cap")) c.terms_cap = terms_cap;
    if (given("--tol")) c.tol = tol;
    if (given("--height")) c.height = height;
    if (given("--mode")) c.mode = mode;
  }
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fibre audits, root-number and rank sweeps, ramification and density checks", "forge"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  int jobs = 0;
  app.add_option("--config", config_path, "JSON experiment config; flags override it");
  app.add_option("--jobs", jobs, "worker threads (also FORGE_JOBS)")->check(CLI::PositiveNumber);

  auto* fibres = app.add_subcommand("fibres", "Kodaira fibre table, Euler number and Kodaira dimension");
  std::string surface_text;
  int legendre_d = 0;
  auto* o_surface = fibres->add_option("--surface", surface_text, "Weierstrass coefficients");
  auto* o_legendre = fibres->add_option("--legendre", legendre_d, "y^2 = x(x+1)(x+t^d)")->check(CLI::PositiveNumber);
  o_surface->excludes(o_legendre);
  fibres->require_option(1);

  auto* audit = app.add_subcommand("audit-legendre", "check X^(d) against the closed forms");
  int dmin = 1, dmax = 8;
  audit->add_option("--dmin", dmin)->check(CLI::PositiveNumber);
  audit->add_option("--dmax", dmax)->check(CLI::PositiveNumber);

  SweepFlags root_flags, rank_flags;
  root_flags.add(app.add_subcommand("sweep-root", "root numbers of the fibres t = n"), false);
  rank_flags.add(app.add_subcommand("sweep-rank", "witness points and/or root numbers of the fibres t = n"), true);

  auto* genus = app.add_subcommand("genus", "genus bound and Riemann-Hurwitz data of f(x) = g(y)");
  std::string f_text, g_text;
  long r = 1;
  genus->add_option("--f", f_text, "degree p map, p prime, mildly ramified")->required();
  genus->add_option("--g", g_text, "degree q map, 2 <= q < p")->required();
  genus->add_option("--r", r, "target genus")->check(CLI::PositiveNumber);

  auto* mild = app.add_subcommand("mild", "search a mildly ramified map");
  int degree = 0;
  std::uint64_t seed = 0;
  mild->add_option("--degree", degree)->required()->check(CLI::PositiveNumber);
  mild->add_option("--seed", seed);

  auto* density = app.add_subcommand("density", "additive-basis pipeline on n selected from a sweep CSV");
  std::string in_path, column = "root_number", select = "-1";
  long window = 0;
  int basis_limit = 0;
  density->add_option("--in", in_path, "sweep CSV")->required();
  density->add_option("--column", column);
  density->add_option("--select", select, "keep rows whose column equals this");
  auto* o_window = density->add_option("--window", window, "K")->check(CLI::Range(2L, 1L << 40));
  auto* o_limit = density->add_option("--basis-limit", basis_limit, "h_max")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (const char* env = std::getenv("FORGE_JOBS")) {
      try {
        cfg.jobs = std::stoi(env);
      } catch (const std::exception&) {
        throw ConfigError(std::string("FORGE_JOBS is not a number: ") + env);
      }
    }
    if (app.count("--jobs")) cfg.jobs = jobs;

    if (*fibres) {
      auto S = o_legendre->count() ? ksurface::legendre_power(legendre_d) : ksurface::parse_surface(surface_text);
      out << fibre_report_json(S) << '\n';
      return kOk;
    }
    if (*audit) {
      if (dmin > dmax) throw ConfigError("--dmin exceeds --dmax");
      std::vector<LegendreAudit> audits;
      bool pass = true;
      for (int d = dmin; d <= dmax; ++d) {
        audits.push_back(audit_legendre(d));
        pass &= audits.back().pass();
      }
      out << to_json(audits) << '\n';
      for (const auto& a : audits)
        for (const auto& f : a.failures) err << "d = " << a.d << ": " << f << '\n';
      return pass ? kOk : kAuditFailed;
    }
    if (root_flags.cmd->parsed() || rank_flags.cmd->parsed()) {
      const bool rank = rank_flags.cmd->parsed();
      (rank ? rank_flags : root_flags).apply(cfg);
      cfg.validate();
      SweepColumns cols = rank ? columns_for_mode(cfg.mode) : SweepColumns{true, false};
      SweepSummary s = run_sweep(cfg, cols, err);
      emit(to_json(s), cfg.summary, out);
      return kOk;
    }
    if (*genus) {
      const auto f = qalg::parse_ratfunc(f_text), g = qalg::parse_ratfunc(g_text);
      const long bound = ramgeo::fiber_product_genus_bound(f, g, r);
      const auto fr = ramgeo::fiber_product_ramification(f, g);
      nlohmann::ordered_json j;
      j["schema"] = "1";
      j["p"] = fr.p;
      j["q"] = fr.q;
      j["r"] = r;
      j["bound"] = bound;
      j["branch_lower"] = fr.branch_count_lower;
      j["h_branch_points"] = fr.h_branch_points;
      j["transverse"] = fr.transverse;
      if (fr.genus_rh)
        j["genus_rh"] = *fr.genus_rh;
      else
        j["genus_rh"] = "unavailable";
      out << j.dump() << '\n';
      return kOk;
    }
    if (*mild) {
      const auto f = ramgeo::find_mildly_ramified(degree, seed);
      out << ramgeo::to_json(ramgeo::branch_data(f), f) << '\n';
      return kOk;
    }
    if (*density) {
      DensitySelection sel;
      sel.column = column;
      sel.value = select;
      if (o_window->count()) sel.window = window;
      if (o_limit->count()) sel.basis_limit = basis_limit;
      out << run_density_analysis(in_path, sel) << '\n';
      return kOk;
    }
  } catch (const qalg::ParseError& e) {
    err << "error: " << e.what() << '\n' << e.caret() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace dioph::expcli
