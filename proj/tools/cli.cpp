#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "csv.hpp"
#include "dqd/parallel.hpp"
#include "dqd/scales.hpp"
#include "oracle_check.hpp"

namespace dqd::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct GlobalFlags {
  std::string config;
  std::string out;
  int workers = default_workers();
  std::uint64_t seed = 42;
  std::size_t dense_cap = kDefaultDenseCap;
  int max_sites = 0;  // 0: keep the solver defaults
  bool inject_fault = false;
};

SolverOptions solver_options(const GlobalFlags& g) {
  SolverOptions o;
  o.dense_cap = g.dense_cap;
  o.workers = std::max(1, g.workers);
  if (g.max_sites > 0) {
    o.max_thermal_sites = g.max_sites;
    o.max_ground_sites = g.max_sites;
  }
  return o;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const std::invalid_argument*>(&e))
    return kExitUsage;
  return kExitNumerical;
}

int cmd_solve(const RawConfig& cfg, const GlobalFlags& g, std::ostream& out) {
  const ModelSpec spec = model_from(cfg);
  const PointResult r = evaluate_point(spec, solver_options(g));
  out << kFormatLine << '\n' << result_header() << '\n' << result_row(r) << '\n';
  return kExitOk;
}

int cmd_sweep(const RawConfig& cfg, const GlobalFlags& g, std::ostream& out) {
  const ModelSpec base = model_from(cfg);
  const SweepSpec sweep = sweep_from(cfg);
  const auto grid = sweep.grid();
  SolverOptions point_opts = solver_options(g);
  const int workers = point_opts.workers;
  point_opts.workers = 1;
  std::vector<std::string> rows(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    ModelSpec spec = base;
    set_axis(spec, sweep.axis, grid[i]);
    try {
      rows[i] = result_row(evaluate_point(spec, point_opts));
    } catch (const std::exception& e) {
      rows[i] = error_row(spec, exit_code_for(e));
    }
  });
  out << kFormatLine << '\n' << result_header() << '\n';
  for (const auto& row : rows) out << row << '\n';
  return kExitOk;
}

std::string phase_header() {
  return "u_over_gamma,U,Gamma,T_K,J_c_numeric,t_c_numeric,J_c_analytic,"
         "J_c_analytic_over_T_K,J_spin_quarter,dn2_at_jc,dn2_at_jmax,status";
}

std::string phase_row(const ModelSpec& base, const PhaseSpec& phase, double ratio,
                      const ScaleConstants& k, const SolverOptions& opts) {
  ModelSpec spec = base;
  const double gamma = hybridization_width(spec).value();
  spec.U = ratio * gamma;
  const auto t_of = [&](double J) { return std::sqrt(J * spec.U / 4.0); };
  const double t_lo = t_of(phase.j_min);
  const double t_hi = t_of(phase.j_max);

  double tk = kNaN;
  double jc_analytic = kNaN;
  if (spec.topology.kind != TopologyKind::Custom) {
    tk = haldane_tk(spec.U, gamma);
    jc_analytic = critical_j_analytic(spec.topology.kind, spec.U, gamma, k).j_c;
  }
  std::string status = "ok";
  const JcSearch jc = find_jc_numeric(spec, spec.T, spec.B, t_lo, t_hi, opts, phase.threshold);
  double jc_numeric = kNaN;
  double tc = kNaN;
  double dn2_at_jc = kNaN;
  if (jc.estimate) {
    jc_numeric = jc.estimate->j_c;
    tc = *jc.estimate->t_c;
    ModelSpec at = spec;
    at.t = tc;
    dn2_at_jc = evaluate_point(at, opts).correlators.dn2_a;
  } else {
    status = "no-crossing:C";
  }
  const CrossingResult quarter = bisect_crossing(
      spec, SweepAxis::t, t_lo, t_hi,
      [](const PointResult& r) { return -r.correlators.spin_dot; }, 0.25, 1e-3, opts);
  double j_quarter = kNaN;
  if (quarter.found)
    j_quarter = 4.0 * quarter.estimate * quarter.estimate / spec.U;
  else
    status = status == "ok" ? "no-crossing:spin" : status + ";spin";
  ModelSpec top = spec;
  top.t = t_hi;
  const double dn2_at_jmax = evaluate_point(top, opts).correlators.dn2_a;

  std::vector<double> values = {ratio, spec.U, gamma, tk, jc_numeric, tc, jc_analytic,
                                std::isnan(tk) ? kNaN : jc_analytic / tk, j_quarter,
                                dn2_at_jc, dn2_at_jmax};
  std::string row;
  for (double v : values) row += format_number(v) + ',';
  return row + status;
}

int cmd_phase(const RawConfig& cfg, const GlobalFlags& g, std::ostream& out) {
  ModelSpec base = model_from(cfg);
  const PhaseSpec phase = phase_from(cfg);
  const ScaleConstants k = constants_from(cfg);
  if (base.lead_len == 0) throw ConfigError("lead_len", "phase scan needs leads (Gamma > 0)");
  if (!(hybridization_width(base).value() > 0))
    throw ConfigError("t_prime", "phase scan needs Gamma > 0");
  SolverOptions point_opts = solver_options(g);
  const int workers = point_opts.workers;
  point_opts.workers = 1;
  std::vector<std::string> rows(phase.ratios.size());
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    try {
      rows[i] = phase_row(base, phase, phase.ratios[i], k, point_opts);
    } catch (const std::exception& e) {
      rows[i] = format_number(phase.ratios[i]) + ",,,,,,,,,,,error:" +
                std::to_string(exit_code_for(e));
    }
  });
  out << kFormatLine << '\n' << phase_header() << '\n';
  for (const auto& row : rows) out << row << '\n';
  return kExitOk;
}

int cmd_scales(const RawConfig& cfg, std::ostream& out) {
  const ModelSpec spec = model_from(cfg);
  const ScaleConstants k = constants_from(cfg);
  const double U = spec.U;
  double gamma = 0.0;
  if (const auto g = find_double(cfg, "Gamma"))
    gamma = *g;
  else if (spec.lead_len > 0)
    gamma = hybridization_width(spec).value();
  const double J = find_double(cfg, "J").value_or(effective_exchange(spec).superexchange.value_or(0.0));
  if (!(U > 0)) throw ConfigError("U", "must be > 0 for the scale formulas");
  if (!(gamma > 0)) throw ConfigError("Gamma", "must be > 0 for the scale formulas");
  if (!(J >= 0)) throw ConfigError("J", "must be >= 0");

  const double tk = haldane_tk(U, gamma);
  const double j1c = critical_j_analytic(TopologyKind::Series, U, gamma, k).j_c;
  const double j2c = critical_j_analytic(TopologyKind::SideCoupled, U, gamma, k).j_c;
  const RkkyEstimate rkky = rkky_estimate(gamma, U, k);
  const std::vector<std::pair<std::string, double>> rows = {
      {"U", U},
      {"Gamma", gamma},
      {"U_over_Gamma", U / gamma},
      {"J", J},
      {"d1", k.d1},
      {"d2", k.d2},
      {"c", k.c},
      {"T_K", tk},
      {"J_1c", j1c},
      {"J_1c_over_T_K", j1c / tk},
      {"T_K2", two_stage_tk2(J, tk, k)},
      {"J_2c", j2c},
      {"J_RKKY_abs", rkky.magnitude},
      {"J_3c", rkky.magnitude},
  };
  out << kFormatLine << "\nquantity,value\n";
  for (const auto& [name, v] : rows) out << name << ',' << format_number(v) << '\n';
  out << "J_RKKY_sign," << (rkky.ferromagnetic ? "ferromagnetic" : "antiferromagnetic") << '\n';
  return kExitOk;
}

int cmd_oracle_check(const RawConfig& cfg, const GlobalFlags& g, std::ostream& out,
                     std::ostream& err) {
  const long long count = get_int(cfg, "count", 1000);
  if (count < 1) throw ConfigError("count", "must be >= 1");
  const OracleCheckResult r =
      run_oracle_check(g.seed, static_cast<std::size_t>(count), g.inject_fault ? 1e-6 : 0.0);
  const bool pass = r.max_deviation <= kOracleTolerance;
  out << fmt::format("oracle-check seed={} count={} max_deviation={:.3e} tolerance={:.0e} {}\n",
                     g.seed, r.count, r.max_deviation, kOracleTolerance,
                     pass ? "PASS" : "FAIL");
  if (!pass) {
    err << fmt::format("worst case: closed_form={:.15g} oracle={:.15g}\n", r.worst_closed_form,
                       r.worst_oracle);
    err << "rho (basis uu, ud, du, dd):\n";
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j)
        err << fmt::format(" ({:+.15e},{:+.15e})", r.worst(i, j).real(), r.worst(i, j).imag());
      err << '\n';
    }
  }
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-qubit entanglement of a double quantum dot coupled to leads"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--config", g.config, "key = value configuration file");
  app.add_option("--out", g.out, "output path (default: standard output)");
  app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--dense-cap", g.dense_cap, "largest sector for dense diagonalization");
  app.add_option("--max-sites", g.max_sites, "site limit of the solver paths");

  std::map<std::string, std::string> flag_values;
  struct FlagOption {
    std::string key, owner;
    CLI::Option* option;
  };
  std::vector<FlagOption> flag_options;
  const auto add_keys = [&](CLI::App* sub) {
    for (const auto& k : known_keys())
      flag_options.push_back({k.key, sub->get_name(),
                              sub->add_option("--" + k.key,
                                              flag_values[sub->get_name() + "/" + k.key], k.help)});
    sub->fallthrough();
  };
  auto* solve = app.add_subcommand("solve", "single-point solve, one CSV row");
  auto* sweep = app.add_subcommand("sweep", "grid sweep along one axis, CSV");
  auto* phase = app.add_subcommand("phase", "critical-J boundary table over U/Gamma");
  auto* scales = app.add_subcommand("scales", "analytic Kondo and RKKY scales");
  auto* check = app.add_subcommand("oracle-check", "closed form vs Wootters on random states");
  check->add_flag("--inject-fault", g.inject_fault, "offset the closed form (tests the failure path)")
      ->group("");
  for (auto* sub : {solve, sweep, phase, scales, check}) add_keys(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    const int code = app.exit(e, os, os);
    err << os.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ostringstream buffer;
  try {
    RawConfig cfg;
    if (!g.config.empty()) cfg = load_config_file(g.config);
    for (const auto& f : flag_options)
      if (f.option->count() > 0) cfg[f.key] = flag_values[f.owner + "/" + f.key];

    int code = kExitOk;
    if (*solve)
      code = cmd_solve(cfg, g, buffer);
    else if (*sweep)
      code = cmd_sweep(cfg, g, buffer);
    else if (*phase)
      code = cmd_phase(cfg, g, buffer);
    else if (*scales)
      code = cmd_scales(cfg, buffer);
    else if (*check)
      code = cmd_oracle_check(cfg, g, buffer, err);

    if (g.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(g.out, std::ios::binary);
      if (!file) {
        err << "error: cannot write '" << g.out << "'\n";
        return kExitUsage;
      }
      file << buffer.str();
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace dqd::cli
