// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dqd/pipeline.hpp"
#include "dqd/scales.hpp"
#include "oracle_check.hpp"
#include "oracles.hpp"

using namespace dqd;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ModelSpec dimer(double t, double U) {
  ModelSpec s;
  s.lead_len = 0;
  s.t = t;
  s.U = U;
  return s;
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  const cli::OracleCheckResult r = cli::run_oracle_check(42, 1000);
  const double secs = seconds_since(start);
  return {r.count >= 1000 && r.max_deviation <= 1e-10 && secs < 5.0,
          fmt::format("{} states, max |dC| = {:.2e}, {:.2f} s", r.count, r.max_deviation, secs)};
}

Outcome end_to_end_equivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const TopologyKind kinds[] = {TopologyKind::Series, TopologyKind::SideCoupled, TopologyKind::Parallel};
  double worst = 0.0;
  int defined = 0;
  for (int i = 0; i < 20; ++i) {
    ModelSpec s;
    s.topology = {kinds[i % 3], {}};
    s.lead_len = static_cast<int>(rng() % 3);
    s.t = 0.3 * u(rng);
    s.U = 0.2 + 1.5 * u(rng);
    s.t_prime = 0.1 + 0.3 * u(rng);
    s.T = i % 2 == 0 ? 0.0 : 0.1 * u(rng);
    s.B = i % 4 < 2 ? 0.0 : 0.05 * u(rng);
    const PointResult r = evaluate_point(s, SolverOptions{});
    if (!r.concurrence.defined() || !r.concurrence.oracle) return {false, fmt::format("case {} undefined", i)};
    ++defined;
    worst = std::max(worst, std::abs(*r.concurrence.concurrence - *r.concurrence.oracle));
  }
  return {defined == 20 && worst <= 1e-10, fmt::format("20 specs, max |C - C_W| = {:.2e}", worst)};
}

Outcome dimer_exactness() {
  double worst = 0.0;
  double worst_oracle = 0.0;
  for (double ratio : {0.0, 1.0, 10.0, 100.0}) {
    const double t = 0.1;
    const PointResult r = evaluate_point(dimer(t, ratio * t), SolverOptions{});
    worst = std::max(worst, std::abs(r.concurrence.concurrence.value_or(-1.0) - 1.0));

    // exact two-site diagonalization, singly occupied amplitudes
    const oracle::FullSpace fs(2);
    oracle::Chain c;
    c.t = t;
    c.U = ratio * t;
    c.eps = -0.5 * c.U;
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::hamiltonian(fs, c));
    const Eigen::VectorXd g = es.eigenvectors().col(0);
    // masks: A up = bit 0, A dn = bit 1, B up = bit 2, B dn = bit 3
    const double uu = g(0b0101), ud = g(0b1001), du = g(0b0110), dd = g(0b1010);
    const double norm = uu * uu + ud * ud + du * du + dd * dd;
    worst_oracle = std::max(worst_oracle, std::abs(2.0 * std::abs(ud * du - uu * dd) / norm - 1.0));
  }
  return {worst <= 1e-12 && worst_oracle <= 1e-12,
          fmt::format("U/t in {{0,1,10,100}}: max |C - 1| = {:.2e} (oracle {:.2e})", worst, worst_oracle)};
}

Outcome thermal_heisenberg() {
  const auto start = Clock::now();
  const double t = 0.02, U = 50 * t;
  const double gap = dimer_splitting(t, U);
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double T = gap * (0.05 + (2.0 - 0.05) * i / 40.0);
    ModelSpec s = dimer(t, U);
    s.T = T;
    const double c = concurrence_or_zero(evaluate_point(s, SolverOptions{}));
    worst = std::max(worst, std::abs(c - oracle::heisenberg_thermal(gap, T)));
  }
  const CrossingResult x = bisect_crossing(dimer(t, U), SweepAxis::T, 0.05 * gap, 2.0 * gap,
                                           concurrence_or_zero, 1e-9, 1e-6, SolverOptions{});
  const double expected = gap / std::log(3.0);
  const double rel = x.found ? std::abs(x.estimate - expected) / expected : 1.0;
  const double secs = seconds_since(start);
  return {worst <= 0.02 && x.found && rel <= 0.02 && secs < 1.0,
          fmt::format("max |C - C_Heis| = {:.2e}, zero at T/gap = {:.5f} (ln3: {:.5f}), {:.2f} s", worst,
                      x.estimate / gap, 1.0 / std::log(3.0), secs)};
}

Outcome field_threshold() {
  const double t = 0.1, U = 1.0;
  const double gap = dimer_splitting(t, U);
  bool steps_ok = true;
  for (int i = 1; i < 40; ++i) {
    ModelSpec s = dimer(t, U);
    s.B = 2.0 * gap * i / 40.0;
    if (std::abs(s.B - gap) < 1e-6 * gap) continue;
    const double c = concurrence_or_zero(evaluate_point(s, SolverOptions{}));
    steps_ok = steps_ok && std::abs(c - (s.B < gap ? 1.0 : 0.0)) <= 1e-10;
  }
  const CrossingResult x = bisect_crossing(dimer(t, U), SweepAxis::B, 0.0, 2.0 * gap, concurrence_or_zero,
                                           0.5, 5e-4, SolverOptions{});
  const double err = x.found ? std::abs(x.estimate - gap) : 1.0;
  return {steps_ok && x.found && err <= 1e-3 * gap,
          fmt::format("step C=1 -> 0 {}, B_c/gap = {:.6f}", steps_ok ? "clean" : "broken", x.estimate / gap)};
}

Outcome series_curve() {
  const auto start = Clock::now();
  ModelSpec base;
  base.topology = Topology::series();
  base.lead_len = 2;
  base.t0 = 1.0;
  base.t_prime = base.t0 / std::sqrt(20.0);
  const double gamma = hybridization_width(base).value();
  base.U = 8.0 * gamma;
  base.T = 0.4 * base.U / 256.0;  // fourth rung of a 4x temperature ladder from T = 0.4 U

  // log grid in J up to the charge-fluctuation regime J ~ U
  std::vector<double> js;
  for (int i = 0; i <= 24; ++i) js.push_back(1e-5 * std::pow(base.U / 1e-5, i / 24.0));
  std::vector<PointResult> pts;
  for (double J : js) {
    ModelSpec s = base;
    s.t = std::sqrt(J * s.U / 4.0);
    pts.push_back(evaluate_point(s, SolverOptions{}));
  }
  const JcSearch jc = find_jc_numeric(base, base.T, 0.0, 0.0, std::sqrt(js.back() * base.U / 4.0), SolverOptions{});
  const bool zero_below = concurrence_or_zero(pts.front()) <= 1e-6;
  const bool finite_jc = jc.estimate && jc.estimate->j_c > 0.0;

  double c_max = 0.0;
  const PointResult* last_single = nullptr;
  for (const auto& p : pts) {
    c_max = std::max(c_max, concurrence_or_zero(p));
    if (p.concurrence.single_occupancy_weight() >= 0.9) last_single = &p;
  }
  const bool rises = c_max >= 0.9;
  const double spin = last_single ? last_single->correlators.spin_dot : 0.0;
  const bool spin_ok = last_single && std::abs(spin + 0.75) <= 0.05;
  const double secs = seconds_since(start);
  return {zero_below && finite_jc && rises && spin_ok && secs < 120.0,
          fmt::format("U/Gamma = 8, T = {:.3g}: C(J_min) = {:.2e}, J_c = {:.3e}, max C = {:.4f}; "
                      "<S_A.S_B> = {:.4f} at J = {:.3g} (target -0.75 +- 0.05), {:.1f} s",
                      base.T, concurrence_or_zero(pts.front()), finite_jc ? jc.estimate->j_c : 0.0, c_max, spin,
                      last_single ? *last_single->exchange.superexchange : 0.0, secs)};
}

Outcome parallel_sign() {
  ModelSpec s;
  s.topology = Topology::parallel();
  s.lead_len = 2;
  s.U = 8.0 * hybridization_width(s).value();
  s.t = 0.0;
  const PointResult zero = evaluate_point(s, SolverOptions{});
  s.t = std::sqrt(0.2 * s.U / 4.0);  // J = 0.2
  const PointResult large = evaluate_point(s, SolverOptions{});
  const double c0 = concurrence_or_zero(zero), c1 = concurrence_or_zero(large);
  return {zero.correlators.spin_dot > 0.0 && c0 == 0.0 && c1 > 0.9,
          fmt::format("t = 0: <S_A.S_B> = {:+.4f}, C = {:.3g}; J = 0.2: C = {:.4f}", zero.correlators.spin_dot, c0,
                      c1)};
}

Outcome analytic_scales() {
  const double tk = haldane_tk(1.0, 0.0625);
  const double ratio = critical_j_analytic(TopologyKind::Series, 1.0, 0.0625).j_c / tk;
  const double rkky = rkky_estimate(0.05, 1.0).magnitude;
  ScaleConstants k;
  k.d1 = 1.0;
  k.d2 = -1.0;
  const double tk2 = two_stage_tk2(tk, tk, k);
  const bool ok = std::abs(tk - 3.3013e-4) <= 1e-8 && std::abs(ratio - 2.5) <= 1e-12 &&
                  std::abs(rkky - 0.016212) <= 1e-6 && std::abs(tk2 - tk / std::exp(1.0)) <= 1e-12;
  return {ok, fmt::format("T_K = {:.6e}, J_1c/T_K = {:.12g}, J_RKKY = {:.7f}, T_K2 e/T_K = {:.12g}", tk, ratio,
                          rkky, tk2 * std::exp(1.0) / tk)};
}

Outcome symmetry_suite() {
  double spp = 0.0, pdiff = 0.0, ndev = 0.0, herm = 0.0, block_dev = 0.0;
  const TopologyKind kinds[] = {TopologyKind::Series, TopologyKind::SideCoupled, TopologyKind::Parallel};
  for (TopologyKind kind : kinds) {
    for (int l : {0, 1, 2}) {
      ModelSpec s;
      s.topology = {kind, {}};
      s.lead_len = l;
      s.t = 0.07;
      s.U = 0.5;
      s.T = 0.03;
      const PointResult r = evaluate_point(s, SolverOptions{});
      spp = std::max(spp, std::abs(r.correlators.s_plus_plus));
      pdiff = std::max(pdiff, std::abs(r.correlators.p[0][1] - r.correlators.p[1][0]));
      // bipartite couplings keep particle-hole symmetry at eps = -U/2
      if (kind != TopologyKind::Parallel) {
        for (double T : {0.0, 0.03}) {
          s.T = T;
          const PointResult h = evaluate_point(s, SolverOptions{});
          ndev = std::max({ndev, std::abs(h.correlators.n_a - 1.0), std::abs(h.correlators.n_b - 1.0)});
        }
      }
      for (SectorLabel label : all_sectors(s.sites())) {
        const Eigen::SparseMatrix<double> m =
            build_hamiltonian(s, enumerate_sector(s.sites(), label.particles, label.twice_sz)).matrix;
        const Eigen::SparseMatrix<double> mt = m.transpose();
        herm = std::max(herm, Eigen::MatrixXd(m - mt).cwiseAbs().maxCoeff());
      }
    }
    // sector blocks against the unblocked Fock-space Hamiltonian
    ModelSpec s;
    s.topology = {kind, {}};
    s.lead_len = 1;
    s.B = 0.02;
    std::vector<double> blocks;
    for (SectorLabel label : all_sectors(s.sites())) {
      const Spectrum sp = diagonalize_dense(build_hamiltonian(s, enumerate_sector(s.sites(), label.particles, label.twice_sz)));
      for (Eigen::Index k = 0; k < sp.energies.size(); ++k) blocks.push_back(sp.energies(k));
    }
    std::sort(blocks.begin(), blocks.end());
    oracle::Chain c;
    c.lead_len = 1;
    c.kind = kind == TopologyKind::Series ? 0 : kind == TopologyKind::SideCoupled ? 1 : 2;
    c.t = s.t;
    c.U = s.U;
    c.tp = s.t_prime;
    c.B = s.B;
    c.eps = s.dot_level();
    const oracle::FullSpace fs(s.sites());
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::hamiltonian(fs, c), Eigen::EigenvaluesOnly);
    for (std::size_t k = 0; k < blocks.size(); ++k)
      block_dev = std::max(block_dev, std::abs(blocks[k] - es.eigenvalues()(static_cast<Eigen::Index>(k))));
  }
  const bool ok = spp <= 1e-12 && pdiff <= 1e-12 && ndev <= 1e-10 && herm == 0.0 && block_dev <= 1e-12;
  return {ok, fmt::format("|<S+S+>| = {:.1e}, |p_ud - p_du| = {:.1e}, |n - 1| = {:.1e}, |H - H^T| = {:.1e}, "
                          "block spectrum dev = {:.1e}",
                          spp, pdiff, ndev, herm, block_dev)};
}

Outcome determinism() {
  const auto sweep = [](const std::string& workers) {
    const std::vector<std::string> args = {"dqd", "sweep", "--lead_len", "2", "--topology", "series",
                                           "--U", "0.4", "--T", "0.01", "--axis", "t", "--min", "0",
                                           "--max", "0.2", "--count", "9", "--seed", "42",
                                           "--workers", workers};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return code == 0 ? out.str() : std::string();
  };
  const std::string a = sweep("1"), b = sweep("2"), c = sweep("4"), d = sweep("1");
  const bool ok = !a.empty() && a == b && a == c && a == d;
  return {ok, fmt::format("workers 1/2/4/1: {} bytes, {}", a.size(), ok ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"end-to-end equivalence", end_to_end_equivalence},
      {"isolated dimer exactness", dimer_exactness},
      {"thermal Heisenberg limit", thermal_heisenberg},
      {"field threshold", field_threshold},
      {"series topology curve", series_curve},
      {"parallel topology sign", parallel_sign},
      {"analytic scales", analytic_scales},
      {"symmetry suite", symmetry_suite},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    fmt::print("[{}] {:2} {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
