#include <doctest.h>

#include <cmath>
#include <numeric>

#include "dqd/solver.hpp"
#include "oracles.hpp"

using namespace dqd;

namespace {

SectorMatrix sector(const ModelSpec& s, int n, int twice_sz) {
  return build_hamiltonian(s, enumerate_sector(s.sites(), n, twice_sz));
}

ModelSpec dimer(double t, double U) {
  ModelSpec s;
  s.lead_len = 0;
  s.t = t;
  s.U = U;
  return s;
}

}  // namespace

TEST_CASE("dense spectra are sorted and orthonormal") {
  ModelSpec s;
  s.lead_len = 1;
  const Spectrum sp = diagonalize_dense(sector(s, 4, 0));
  REQUIRE(sp.complete());
  for (Eigen::Index k = 1; k < sp.energies.size(); ++k) CHECK(sp.energies(k - 1) <= sp.energies(k));
  const Eigen::MatrixXd gram = sp.vectors.transpose() * sp.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dense cap is enforced") {
  ModelSpec s;
  s.lead_len = 1;
  const SectorMatrix m = sector(s, 4, 0);
  CHECK_THROWS_AS(diagonalize_dense(m, m.dim() - 1), DimensionCapError);
  CHECK_NOTHROW(diagonalize_dense(m, m.dim()));
}

TEST_CASE("Lanczos agrees with dense diagonalization") {
  for (TopologyKind kind : {TopologyKind::Series, TopologyKind::Parallel}) {
    ModelSpec s;
    s.topology = {kind, {}};
    s.lead_len = 2;
    s.t = 0.07;
    s.U = 0.5;
    s.B = 0.01;
    const SectorMatrix m = sector(s, 6, 0);
    REQUIRE(m.dim() == 400);
    const Spectrum dense = diagonalize_dense(m);
    const GroundState gs = ground_state_iterative(m);
    CHECK(gs.energy == doctest::Approx(dense.energies(0)).epsilon(1e-12));
    CHECK(gs.residual <= 1e-10);
    const Eigen::VectorXd r = m.matrix * gs.vector - gs.energy * gs.vector;
    CHECK(r.norm() <= 1e-9);
    CHECK(gs.vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(gs.vector.dot(dense.vectors.col(0))) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("Lanczos is deterministic and handles tiny sectors") {
  ModelSpec s;
  s.lead_len = 2;
  const SectorMatrix m = sector(s, 5, 1);
  const GroundState a = ground_state_iterative(m);
  const GroundState b = ground_state_iterative(m);
  CHECK(a.energy == b.energy);
  CHECK(a.vector == b.vector);

  const SectorMatrix one = sector(s, 0, 0);
  REQUIRE(one.dim() == 1);
  const GroundState g1 = ground_state_iterative(one);
  CHECK(g1.energy == 0.0);
  CHECK(g1.residual == 0.0);

  LanczosOptions bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(ground_state_iterative(m, bad), std::invalid_argument);
}

TEST_CASE("Lanczos reports non-convergence") {
  ModelSpec s;
  s.lead_len = 2;
  LanczosOptions tight;
  tight.krylov_dim = 3;
  tight.max_restarts = 1;
  tight.tolerance = 1e-15;
  try {
    ground_state_iterative(sector(s, 6, 0), tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best_residual() > 0.0);
  }
}

TEST_CASE("thermal weights of the dimer") {
  const ModelSpec s = dimer(0.05, 10.0);
  const double gap = dimer_splitting(s.t, s.U);
  const auto spectra = solve_spectra(s, SolverOptions{}, true);
  const ThermalEnsemble ens = thermal_ensemble(spectra, gap);
  double total = 0.0;
  double singlet = 0.0;
  for (const auto& e : ens.entries) {
    total += e.weight;
    const double energy = spectra->spectra[e.sector].energies(static_cast<Eigen::Index>(e.level));
    if (std::abs(energy - ens.ground_energy) < 1e-12) singlet += e.weight;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  // charge states sit ~U/2 above: negligible, but present in the partition sum
  const double x = std::exp(-1.0);
  CHECK(singlet == doctest::Approx(1.0 / (1.0 + 3.0 * x)).epsilon(1e-6));
  CHECK(ens.log_partition_shifted == doctest::Approx(std::log(1.0 + 3.0 * x)).epsilon(1e-6));
}

TEST_CASE("zero temperature weights split the degenerate manifold") {
  // decoupled dots: four degenerate spin configurations at half filling
  const ModelSpec s = dimer(0.0, 1.0);
  const ThermalEnsemble ens = solve_ensemble(s, SolverOptions{});
  REQUIRE(ens.entries.size() == 4);
  for (const auto& e : ens.entries) CHECK(e.weight == doctest::Approx(0.25));
  CHECK(ens.log_partition_shifted == doctest::Approx(std::log(4.0)));
  CHECK(ens.ground_energy == doctest::Approx(-1.0));

  const ThermalEnsemble singlet = solve_ensemble(dimer(0.1, 1.0), SolverOptions{});
  REQUIRE(singlet.entries.size() == 1);
  CHECK(singlet.log_partition_shifted == 0.0);
}

TEST_CASE("site gates and coverage checks") {
  ModelSpec s;
  s.lead_len = 4;  // 10 sites
  s.T = 0.1;
  CHECK_THROWS_AS(solve_ensemble(s, SolverOptions{}), DimensionCapError);
  s.T = 0.0;
  SolverOptions small;
  small.max_ground_sites = 8;
  CHECK_THROWS_AS(solve_ensemble(s, small), DimensionCapError);

  ModelSpec l2;
  l2.lead_len = 2;
  SolverOptions partial;
  partial.iterative_threshold = 10;
  const auto spectra = solve_spectra(l2, partial, false);
  CHECK_THROWS_AS(thermal_ensemble(spectra, 0.1), std::invalid_argument);
  CHECK_NOTHROW(thermal_ensemble(spectra, 0.0));
  CHECK_THROWS_AS(thermal_ensemble(spectra, -1.0), std::invalid_argument);
}

TEST_CASE("iterative and dense ground paths give the same ensemble") {
  ModelSpec s;
  s.lead_len = 2;
  s.t = 0.08;
  s.U = 0.4;
  SolverOptions dense;
  dense.iterative_threshold = 100000;
  SolverOptions iterative;
  iterative.iterative_threshold = 50;
  iterative.workers = 3;
  const ThermalEnsemble a = solve_ensemble(s, dense);
  const ThermalEnsemble b = solve_ensemble(s, iterative);
  CHECK(a.ground_energy == doctest::Approx(b.ground_energy).epsilon(1e-12));
  CHECK(a.entries.size() == b.entries.size());
}

TEST_CASE("full-space oracle matches the ensemble ground energy") {
  ModelSpec s;
  s.lead_len = 1;
  s.topology = Topology::parallel();
  s.t = 0.2;
  s.U = 0.6;
  const ThermalEnsemble ens = solve_ensemble(s, SolverOptions{});
  oracle::Chain c;
  c.lead_len = 1;
  c.kind = 2;
  c.t = 0.2;
  c.U = 0.6;
  c.tp = s.t_prime;
  c.eps = -0.3;
  const oracle::FullSpace fs(4);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::hamiltonian(fs, c), Eigen::EigenvaluesOnly);
  CHECK(ens.ground_energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
}
