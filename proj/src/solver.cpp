#include "dqd/solver.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "dqd/parallel.hpp"

namespace dqd {

Spectrum diagonalize_dense(const SectorMatrix& m, std::size_t dense_cap) {
  if (m.dim() > dense_cap)
    throw DimensionCapError("sector dimension " + std::to_string(m.dim()) +
                            " exceeds dense cap " + std::to_string(dense_cap) +
                            "; raise --dense-cap or use the iterative solver");
  Spectrum out;
  out.label = m.label;
  if (m.dim() == 0) return out;
  const Eigen::MatrixXd dense = Eigen::MatrixXd(m.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolver failed");
  out.energies = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

namespace {

Eigen::MatrixXd tridiagonal(const std::vector<double>& alpha,
                            const std::vector<double>& beta) {
  const auto dim = static_cast<Eigen::Index>(alpha.size());
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    tri(i, i) = alpha[static_cast<std::size_t>(i)];
    if (i + 1 < dim) {
      tri(i, i + 1) = beta[static_cast<std::size_t>(i)];
      tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
  }
  return tri;
}

double ritz_residual_estimate(const std::vector<double>& alpha,
                              const std::vector<double>& beta, double next_beta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tridiagonal(alpha, beta));
  const auto& s = es.eigenvectors();
  return next_beta * std::abs(s(s.rows() - 1, 0));
}

}  // namespace

GroundState ground_state_iterative(const SectorMatrix& m,
                                   const LanczosOptions& opts) {
  const Eigen::Index n = m.matrix.rows();
  if (n == 0) throw std::invalid_argument("empty sector");
  if (!(opts.tolerance > 0)) throw std::invalid_argument("tolerance must be > 0");
  const auto& H = m.matrix;

  if (n == 1) {
    GroundState gs;
    gs.energy = H.coeff(0, 0);
    gs.vector = Eigen::VectorXd::Ones(1);
    return gs;
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = uni(rng);
  start.normalize();

  const Eigen::Index kmax =
      std::min<Eigen::Index>(n, std::max(2, opts.krylov_dim));
  Eigen::MatrixXd V(n, kmax);
  std::vector<double> alpha, beta;
  double best_residual = std::numeric_limits<double>::infinity();
  GroundState best;

  for (int restart = 0; restart < opts.max_restarts; ++restart) {
    alpha.clear();
    beta.clear();
    Eigen::VectorXd q = start;
    Eigen::Index k = 0;
    for (; k < kmax; ++k) {
      V.col(k) = q;
      Eigen::VectorXd w = H * q;
      const double a = q.dot(w);
      alpha.push_back(a);
      // Full reorthogonalization, applied twice.
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd overlaps = V.leftCols(k + 1).transpose() * w;
        w.noalias() -= V.leftCols(k + 1) * overlaps;
      }
      const double b = w.norm();
      if (k + 1 == kmax) break;
      if (b <= 1e-13 * std::max(1.0, std::abs(a))) {
        ++k;
        break;
      }
      // Cheap Ritz residual estimate b * |last component| every few steps.
      if ((k + 1) % 10 == 0 && ritz_residual_estimate(alpha, beta, b) <= 0.1 * opts.tolerance) {
        ++k;
        break;
      }
      beta.push_back(b);
      q = w / b;
    }
    const auto dim = static_cast<Eigen::Index>(alpha.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tridiagonal(alpha, beta));
    const double theta = es.eigenvalues()[0];
    Eigen::VectorXd ritz = V.leftCols(dim) * es.eigenvectors().col(0);
    ritz.normalize();
    const double residual = (H * ritz - theta * ritz).norm();
    if (residual < best_residual) {
      best_residual = residual;
      best.energy = theta;
      best.vector = ritz;
      best.residual = residual;
      best.restarts = restart;
    }
    if (residual <= opts.tolerance) return best;
    start = ritz;
  }
  throw ConvergenceError("Lanczos did not converge after " +
                             std::to_string(opts.max_restarts) +
                             " restarts; best residual " +
                             std::to_string(best_residual),
                         best_residual);
}

std::shared_ptr<const SpectrumSet> solve_spectra(const ModelSpec& spec,
                                                 const SolverOptions& opts,
                                                 bool full) {
  spec.validate();
  auto set = std::make_shared<SpectrumSet>();
  set->sites = spec.sites();
  const auto labels = all_sectors(set->sites);
  set->bases.resize(labels.size());
  set->spectra.resize(labels.size());
  parallel_for(labels.size(), opts.workers, [&](std::size_t i) {
    set->bases[i] = enumerate_sector(set->sites, labels[i].particles,
                                     labels[i].twice_sz);
    const SectorMatrix h = build_hamiltonian(spec, set->bases[i]);
    if (full || h.dim() <= opts.iterative_threshold) {
      set->spectra[i] = diagonalize_dense(h, opts.dense_cap);
      return;
    }
    const GroundState gs = ground_state_iterative(h, opts.lanczos);
    Spectrum s;
    s.label = h.label;
    s.energies = Eigen::VectorXd::Constant(1, gs.energy);
    s.vectors = gs.vector;
    set->spectra[i] = std::move(s);
  });
  return set;
}

ThermalEnsemble thermal_ensemble(std::shared_ptr<const SpectrumSet> spectra,
                                 double temperature) {
  if (!spectra) throw std::invalid_argument("no spectra");
  if (!(temperature >= 0)) throw std::invalid_argument("T: must be >= 0");
  const auto labels = all_sectors(spectra->sites);
  if (spectra->spectra.size() != labels.size())
    throw std::invalid_argument("spectra do not cover every (N, S_z) sector");
  double e_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Spectrum& s = spectra->spectra[i];
    if (s.label != labels[i] || s.levels() == 0)
      throw std::invalid_argument("spectra do not cover every (N, S_z) sector");
    if (temperature > 0 && !s.complete())
      throw std::invalid_argument("T > 0 requires complete spectra");
    e_min = std::min(e_min, s.energies[0]);
  }

  ThermalEnsemble ens;
  ens.temperature = temperature;
  ens.ground_energy = e_min;
  if (temperature == 0) {
    const double tol = kDegeneracyTolerance * std::max(1.0, std::abs(e_min));
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto& e = spectra->spectra[i].energies;
      for (Eigen::Index k = 0; k < e.size() && e[k] - e_min <= tol; ++k)
        ens.entries.push_back({i, static_cast<std::size_t>(k), 1.0});
    }
    const double w = 1.0 / static_cast<double>(ens.entries.size());
    for (auto& entry : ens.entries) entry.weight = w;
    ens.log_partition_shifted = std::log(static_cast<double>(ens.entries.size()));
  } else {
    double z = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto& e = spectra->spectra[i].energies;
      for (Eigen::Index k = 0; k < e.size(); ++k) {
        const double w = std::exp(-(e[k] - e_min) / temperature);
        z += w;
        ens.entries.push_back({i, static_cast<std::size_t>(k), w});
      }
    }
    ens.log_partition_shifted = std::log(z);
    double kept = 0.0;
    std::erase_if(ens.entries, [&](EnsembleEntry& entry) {
      entry.weight /= z;
      if (entry.weight < 1e-16) return true;
      kept += entry.weight;
      return false;
    });
    for (auto& entry : ens.entries) entry.weight /= kept;
  }
  ens.spectra = std::move(spectra);
  return ens;
}

ThermalEnsemble solve_ensemble(const ModelSpec& spec, const SolverOptions& opts) {
  spec.validate();
  const bool thermal = spec.T > 0;
  const int gate = thermal ? opts.max_thermal_sites : opts.max_ground_sites;
  if (spec.sites() > gate)
    throw DimensionCapError(
        std::string(thermal ? "thermal" : "ground-state") + " path limited to " +
        std::to_string(gate) + " sites, model has " +
        std::to_string(spec.sites()) + " (raise --max-sites)");
  return thermal_ensemble(solve_spectra(spec, opts, thermal), spec.T);
}

}  // namespace dqd
