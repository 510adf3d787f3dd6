#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "dqd/fock.hpp"
#include "dqd/model.hpp"

namespace dqd {

/// Eigenpairs of one sector, energies ascending, vectors column-wise in the
/// sector basis ordering. A partial spectrum keeps only the lowest levels.
struct Spectrum {
  SectorLabel label{};
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;

  std::size_t levels() const { return static_cast<std::size_t>(energies.size()); }
  bool complete() const { return vectors.rows() == vectors.cols(); }
};

class DimensionCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

inline constexpr std::size_t kDefaultDenseCap = 20000;

/// Full eigendecomposition. Throws DimensionCapError above `dense_cap`.
Spectrum diagonalize_dense(const SectorMatrix& m,
                           std::size_t dense_cap = kDefaultDenseCap);

struct LanczosOptions {
  double tolerance = 1e-10;  // on ||H v - E v||
  int max_restarts = 50;
  int krylov_dim = 200;
  std::uint64_t seed = 7;
};

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;
  int restarts = 0;
};

/// Restarted Lanczos with full reorthogonalization against the stored
/// Krylov vectors. Throws ConvergenceError carrying the best residual.
GroundState ground_state_iterative(const SectorMatrix& m,
                                   const LanczosOptions& opts = {});

struct SolverOptions {
  std::size_t dense_cap = kDefaultDenseCap;
  int max_thermal_sites = 9;
  int max_ground_sites = 12;
  /// At T = 0, sectors larger than this use the iterative path.
  std::size_t iterative_threshold = 2000;
  int workers = 1;
  LanczosOptions lanczos{};
};

/// Bases and spectra for every (N, S_z) sector of one model, in the order
/// of all_sectors().
struct SpectrumSet {
  int sites = 0;
  std::vector<SectorBasis> bases;
  std::vector<Spectrum> spectra;
};

/// Builds and diagonalizes every sector. `full` requests complete spectra
/// (needed for T > 0); otherwise large sectors keep only their ground state.
std::shared_ptr<const SpectrumSet> solve_spectra(const ModelSpec& spec,
                                                 const SolverOptions& opts,
                                                 bool full);

struct EnsembleEntry {
  std::size_t sector = 0;
  std::size_t level = 0;
  double weight = 0.0;
};

/// Grand-canonical Gibbs state at chemical potential zero.
struct ThermalEnsemble {
  double temperature = 0.0;
  std::vector<EnsembleEntry> entries;
  double ground_energy = 0.0;
  /// ln sum exp(-(E - E_min)/T); ln(degeneracy) at T = 0.
  double log_partition_shifted = 0.0;
  std::shared_ptr<const SpectrumSet> spectra;

  const SectorBasis& basis(const EnsembleEntry& e) const {
    return spectra->bases[e.sector];
  }
  Eigen::Ref<const Eigen::VectorXd> vector(const EnsembleEntry& e) const {
    return spectra->spectra[e.sector].vectors.col(static_cast<Eigen::Index>(e.level));
  }
};

/// Relative tolerance used to group degenerate ground states at T = 0.
inline constexpr double kDegeneracyTolerance = 1e-10;

/// Throws std::invalid_argument when a sector is missing, or when T > 0 and
/// some spectrum is partial.
ThermalEnsemble thermal_ensemble(std::shared_ptr<const SpectrumSet> spectra,
                                 double temperature);

/// solve_spectra + thermal_ensemble with the site gates applied.
ThermalEnsemble solve_ensemble(const ModelSpec& spec, const SolverOptions& opts);

}  // namespace dqd
