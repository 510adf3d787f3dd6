#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>

#include "dqd/observables.hpp"

namespace dqd {

/// Two-qubit matrices use the product basis {uu, ud, du, dd} (first letter
/// dot A). The Wootters spin flip conjugates in exactly this basis.
using QubitMatrix = Eigen::Matrix4cd;

inline constexpr int kUU = 0;
inline constexpr int kUD = 1;
inline constexpr int kDU = 2;
inline constexpr int kDD = 3;

/// Weight below which no singly occupied configuration is considered present.
inline constexpr double kMinSingleOccupancy = 1e-14;
/// Largest off-X coherence for which the closed form is applied.
inline constexpr double kAxialTolerance = 1e-10;

struct ConcurrenceReport {
  /// Closed-form value; empty when undefined (no single-occupancy weight)
  /// or when the state is not axially symmetric.
  std::optional<double> concurrence;
  double c_antiparallel = 0.0;  // C_ud
  double c_parallel = 0.0;      // C_par
  double p_antiparallel = 0.0;
  double p_parallel = 0.0;
  std::optional<double> oracle;  // Wootters value on the projected block
  bool axially_symmetric = true;

  double single_occupancy_weight() const { return p_antiparallel + p_parallel; }
  bool defined() const { return concurrence.has_value(); }
};

ConcurrenceReport concurrence_closed_form(const CorrelatorSet& cs);

/// max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
/// eigenvalues of rho (sy x sy) rho* (sy x sy). Throws std::invalid_argument
/// for a matrix that is not Hermitian, PSD and unit trace within 1e-9.
double wootters_concurrence(const QubitMatrix& rho);

struct QubitProjection {
  QubitMatrix rho;  // unit trace
  double weight = 0.0;
};

/// The singly occupied block of the two-dot matrix, renormalized. Empty when
/// its weight is below kMinSingleOccupancy.
std::optional<QubitProjection> project_single_occupancy(const ReducedDensityMatrix& rdm);

/// True when every coherence outside the ud/du and uu/dd pairs is below
/// kAxialTolerance.
bool is_axially_symmetric(const QubitMatrix& rho);

/// The closed-form inputs read off a two-qubit matrix.
CorrelatorSet qubit_correlators(const QubitMatrix& rho);

/// Pure-state value 2|a_ud a_du - a_uu a_dd| for amplitudes {uu, ud, du, dd}.
/// Throws std::invalid_argument unless the norm is 1 within 1e-12.
double pure_state_concurrence(const std::array<std::complex<double>, 4>& amplitudes);

/// Closed form from the direct correlators plus the oracle on the reduced
/// density matrix. The closed-form value is dropped when the projected
/// state is not axially symmetric.
ConcurrenceReport analyze_concurrence(const CorrelatorSet& cs,
                                      const ReducedDensityMatrix& rdm);

}  // namespace dqd
