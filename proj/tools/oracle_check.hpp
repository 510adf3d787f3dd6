#pragma once

#include <cstdint>
#include <random>

#include "dqd/entanglement.hpp"

namespace dqd::cli {

/// Axially symmetric two-qubit state: diagonal from a flat Dirichlet draw,
/// ud/du coherence with magnitude uniform in [0, sqrt(p_ud p_du)] and a
/// uniform phase.
QubitMatrix random_axial_state(std::mt19937_64& rng);

struct OracleCheckResult {
  std::size_t count = 0;
  double max_deviation = 0.0;
  QubitMatrix worst = QubitMatrix::Zero();
  double worst_closed_form = 0.0;
  double worst_oracle = 0.0;
};

/// Closed form (from the matrix's own correlators) against Wootters.
/// `fault` is added to every closed-form value to exercise the failure path.
OracleCheckResult run_oracle_check(std::uint64_t seed, std::size_t count,
                                   double fault = 0.0);

inline constexpr double kOracleTolerance = 1e-10;

}  // namespace dqd::cli
