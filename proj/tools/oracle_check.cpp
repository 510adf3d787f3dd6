#include "oracle_check.hpp"

#include <cmath>
#include <numbers>

namespace dqd::cli {

QubitMatrix random_axial_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double d[4];
  double sum = 0.0;
  for (double& x : d) {
    x = -std::log(1.0 - uni(rng));  // Exp(1); normalized gives Dirichlet(1,1,1,1)
    sum += x;
  }
  for (double& x : d) x /= sum;
  QubitMatrix rho = QubitMatrix::Zero();
  for (int i = 0; i < 4; ++i) rho(i, i) = d[i];
  const double bound = std::sqrt(d[kUD] * d[kDU]);
  const double magnitude = bound * uni(rng);
  const double phase = 2.0 * std::numbers::pi * uni(rng);
  rho(kUD, kDU) = std::polar(magnitude, phase);
  rho(kDU, kUD) = std::conj(rho(kUD, kDU));
  return rho;
}

OracleCheckResult run_oracle_check(std::uint64_t seed, std::size_t count, double fault) {
  std::mt19937_64 rng(seed);
  OracleCheckResult out;
  out.count = count;
  out.max_deviation = -1.0;
  for (std::size_t i = 0; i < count; ++i) {
    const QubitMatrix rho = random_axial_state(rng);
    const double closed =
        concurrence_closed_form(qubit_correlators(rho)).concurrence.value_or(0.0) + fault;
    const double oracle = wootters_concurrence(rho);
    const double dev = std::abs(closed - oracle);
    if (dev > out.max_deviation) {
      out.max_deviation = dev;
      out.worst = rho;
      out.worst_closed_form = closed;
      out.worst_oracle = oracle;
    }
  }
  return out;
}

}  // namespace dqd::cli
