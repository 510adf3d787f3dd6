#include "dqd/scales.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dqd {

void ScaleConstants::validate() const {
  if (!(d1 > 0)) throw std::invalid_argument("d1: must be > 0");
  if (!(c > 0)) throw std::invalid_argument("c: must be > 0");
  if (!std::isfinite(d2)) throw std::invalid_argument("d2: must be finite");
}

double haldane_tk(double U, double gamma) {
  if (!(U > 0) || !(gamma > 0))
    throw std::invalid_argument("Haldane formula needs U > 0 and Gamma > 0");
  return std::sqrt(0.5 * U * gamma) * std::exp(-std::numbers::pi * U / (8.0 * gamma));
}

double two_stage_tk2(double J, double tk1, const ScaleConstants& k) {
  k.validate();
  if (!(tk1 > 0)) throw std::invalid_argument("Tk1: must be > 0");
  if (!(J >= 0)) throw std::invalid_argument("J: must be >= 0");
  return k.d1 * tk1 * std::exp(k.d2 * J / tk1);
}

RkkyEstimate rkky_estimate(double gamma, double U, const ScaleConstants& k) {
  k.validate();
  if (!(U > 0)) throw std::invalid_argument("U: must be > 0");
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return {k.c * 64.0 / pi2 * gamma * gamma / U, true};
}

CriticalEstimate critical_j_analytic(TopologyKind topology, double U, double gamma,
                                     const ScaleConstants& k) {
  CriticalEstimate e;
  e.topology = topology;
  e.U = U;
  e.gamma = gamma;
  switch (topology) {
    case TopologyKind::Series:
      e.j_c = kSeriesCriticalRatio * haldane_tk(U, gamma);
      break;
    case TopologyKind::SideCoupled:
      e.j_c = haldane_tk(U, gamma);
      break;
    case TopologyKind::Parallel:
      e.j_c = rkky_estimate(gamma, U, k).magnitude;
      break;
    case TopologyKind::Custom:
      throw std::invalid_argument("no analytic critical coupling for custom topologies");
  }
  return e;
}

JcSearch find_jc_numeric(const ModelSpec& base, double T, double B, double t_lo,
                         double t_hi, const SolverOptions& opts, double threshold,
                         double rel_tol) {
  if (!(base.U > 0)) throw std::invalid_argument("U: must be > 0 to report J");
  ModelSpec spec = base;
  spec.T = T;
  spec.B = B;
  JcSearch out;
  out.crossing = bisect_crossing(spec, SweepAxis::t, t_lo, t_hi, concurrence_or_zero,
                                 threshold, rel_tol, opts);
  if (!out.crossing.found) return out;
  CriticalEstimate e;
  e.topology = spec.topology.kind;
  e.basis = EstimateBasis::NumericBisection;
  e.U = spec.U;
  e.gamma = spec.lead_len > 0 ? hybridization_width(spec).value() : 0.0;
  e.T = T;
  e.B = B;
  e.t_c = out.crossing.estimate;
  e.j_c = 4.0 * (*e.t_c) * (*e.t_c) / spec.U;
  out.estimate = e;
  return out;
}

}  // namespace dqd
