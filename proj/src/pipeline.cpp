#include "dqd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqd {

PointResult evaluate_point(const ModelSpec& spec, const SolverOptions& opts) {
  PointResult r;
  r.spec = spec;
  r.gamma = spec.lead_len > 0 ? hybridization_width(spec).value() : 0.0;
  r.exchange = effective_exchange(spec);
  const ThermalEnsemble ens = solve_ensemble(spec, opts);
  r.ground_energy = ens.ground_energy;
  r.log_partition_shifted = ens.log_partition_shifted;
  const DotSites dots = dot_sites(spec);
  r.correlators = correlators(ens, dots);
  r.concurrence = analyze_concurrence(r.correlators, reduced_density_matrix(ens, dots));
  return r;
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
  if (name == "t") return SweepAxis::t;
  if (name == "t_prime") return SweepAxis::t_prime;
  if (name == "U") return SweepAxis::U;
  if (name == "T") return SweepAxis::T;
  if (name == "B") return SweepAxis::B;
  return std::nullopt;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::t: return "t";
    case SweepAxis::t_prime: return "t_prime";
    case SweepAxis::U: return "U";
    case SweepAxis::T: return "T";
    case SweepAxis::B: return "B";
  }
  return "?";
}

void set_axis(ModelSpec& spec, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::t: spec.t = value; break;
    case SweepAxis::t_prime: spec.t_prime = value; break;
    case SweepAxis::U: spec.U = value; break;
    case SweepAxis::T: spec.T = value; break;
    case SweepAxis::B: spec.B = value; break;
  }
}

double concurrence_or_zero(const PointResult& r) {
  return r.concurrence.concurrence.value_or(0.0);
}

CrossingResult bisect_crossing(const ModelSpec& base, SweepAxis axis, double lo,
                               double hi, const PointMetric& metric, double level,
                               double rel_tol, const SolverOptions& opts) {
  if (!(lo < hi)) throw std::invalid_argument("bracket must satisfy lo < hi");
  if (!(rel_tol > 0)) throw std::invalid_argument("rel_tol must be > 0");
  CrossingResult out;
  auto probe = [&](double x) {
    ModelSpec s = base;
    set_axis(s, axis, x);
    const double v = metric(evaluate_point(s, opts));
    out.samples.push_back({x, v});
    return v > level;
  };
  const bool lo_above = probe(lo);
  const bool hi_above = probe(hi);
  out.lo = lo;
  out.hi = hi;
  if (lo_above != hi_above) {
    out.found = true;
    while (out.hi - out.lo > rel_tol * std::max(std::abs(out.lo), std::abs(out.hi))) {
      const double mid = 0.5 * (out.lo + out.hi);
      if (probe(mid) == lo_above)
        out.lo = mid;
      else
        out.hi = mid;
    }
  }
  out.estimate = 0.5 * (out.lo + out.hi);
  std::sort(out.samples.begin(), out.samples.end(),
            [](const CrossingSample& a, const CrossingSample& b) { return a.x < b.x; });
  const bool rising = hi_above && !lo_above;
  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    const double step = out.samples[i].value - out.samples[i - 1].value;
    if (rising ? step < -1e-12 : step > 1e-12) out.monotone = false;
  }
  return out;
}

}  // namespace dqd
