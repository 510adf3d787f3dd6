#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "dqd/entanglement.hpp"
#include "dqd/model.hpp"
#include "dqd/observables.hpp"
#include "dqd/solver.hpp"

namespace dqd {

/// Everything computed for one parameter point.
struct PointResult {
  ModelSpec spec;
  double gamma = 0.0;
  ExchangeScales exchange;
  double ground_energy = 0.0;
  double log_partition_shifted = 0.0;
  CorrelatorSet correlators;
  ConcurrenceReport concurrence;
};

/// basis -> H per sector -> spectra -> ensemble -> correlators -> concurrence.
PointResult evaluate_point(const ModelSpec& spec, const SolverOptions& opts);

enum class SweepAxis { t, t_prime, U, T, B };

std::optional<SweepAxis> parse_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);
void set_axis(ModelSpec& spec, SweepAxis axis, double value);

struct CrossingSample {
  double x = 0.0;
  double value = 0.0;
};

struct CrossingResult {
  bool found = false;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
  double estimate = 0.0;  // bracket midpoint
  std::vector<CrossingSample> samples;  // sorted by x
  bool monotone = true;  // samples ordered consistently with the crossing
};

using PointMetric = std::function<double(const PointResult&)>;

/// Bisects `axis` on [lo, hi] for the point where metric crosses `level`
/// (a point counts as above when metric > level), until the bracket width
/// is at most rel_tol * max(|lo|, |hi|). Reports found = false when both
/// ends fall on the same side.
CrossingResult bisect_crossing(const ModelSpec& base, SweepAxis axis, double lo,
                               double hi, const PointMetric& metric, double level,
                               double rel_tol, const SolverOptions& opts);

/// Concurrence with undefined values mapped to 0, for thresholding.
double concurrence_or_zero(const PointResult& r);

}  // namespace dqd
