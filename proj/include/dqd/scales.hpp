#pragma once

#include <optional>

#include "dqd/model.hpp"
#include "dqd/pipeline.hpp"

namespace dqd {

/// Order-unity constants of the two-stage Kondo scale and the RKKY estimate.
/// They are user configuration; the defaults only fix the signs.
struct ScaleConstants {
  double d1 = 1.0;
  double d2 = -1.0;  // negative: the second stage sinks as J grows
  double c = 1.0;

  void validate() const;
};

/// sqrt(U Gamma / 2) exp(-pi U / (8 Gamma)).
double haldane_tk(double U, double gamma);

/// d1 Tk1 exp(d2 J / Tk1).
double two_stage_tk2(double J, double tk1, const ScaleConstants& k = {});

struct RkkyEstimate {
  double magnitude = 0.0;  // c (64/pi^2) Gamma^2 / U
  bool ferromagnetic = true;
};

RkkyEstimate rkky_estimate(double gamma, double U, const ScaleConstants& k = {});

enum class EstimateBasis { Analytic, NumericBisection };

struct CriticalEstimate {
  TopologyKind topology = TopologyKind::Series;
  double j_c = 0.0;
  EstimateBasis basis = EstimateBasis::Analytic;
  double U = 0.0;
  double gamma = 0.0;
  double T = 0.0;
  double B = 0.0;
  std::optional<double> t_c;  // interdot hopping at the crossing (numeric only)
};

/// Ratio J_1c / T_K for dots in series.
inline constexpr double kSeriesCriticalRatio = 2.5;

/// Series: 2.5 T_K(Gamma); side-coupled: T_K(Gamma); parallel: |J_RKKY|.
/// Gamma is the topology's own width. Custom topologies throw.
CriticalEstimate critical_j_analytic(TopologyKind topology, double U, double gamma,
                                     const ScaleConstants& k = {});

struct JcSearch {
  std::optional<CriticalEstimate> estimate;  // empty: no crossing in bracket
  CrossingResult crossing;                   // over t
};

/// Bisection on the interdot hopping t for the point where the concurrence
/// crosses `threshold`, reported as J = 4 t^2 / U.
JcSearch find_jc_numeric(const ModelSpec& base, double T, double B, double t_lo,
                         double t_hi, const SolverOptions& opts,
                         double threshold = 1e-6, double rel_tol = 1e-3);

}  // namespace dqd
