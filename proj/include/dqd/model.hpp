#pragma once

// Double quantum dot attached to two finite tight-binding leads.
//
// Site layout for lead length l: left lead 0..l-1 (site l-1 touches the
// dots), dot A at l, dot B at l+1, right lead l+2..2l+1 (site l+2 touches
// the dots). Every hopping enters with a minus sign.

#include <Eigen/SparseCore>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqd/fock.hpp"

namespace dqd {

enum class TopologyKind { Series, SideCoupled, Parallel, Custom };

/// Dot-lead tunnelling amplitudes: t1 = left-A, t2 = right-A, t3 = left-B,
/// t4 = right-B.
struct LeadCouplings {
  double left_a = 0.0;
  double right_a = 0.0;
  double left_b = 0.0;
  double right_b = 0.0;
};

struct Topology {
  TopologyKind kind = TopologyKind::Series;
  LeadCouplings custom{};  // only read for Custom

  static Topology series() { return {TopologyKind::Series, {}}; }
  static Topology side_coupled() { return {TopologyKind::SideCoupled, {}}; }
  static Topology parallel() { return {TopologyKind::Parallel, {}}; }
  static Topology custom_bonds(LeadCouplings c) { return {TopologyKind::Custom, c}; }

  LeadCouplings couplings(double t_prime) const;
};

std::string_view to_string(TopologyKind kind);
/// Accepts "series", "side", "side-coupled", "parallel", "custom".
std::optional<TopologyKind> parse_topology(std::string_view name);

struct ModelSpec {
  Topology topology = Topology::series();
  double t = 0.1;         // interdot hopping
  double U = 1.0;         // on-site repulsion on the dots
  double t_prime = 0.22360679774997896;  // dot-lead hopping, t0 / sqrt(20)
  double t0 = 1.0;        // lead hopping, bandwidth 4 t0
  int lead_len = 2;       // sites per lead
  double B = 0.0;         // Zeeman field on the dots
  double T = 0.0;         // temperature, k_B = 1
  std::optional<double> eps_d;  // dot level; -U/2 when unset

  double dot_level() const { return eps_d.value_or(-0.5 * U); }
  int sites() const { return 2 + 2 * lead_len; }
  int dot_a() const { return lead_len; }
  int dot_b() const { return lead_len + 1; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct Bond {
  int i = 0;
  int j = 0;
  double amplitude = 0.0;  // enters as -amplitude (c_i^+ c_j + h.c.)
};

/// Every single-particle hopping of the model, zero amplitudes dropped.
std::vector<Bond> hopping_bonds(const ModelSpec& spec);

/// One (N, S_z) block of the Hamiltonian, stored sparse.
struct SectorMatrix {
  SectorLabel label{};
  Eigen::SparseMatrix<double> matrix;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// H = -t sum_s (c+_As c_Bs + h.c.) + U sum_dots n_up n_dn + eps_d n_dots
///     - t0 sum_leads - sum_n t_n (edge-dot) + B (S^z_A + S^z_B).
/// Throws std::invalid_argument when the basis was built for another size.
SectorMatrix build_hamiltonian(const ModelSpec& spec, const SectorBasis& basis);

struct HybridizationWidth {
  double dot_a = 0.0;
  double dot_b = 0.0;
  /// The width quoted for the topology: the larger of the two dots.
  double value() const { return dot_a > dot_b ? dot_a : dot_b; }
};

/// Gamma per dot, sum over attached bonds of t_n^2 / t0.
HybridizationWidth hybridization_width(const ModelSpec& spec);

struct ExchangeScales {
  std::optional<double> superexchange;  // 4 t^2 / U, absent for U = 0
  double singlet_triplet_splitting = 0.0;  // (sqrt(U^2 + 16 t^2) - U) / 2
};

ExchangeScales effective_exchange(const ModelSpec& spec);

/// Exact singlet-triplet gap of the isolated two-site Hubbard dimer.
double dimer_splitting(double t, double U);

}  // namespace dqd
