#include "dqd/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace dqd {

LeadCouplings Topology::couplings(double t_prime) const {
  switch (kind) {
    case TopologyKind::Series: return {t_prime, 0.0, 0.0, t_prime};
    case TopologyKind::SideCoupled: return {t_prime, t_prime, 0.0, 0.0};
    case TopologyKind::Parallel: return {t_prime, t_prime, t_prime, t_prime};
    case TopologyKind::Custom: return custom;
  }
  return {};
}

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Series: return "series";
    case TopologyKind::SideCoupled: return "side";
    case TopologyKind::Parallel: return "parallel";
    case TopologyKind::Custom: return "custom";
  }
  return "?";
}

std::optional<TopologyKind> parse_topology(std::string_view name) {
  if (name == "series") return TopologyKind::Series;
  if (name == "side" || name == "side-coupled" || name == "side_coupled")
    return TopologyKind::SideCoupled;
  if (name == "parallel") return TopologyKind::Parallel;
  if (name == "custom") return TopologyKind::Custom;
  return std::nullopt;
}

void ModelSpec::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument(field + ": " + why);
  };
  const std::pair<const char*, double> fields[] = {
      {"t", t}, {"U", U}, {"t_prime", t_prime}, {"t0", t0}, {"B", B}, {"T", T}};
  for (const auto& [name, value] : fields)
    if (!std::isfinite(value)) fail(name, "must be finite");
  if (U < 0) fail("U", "must be >= 0");
  if (T < 0) fail("T", "must be >= 0");
  if (lead_len < 0) fail("lead_len", "must be >= 0");
  if (lead_len > 0 && t0 <= 0) fail("t0", "must be > 0 when leads are present");
  if (sites() > kMaxSites) fail("lead_len", "too many sites for the occupancy mask");
  if (eps_d && !std::isfinite(*eps_d)) fail("eps_d", "non-finite");
}

std::vector<Bond> hopping_bonds(const ModelSpec& spec) {
  std::vector<Bond> bonds;
  auto add = [&](int i, int j, double h) {
    if (h != 0.0) bonds.push_back({i, j, h});
  };
  const int l = spec.lead_len;
  add(spec.dot_a(), spec.dot_b(), spec.t);
  if (l == 0) return bonds;
  for (int i = 0; i + 1 < l; ++i) add(i, i + 1, spec.t0);
  for (int i = l + 2; i + 1 < 2 * l + 2; ++i) add(i, i + 1, spec.t0);
  const int left_edge = l - 1;
  const int right_edge = l + 2;
  const LeadCouplings c = spec.topology.couplings(spec.t_prime);
  add(left_edge, spec.dot_a(), c.left_a);
  add(right_edge, spec.dot_a(), c.right_a);
  add(left_edge, spec.dot_b(), c.left_b);
  add(right_edge, spec.dot_b(), c.right_b);
  return bonds;
}

SectorMatrix build_hamiltonian(const ModelSpec& spec, const SectorBasis& basis) {
  if (basis.sites() != spec.sites())
    throw std::invalid_argument("basis has " + std::to_string(basis.sites()) +
                                " sites, model needs " +
                                std::to_string(spec.sites()));
  const auto bonds = hopping_bonds(spec);
  const double eps = spec.dot_level();
  const int dots[2] = {spec.dot_a(), spec.dot_b()};

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(basis.dim() * (1 + 4 * bonds.size()));
  for (std::size_t col = 0; col < basis.dim(); ++col) {
    const FockState s = basis[col];
    double diag = 0.0;
    for (int d : dots) {
      const bool up = s.occupied({d, Spin::Up});
      const bool dn = s.occupied({d, Spin::Down});
      diag += spec.U * (up && dn) + eps * (up + dn) + 0.5 * spec.B * (up - dn);
    }
    if (diag != 0.0) entries.emplace_back(col, col, diag);

    for (const Bond& b : bonds) {
      for (Spin sp : {Spin::Up, Spin::Down}) {
        for (auto [to, from] : {std::pair{b.i, b.j}, std::pair{b.j, b.i}}) {
          const auto removed = apply_annihilation(s, {from, sp});
          if (!removed) continue;
          const auto added = apply_creation(removed->state, {to, sp});
          if (!added) continue;
          const auto row = basis.index_of(added->state);
          if (!row) continue;
          entries.emplace_back(*row, col,
                               -b.amplitude * removed->sign * added->sign);
        }
      }
    }
  }
  SectorMatrix out;
  out.label = basis.label();
  out.matrix.resize(basis.dim(), basis.dim());
  out.matrix.setFromTriplets(entries.begin(), entries.end());
  out.matrix.makeCompressed();
  return out;
}

HybridizationWidth hybridization_width(const ModelSpec& spec) {
  if (!(spec.t0 > 0)) throw std::invalid_argument("t0: must be > 0");
  const LeadCouplings c = spec.topology.couplings(spec.t_prime);
  return {(c.left_a * c.left_a + c.right_a * c.right_a) / spec.t0,
          (c.left_b * c.left_b + c.right_b * c.right_b) / spec.t0};
}

double dimer_splitting(double t, double U) {
  return 0.5 * (std::sqrt(U * U + 16.0 * t * t) - U);
}

ExchangeScales effective_exchange(const ModelSpec& spec) {
  ExchangeScales out;
  out.singlet_triplet_splitting = dimer_splitting(spec.t, spec.U);
  if (spec.U > 0) out.superexchange = 4.0 * spec.t * spec.t / spec.U;
  return out;
}

}  // namespace dqd
