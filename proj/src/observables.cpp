#include "dqd/observables.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace dqd {

FermionOperator FermionOperator::identity() {
  FermionOperator op;
  op.terms_.push_back({1.0, {}});
  return op;
}

FermionOperator FermionOperator::create(OrbitalIndex orb) {
  FermionOperator op;
  op.terms_.push_back({1.0, {{orb, true}}});
  return op;
}

FermionOperator FermionOperator::annihilate(OrbitalIndex orb) {
  FermionOperator op;
  op.terms_.push_back({1.0, {{orb, false}}});
  return op;
}

FermionOperator FermionOperator::number(OrbitalIndex orb) {
  FermionOperator op;
  op.terms_.push_back({1.0, {{orb, true}, {orb, false}}});
  return op;
}

int FermionOperator::max_site() const {
  int m = -1;
  for (const auto& t : terms_)
    for (const auto& l : t.ops) m = std::max(m, l.orb.site);
  return m;
}

std::vector<FermionOperator::Image> FermionOperator::apply(FockState state) const {
  std::vector<Image> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    FockState s = state;
    double amp = t.coeff;
    bool alive = true;
    for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) {
      const auto r = it->dagger ? apply_creation(s, it->orb)
                                : apply_annihilation(s, it->orb);
      if (!r) {
        alive = false;
        break;
      }
      s = r->state;
      amp *= r->sign;
    }
    if (alive) out.push_back({s, amp});
  }
  return out;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& rhs) {
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  return *this;
}

FermionOperator& FermionOperator::operator*=(double s) {
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator out;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      Monomial m{ta.coeff * tb.coeff, ta.ops};
      m.ops.insert(m.ops.end(), tb.ops.begin(), tb.ops.end());
      out.terms_.push_back(std::move(m));
    }
  return out;
}

namespace ops {

FermionOperator occupancy(int site) {
  return FermionOperator::number({site, Spin::Up}) +
         FermionOperator::number({site, Spin::Down});
}

FermionOperator spin_plus(int site) {
  return FermionOperator::create({site, Spin::Up}) *
         FermionOperator::annihilate({site, Spin::Down});
}

FermionOperator spin_minus(int site) {
  return FermionOperator::create({site, Spin::Down}) *
         FermionOperator::annihilate({site, Spin::Up});
}

FermionOperator spin_z(int site) {
  return 0.5 * (FermionOperator::number({site, Spin::Up}) -
                FermionOperator::number({site, Spin::Down}));
}

FermionOperator single_projector(int site, Spin s) {
  const auto n = FermionOperator::number({site, s});
  return n - n * FermionOperator::number({site, flip(s)});
}

FermionOperator spin_dot(int a, int b) {
  return spin_z(a) * spin_z(b) +
         0.5 * (spin_plus(a) * spin_minus(b) + spin_minus(a) * spin_plus(b));
}

}  // namespace ops

namespace {

// The operator restricted to the sector (matrix elements leaving it dropped).
Eigen::SparseMatrix<double> sector_matrix(const SectorBasis& basis,
                                          const FermionOperator& op) {
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t col = 0; col < basis.dim(); ++col)
    for (const auto& img : op.apply(basis[col]))
      if (const auto row = basis.index_of(img.state))
        entries.emplace_back(static_cast<int>(*row), static_cast<int>(col),
                             img.amplitude);
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(basis.dim()),
                                static_cast<Eigen::Index>(basis.dim()));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

void check_sites(const FermionOperator& op, int sites) {
  if (op.max_site() >= sites)
    throw std::out_of_range("operator touches site " +
                            std::to_string(op.max_site()) + " of a " +
                            std::to_string(sites) + "-site model");
}

}  // namespace

double expectation(const SectorBasis& basis, std::span<const double> v,
                   const FermionOperator& op) {
  check_sites(op, basis.sites());
  if (v.size() != basis.dim())
    throw std::invalid_argument("state vector does not match the basis");
  const Eigen::Map<const Eigen::VectorXd> vec(v.data(),
                                              static_cast<Eigen::Index>(v.size()));
  return vec.dot(sector_matrix(basis, op) * vec);
}

double expectation(const ThermalEnsemble& ens, const FermionOperator& op) {
  check_sites(op, ens.spectra->sites);
  double total = 0.0;
  std::size_t cached_sector = static_cast<std::size_t>(-1);
  Eigen::SparseMatrix<double> m;
  for (const auto& e : ens.entries) {
    if (e.sector != cached_sector) {
      m = sector_matrix(ens.basis(e), op);
      cached_sector = e.sector;
    }
    const auto v = ens.vector(e);
    total += e.weight * v.dot(m * v);
  }
  return total;
}

CorrelatorSet correlators(const ThermalEnsemble& ens, DotSites dots) {
  CorrelatorSet cs;
  const int a = dots.a;
  const int b = dots.b;
  cs.s_plus_minus = expectation(ens, ops::spin_plus(a) * ops::spin_minus(b));
  cs.s_plus_plus = expectation(ens, ops::spin_plus(a) * ops::spin_plus(b));
  for (Spin s : {Spin::Up, Spin::Down})
    for (Spin s2 : {Spin::Up, Spin::Down})
      cs.p[static_cast<int>(s)][static_cast<int>(s2)] = expectation(
          ens, ops::single_projector(a, s) * ops::single_projector(b, s2));
  cs.spin_dot = expectation(ens, ops::spin_dot(a, b));
  cs.n_a = expectation(ens, ops::occupancy(a));
  cs.n_b = expectation(ens, ops::occupancy(b));
  cs.dn2_a = expectation(ens, ops::occupancy(a) * ops::occupancy(a)) - cs.n_a * cs.n_a;
  return cs;
}

namespace {

struct TraceItem {
  std::uint32_t env = 0;
  int local = 0;
  int sign = 1;
  std::size_t index = 0;
};

// Basis states keyed by their environment configuration. The sign brings
// the dot creation operators (A up, A dn, B up, B dn) ahead of the rest.
std::vector<TraceItem> trace_layout(const SectorBasis& basis, DotSites dots) {
  const std::array<int, 4> dot_orbs = {
      OrbitalIndex{dots.a, Spin::Up}.flat(), OrbitalIndex{dots.a, Spin::Down}.flat(),
      OrbitalIndex{dots.b, Spin::Up}.flat(), OrbitalIndex{dots.b, Spin::Down}.flat()};
  std::uint32_t dot_mask = 0;
  for (int o : dot_orbs) dot_mask |= 1u << o;

  std::vector<TraceItem> items;
  items.reserve(basis.dim());
  std::vector<int> order;
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    const std::uint32_t m = basis[k].mask;
    order.clear();
    int local_a = 0;
    int local_b = 0;
    for (int slot = 0; slot < 4; ++slot) {
      if (!((m >> dot_orbs[slot]) & 1u)) continue;
      order.push_back(dot_orbs[slot]);
      const int bit = (slot % 2 == 0) ? 1 : 2;
      (slot < 2 ? local_a : local_b) |= bit;
    }
    for (int o = 0; o < 32; ++o)
      if (((m & ~dot_mask) >> o) & 1u) order.push_back(o);
    int inversions = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j)
        inversions += order[i] > order[j];
    items.push_back({m & ~dot_mask, ReducedDensityMatrix::index(local_a, local_b),
                     (inversions & 1) ? -1 : 1, k});
  }
  std::sort(items.begin(), items.end(), [](const TraceItem& x, const TraceItem& y) {
    return x.env != y.env ? x.env < y.env : x.local < y.local;
  });
  return items;
}

}  // namespace

ReducedDensityMatrix reduced_density_matrix(const ThermalEnsemble& ens, DotSites dots) {
  if (dots.a >= dots.b)
    throw std::invalid_argument("dot A must precede dot B in the site order");
  check_sites(ops::occupancy(dots.b), ens.spectra->sites);
  ReducedDensityMatrix out;
  std::size_t cached_sector = static_cast<std::size_t>(-1);
  std::vector<TraceItem> layout;
  for (const auto& e : ens.entries) {
    if (e.sector != cached_sector) {
      layout = trace_layout(ens.basis(e), dots);
      cached_sector = e.sector;
    }
    const auto v = ens.vector(e);
    for (std::size_t begin = 0; begin < layout.size();) {
      std::size_t end = begin;
      while (end < layout.size() && layout[end].env == layout[begin].env) ++end;
      for (std::size_t i = begin; i < end; ++i) {
        const double ai = layout[i].sign * v[static_cast<Eigen::Index>(layout[i].index)];
        if (ai == 0.0) continue;
        for (std::size_t j = begin; j < end; ++j) {
          const double aj = layout[j].sign * v[static_cast<Eigen::Index>(layout[j].index)];
          out.rho(layout[i].local, layout[j].local) += e.weight * ai * aj;
        }
      }
      begin = end;
    }
  }
  return out;
}

Eigen::Matrix<double, 16, 16> two_dot_operator_matrix(const FermionOperator& op) {
  if (op.max_site() > 1)
    throw std::out_of_range("two-dot operator may only touch sites 0 and 1");
  Eigen::Matrix<double, 16, 16> m = Eigen::Matrix<double, 16, 16>::Zero();
  for (int col = 0; col < 16; ++col) {
    const FockState s{static_cast<std::uint32_t>((col / 4) | ((col % 4) << 2))};
    for (const auto& img : op.apply(s)) {
      const int row = ReducedDensityMatrix::index(static_cast<int>(img.state.mask & 3u),
                                                  static_cast<int>((img.state.mask >> 2) & 3u));
      m(row, col) += img.amplitude;
    }
  }
  return m;
}

double trace_with(const ReducedDensityMatrix& rdm, const FermionOperator& op) {
  return (rdm.rho.transpose().cwiseProduct(two_dot_operator_matrix(op))).sum();
}

CorrelatorSet correlators_from_rdm(const ReducedDensityMatrix& rdm) {
  CorrelatorSet cs;
  cs.s_plus_minus = trace_with(rdm, ops::spin_plus(0) * ops::spin_minus(1));
  cs.s_plus_plus = trace_with(rdm, ops::spin_plus(0) * ops::spin_plus(1));
  for (Spin s : {Spin::Up, Spin::Down})
    for (Spin s2 : {Spin::Up, Spin::Down})
      cs.p[static_cast<int>(s)][static_cast<int>(s2)] =
          trace_with(rdm, ops::single_projector(0, s) * ops::single_projector(1, s2));
  cs.spin_dot = trace_with(rdm, ops::spin_dot(0, 1));
  cs.n_a = trace_with(rdm, ops::occupancy(0));
  cs.n_b = trace_with(rdm, ops::occupancy(1));
  cs.dn2_a = trace_with(rdm, ops::occupancy(0) * ops::occupancy(0)) - cs.n_a * cs.n_a;
  return cs;
}

}  // namespace dqd
