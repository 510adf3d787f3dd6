#include "dqd/fock.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace dqd {

namespace {

constexpr std::uint32_t kUpMask = 0x55555555u;
constexpr std::uint32_t kDownMask = 0xAAAAAAAAu;

int ordering_sign(std::uint32_t mask, int flat) {
  const std::uint32_t below = flat == 0 ? 0u : (mask & ((1u << flat) - 1u));
  return (std::popcount(below) & 1) ? -1 : 1;
}

// Spreads the low `sites` bits of `bits` onto the even (up) orbital slots.
std::uint32_t spread(std::uint32_t bits, int sites) {
  std::uint32_t out = 0;
  for (int i = 0; i < sites; ++i)
    if ((bits >> i) & 1u) out |= 1u << (2 * i);
  return out;
}

// Subsets of `sites` elements with `k` members, in ascending integer order.
std::vector<std::uint32_t> combinations(int sites, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > sites) return out;
  if (k == 0) return {0u};
  std::uint32_t v = (1u << k) - 1u;
  const std::uint32_t limit = 1u << sites;
  while (v < limit) {
    out.push_back(v);
    // Gosper's hack: next integer with the same popcount.
    const std::uint32_t c = v & (~v + 1u);
    const std::uint32_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

}  // namespace

int FockState::particle_count() const { return std::popcount(mask); }

int FockState::count(Spin s) const {
  return std::popcount(mask & (s == Spin::Up ? kUpMask : kDownMask));
}

std::optional<SignedState> apply_creation(FockState state, OrbitalIndex orb) {
  const int flat = orb.flat();
  if (state.occupied(orb)) return std::nullopt;
  return SignedState{FockState{state.mask | (1u << flat)},
                     ordering_sign(state.mask, flat)};
}

std::optional<SignedState> apply_annihilation(FockState state,
                                              OrbitalIndex orb) {
  const int flat = orb.flat();
  if (!state.occupied(orb)) return std::nullopt;
  return SignedState{FockState{state.mask & ~(1u << flat)},
                     ordering_sign(state.mask, flat)};
}

std::optional<std::size_t> SectorBasis::index_of(FockState s) const {
  const auto it = index_.find(s.mask);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SectorBasis enumerate_sector(int sites, int particles, int twice_sz) {
  if (sites < 1 || sites > kMaxSites)
    throw std::invalid_argument("site count " + std::to_string(sites) +
                                " outside [1, " + std::to_string(kMaxSites) +
                                "]");
  SectorBasis basis;
  basis.sites_ = sites;
  basis.label_ = {particles, twice_sz};
  if (particles < 0 || particles > 2 * sites) return basis;
  if ((particles + twice_sz) % 2 != 0) return basis;
  const int n_up = (particles + twice_sz) / 2;
  const int n_down = (particles - twice_sz) / 2;
  if (n_up < 0 || n_up > sites || n_down < 0 || n_down > sites) return basis;

  const auto ups = combinations(sites, n_up);
  const auto downs = combinations(sites, n_down);
  basis.states_.reserve(ups.size() * downs.size());
  for (auto u : ups)
    for (auto d : downs)
      basis.states_.push_back(FockState{spread(u, sites) | (spread(d, sites) << 1)});
  std::sort(basis.states_.begin(), basis.states_.end());
  basis.index_.reserve(basis.states_.size());
  for (std::size_t k = 0; k < basis.states_.size(); ++k)
    basis.index_.emplace(basis.states_[k].mask, k);
  return basis;
}

std::vector<SectorLabel> all_sectors(int sites) {
  std::vector<SectorLabel> out;
  for (int n = 0; n <= 2 * sites; ++n)
    for (int n_up = 0; n_up <= sites; ++n_up) {
      const int n_down = n - n_up;
      if (n_down < 0 || n_down > sites) continue;
      out.push_back({n, n_up - n_down});
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

}  // namespace dqd
