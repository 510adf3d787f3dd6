#pragma once

// Occupation-number basis for spinful fermions on a chain of sites.
//
// Orbitals are flattened as 2*site + spin_bit (up = 0, down = 1). A Fock
// state |m> is the product of creation operators applied to the vacuum in
// ascending flattened order, so every fermionic sign in the library derives
// from that ordering.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dqd {

enum class Spin : int { Up = 0, Down = 1 };

constexpr Spin flip(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }

/// Largest supported site count; the occupancy mask is 32 bits wide.
inline constexpr int kMaxSites = 16;

struct OrbitalIndex {
  int site = 0;
  Spin spin = Spin::Up;

  constexpr int flat() const { return 2 * site + static_cast<int>(spin); }
  static constexpr OrbitalIndex from_flat(int id) {
    return {id / 2, id % 2 == 0 ? Spin::Up : Spin::Down};
  }
  friend constexpr bool operator==(OrbitalIndex, OrbitalIndex) = default;
};

struct FockState {
  std::uint32_t mask = 0;

  bool occupied(OrbitalIndex orb) const { return (mask >> orb.flat()) & 1u; }
  int particle_count() const;
  int count(Spin s) const;
  /// Twice the S_z eigenvalue, (N_up - N_down).
  int twice_sz() const { return count(Spin::Up) - count(Spin::Down); }

  friend constexpr bool operator==(FockState, FockState) = default;
  friend constexpr auto operator<=>(FockState, FockState) = default;
};

struct SignedState {
  FockState state;
  int sign = 1;
};

/// c^dagger_orb |state>, or nothing when the orbital is already occupied.
std::optional<SignedState> apply_creation(FockState state, OrbitalIndex orb);
/// c_orb |state>, or nothing when the orbital is empty.
std::optional<SignedState> apply_annihilation(FockState state, OrbitalIndex orb);

/// Conserved quantum numbers (N, S_z) of a block. S_z is stored doubled so
/// half-integer values stay exact.
struct SectorLabel {
  int particles = 0;
  int twice_sz = 0;

  int n_up() const { return (particles + twice_sz) / 2; }
  int n_down() const { return (particles - twice_sz) / 2; }
  double sz() const { return 0.5 * twice_sz; }

  friend constexpr bool operator==(SectorLabel, SectorLabel) = default;
  friend constexpr auto operator<=>(SectorLabel, SectorLabel) = default;
};

class SectorBasis {
 public:
  SectorBasis() = default;

  int sites() const { return sites_; }
  SectorLabel label() const { return label_; }
  std::size_t dim() const { return states_.size(); }
  bool empty() const { return states_.empty(); }

  const std::vector<FockState>& states() const { return states_; }
  FockState operator[](std::size_t k) const { return states_[k]; }

  std::optional<std::size_t> index_of(FockState s) const;

 private:
  friend SectorBasis enumerate_sector(int, int, int);

  int sites_ = 0;
  SectorLabel label_{};
  std::vector<FockState> states_;
  std::unordered_map<std::uint32_t, std::size_t> index_;
};

/// All Fock states of `sites` sites with the given particle number and
/// doubled S_z, ordered by mask value. Throws std::invalid_argument when the
/// site count is outside [1, kMaxSites]; an unreachable (N, S_z) pair yields
/// an empty basis instead.
SectorBasis enumerate_sector(int sites, int particles, int twice_sz);

/// Every non-empty (N, S_z) label of a chain, ordered by (N, S_z).
std::vector<SectorLabel> all_sectors(int sites);

/// Binomial coefficient for small arguments; 0 outside the valid range.
std::uint64_t binomial(int n, int k);

}  // namespace dqd
