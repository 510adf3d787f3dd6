#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "dqd/fock.hpp"
#include "dqd/solver.hpp"

namespace dqd {

struct Ladder {
  OrbitalIndex orb;
  bool dagger = false;
};

/// coeff * ops[0] ops[1] ... ops[n-1]; the rightmost operator acts first.
struct Monomial {
  double coeff = 1.0;
  std::vector<Ladder> ops;
};

/// Finite sum of fermionic monomials with real coefficients.
class FermionOperator {
 public:
  FermionOperator() = default;

  static FermionOperator identity();
  static FermionOperator create(OrbitalIndex orb);
  static FermionOperator annihilate(OrbitalIndex orb);
  static FermionOperator number(OrbitalIndex orb);

  const std::vector<Monomial>& terms() const { return terms_; }
  /// Largest site index touched, -1 for a pure scalar.
  int max_site() const;

  struct Image {
    FockState state;
    double amplitude;
  };
  /// op |state>, unsimplified (one image per surviving monomial).
  std::vector<Image> apply(FockState state) const;

  FermionOperator& operator+=(const FermionOperator& rhs);
  FermionOperator& operator*=(double s);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) {
    FermionOperator nb = b;
    nb *= -1.0;
    return a += nb;
  }
  friend FermionOperator operator*(double s, FermionOperator a) { return a *= s; }
  friend FermionOperator operator*(const FermionOperator& a, const FermionOperator& b);

 private:
  std::vector<Monomial> terms_;
};

namespace ops {
FermionOperator occupancy(int site);                  // n_up + n_down
FermionOperator spin_plus(int site);                  // c+_up c_down
FermionOperator spin_minus(int site);                 // c+_down c_up
FermionOperator spin_z(int site);                     // (n_up - n_down)/2
FermionOperator single_projector(int site, Spin s);   // n_s (1 - n_-s)
FermionOperator spin_dot(int a, int b);               // S_a . S_b
}  // namespace ops

/// <v| op |v> for a real vector in a sector basis. Components of op|v>
/// leaving the sector contribute nothing.
double expectation(const SectorBasis& basis, std::span<const double> v,
                   const FermionOperator& op);

/// sum_k w_k <v_k| op |v_k>. Throws std::out_of_range when op touches a
/// site beyond the model.
double expectation(const ThermalEnsemble& ens, const FermionOperator& op);

struct DotSites {
  int a = 0;
  int b = 1;
};

inline DotSites dot_sites(const ModelSpec& spec) { return {spec.dot_a(), spec.dot_b()}; }

/// The correlators entering the closed-form concurrence plus the spin and
/// charge diagnostics. p[s][s'] = <P^s_A P^s'_B> with index 0 = up.
struct CorrelatorSet {
  std::complex<double> s_plus_minus{};  // <S+_A S-_B>
  std::complex<double> s_plus_plus{};   // <S+_A S+_B>
  double p[2][2] = {{0, 0}, {0, 0}};
  double spin_dot = 0.0;
  double dn2_a = 0.0;
  double n_a = 0.0;
  double n_b = 0.0;

  double p_antiparallel() const { return p[0][1] + p[1][0]; }
  double p_parallel() const { return p[0][0] + p[1][1]; }
};

/// Direct Fock-space evaluation over the ensemble.
CorrelatorSet correlators(const ThermalEnsemble& ens, DotSites dots);

/// Two-dot reduced density matrix over the local product basis
/// {|0>, |up>, |dn>, |up dn>}_A x {...}_B, index 4*a + b, where
/// |up dn> = c+_up c+_dn |0> and A operators stand left of B operators.
struct ReducedDensityMatrix {
  Eigen::Matrix<double, 16, 16> rho = Eigen::Matrix<double, 16, 16>::Zero();

  static constexpr int index(int local_a, int local_b) { return 4 * local_a + local_b; }
};

inline constexpr int kLocalEmpty = 0;
inline constexpr int kLocalUp = 1;
inline constexpr int kLocalDown = 2;
inline constexpr int kLocalDouble = 3;

/// Partial trace over every non-dot orbital. Dot orbitals are moved ahead
/// of the environment in the operator string, tracking the fermionic sign.
ReducedDensityMatrix reduced_density_matrix(const ThermalEnsemble& ens, DotSites dots);

/// Matrix of an operator written on a two-site system (site 0 = A,
/// site 1 = B) in the reduced-density-matrix basis.
Eigen::Matrix<double, 16, 16> two_dot_operator_matrix(const FermionOperator& op);

/// Tr(rho O) for an operator on the two-site system.
double trace_with(const ReducedDensityMatrix& rdm, const FermionOperator& op);

/// Correlators recomputed from the reduced density matrix.
CorrelatorSet correlators_from_rdm(const ReducedDensityMatrix& rdm);

}  // namespace dqd
