#include "dqd/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqd {

namespace {

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

// sigma_y x sigma_y in the {uu, ud, du, dd} basis.
QubitMatrix spin_flip() {
  QubitMatrix y = QubitMatrix::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

}  // namespace

ConcurrenceReport concurrence_closed_form(const CorrelatorSet& cs) {
  ConcurrenceReport r;
  r.c_antiparallel = 2.0 * std::abs(cs.s_plus_minus) -
                     2.0 * safe_sqrt(cs.p[0][0] * cs.p[1][1]);
  r.c_parallel = 2.0 * std::abs(cs.s_plus_plus) -
                 2.0 * safe_sqrt(cs.p[0][1] * cs.p[1][0]);
  r.p_antiparallel = cs.p_antiparallel();
  r.p_parallel = cs.p_parallel();
  const double weight = r.single_occupancy_weight();
  if (weight < kMinSingleOccupancy) return r;
  r.concurrence = std::max({0.0, r.c_antiparallel, r.c_parallel}) / weight;
  return r;
}

double wootters_concurrence(const QubitMatrix& rho) {
  constexpr double tol = 1e-9;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol)
    throw std::invalid_argument("density matrix trace is not 1");
  const QubitMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<QubitMatrix> es(herm);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("density matrix is not positive semidefinite");

  // The square roots of the eigenvalues of rho Y rho* Y are the singular
  // values of sqrt(rho) Y sqrt(rho)*, which avoids square-rooting tiny
  // eigenvalues of a non-Hermitian product.
  const Eigen::Vector4d root =
      es.eigenvalues().unaryExpr([](double x) { return safe_sqrt(x); });
  const QubitMatrix sqrt_rho =
      es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  const QubitMatrix y = spin_flip();
  const QubitMatrix m = sqrt_rho * y * sqrt_rho.conjugate();
  Eigen::JacobiSVD<QubitMatrix> svd(m);
  const Eigen::Vector4d l = svd.singularValues();  // descending
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

std::optional<QubitProjection> project_single_occupancy(const ReducedDensityMatrix& rdm) {
  constexpr std::array<int, 4> idx = {
      ReducedDensityMatrix::index(kLocalUp, kLocalUp),
      ReducedDensityMatrix::index(kLocalUp, kLocalDown),
      ReducedDensityMatrix::index(kLocalDown, kLocalUp),
      ReducedDensityMatrix::index(kLocalDown, kLocalDown)};
  QubitMatrix block;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) block(i, j) = rdm.rho(idx[i], idx[j]);
  const double weight = block.trace().real();
  if (weight < kMinSingleOccupancy) return std::nullopt;
  return QubitProjection{block / weight, weight};
}

bool is_axially_symmetric(const QubitMatrix& rho) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;  // diagonal, ud/du and uu/dd pairs
      if (std::abs(rho(i, j)) >= kAxialTolerance) return false;
    }
  return true;
}

CorrelatorSet qubit_correlators(const QubitMatrix& rho) {
  CorrelatorSet cs;
  // <S+_A S-_B> = Tr(rho |ud><du|), <S+_A S+_B> = Tr(rho |uu><dd|).
  cs.s_plus_minus = rho(kDU, kUD);
  cs.s_plus_plus = rho(kDD, kUU);
  cs.p[0][0] = rho(kUU, kUU).real();
  cs.p[0][1] = rho(kUD, kUD).real();
  cs.p[1][0] = rho(kDU, kDU).real();
  cs.p[1][1] = rho(kDD, kDD).real();
  const double szsz = 0.25 * (cs.p[0][0] + cs.p[1][1] - cs.p[0][1] - cs.p[1][0]);
  cs.spin_dot = szsz + rho(kDU, kUD).real();
  cs.n_a = cs.n_b = rho.trace().real();
  return cs;
}

double pure_state_concurrence(const std::array<std::complex<double>, 4>& a) {
  double norm = 0.0;
  for (const auto& x : a) norm += std::norm(x);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("amplitudes are not normalized");
  return 2.0 * std::abs(a[kUD] * a[kDU] - a[kUU] * a[kDD]);
}

ConcurrenceReport analyze_concurrence(const CorrelatorSet& cs,
                                      const ReducedDensityMatrix& rdm) {
  ConcurrenceReport r = concurrence_closed_form(cs);
  const auto projected = project_single_occupancy(rdm);
  if (!projected) {
    r.concurrence.reset();
    return r;
  }
  r.oracle = wootters_concurrence(projected->rho);
  r.axially_symmetric = is_axially_symmetric(projected->rho);
  if (!r.axially_symmetric) r.concurrence.reset();
  return r;
}

}  // namespace dqd
