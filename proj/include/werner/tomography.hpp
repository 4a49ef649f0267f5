#pragma once

// Spin tomograms: probabilities of spin projections after an SU(2) rotation.
// tomogram_general evaluates <m1 m2| U rho U^dagger |m1 m2> for any 4x4
// density matrix; tomogram_closed is the trigonometric closed form valid for
// the Werner-shaped family only.

#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include "werner/smallmat.hpp"
#include "werner/werner_state.hpp"

namespace werner {

inline constexpr double kDensityTolerance = 1e-10;

/// Measurement direction as Euler angles of the SU(2) rotation.
template <typename Scalar>
struct EulerAngles {
  Scalar theta{0};
  Scalar phi{0};
  Scalar psi{0};
};

using EulerAnglesd = EulerAngles<double>;

enum class Spin { up, down };

struct TwoSpinOutcome {
  Spin m1 = Spin::up;
  Spin m2 = Spin::up;
};

inline constexpr std::array<TwoSpinOutcome, 4> kAllOutcomes{{{Spin::up, Spin::up},
                                                            {Spin::up, Spin::down},
                                                            {Spin::down, Spin::up},
                                                            {Spin::down, Spin::down}}};

/// Basis index of a joint outcome: 2*[m1 = down] + [m2 = down].
constexpr int outcome_index(TwoSpinOutcome o) {
  return 2 * (o.m1 == Spin::down ? 1 : 0) + (o.m2 == Spin::down ? 1 : 0);
}

/// | cos(t/2) e^{i(f+s)/2}    sin(t/2) e^{i(f-s)/2} |
/// | -sin(t/2) e^{-i(f-s)/2}  cos(t/2) e^{-i(f+s)/2} |
template <typename Scalar>
ComplexMatrix<Scalar> su2_matrix(const EulerAngles<Scalar>& g) {
  using C = std::complex<Scalar>;
  const Scalar half = Scalar(0.5);
  const Scalar ct = std::cos(half * g.theta);
  const Scalar st = std::sin(half * g.theta);
  const C sum_phase = std::polar(Scalar(1), half * (g.phi + g.psi));
  const C diff_phase = std::polar(Scalar(1), half * (g.phi - g.psi));
  ComplexMatrix<Scalar> u(2, 2);
  u(0, 0) = ct * sum_phase;
  u(0, 1) = st * diff_phase;
  u(1, 0) = -st * std::conj(diff_phase);
  u(1, 1) = ct * std::conj(sum_phase);
  return u;
}

/// Checks Hermiticity, unit trace and positivity of a density matrix.
template <typename Derived>
void require_density_matrix(const Eigen::MatrixBase<Derived>& rho, double tol = kDensityTolerance) {
  require_hermitian(rho, tol);
  const double trace_error = std::abs(static_cast<double>(std::real(rho.trace())) - 1.0);
  if (trace_error > tol) {
    std::ostringstream msg;
    msg << "density matrix trace differs from 1 by " << trace_error;
    throw ValidationError(msg.str());
  }
  const double min_eig = static_cast<double>(hermitian_eigenvalues(rho).minCoeff());
  if (min_eig < -tol) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << min_eig;
    throw ValidationError(msg.str());
  }
}

/// W(m, n) = <m| u rho u^dagger |m> for one spin.
template <typename Scalar>
Scalar tomogram_single(const ComplexMatrix<Scalar>& rho, const EulerAngles<Scalar>& angles,
                       Spin m) {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionError("tomogram_single expects 2x2 rho");
  require_density_matrix(rho);
  const ComplexMatrix<Scalar> u = su2_matrix(angles);
  const int k = m == Spin::up ? 0 : 1;
  return std::real((u * rho * u.adjoint())(k, k));
}

/// W(m1, n1, m2, n2) = <m1 m2| U rho U^dagger |m1 m2> with U = u1 (x) u2.
template <typename Scalar>
Scalar tomogram_general(const ComplexMatrix<Scalar>& rho, const EulerAngles<Scalar>& angles1,
                        const EulerAngles<Scalar>& angles2, TwoSpinOutcome outcome) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("tomogram_general expects 4x4 rho");
  require_density_matrix(rho);
  const ComplexMatrix<Scalar> u = tensor_product(su2_matrix(angles1), su2_matrix(angles2));
  const int k = outcome_index(outcome);
  // Only row k of U contributes.
  const auto row = u.row(k);
  return std::real((row * rho * row.adjoint())(0, 0));
}

/// Closed-form two-spin tomogram of a Werner-shaped state with entries (a, b, c).
/// Depends on theta and psi only; phi drops out.
template <typename Scalar>
Scalar tomogram_closed(const WernerCoefficients<Scalar>& k, const EulerAngles<Scalar>& angles1,
                       const EulerAngles<Scalar>& angles2, TwoSpinOutcome outcome) {
  const Scalar c1 = std::cos(angles1.theta / 2), s1 = std::sin(angles1.theta / 2);
  const Scalar c2 = std::cos(angles2.theta / 2), s2 = std::sin(angles2.theta / 2);
  const Scalar aligned = c1 * c1 * c2 * c2 + s1 * s1 * s2 * s2;
  const Scalar crossed = s1 * s1 * c2 * c2 + c1 * c1 * s2 * s2;
  const Scalar coherence = k.c / Scalar(2) * std::sin(angles1.theta) * std::sin(angles2.theta) *
                           std::cos(angles1.psi + angles2.psi);
  if (outcome.m1 == outcome.m2) return k.a * aligned + k.b * crossed + coherence;
  return k.a * crossed + k.b * aligned - coherence;
}

}  // namespace werner
