#pragma once

// Dense complex matrix kernel for 2x2 and 2(x)2 systems: Kronecker product,
// partial transpose, cyclic Jacobi eigensolver and Hermitian matrix powers.
// Everything here is the brute-force reference path the closed forms in the
// other headers are checked against.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "werner/errors.hpp"

namespace werner {

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Real eigenvalues of a Hermitian matrix, sorted descending.
template <typename Scalar>
using Spectrum = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrixd = ComplexMatrix<double>;
using Spectrumd = Spectrum<double>;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kEqualityTolerance = 1e-12;

template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar max_abs_difference(const Eigen::MatrixBase<DerivedA>& a,
                                                 const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_difference: shape mismatch");
  }
  if (a.size() == 0) return 0;
  return (a - b).cwiseAbs().maxCoeff();
}

/// Entrywise comparison: max |a_ij - b_ij| <= tol.
template <typename DerivedA, typename DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                  double tol = kEqualityTolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return static_cast<double>(max_abs_difference(a, b)) <= tol;
}

/// max |m_ij - conj(m_ji)|
template <typename Derived>
typename Derived::RealScalar hermitian_asymmetry(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTolerance) {
  const auto asym = static_cast<double>(hermitian_asymmetry(m));
  if (!(asym <= tol)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |m - m^dagger| = " << asym << " exceeds " << tol;
    throw ValidationError(msg.str());
  }
}

/// Kronecker product; block (i, j) of the result is lhs(i, j) * rhs.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> tensor_product(
    const Eigen::MatrixBase<DerivedA>& lhs, const Eigen::MatrixBase<DerivedB>& rhs) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index r = rhs.rows();
  const Eigen::Index c = rhs.cols();
  Result out(lhs.rows() * r, lhs.cols() * c);
  for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
    for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
      out.block(i * r, j * c, r, c) = lhs(i, j) * rhs;
    }
  }
  return out;
}

/// Transpose on the second qubit of a 4x4 matrix with row index 2*i1 + i2:
/// out((i1,i2),(j1,j2)) = m((i1,j2),(j1,i2)).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_transpose_second(
    const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != 4 || m.cols() != 4) {
    std::ostringstream msg;
    msg << "partial_transpose_second expects a 4x4 matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(msg.str());
  }
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(4, 4);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2)
          out(2 * i1 + i2, 2 * j1 + j2) = m(2 * i1 + j2, 2 * j1 + i2);
  return out;
}

struct JacobiSettings {
  double off_diagonal_tolerance = 1e-13;  // relative to max(1, ||m||_F)
  int max_sweeps = 50;
  double hermitian_tolerance = kHermitianTolerance;
};

template <typename Scalar>
struct HermitianEigen {
  Spectrum<Scalar> values;        // descending
  ComplexMatrix<Scalar> vectors;  // column k pairs with values(k)
  int sweeps = 0;
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot m(p,q) with a diagonal
/// unitary, then applies the real symmetric Jacobi rotation. Sweeps stop once
/// the off-diagonal Frobenius norm drops below the tolerance. Eigenvalues come
/// back sorted descending; equal values keep the order they had on the
/// diagonal after the last sweep.
template <typename Derived>
HermitianEigen<typename Derived::RealScalar> hermitian_eigen(const Eigen::MatrixBase<Derived>& m,
                                                             const JacobiSettings& settings = {}) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  using Matrix = ComplexMatrix<Real>;

  if (m.rows() != m.cols()) throw DimensionError("hermitian_eigen: matrix is not square");
  require_hermitian(m, settings.hermitian_tolerance);

  const Eigen::Index dim = m.rows();
  Matrix a = m.template cast<Complex>();
  a = (a + a.adjoint().eval()) / Real(2);
  Matrix v = Matrix::Identity(dim, dim);

  auto off_norm = [&] {
    Real s = 0;
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };
  const Real threshold =
      static_cast<Real>(settings.off_diagonal_tolerance) * std::max(Real(1), a.norm());

  int sweep = 0;
  while (off_norm() >= threshold) {
    if (sweep == settings.max_sweeps) {
      throw std::runtime_error("hermitian_eigen: Jacobi sweeps did not converge");
    }
    ++sweep;
    for (Eigen::Index p = 0; p + 1 < dim; ++p) {
      for (Eigen::Index q = p + 1; q < dim; ++q) {
        const Real apq_abs = std::abs(a(p, q));
        if (apq_abs == Real(0)) continue;
        const Complex phase = a(p, q) / apq_abs;
        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        const Real theta = (aqq - app) / (Real(2) * apq_abs);
        Real t = Real(1) / (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        if (theta < 0) t = -t;
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;

        // J = diag(1, conj(phase)) on (p, q) followed by the real rotation.
        Matrix j = Matrix::Identity(dim, dim);
        j(p, p) = c;
        j(p, q) = s;
        j(q, p) = -s * std::conj(phase);
        j(q, q) = c * std::conj(phase);

        a = (j.adjoint() * a * j).eval();
        a(p, q) = a(q, p) = Complex(0);
        v = (v * j).eval();
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() > a(y, y).real();
  });

  HermitianEigen<Real> out;
  out.values.resize(dim);
  out.vectors.resize(dim, dim);
  out.sweeps = sweep;
  for (Eigen::Index k = 0; k < dim; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

template <typename Derived>
Spectrum<typename Derived::RealScalar> hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m,
                                                             const JacobiSettings& settings = {}) {
  return hermitian_eigen(m, settings).values;
}

/// m^n through the eigendecomposition V diag(lambda^n) V^dagger.
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> matrix_power(const Eigen::MatrixBase<Derived>& m, int n,
                                                         const JacobiSettings& settings = {}) {
  using Real = typename Derived::RealScalar;
  if (n < 1) throw ValidationError("matrix_power: exponent must be >= 1");
  const auto eig = hermitian_eigen(m, settings);
  Spectrum<Real> powered(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    Real x = 1;
    for (int i = 0; i < n; ++i) x *= eig.values(k);
    powered(k) = x;
  }
  return eig.vectors * powered.template cast<std::complex<Real>>().asDiagonal() *
         eig.vectors.adjoint();
}

/// m * m * ... * m (n factors). Reference path for matrix_power.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> power_by_multiplication(
    const Eigen::MatrixBase<Derived>& m, int n) {
  if (n < 1) throw ValidationError("power_by_multiplication: exponent must be >= 1");
  if (m.rows() != m.cols()) throw DimensionError("power_by_multiplication: matrix is not square");
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out = m;
  for (int i = 1; i < n; ++i) out = (out * m).eval();
  return out;
}

}  // namespace werner
