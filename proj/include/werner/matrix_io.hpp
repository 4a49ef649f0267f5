#pragma once

// Plain-text matrix format used by test fixtures:
//   line 1: dim
//   then dim*dim lines "re im", row-major.

#include <complex>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "werner/smallmat.hpp"

namespace werner {

template <typename Scalar = double>
ComplexMatrix<Scalar> read_matrix(std::istream& in) {
  long dim = 0;
  if (!(in >> dim) || dim <= 0) throw ValidationError("read_matrix: missing or invalid dimension");
  ComplexMatrix<Scalar> m(dim, dim);
  for (long i = 0; i < dim; ++i) {
    for (long j = 0; j < dim; ++j) {
      Scalar re{}, im{};
      if (!(in >> re >> im)) {
        std::ostringstream msg;
        msg << "read_matrix: expected " << dim * dim << " entries, failed at entry "
            << i * dim + j;
        throw ValidationError(msg.str());
      }
      m(i, j) = std::complex<Scalar>(re, im);
    }
  }
  return m;
}

template <typename Derived>
void write_matrix(std::ostream& out, const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw DimensionError("write_matrix: matrix is not square");
  const auto old_precision = out.precision(17);
  out << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << std::real(m(i, j)) << ' ' << std::imag(m(i, j)) << '\n';
  out.precision(old_precision);
}

}  // namespace werner
