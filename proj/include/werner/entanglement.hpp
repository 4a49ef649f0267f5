#pragma once

// Peres-Horodecki classification of the Werner channel family. For 2(x)2
// systems a positive partial transpose is necessary and sufficient for
// separability, so everything here reduces to the sign of the smallest
// eigenvalue of the partially transposed matrix.

#include <cmath>
#include <optional>

#include "werner/werner_state.hpp"

namespace werner {

inline constexpr double kNegativeEigenvalueTolerance = 1e-12;

enum class Classification { separable, entangled };

inline const char* to_string(Classification c) {
  return c == Classification::separable ? "separable" : "entangled";
}

/// Endpoints in p of the entangled domain for power n. Entangled for
/// p > upper, and for even n also for p < lower. The endpoints themselves
/// are separable.
struct EntanglementBoundaries {
  std::optional<double> lower;
  double upper = 0;
};

template <typename Scalar>
struct EntanglementVerdict {
  bool state_valid = false;   // rho_{w,n} is positive semidefinite
  bool formal_input = false;  // p lies outside [-1/3, 1]
  Classification classification = Classification::separable;
  EntanglementBoundaries boundaries;
  Scalar min_ppt_eigenvalue{0};
};

/// Eigenvalues of the partial transpose of rho_{w,n}, descending:
///   (3(1-p)^n - (1+3p)^n) / (2 den) once, ((1-p)^n + (1+3p)^n) / (2 den) three times.
template <typename Scalar>
Spectrum<Scalar> ppt_spectrum_closed(const WernerParameters<Scalar>& params) {
  const auto w = channel_weights(params);
  const Scalar single = (Scalar(3) * w.low - w.high) / (Scalar(2) * w.den);
  const Scalar triple = (w.low + w.high) / (Scalar(2) * w.den);
  Spectrum<Scalar> s(4);
  if (single >= triple) {
    s << single, triple, triple, triple;
  } else {
    s << triple, triple, triple, single;
  }
  return s;
}

/// Sum of |eigenvalues| of the partial transpose. 1 for PPT states, > 1 when
/// the smallest PPT eigenvalue is negative.
template <typename Scalar>
Scalar negativity(const WernerParameters<Scalar>& params) {
  return ppt_spectrum_closed(params).cwiseAbs().sum();
}

/// |2 (1+3p)^n / (3(1-p)^n + (1+3p)^n)|. Agrees with negativity() only on the
/// entangled branch.
template <typename Scalar>
Scalar negativity_entangled_branch(const WernerParameters<Scalar>& params) {
  const auto w = channel_weights(params);
  return std::abs(Scalar(2) * w.high / w.den);
}

inline EntanglementBoundaries entanglement_boundaries(int n) {
  detail::require_power(n);
  const double root = std::pow(3.0, 1.0 / n);
  EntanglementBoundaries b;
  b.upper = 1.0 - 4.0 / (root + 3.0);
  if (n % 2 == 0) b.lower = 1.0 + 4.0 / (root - 3.0);
  return b;
}

template <typename Scalar>
EntanglementVerdict<Scalar> classify_werner(const WernerParameters<Scalar>& params) {
  const Spectrum<Scalar> spectrum = channel_spectrum(params);
  const Spectrum<Scalar> ppt = ppt_spectrum_closed(params);
  const Scalar tol(kNegativeEigenvalueTolerance);

  EntanglementVerdict<Scalar> v;
  v.state_valid = spectrum.minCoeff() >= -tol;
  v.formal_input = params.formal_input();
  v.min_ppt_eigenvalue = ppt.minCoeff();
  v.classification =
      v.min_ppt_eigenvalue < -tol ? Classification::entangled : Classification::separable;
  v.boundaries = entanglement_boundaries(params.n);
  return v;
}

}  // namespace werner
