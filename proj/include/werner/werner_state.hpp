#pragma once

// Two-qubit Werner family and the normalized power channel rho -> rho^n / Tr rho^n.
//
// Every matrix in the family has the layout
//
//   | a 0 0 c |
//   | 0 b 0 0 |
//   | 0 0 b 0 |
//   | c 0 0 a |
//
// with a, b, c fixed by p and n. All closed forms are written in terms of the
// two spectral weights (1-p)^n and (1+3p)^n, which are rescaled by
// max(|1-p|, |1+3p|)^n so that large n neither overflows nor underflows.

#include <algorithm>
#include <cmath>
#include <sstream>

#include "werner/errors.hpp"
#include "werner/smallmat.hpp"

namespace werner {

inline constexpr double kSingularTolerance = 1e-12;

template <typename Scalar>
struct WernerParameters {
  Scalar p{0};
  int n{1};

  /// rho_{w,1}(p) is a density matrix only for p in [-1/3, 1]. Outside that
  /// range the channel formulas still evaluate, but the input is formal.
  bool is_state_parameter() const { return p >= Scalar(-1) / Scalar(3) && p <= Scalar(1); }
  bool formal_input() const { return !is_state_parameter(); }
};

using WernerParametersd = WernerParameters<double>;

template <typename Scalar>
struct WernerCoefficients {
  Scalar a{0};
  Scalar b{0};
  Scalar c{0};
};

using WernerCoefficientsd = WernerCoefficients<double>;

/// x^n by repeated squaring.
template <typename Scalar>
Scalar integer_power(Scalar x, int n) {
  Scalar result{1};
  while (n > 0) {
    if (n & 1) result *= x;
    x *= x;
    n >>= 1;
  }
  return result;
}

/// Odd n only: the p at which 3(1-p)^n + (1+3p)^n = 0.
inline double singular_parameter(int n) {
  return 1.0 + 4.0 / (std::pow(3.0, 1.0 / n) - 3.0);
}

namespace detail {

inline void require_power(int n) {
  if (n < 1) {
    std::ostringstream msg;
    msg << "channel power n must be >= 1, got " << n;
    throw ValidationError(msg.str());
  }
}

}  // namespace detail

/// (1-p)^n and (1+3p)^n divided by the common scale max(|1-p|, |1+3p|)^n,
/// plus the rescaled normalization 3*low + high.
template <typename Scalar>
struct ChannelWeights {
  Scalar low;   // (1-p)^n / scale
  Scalar high;  // (1+3p)^n / scale
  Scalar den;   // 3*low + high
};

template <typename Scalar>
ChannelWeights<Scalar> channel_weights(const WernerParameters<Scalar>& params) {
  detail::require_power(params.n);
  const Scalar x = Scalar(1) - params.p;
  const Scalar y = Scalar(1) + Scalar(3) * params.p;
  const Scalar scale = std::max(std::abs(x), std::abs(y));
  ChannelWeights<Scalar> w;
  w.low = integer_power(x / scale, params.n);
  w.high = integer_power(y / scale, params.n);
  w.den = Scalar(3) * w.low + w.high;
  if (std::abs(w.den) <= Scalar(kSingularTolerance)) {
    const double ps = singular_parameter(params.n);
    std::ostringstream msg;
    msg.precision(12);
    msg << "singular channel: 3(1-p)^n + (1+3p)^n vanishes at p = " << static_cast<double>(params.p)
        << ", n = " << params.n << " (singular point p = " << ps << ")";
    throw SingularityError(msg.str(), ps);
  }
  return w;
}

template <typename Scalar>
WernerCoefficients<Scalar> werner_coefficients(const WernerParameters<Scalar>& params) {
  const auto w = channel_weights(params);
  return {(w.low + w.high) / (Scalar(2) * w.den), w.low / w.den,
          (w.high - w.low) / (Scalar(2) * w.den)};
}

template <typename Scalar>
ComplexMatrix<Scalar> werner_layout(const WernerCoefficients<Scalar>& k) {
  ComplexMatrix<Scalar> m = ComplexMatrix<Scalar>::Zero(4, 4);
  m(0, 0) = m(3, 3) = k.a;
  m(1, 1) = m(2, 2) = k.b;
  m(0, 3) = m(3, 0) = k.c;
  return m;
}

/// rho_{w,1}(p) with a = (1+p)/4, b = (1-p)/4, c = p/2, straight from the definition.
template <typename Scalar>
ComplexMatrix<Scalar> werner_density(Scalar p) {
  return werner_layout(WernerCoefficients<Scalar>{(Scalar(1) + p) / Scalar(4),
                                                  (Scalar(1) - p) / Scalar(4), p / Scalar(2)});
}

/// rho_{w,n} = rho_{w,1}^n / Tr rho_{w,1}^n in closed form.
template <typename Scalar>
ComplexMatrix<Scalar> channel_density(const WernerParameters<Scalar>& params) {
  return werner_layout(werner_coefficients(params));
}

/// Eigenvalues of rho_{w,n}: (1+3p)^n/den once and (1-p)^n/den three times, descending.
template <typename Scalar>
Spectrum<Scalar> channel_spectrum(const WernerParameters<Scalar>& params) {
  const auto w = channel_weights(params);
  const Scalar singlet = w.high / w.den;
  const Scalar triplet = w.low / w.den;
  Spectrum<Scalar> s(4);
  if (singlet >= triplet) {
    s << singlet, triplet, triplet, triplet;
  } else {
    s << triplet, triplet, triplet, singlet;
  }
  return s;
}

enum class ParameterSign { negative, zero, positive };

template <typename Scalar>
ParameterSign sign_of(Scalar p) {
  if (p < 0) return ParameterSign::negative;
  if (p > 0) return ParameterSign::positive;
  return ParameterSign::zero;
}

/// n -> infinity limit of channel_spectrum, descending.
template <typename Scalar = double>
Spectrum<Scalar> limit_spectrum(ParameterSign sign) {
  Spectrum<Scalar> s(4);
  switch (sign) {
    case ParameterSign::negative: {
      const Scalar third = Scalar(1) / Scalar(3);
      s << third, third, third, Scalar(0);
      break;
    }
    case ParameterSign::zero:
      s.setConstant(Scalar(1) / Scalar(4));
      break;
    case ParameterSign::positive:
      s << Scalar(1), Scalar(0), Scalar(0), Scalar(0);
      break;
  }
  return s;
}

/// Eigenvectors of rho_{w,1} as columns: (1,0,0,1)/sqrt2, e2, e3, (1,0,0,-1)/sqrt2.
/// Real, symmetric and its own inverse.
template <typename Scalar = double>
ComplexMatrix<Scalar> werner_eigenbasis() {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  ComplexMatrix<Scalar> s = ComplexMatrix<Scalar>::Zero(4, 4);
  s(0, 0) = h;
  s(3, 0) = h;
  s(1, 1) = 1;
  s(2, 2) = 1;
  s(0, 3) = h;
  s(3, 3) = -h;
  return s;
}

/// Diagonal of rho_{w,1}(p) in the werner_eigenbasis column order.
template <typename Scalar>
Spectrum<Scalar> werner_eigenbasis_diagonal(Scalar p) {
  Spectrum<Scalar> d(4);
  const Scalar triplet = (Scalar(1) - p) / Scalar(4);
  d << (Scalar(1) + Scalar(3) * p) / Scalar(4), triplet, triplet, triplet;
  return d;
}

}  // namespace werner
