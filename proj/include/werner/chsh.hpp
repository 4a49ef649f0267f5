#pragma once

// CHSH correlations for the Werner channel family.
//
// For a Werner-shaped state the two-direction correlator depends on the state
// only through C, so B = <M_ab> + <M_ac> + <M_db> - <M_dc> factorizes as
// 2C * zeta(a, b, c, d). maximize_bell searches the angles numerically and
// analytic_max_bell supplies the known optimum 2|C| * 2 sqrt 2 to check it.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "werner/simplex.hpp"
#include "werner/tomography.hpp"
#include "werner/werner_state.hpp"

namespace werner {

template <typename Scalar>
struct ChshDirections {
  EulerAngles<Scalar> a, b, c, d;
};

template <typename Scalar>
struct ChshConfiguration {
  ChshDirections<Scalar> dirs;
  Scalar value{0};
};

struct OptimizerSettings {
  int theta_divisions = 8;  // theta grid {0, pi/8, ..., pi}
  int psi_divisions = 8;    // psi grid {0, pi/4, ..., 7pi/4}
  int seeds = 16;
  int max_evaluations = 2000;
  double tolerance = 1e-8;  // simplex diameter
};

/// No local search converged within its evaluation budget.
template <typename Scalar>
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, ChshConfiguration<Scalar> best)
      : std::runtime_error(what), best_(best) {}
  const ChshConfiguration<Scalar>& best_so_far() const noexcept { return best_; }

 private:
  ChshConfiguration<Scalar> best_;
};

/// <M_ab> = 2C (cos ta cos tb + sin ta sin tb cos(pa + pb)).
template <typename Scalar>
Scalar correlator(const WernerCoefficients<Scalar>& k, const EulerAngles<Scalar>& alpha,
                  const EulerAngles<Scalar>& beta) {
  return Scalar(2) * k.c *
         (std::cos(alpha.theta) * std::cos(beta.theta) +
          std::sin(alpha.theta) * std::sin(beta.theta) * std::cos(alpha.psi + beta.psi));
}

/// W(uu) - W(ud) - W(du) + W(dd) from the closed-form tomogram.
template <typename Scalar>
Scalar correlator_from_tomogram(const WernerCoefficients<Scalar>& k,
                                const EulerAngles<Scalar>& alpha, const EulerAngles<Scalar>& beta) {
  Scalar sum{0};
  for (const auto o : kAllOutcomes) {
    const Scalar sign = o.m1 == o.m2 ? Scalar(1) : Scalar(-1);
    sum += sign * tomogram_closed(k, alpha, beta, o);
  }
  return sum;
}

/// Angular factor of the CHSH combination; lies in [-2 sqrt 2, 2 sqrt 2].
template <typename Scalar>
Scalar zeta(const ChshDirections<Scalar>& d) {
  auto term = [](const EulerAngles<Scalar>& x, const EulerAngles<Scalar>& y) {
    return std::cos(x.theta) * std::cos(y.theta) +
           std::sin(x.theta) * std::sin(y.theta) * std::cos(x.psi + y.psi);
  };
  return term(d.a, d.b) + term(d.a, d.c) + term(d.d, d.b) - term(d.d, d.c);
}

/// B = <M_ab> + <M_ac> + <M_db> - <M_dc>.
template <typename Scalar>
Scalar bell_correlation(const WernerCoefficients<Scalar>& k, const ChshDirections<Scalar>& d) {
  return correlator(k, d.a, d.b) + correlator(k, d.a, d.c) + correlator(k, d.d, d.b) -
         correlator(k, d.d, d.c);
}

/// Global maximum of B over all directions: 2|C| * 2 sqrt 2.
template <typename Scalar>
Scalar analytic_max_bell(const WernerParameters<Scalar>& params) {
  const auto k = werner_coefficients(params);
  return Scalar(4) * std::sqrt(Scalar(2)) * std::abs(k.c);
}

/// Maps theta into [0, pi] and psi into [0, 2 pi) without changing the direction.
template <typename Scalar>
EulerAngles<Scalar> normalize_angles(EulerAngles<Scalar> g) {
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  auto wrap = [&](Scalar x) {
    x = std::fmod(x, two_pi);
    if (x < 0) x += two_pi;
    if (x >= two_pi) x -= two_pi;
    return x;
  };
  g.theta = wrap(g.theta);
  if (g.theta > std::numbers::pi_v<Scalar>) {
    g.theta = two_pi - g.theta;
    g.psi += std::numbers::pi_v<Scalar>;
  }
  g.psi = wrap(g.psi);
  g.phi = wrap(g.phi);
  return g;
}

namespace detail {

// Search vector layout: (theta_a, psi_a, theta_b, psi_b, theta_c, psi_c, theta_d, psi_d).
template <typename Scalar>
ChshDirections<Scalar> unpack_directions(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) {
  return {{x(0), 0, x(1)}, {x(2), 0, x(3)}, {x(4), 0, x(5)}, {x(6), 0, x(7)}};
}

template <typename Scalar>
auto angle_key(const ChshDirections<Scalar>& d) {
  return std::make_tuple(d.a.theta, d.a.psi, d.b.theta, d.b.psi, d.c.theta, d.c.psi, d.d.theta,
                         d.d.psi);
}

struct GridSeed {
  double value;
  std::array<int, 4> index;  // a, b, c, d into the direction grid
};

// Best first; ties broken by grid index so the selection never depends on
// enumeration order.
inline bool seed_before(const GridSeed& x, const GridSeed& y) {
  if (x.value != y.value) return x.value > y.value;
  return x.index < y.index;
}

}  // namespace detail

/// Maximizes B over measurement directions for rho_{w,n}(p).
///
/// Coarse stage: every (a, b, c, d) on a product grid of directions is scored
/// through a precomputed table of pairwise correlators, and the best `seeds`
/// grid points are kept. Each seed is then refined with Nelder-Mead on the
/// eight (theta, psi) angles; phi never enters B. The best refined value wins,
/// with exact ties resolved by the normalized angles.
template <typename Scalar>
ChshConfiguration<Scalar> maximize_bell(const WernerParameters<Scalar>& params,
                                        const OptimizerSettings& opt = {}) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (opt.theta_divisions < 1 || opt.psi_divisions < 1 || opt.seeds < 1 ||
      opt.max_evaluations < 1 || !(opt.tolerance > 0)) {
    throw ValidationError("maximize_bell: optimizer settings must be positive");
  }
  const auto k = werner_coefficients(params);
  const Scalar pi = std::numbers::pi_v<Scalar>;

  std::vector<EulerAngles<Scalar>> grid;
  for (int i = 0; i <= opt.theta_divisions; ++i)
    for (int j = 0; j < opt.psi_divisions; ++j)
      grid.push_back({pi * Scalar(i) / Scalar(opt.theta_divisions), Scalar(0),
                      Scalar(2) * pi * Scalar(j) / Scalar(opt.psi_divisions)});
  const std::size_t g = grid.size();

  std::vector<double> table(g * g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      table[i * g + j] = static_cast<double>(correlator(k, grid[i], grid[j]));

  const std::size_t keep = static_cast<std::size_t>(opt.seeds);
  std::vector<detail::GridSeed> best;
  best.reserve(keep + 1);
  auto offer = [&](const detail::GridSeed& s) {
    if (best.size() == keep && !detail::seed_before(s, best.back())) return;
    best.insert(std::upper_bound(best.begin(), best.end(), s, detail::seed_before), s);
    if (best.size() > keep) best.pop_back();
  };

  // B(a,b,c,d) = [M_ab + M_db] + [M_ac - M_dc]; the brackets decouple b and c.
  std::vector<double> with_b(g), with_c(g);
  for (std::size_t ia = 0; ia < g; ++ia) {
    for (std::size_t id = 0; id < g; ++id) {
      for (std::size_t j = 0; j < g; ++j) {
        with_b[j] = table[ia * g + j] + table[id * g + j];
        with_c[j] = table[ia * g + j] - table[id * g + j];
      }
      for (std::size_t ib = 0; ib < g; ++ib) {
        for (std::size_t ic = 0; ic < g; ++ic) {
          const double v = with_b[ib] + with_c[ic];
          if (best.size() == keep && v < best.back().value) continue;
          offer({v,
                 {static_cast<int>(ia), static_cast<int>(ib), static_cast<int>(ic),
                  static_cast<int>(id)}});
        }
      }
    }
  }

  SimplexSettings simplex;
  simplex.initial_step = static_cast<double>(pi) / (2.0 * opt.theta_divisions);
  simplex.diameter_tolerance = opt.tolerance;
  simplex.max_evaluations = opt.max_evaluations;

  auto objective = [&](const Vector& x) {
    return -bell_correlation(k, detail::unpack_directions<Scalar>(x));
  };

  ChshConfiguration<Scalar> winner;
  bool have_winner = false;
  bool any_converged = false;
  for (const auto& seed : best) {
    Vector x0(8);
    for (int q = 0; q < 4; ++q) {
      const auto& dir = grid[static_cast<std::size_t>(seed.index[static_cast<std::size_t>(q)])];
      x0(2 * q) = dir.theta;
      x0(2 * q + 1) = dir.psi;
    }
    const auto result = nelder_mead_minimize<Scalar>(objective, x0, simplex);
    any_converged = any_converged || result.converged;

    ChshConfiguration<Scalar> candidate;
    candidate.dirs = detail::unpack_directions<Scalar>(result.x);
    candidate.dirs.a = normalize_angles(candidate.dirs.a);
    candidate.dirs.b = normalize_angles(candidate.dirs.b);
    candidate.dirs.c = normalize_angles(candidate.dirs.c);
    candidate.dirs.d = normalize_angles(candidate.dirs.d);
    candidate.value = bell_correlation(k, candidate.dirs);

    if (!have_winner || candidate.value > winner.value ||
        (candidate.value == winner.value &&
         detail::angle_key(candidate.dirs) < detail::angle_key(winner.dirs))) {
      winner = candidate;
      have_winner = true;
    }
  }

  if (!any_converged) {
    throw ConvergenceError<Scalar>(
        "maximize_bell: no local search converged within the evaluation budget", winner);
  }
  return winner;
}

}  // namespace werner
