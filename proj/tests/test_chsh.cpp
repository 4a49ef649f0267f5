#include <doctest.h>

#include <chrono>
#include <numbers>

#include "test_support.hpp"
#include "werner/chsh.hpp"
#include "werner/entanglement.hpp"

using namespace werner;
using werner::testing::random_angles;
using werner::testing::uniform;

namespace {

constexpr double pi = std::numbers::pi;
const double tsirelson = 2 * std::sqrt(2.0);

ChshDirections<double> random_directions() {
  return {random_angles(), random_angles(), random_angles(), random_angles()};
}

ChshDirections<double> optimal_directions() {
  return {{0, 0, 0}, {pi / 4, 0, 0}, {-pi / 4, 0, 0}, {pi / 2, 0, 0}};
}

}  // namespace

TEST_SUITE("correlator") {
  TEST_CASE("aligned z directions give 2C") {
    const auto k = werner_coefficients(WernerParametersd{0.4, 3});
    CHECK(correlator(k, EulerAnglesd{}, EulerAnglesd{}) == doctest::Approx(2 * k.c));
  }

  TEST_CASE("Bell projector, equatorial directions") {
    const auto k = werner_coefficients(WernerParametersd{1.0, 1});
    const EulerAnglesd eq{pi / 2, 0, 0};
    CHECK(correlator(k, eq, eq) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("equals the signed sum of closed-form tomograms") {
    for (int trial = 0; trial < 500; ++trial) {
      const auto k = werner_coefficients(WernerParametersd{uniform(-1.0 / 3.0, 1), 1 + trial % 8});
      const auto a = random_angles(), b = random_angles();
      const double direct = correlator(k, a, b);
      CHECK(std::abs(direct - correlator_from_tomogram(k, a, b)) < 1e-12);
      CHECK(std::abs(direct) <= 2 * std::abs(k.c) + 1e-15);
    }
  }

  TEST_CASE("equals the signed sum of rotated-matrix tomograms") {
    for (int trial = 0; trial < 50; ++trial) {
      const WernerParametersd params{uniform(-1.0 / 3.0, 1), 1 + trial % 8};
      const auto rho = channel_density(params);
      const auto a = random_angles(), b = random_angles();
      double sum = 0;
      for (const auto o : kAllOutcomes) {
        sum += (o.m1 == o.m2 ? 1.0 : -1.0) * tomogram_general(rho, a, b, o);
      }
      CHECK(std::abs(sum - correlator(werner_coefficients(params), a, b)) < 1e-12);
    }
  }
}

TEST_SUITE("zeta") {
  TEST_CASE("collinear directions") {
    CHECK(zeta(ChshDirections<double>{}) == doctest::Approx(2.0));
  }

  TEST_CASE("standard optimal configuration reaches 2 sqrt 2") {
    CHECK(zeta(optimal_directions()) == doctest::Approx(tsirelson).epsilon(1e-15));
  }

  TEST_CASE("bounded by 2 sqrt 2 on random samples") {
    for (int trial = 0; trial < 5000; ++trial) {
      CHECK(std::abs(zeta(random_directions())) <= tsirelson + 1e-12);
    }
  }

  TEST_CASE("numerical maximum does not exceed 2 sqrt 2") {
    // zeta is B with 2C = 1, which is the p = 1 Bell projector.
    const auto best = maximize_bell(WernerParametersd{1.0, 1});
    CHECK(zeta(best.dirs) <= tsirelson + 1e-6);
    CHECK(zeta(best.dirs) == doctest::Approx(tsirelson).epsilon(1e-9));
  }
}

TEST_SUITE("bell_correlation") {
  TEST_CASE("vanishes at p = 0") {
    const auto k = werner_coefficients(WernerParametersd{0.0, 3});
    for (int trial = 0; trial < 20; ++trial) CHECK(bell_correlation(k, random_directions()) == 0.0);
  }

  TEST_CASE("Bell projector reaches the Tsirelson bound") {
    const auto k = werner_coefficients(WernerParametersd{1.0, 1});
    CHECK(bell_correlation(k, optimal_directions()) == doctest::Approx(tsirelson).epsilon(1e-15));
  }

  TEST_CASE("factorizes as 2C * zeta") {
    for (int trial = 0; trial < 2000; ++trial) {
      const auto k = werner_coefficients(WernerParametersd{uniform(-1, 1.5), 2 + 2 * (trial % 4)});
      const auto d = random_directions();
      CHECK(std::abs(bell_correlation(k, d) - 2 * k.c * zeta(d)) < 1e-12);
    }
  }
}

TEST_SUITE("analytic_max_bell") {
  TEST_CASE("reference values") {
    CHECK(analytic_max_bell(WernerParametersd{1.0, 3}) == doctest::Approx(tsirelson).epsilon(1e-15));
    CHECK(analytic_max_bell(WernerParametersd{0.0, 1}) == 0.0);
    CHECK(analytic_max_bell(WernerParametersd{1 / std::sqrt(2.0), 1}) ==
          doctest::Approx(2.0).epsilon(1e-15));
  }

  TEST_CASE("2 sqrt 2 at p = 1 for every n") {
    for (int n = 1; n <= 20; ++n) {
      CHECK(analytic_max_bell(WernerParametersd{1.0, n}) == doctest::Approx(tsirelson).epsilon(1e-14));
    }
  }
}

TEST_SUITE("normalize_angles") {
  TEST_CASE("canonical ranges keep the direction") {
    for (int trial = 0; trial < 500; ++trial) {
      const EulerAnglesd g{uniform(-20, 20), uniform(-20, 20), uniform(-20, 20)};
      const auto h = normalize_angles(g);
      CHECK(h.theta >= 0);
      CHECK(h.theta <= pi);
      CHECK(h.psi >= 0);
      CHECK(h.psi < 2 * pi);
      const EulerAnglesd probe = random_angles();
      const auto k = WernerCoefficientsd{0.5, 0, 0.5};
      CHECK(std::abs(correlator(k, g, probe) - correlator(k, h, probe)) < 1e-12);
    }
  }
}

TEST_SUITE("maximize_bell") {
  TEST_CASE("Bell projector") {
    const auto best = maximize_bell(WernerParametersd{1.0, 1});
    CHECK(std::abs(best.value - tsirelson) < 1e-4);
    const auto k = werner_coefficients(WernerParametersd{1.0, 1});
    CHECK(std::abs(best.value - bell_correlation(k, best.dirs)) < 1e-15);
  }

  TEST_CASE("maximally mixed state") {
    for (int n : {1, 2, 5}) {
      CHECK(std::abs(maximize_bell(WernerParametersd{0.0, n}).value) < 1e-9);
    }
  }

  TEST_CASE("p = 0.5, n = 1") {
    CHECK(std::abs(maximize_bell(WernerParametersd{0.5, 1}).value - std::sqrt(2.0)) < 1e-4);
  }

  TEST_CASE("negative C is maximized through the sign of zeta") {
    const WernerParametersd params{-0.3, 3};
    CHECK(werner_coefficients(params).c < 0);
    CHECK(std::abs(maximize_bell(params).value - analytic_max_bell(params)) < 1e-6);
  }

  TEST_CASE("reported angles are canonical") {
    const auto best = maximize_bell(WernerParametersd{0.8, 2});
    for (const auto& g : {best.dirs.a, best.dirs.b, best.dirs.c, best.dirs.d}) {
      CHECK(g.theta >= 0);
      CHECK(g.theta <= pi);
      CHECK(g.psi >= 0);
      CHECK(g.psi < 2 * pi);
    }
  }

  TEST_CASE("bounded by the analytic optimum on a grid") {
    for (int n = 1; n <= 4; ++n) {
      for (double p = -1.0 / 3.0; p <= 1.0; p += 0.1) {
        const WernerParametersd params{p, n};
        const double value = maximize_bell(params).value;
        const double analytic = analytic_max_bell(params);
        CHECK(value <= analytic + 1e-6);
        CHECK(value >= analytic - 1e-6);
        CHECK(value <= tsirelson + 1e-6);
        if (classify_werner(params).classification == Classification::separable) {
          CHECK(value <= 2 + 1e-6);
        }
      }
    }
  }

  TEST_CASE("entangled but non-violating states exist for n = 1") {
    for (double p : {0.4, 0.55, 0.7}) {
      const WernerParametersd params{p, 1};
      CHECK(classify_werner(params).classification == Classification::entangled);
      CHECK(maximize_bell(params).value <= 2 + 1e-6);
    }
    CHECK(maximize_bell(WernerParametersd{0.75, 1}).value > 2);
  }

  TEST_CASE("deterministic") {
    const WernerParametersd params{0.37, 3};
    const auto a = maximize_bell(params);
    const auto b = maximize_bell(params);
    CHECK(a.value == b.value);
    CHECK(detail::angle_key(a.dirs) == detail::angle_key(b.dirs));
  }

  TEST_CASE("tiny budget raises with the best configuration so far") {
    OptimizerSettings opt;
    opt.max_evaluations = 12;
    opt.seeds = 2;
    try {
      maximize_bell(WernerParametersd{0.9, 1}, opt);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError<double>& e) {
      CHECK(e.best_so_far().value > 2.0);
    }
  }

  TEST_CASE("invalid settings are rejected") {
    OptimizerSettings opt;
    opt.seeds = 0;
    CHECK_THROWS_AS(maximize_bell(WernerParametersd{0.5, 1}, opt), ValidationError);
  }
}
