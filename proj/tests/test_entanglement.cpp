#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "werner/entanglement.hpp"

using namespace werner;
using werner::testing::uniform;

namespace {

Spectrumd brute_force_ppt(double p, int n) {
  ComplexMatrixd rho = power_by_multiplication(werner_density(p), n);
  rho /= rho.trace();
  return hermitian_eigenvalues(partial_transpose_second(rho));
}

bool entangled_by_boundaries(double p, int n) {
  const auto b = entanglement_boundaries(n);
  return p > b.upper || (b.lower && p < *b.lower);
}

}  // namespace

TEST_SUITE("ppt_spectrum_closed") {
  TEST_CASE("n = 1") {
    for (double p : {-1.0 / 3.0, 0.0, 0.2, 0.5, 1.0}) {
      const auto s = ppt_spectrum_closed(WernerParametersd{p, 1});
      const double single = (1 - 3 * p) / 4, triple = (1 + p) / 4;
      CHECK(std::abs(s.minCoeff() - std::min(single, triple)) < 1e-15);
      CHECK(std::abs(s.maxCoeff() - std::max(single, triple)) < 1e-15);
      CHECK(std::abs(s.sum() - 1) < 1e-15);
    }
  }

  TEST_CASE("n = 2 and n = 3 explicit forms") {
    for (double p = -3.0; p <= 3.0; p += 0.125) {
      const double q2 = 4 * (1 + 3 * p * p);
      const double single2 = (1 - 6 * p - 3 * p * p) / q2;
      const double triple2 = (1 + 2 * p + 5 * p * p) / q2;
      const auto s2 = ppt_spectrum_closed(WernerParametersd{p, 2});
      CHECK(std::abs(s2.minCoeff() - std::min(single2, triple2)) < 1e-12);
      CHECK(std::abs(s2.maxCoeff() - std::max(single2, triple2)) < 1e-12);

      const double q3 = 4 * (6 * p * p * p + 9 * p * p + 1);
      if (std::abs(q3) < 1e-3) continue;
      const double single3 = (1 - 9 * p - 9 * p * p - 15 * p * p * p) / q3;
      const double triple3 = (1 + 3 * p + 15 * p * p + 13 * p * p * p) / q3;
      const auto s3 = ppt_spectrum_closed(WernerParametersd{p, 3});
      CHECK(std::abs(s3.minCoeff() - std::min(single3, triple3)) < 1e-12);
      CHECK(std::abs(s3.maxCoeff() - std::max(single3, triple3)) < 1e-12);
    }
  }

  TEST_CASE("matches partial transpose + Jacobi") {
    CHECK((ppt_spectrum_closed(WernerParametersd{0.25, 5}) - brute_force_ppt(0.25, 5))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + trial % 8;
      const double p = n % 2 == 0 ? uniform(-3, 1.5) : uniform(-1.0 / 3.0, 1.0);
      CHECK((ppt_spectrum_closed(WernerParametersd{p, n}) - brute_force_ppt(p, n))
                .cwiseAbs()
                .maxCoeff() < 1e-10);
    }
  }
}

TEST_SUITE("negativity") {
  TEST_CASE("reference points for n = 1") {
    CHECK(std::abs(negativity(WernerParametersd{0.1, 1}) - 1) < 1e-12);
    CHECK(std::abs(negativity(WernerParametersd{1.0, 1}) - 2) < 1e-12);
    CHECK(std::abs(negativity(WernerParametersd{0.5, 1}) - 1.25) < 1e-12);
    CHECK(std::abs(negativity_entangled_branch(WernerParametersd{0.5, 1}) - 1.25) < 1e-12);
  }

  TEST_CASE("1 when separable, > 1 when entangled, 2 at p = 1") {
    for (int n = 1; n <= 8; ++n) {
      const double lo = n % 2 == 0 ? -3.0 : -1.0 / 3.0;
      for (double p = lo; p <= 1.0; p += 1e-3) {
        const WernerParametersd params{p, n};
        const auto verdict = classify_werner(params);
        const double neg = negativity(params);
        if (verdict.classification == Classification::separable) {
          CHECK(std::abs(neg - 1) < 1e-12);
        } else {
          CHECK(neg > 1);
          CHECK(std::abs(neg - negativity_entangled_branch(params)) < 1e-10);
        }
      }
      CHECK(std::abs(negativity(WernerParametersd{1.0, n}) - 2) < 1e-12);
    }
  }

  TEST_CASE("nondecreasing on the upper entangled branch") {
    for (int n = 1; n <= 8; ++n) {
      const double start = entanglement_boundaries(n).upper;
      double previous = negativity(WernerParametersd{start, n});
      for (int i = 1; i <= 1000; ++i) {
        const double p = start + (1 - start) * i / 1000.0;
        const double current = negativity(WernerParametersd{p, n});
        CHECK(current >= previous - 1e-15);
        previous = current;
      }
      CHECK(previous == doctest::Approx(2).epsilon(1e-12));
    }
  }

  TEST_CASE("maximum over the valid state domain is at p = 1") {
    for (int n = 1; n <= 8; ++n) {
      const double lo = n % 2 == 0 ? -0.9 : -1.0 / 3.0;
      const double at_one = negativity(WernerParametersd{1.0, n});
      for (double p = lo; p <= 1.0; p += 1e-3) {
        CHECK(negativity(WernerParametersd{p, n}) <= at_one + 1e-12);
      }
    }
  }
}

TEST_SUITE("entanglement_boundaries") {
  TEST_CASE("n = 1, 2, 3") {
    CHECK(entanglement_boundaries(1).upper == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_FALSE(entanglement_boundaries(1).lower.has_value());

    const auto b2 = entanglement_boundaries(2);
    CHECK(std::abs(b2.upper - (-1 + 2 * std::sqrt(3.0) / 3)) < 1e-9);
    REQUIRE(b2.lower.has_value());
    CHECK(std::abs(*b2.lower - (-1 - 2 * std::sqrt(3.0) / 3)) < 1e-9);

    const double c = std::cbrt(3.0);
    const double printed = -(1 + 2 / c - 2 * c) / 5;
    CHECK(std::abs(entanglement_boundaries(3).upper - printed) < 1e-9);
    CHECK(entanglement_boundaries(3).upper == doctest::Approx(0.0995553184).epsilon(1e-9));
    CHECK_FALSE(entanglement_boundaries(3).lower.has_value());
  }

  TEST_CASE("smallest PPT eigenvalue vanishes on the boundaries") {
    for (int n = 1; n <= 12; ++n) {
      const auto b = entanglement_boundaries(n);
      CHECK(std::abs(ppt_spectrum_closed(WernerParametersd{b.upper, n}).minCoeff()) < 1e-12);
      if (b.lower) {
        CHECK(std::abs(ppt_spectrum_closed(WernerParametersd{*b.lower, n}).minCoeff()) < 1e-12);
      }
    }
  }

  TEST_CASE("large-n limits") {
    CHECK(entanglement_boundaries(301).upper > 0);
    CHECK(entanglement_boundaries(301).upper < 5e-3);
    CHECK(std::abs(*entanglement_boundaries(300).lower + 1) < 5e-3);
  }

  TEST_CASE("rejects n < 1") { CHECK_THROWS_AS(entanglement_boundaries(0), ValidationError); }
}

TEST_SUITE("classify_werner") {
  TEST_CASE("p = 1/6 becomes entangled under the square channel") {
    CHECK(classify_werner(WernerParametersd{1.0 / 6.0, 1}).classification ==
          Classification::separable);
    CHECK(classify_werner(WernerParametersd{1.0 / 6.0, 2}).classification ==
          Classification::entangled);
  }

  TEST_CASE("maximally mixed point is separable") {
    for (int n = 1; n <= 9; ++n) {
      const auto v = classify_werner(WernerParametersd{0.0, n});
      CHECK(v.state_valid);
      CHECK(v.classification == Classification::separable);
    }
  }

  TEST_CASE("validity of the output state") {
    CHECK_FALSE(classify_werner(WernerParametersd{2.0, 1}).state_valid);
    CHECK_FALSE(classify_werner(WernerParametersd{-0.5, 3}).state_valid);
    const auto even = classify_werner(WernerParametersd{-2.5, 2});
    CHECK(even.state_valid);
    CHECK(even.formal_input);
    CHECK(even.classification == Classification::entangled);
  }

  TEST_CASE("PPT sign flips exactly at the boundaries on a dense grid") {
    for (int n = 1; n <= 8; ++n) {
      const bool even = n % 2 == 0;
      const double lo = even ? -3.0 : -1.0 / 3.0;
      const double hi = even ? 1.5 : 1.0;
      const auto b = entanglement_boundaries(n);
      for (double p = lo; p <= hi + 1e-12; p += 1e-3) {
        const double near_upper = std::abs(p - b.upper);
        const double near_lower = b.lower ? std::abs(p - *b.lower) : 1.0;
        if (near_upper < 1e-3 || near_lower < 1e-3) continue;
        const auto v = classify_werner(WernerParametersd{p, n});
        CHECK((v.classification == Classification::entangled) == entangled_by_boundaries(p, n));
      }
    }
  }

  TEST_CASE("agrees with the brute-force Peres-Horodecki test") {
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + trial % 8;
      const double p = n % 2 == 0 ? uniform(-3, 1.5) : uniform(-1.0 / 3.0, 1.0);
      const bool brute_entangled = brute_force_ppt(p, n).minCoeff() < -1e-9;
      const auto v = classify_werner(WernerParametersd{p, n});
      if (std::abs(v.min_ppt_eigenvalue) > 1e-9) {
        CHECK((v.classification == Classification::entangled) == brute_entangled);
      }
    }
  }

  TEST_CASE("boundary endpoints classify as separable") {
    CHECK(classify_werner(WernerParametersd{1.0 / 3.0, 1}).classification ==
          Classification::separable);
  }
}
