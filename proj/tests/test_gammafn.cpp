// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "fracalc/gammafn.hpp"

using namespace fracalc;

TEST_CASE("reciprocal gamma at poles and reference points") {
  CHECK(reciprocal_gamma(1.0) == 1.0);
  CHECK(reciprocal_gamma(0.0) == 0.0);
  CHECK(reciprocal_gamma(-1.0) == 0.0);
  CHECK(reciprocal_gamma(-7.0) == 0.0);
  CHECK(reciprocal_gamma(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  // 1/Gamma(1/2) = 1/sqrt(pi)
  CHECK(reciprocal_gamma(0.5) == doctest::Approx(0.5641895835477563).epsilon(1e-14));
  // Gamma(-1/2) = -2 sqrt(pi)
  CHECK(reciprocal_gamma(-0.5) == doctest::Approx(-0.28209479177387814).epsilon(1e-14));
}

TEST_CASE("reciprocal gamma inverts log-gamma on the positive axis") {
  for (double z : {0.1, 0.37, 1.0, 2.5, 7.0, 41.5, 140.25}) {
    int s = 0;
    const double lg = log_abs_gamma(z, s);
    REQUIRE(s == 1);
    CHECK(reciprocal_gamma(z) * std::exp(lg) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("reciprocal gamma stays finite-free of overflow for large arguments") {
  CHECK(reciprocal_gamma(500.0) == 0.0);           // underflows cleanly
  CHECK(std::isinf(reciprocal_gamma(-500.5)));     // magnitude beyond double range
}

TEST_CASE("sinpi exact reduction") {
  CHECK(sinpi(0.0) == 0.0);
  CHECK(sinpi(1.0) == 0.0);
  CHECK(sinpi(-3.0) == 0.0);
  CHECK(sinpi(0.5) == 1.0);
  CHECK(sinpi(1.5) == -1.0);
  CHECK(sinpi(123456789.25) == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-15));
  CHECK(sinpi(-0.25) == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("gamma sign alternates between negative integers") {
  int s = 0;
  log_abs_gamma(-0.5, s);
  CHECK(s == -1);
  log_abs_gamma(-1.5, s);
  CHECK(s == 1);
  log_abs_gamma(-2.5, s);
  CHECK(s == -1);
  log_abs_gamma(-3.0, s);
  CHECK(s == 0);
}

TEST_CASE("log binomial") {
  CHECK(std::exp(log_binomial(10, 3)) == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(std::exp(log_binomial(5, 0)) == doctest::Approx(1.0));
  CHECK(log_binomial(3, 5) == -std::numeric_limits<double>::infinity());
}
