// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <vector>

#include "fracalc/fracops.hpp"
#include "fracalc/opsolve.hpp"
#include "fracalc/specfun.hpp"

using namespace fracalc;
using namespace fracalc::opsolve;

namespace {

bool close_rel(double v, double ref, double rtol) {
  return std::abs(v - ref) <= rtol * std::max(std::abs(ref), 1e-300);
}

}  // namespace

TEST_CASE("analytic function ladders evaluate correctly") {
  SUBCASE("monomial") {
    const auto m = AnalyticFunction::monomial(3.5);
    CHECK(close_rel(m.evaluate(2.0).value, std::pow(2.0, 3.5), 1e-15));
    CHECK(m.evaluate(0.0).value == 0.0);
  }
  SUBCASE("sine ladder") {
    const auto s = AnalyticFunction::sine();
    for (double x : {0.0, 0.5, 1.5707963267948966, 3.0}) {
      const auto r = s.evaluate(x);
      REQUIRE(r.converged);
      CHECK(close_rel(r.value, std::sin(x), 1e-13));
    }
    CHECK(close_rel(s.evaluate(-2.0).value, std::sin(-2.0), 1e-13));
  }
  SUBCASE("exp ladder") {
    const auto g = AnalyticFunction::exp_neg();
    CHECK(close_rel(g.evaluate(1.0).value, std::exp(-1.0), 1e-13));
    CHECK(g.evaluate(0.0).value == 1.0);
  }
  SUBCASE("negative argument needs an integer ladder") {
    CHECK_THROWS_AS(AnalyticFunction::monomial(0.5).evaluate(-1.0), std::domain_error);
  }
  SUBCASE("offset must be non-negative at construction") {
    CHECK_THROWS_AS(AnalyticFunction::monomial(-0.5), std::invalid_argument);
  }
}

TEST_CASE("apply_operator exact actions") {
  SUBCASE("d^2/dx^2 on x^2 is the constant 2") {
    const auto d = apply_operator(OperatorDescriptor::dxx(), AnalyticFunction::monomial(2.0));
    CHECK(d.offset() == doctest::Approx(0.0));
    CHECK(close_rel(d.evaluate(7.3).value, 2.0, 1e-15));
  }
  SUBCASE("d^2/dx^2 on x^beta carries beta(beta-1) and matches the Gamma ratio") {
    const double beta = 3.5;
    const auto d = apply_operator(OperatorDescriptor::dxx(), AnalyticFunction::monomial(beta));
    const double expect =
        std::exp(std::lgamma(beta + 1.0) - std::lgamma(beta - 1.0)) * std::pow(1.7, beta - 2.0);
    CHECK(close_rel(d.evaluate(1.7).value, expect, 1e-13));
  }
  SUBCASE("-d^4/dx^4 on sin x is -sin x") {
    const auto d =
        apply_operator(OperatorDescriptor::neg_dxxxx(), AnalyticFunction::sine());
    for (double x : {0.3, 1.0, 2.2})
      CHECK(close_rel(d.evaluate(x).value, -std::sin(x), 1e-12));
  }
  SUBCASE("scalar action") {
    const auto d = apply_operator(OperatorDescriptor::scalar_op(-2.5),
                                  AnalyticFunction::monomial(1.0, 4.0));
    CHECK(close_rel(d.evaluate(1.0).value, -10.0, 1e-15));
  }
  SUBCASE("backward shift refuses power series") {
    CHECK_THROWS_AS(
        apply_operator(OperatorDescriptor::backward_shift(), AnalyticFunction::monomial(1.0)),
        std::invalid_argument);
  }
  SUBCASE("dxx twice equals the negated fourth derivative with the sign flipped") {
    const auto g = AnalyticFunction::sine();
    const auto twice =
        apply_operator(OperatorDescriptor::dxx(), apply_operator(OperatorDescriptor::dxx(), g));
    const auto neg4 = apply_operator(OperatorDescriptor::neg_dxxxx(), g);
    for (double x : {0.4, 1.1, 2.8})
      CHECK(close_rel(twice.evaluate(x).value, -neg4.evaluate(x).value, 1e-12));
  }
}

TEST_CASE("scalar operator reduces the solver to the Mittag-Leffler eigenvalue form") {
  for (double nu : {0.5, 1.0}) {
    for (double a : {-1.0, 0.7}) {
      const auto sol = solve_ivp(FractionalOrder(nu), OperatorDescriptor::scalar_op(a),
                                 AnalyticFunction::constant(1.0));
      for (double t : {0.0, 0.5, 1.5}) {
        const auto got = evaluate(sol, 0.3, t);
        const auto ref =
            specfun::mittag_leffler({nu, 1.0}, a * std::pow(t, nu));
        REQUIRE(got.converged);
        CHECK(close_rel(got.value, ref.value, 1e-12));
      }
    }
  }
}

TEST_CASE("classical heat polynomial x^2 + 2t terminates and is exact") {
  const auto sol = solve_ivp(FractionalOrder(1.0), OperatorDescriptor::dxx(),
                             AnalyticFunction::monomial(2.0));
  CHECK(sol.terminated());
  CHECK(sol.term_count() == 2);
  for (double x : {0.0, 0.5, 1.0, 2.0}) {
    for (double t : {0.0, 0.3, 1.0}) {
      const auto r = evaluate(sol, x, t);
      REQUIRE(r.converged);
      CHECK(close_rel(r.value, x * x + 2.0 * t, 1e-14));
    }
  }
}

TEST_CASE("plate problem: sin x times the Mittag-Leffler decay") {
  for (double nu : {0.5, 1.0, 2.0}) {
    const auto sol = solve_ivp(FractionalOrder(nu), OperatorDescriptor::neg_dxxxx(),
                               AnalyticFunction::sine());
    for (double x : {0.4, 1.5707963267948966}) {
      for (double t : {0.25, 1.0, 2.0}) {
        const auto got = evaluate(sol, x, t);
        const auto ref = specfun::mittag_leffler({nu, 1.0}, -std::pow(t, nu));
        REQUIRE(got.converged);
        CHECK(close_rel(got.value, std::sin(x) * ref.value, 1e-11));
      }
    }
  }
  SUBCASE("classical point value exp(-1) at x=pi/2, t=1, nu=1") {
    const auto sol = solve_ivp(FractionalOrder(1.0), OperatorDescriptor::neg_dxxxx(),
                               AnalyticFunction::sine());
    const auto r = evaluate(sol, 1.5707963267948966, 1.0);
    CHECK(close_rel(r.value, std::exp(-1.0), 1e-12));
  }
}

TEST_CASE("boundary orientation") {
  SUBCASE("x=0 recovers the boundary data exactly") {
    const auto sol = solve_bvp(FractionalOrder(0.7), OperatorDescriptor::scalar_op(-1.0),
                               AnalyticFunction::exp_neg());
    for (double t : {0.0, 0.5, 2.0}) {
      const auto r = evaluate(sol, 0.0, t);
      CHECK(close_rel(r.value, std::exp(-t), 1e-13));
    }
  }
  SUBCASE("exp(-t) data with scalar(-1) gives exp(-t) E_nu(-x^nu)") {
    for (double nu : {0.5, 2.0}) {
      const auto sol = solve_bvp(FractionalOrder(nu), OperatorDescriptor::scalar_op(-1.0),
                                 AnalyticFunction::exp_neg());
      for (double x : {0.5, 1.0, 2.0}) {
        for (double t : {0.25, 1.0}) {
          const auto got = evaluate(sol, x, t);
          const auto ml = specfun::mittag_leffler({nu, 1.0}, -std::pow(x, nu));
          CHECK(close_rel(got.value, std::exp(-t) * ml.value, 1e-11));
        }
      }
    }
  }
  SUBCASE("nu=2 scalar(-1) on the constant 1 is cos x") {
    const auto sol = solve_bvp(FractionalOrder(2.0), OperatorDescriptor::scalar_op(-1.0),
                               AnalyticFunction::constant(1.0));
    for (double x : {0.0, 0.5, 1.5707963267948966, 3.0}) {
      const auto r = evaluate(sol, x, 0.7);
      CHECK(std::abs(r.value - std::cos(x)) <= 1e-12);
    }
  }
}

TEST_CASE("t=0 recovers the initial data for every example operator") {
  const std::vector<std::pair<OperatorDescriptor, AnalyticFunction>> cases = {
      {OperatorDescriptor::dxx(), AnalyticFunction::monomial(2.0)},
      {OperatorDescriptor::neg_dxxxx(), AnalyticFunction::sine()},
      {OperatorDescriptor::scalar_op(0.8), AnalyticFunction::constant(1.0)},
  };
  for (const auto& [op, g] : cases) {
    const auto sol = solve_ivp(FractionalOrder(0.6), op, g);
    for (double x : {0.3, 1.0, 2.4}) {
      const auto got = evaluate(sol, x, 0.0);
      const auto ref = g.evaluate(x);
      CHECK(close_rel(got.value, ref.value, 1e-14));
    }
  }
}

TEST_CASE("linearity of the solve in the data") {
  const double a = 2.0, b = -0.75;
  const auto g1 = AnalyticFunction::monomial(2.0);
  const auto g2 = AnalyticFunction::monomial(4.0);
  const auto combo = g1.scaled(a).plus(g2.scaled(b));
  const auto s1 = solve_ivp(FractionalOrder(0.5), OperatorDescriptor::dxx(), g1);
  const auto s2 = solve_ivp(FractionalOrder(0.5), OperatorDescriptor::dxx(), g2);
  const auto sc = solve_ivp(FractionalOrder(0.5), OperatorDescriptor::dxx(), combo);
  for (double x : {0.5, 1.2}) {
    for (double t : {0.2, 0.9}) {
      const double lhs = evaluate(sc, x, t).value;
      const double rhs = a * evaluate(s1, x, t).value + b * evaluate(s2, x, t).value;
      CHECK(close_rel(lhs, rhs, 1e-13));
    }
  }
}

TEST_CASE("nu=1 reduction matches the exponential series term by term") {
  const auto sol = solve_ivp(FractionalOrder(1.0), OperatorDescriptor::scalar_op(-0.6),
                             AnalyticFunction::constant(1.0));
  // weights 1/Gamma(r+1) = 1/r!: compare the whole sum against exp(-0.6 t)
  for (double t : {0.5, 1.0, 3.0}) {
    const auto r = evaluate(sol, 0.0, t);
    CHECK(close_rel(r.value, std::exp(-0.6 * t), 1e-13));
  }
}

TEST_CASE("solver output satisfies its own equation in the L1 residual sense") {
  // D_t^nu f = Theta_x f checked numerically: the right-hand side is the
  // solve of Theta g, evaluated exactly; the left is the L1 derivative of
  // sampled f. Fixed interior times, two meshes, rate ~ 2-nu for nu=0.5.
  const double nu = 0.5;
  const auto op = OperatorDescriptor::dxx();
  const auto g = AnalyticFunction::monomial(4.0);
  const auto sol = solve_ivp(FractionalOrder(nu), op, g);
  const auto sol_rhs = solve_ivp(FractionalOrder(nu), op, apply_operator(op, g));
  double sup_coarse = 0.0, sup_fine = 0.0;
  for (long n : {96L, 192L}) {
    double sup = 0.0;
    for (double x : {0.8, 1.6}) {
      std::vector<double> vals(n + 1);
      for (long i = 0; i <= n; ++i)
        vals[i] = evaluate(sol, x, static_cast<double>(i) / static_cast<double>(n)).value;
      fracalc::fracops::SampledFunction f;
      f.values = std::move(vals);
      f.t_grid.resize(n + 1);
      for (long i = 0; i <= n; ++i) f.t_grid[i] = static_cast<double>(i) / static_cast<double>(n);
      for (long j : {n / 4, n / 2, 3 * n / 4, n}) {
        const double lhs = fracalc::fracops::caputo_l1(FractionalOrder(nu), f, j);
        const double rhs = evaluate(sol_rhs, x, f.t_grid[j]).value;
        sup = std::max(sup, std::abs(lhs - rhs));
      }
    }
    (n == 96 ? sup_coarse : sup_fine) = sup;
  }
  CHECK(std::log2(sup_coarse / sup_fine) >= 2.0 - nu - 0.35);
}

TEST_CASE("divergent monomial series is flagged, not extrapolated") {
  // non-integer data under repeated dxx produces a formal series
  const auto sol = solve_ivp(FractionalOrder(0.5), OperatorDescriptor::dxx(),
                             AnalyticFunction::monomial(3.5));
  const auto r = evaluate(sol, 0.5, 1.0);
  CHECK_FALSE(r.converged);
  CHECK(r.est_error > 0.0);
}

TEST_CASE("order window") {
  CHECK_THROWS_AS(solve_ivp(FractionalOrder(2.5), OperatorDescriptor::dxx(),
                            AnalyticFunction::monomial(2.0)),
                  std::domain_error);
  const auto sol = solve_ivp(FractionalOrder(0.5), OperatorDescriptor::dxx(),
                             AnalyticFunction::monomial(2.0));
  CHECK_THROWS_AS(evaluate(sol, 1.0, -0.5), std::domain_error);
}
