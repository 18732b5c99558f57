// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fracalc/order.hpp"
#include "fracalc/series.hpp"

namespace fracalc::opsolve {

// Analytic function g represented on a unit-spaced exponent ladder:
//   g(x) = sum_k a_k x^{offset + k},  k = 0 .. size()-1.
// Coefficients are held as (sign, log|a|) pairs so that repeated exact
// operator actions neither overflow nor underflow; the monomial x^beta,
// sin x, cos x, exp(-x) and plain polynomials all fit this ladder.
class AnalyticFunction {
 public:
  struct Coeff {
    double log_abs;   // -inf encodes an exact zero
    std::int8_t sign; // -1, 0, +1
  };

  AnalyticFunction() = default;
  // complete = true means the stored ladder IS the function (finite
  // polynomial); false marks a truncated transcendental ladder.
  AnalyticFunction(double offset, std::vector<Coeff> coeffs, bool complete);

  static AnalyticFunction from_coefficients(double offset, std::span<const double> coeffs);
  static AnalyticFunction monomial(double beta, double coeff = 1.0);
  static AnalyticFunction constant(double c);
  static AnalyticFunction sine(long n_coeffs = 320);     // sin x
  static AnalyticFunction exp_neg(long n_coeffs = 320);  // exp(-x)

  double offset() const { return offset_; }
  long size() const { return static_cast<long>(coeffs_.size()); }
  const Coeff& coeff_log(long k) const { return coeffs_[k]; }
  bool complete() const { return complete_; }
  double coefficient(long k) const;  // may overflow to +/-inf for huge entries
  bool is_zero() const;              // every stored coefficient is exactly zero

  // Partial-sum evaluation at x under the policy; x > 0 always allowed,
  // x = 0 requires no negative exponents, x < 0 requires an integer ladder.
  SeriesResult evaluate(double x, const SeriesPolicy& policy = {}) const;

  AnalyticFunction scaled(double c) const;
  AnalyticFunction plus(const AnalyticFunction& other) const;  // linear combination helper

 private:
  double offset_ = 0.0;
  std::vector<Coeff> coeffs_;
  bool complete_ = true;
};

// The closed set of constant-coefficient linear operators the solver
// accepts; each has an exact action on the coefficient ladder, which keeps
// every operator power exact and the semigroup property testable.
struct OperatorDescriptor {
  enum class Kind { second_derivative, negated_fourth_derivative, scalar, backward_shift };

  Kind kind = Kind::scalar;
  double scale = 1.0;  // scalar kind only

  static OperatorDescriptor dxx() { return {Kind::second_derivative, 0.0}; }
  static OperatorDescriptor neg_dxxxx() { return {Kind::negated_fourth_derivative, 0.0}; }
  static OperatorDescriptor scalar_op(double c) { return {Kind::scalar, c}; }
  static OperatorDescriptor backward_shift() { return {Kind::backward_shift, 0.0}; }
};

// Exact coefficient action of an operator:
//   d/dx^2 : a_k x^e -> a_k e(e-1) x^{e-2}       (zero at e in {0,1})
//   -d/dx^4: a_k x^e -> -a_k e(e-1)(e-2)(e-3) x^{e-4}
//   scalar : a_k -> c a_k
// backward_shift acts on Kronecker index sequences, not on power series;
// pairing it with an AnalyticFunction throws std::invalid_argument.
AnalyticFunction apply_operator(const OperatorDescriptor& op, const AnalyticFunction& g);

// Truncated operator-series solution
//   f = sum_r s^{nu r} (Theta^r g) / Gamma(nu r + 1),
// where s is t for the initial-value orientation and x for the
// boundary-value orientation. Terms Theta^r g are cached exactly at
// construction; evaluation only ever adds truncation error.
class OperationalSolution {
 public:
  enum class Orientation { time_fractional, space_fractional };

  OperationalSolution(FractionalOrder order, OperatorDescriptor op, Orientation orientation,
                      std::vector<AnalyticFunction> terms, bool terminated);

  const FractionalOrder& order() const { return order_; }
  Orientation orientation() const { return orientation_; }
  long term_count() const { return static_cast<long>(terms_.size()); }
  const AnalyticFunction& term(long r) const { return terms_[r]; }
  // true when Theta^r g vanished identically at some r (the series is a
  // finite sum; integer-exponent heat polynomials end up here)
  bool terminated() const { return terminated_; }

 private:
  FractionalOrder order_;
  OperatorDescriptor op_;
  Orientation orientation_;
  std::vector<AnalyticFunction> terms_;
  bool terminated_;
};

// Operational solution of D_t^nu f = Theta_x f, f(x,0) = g(x), on t >= 0.
// nu in (0,1], or (1,2] under the zero-initial-velocity constraint
// d/dt f(x,0) = 0 -- which the series satisfies by construction for nu > 1,
// so it is documented rather than checked.
OperationalSolution solve_ivp(const FractionalOrder& order, const OperatorDescriptor& op,
                              const AnalyticFunction& g, const SeriesPolicy& policy = {});

// Operational solution of D_x^nu f = Theta_t f, f(0,t) = g(t), on x >= 0;
// same structure with the roles of x and t exchanged.
OperationalSolution solve_bvp(const FractionalOrder& order, const OperatorDescriptor& op,
                              const AnalyticFunction& g, const SeriesPolicy& policy = {});

// Pointwise summation of a cached solution with convergence diagnostics;
// divergent tails (possible for non-integer monomial data) stop at the
// smallest term and come back flagged.
SeriesResult evaluate(const OperationalSolution& sol, double x, double t,
                      const SeriesPolicy& policy = {});

}  // namespace fracalc::opsolve
