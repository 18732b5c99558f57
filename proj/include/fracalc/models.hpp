// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fracalc/order.hpp"
#include "fracalc/series.hpp"

namespace fracalc::models {

// Time-fractional diffusion with monomial initial data x^beta.
// beta must not be a negative integer; nu in (0,1].
struct HeatPolyParams {
  double beta;
  FractionalOrder nu;

  void validate() const;
};

// Fractional Poisson process with rate lambda > 0; nu in (0,1].
struct FppParams {
  double rate;
  FractionalOrder nu;

  void validate() const;
};

// Kronecker sequence delta_{k-offset,0}: the state the backward-shift
// operator acts on.
struct DeltaSequence {
  int offset = 0;
};

// f(x,t) = sum_r Gamma(beta+1) t^{nu r} x^{beta-2r} / (Gamma(r nu+1) Gamma(beta+1-2r)).
// Terminates exactly after floor(beta/2)+1 terms for non-negative integer
// beta (fractional heat polynomials). For non-integer beta the series is
// formal: where it diverges the sum stops at the smallest term and the
// result is flagged, never extrapolated. x > 0 unless beta is a
// non-negative integer; t >= 0.
SeriesResult heat_polynomial(const HeatPolyParams& p, double x, double t,
                             const SeriesPolicy& policy = {});

// Exact second-x-derivative of the same series (termwise coefficient
// action); used by the residual checks against the L1 time derivative.
SeriesResult heat_polynomial_dxx(const HeatPolyParams& p, double x, double t,
                                 const SeriesPolicy& policy = {});

// Vibrating plate: f(x,t) = sin(x) E_nu(-t^nu), nu in (0,2].
SeriesResult vibrating_plate(const FractionalOrder& nu, double x, double t,
                             const SeriesPolicy& policy = {});

// Space-fractional boundary value problem: f(x,t) = exp(-t) E_nu(-x^nu),
// nu in (0,2], x >= 0.
SeriesResult space_fractional_bvp(const FractionalOrder& nu, double x, double t,
                                  const SeriesPolicy& policy = {});

// State probability of the fractional Poisson process,
//   p_k(t) = sum_{r>=k} (-lambda t^nu)^r binom(r,k) (-1)^k / Gamma(nu r + 1).
// `raw` carries the summed value untouched; `clamped` is max(raw, 0) for
// consumers that need a probability, and negative != clamped flags the
// roundoff diagnostic. Never silently clamped.
struct PmfValue {
  SeriesResult raw;
  double clamped = 0.0;
  bool negative = false;
};

PmfValue fpp_pmf(const FppParams& p, long k, double t, const SeriesPolicy& policy = {});

// Probability generating function G(u,t) = E_nu(-rate (1-u) t^nu), |u| <= 1.
SeriesResult fpp_pgf(const FppParams& p, double u, double t, const SeriesPolicy& policy = {});

// All p_k for k <= k_max by the operational route: expand
// sum_r (-lambda t^nu)^r (1-B)^r delta / Gamma(nu r + 1) over the Kronecker
// sequence, with exact Pascal updates for (1-B)^r. Independent second
// implementation cross-checking fpp_pmf.
struct PmfVector {
  std::vector<double> values;
  std::vector<bool> converged;
};

PmfVector backward_shift_solution(const FppParams& p, double t, int k_max,
                                  const SeriesPolicy& policy = {});

}  // namespace fracalc::models
