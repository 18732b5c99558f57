// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

#include "fracalc/order.hpp"
#include "fracalc/series.hpp"

namespace fracalc::specfun {

// Parameters of the generalised Mittag-Leffler function
//   E_{gamma,zeta}(x) = sum_{r>=0} x^r / Gamma(gamma*r + zeta).
// The one-parameter E_nu is zeta = 1. Evaluation domain for this library:
// gamma > 0, zeta > 0.
struct MittagLefflerParams {
  double gamma;
  double zeta = 1.0;

  void validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("MittagLefflerParams: gamma must be > 0");
    if (!(zeta > 0.0)) throw std::invalid_argument("MittagLefflerParams: zeta must be > 0");
  }
};

// Parameters of the Wright function
//   phi(gamma, zeta; x) = sum_{r>=0} x^r / (r! Gamma(gamma*r + zeta)).
// gamma > -1 keeps the series well defined; coefficients at Gamma poles
// vanish by the reciprocal-gamma convention.
struct WrightParams {
  double gamma;
  double zeta;

  void validate() const {
    if (!(gamma > -1.0)) throw std::invalid_argument("WrightParams: gamma must be > -1");
    if (!std::isfinite(zeta)) throw std::invalid_argument("WrightParams: zeta must be finite");
  }
};

// E_{gamma,zeta}(x) by direct series summation under the given policy.
// For x < 0 the alternating series is guaranteed only on |x| <= 50; larger
// negative arguments raise std::domain_error instead of returning a value
// the series cannot support.
SeriesResult mittag_leffler(const MittagLefflerParams& p, double x,
                            const SeriesPolicy& policy = {});

// r-th term of the Mittag-Leffler series exactly as the summation computes
// it. Diagnostic hook used by the term-recurrence consistency tests.
double mittag_leffler_term(const MittagLefflerParams& p, double x, long r);

// phi(gamma, zeta; x) by direct series summation.
SeriesResult wright(const WrightParams& p, double x, const SeriesPolicy& policy = {});

// Density of the Wright-distributed random time:
//   f(xi) = sum_{r>=0} (-xi)^r / (r! Gamma(1 - nu*(r+1))),  xi > 0, nu in (0,1).
// Gamma poles in the denominator zero the affected terms.
SeriesResult wright_density(const FractionalOrder& nu, double xi,
                            const SeriesPolicy& policy = {});

// Zeroth-order Tricomi function C_0(y) = sum_{r>=0} (-y)^r / (r!)^2.
SeriesResult tricomi_c0(double y, const SeriesPolicy& policy = {});

}  // namespace fracalc::specfun
