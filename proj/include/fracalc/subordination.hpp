// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fracalc/order.hpp"
#include "fracalc/series.hpp"

namespace fracalc::subordination {

// Setup for the randomised-time identity
//   E[exp(-alpha Xi t^nu)] = integral_0^U exp(-alpha xi t^nu) f(xi) dxi
// with Xi Wright-distributed. quad_upper truncates the half-line, with the
// tail mass bound below tolerance; quad_nodes is the total Gauss-Legendre
// node budget across panels.
struct SubordinationSpec {
  double alpha;
  FractionalOrder nu;
  double t;
  double quad_upper;
  int quad_nodes;

  void validate() const;
};

// Builds a spec with U chosen per nu: halve from U=8 while the density
// series at xi=U would exceed the policy term budget, then double until the
// last panel contributes less than 1e-10 of the running integral. N defaults
// to 16 nodes per unit panel (>= 64).
SubordinationSpec make_spec(double alpha, const FractionalOrder& nu, double t,
                            const SeriesPolicy& policy = {});

// E[exp(-alpha Xi t^nu)] by composite fixed-order Gauss-Legendre panels.
// Deterministic: panels are evaluated independently (in parallel when
// OpenMP is enabled) and summed in panel order. value carries the integral,
// est_error the quadrature refinement difference plus the tail estimate,
// terms_used the node count.
SeriesResult randomized_exponential(const SubordinationSpec& spec,
                                    const SeriesPolicy& policy = {});

// The time substitution t -> -log(E[exp(-alpha Xi t^nu)])/alpha, so that
// exp(-alpha * result) reproduces E_nu(-alpha t^nu) by construction.
// Throws std::domain_error if the computed expectation is not in (0,1].
double time_substitution(const SubordinationSpec& spec, const SeriesPolicy& policy = {});

}  // namespace fracalc::subordination
