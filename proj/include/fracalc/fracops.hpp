// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fracalc/order.hpp"
#include "fracalc/series.hpp"

namespace fracalc::fracops {

// One monomial term c * t^e with e > -1 (integrable at 0).
struct PowerTerm {
  double coeff = 0.0;
  double exponent = 0.0;
};

// Samples of a function on a uniform mesh starting at t=0, plus the
// integer-order derivative values at 0 required by a Caputo operator of
// ceiling m (deriv0[i] = f^(i+1)(0); unused while only m=1 schemes exist).
struct SampledFunction {
  std::vector<double> t_grid;
  std::vector<double> values;
  std::vector<double> deriv0;

  void validate() const;
  double spacing() const;  // throws if the mesh is not uniform

  template <class F>
  static SampledFunction from_function(F&& f, double t_max, long intervals) {
    SampledFunction s;
    s.t_grid.resize(intervals + 1);
    s.values.resize(intervals + 1);
    const double h = t_max / static_cast<double>(intervals);
    for (long i = 0; i <= intervals; ++i) {
      s.t_grid[i] = h * static_cast<double>(i);
      s.values[i] = f(s.t_grid[i]);
    }
    return s;
  }
};

// Per-interval weights of the measure ds_nu = Gamma(ceil(nu)) ds / (Gamma(nu) (t-s)^{1-nu})
// on a mesh over [0, t]; node_weights[j] integrates the measure over
// [s_j, s_{j+1}] exactly, so the weights telescope to Gamma(m) t^nu / Gamma(1+nu).
struct FractionalWeight {
  FractionalOrder nu;
  std::vector<double> node_weights;
};

FractionalWeight fractional_weights(const FractionalOrder& order,
                                    const std::vector<double>& s_grid);

// Caputo derivative of c*t^e, exact on monomials:
//   D^nu (c t^e) = c Gamma(e+1)/Gamma(e+1-nu) t^{e-nu}   for e > m-1,
//   D^nu (c t^e) = 0                                      for integer 0 <= e < m.
// Other exponent/order combinations are rejected. nu in (0,2].
PowerTerm caputo_power(const FractionalOrder& order, const PowerTerm& p);

// Riemann-Liouville fractional integral of a monomial, exact:
//   D^{-nu} (c t^e) = c Gamma(e+1)/Gamma(e+1+nu) t^{e+nu},  nu > 0, e > -1.
PowerTerm rl_integral_power(const FractionalOrder& order, const PowerTerm& p);

// Modified integral: the Riemann-Liouville integral scaled by Gamma(ceil(nu)).
// Defined for nu in (0,1), where the scale factor is 1.
PowerTerm modified_integral_power(const FractionalOrder& order, const PowerTerm& p);

// L1 product-quadrature approximation of the Caputo derivative at node
// t_grid[t_index], nu in (0,1], uniform mesh:
//   (1/(Gamma(2-nu) h^nu)) sum_j [(k-j)^{1-nu} - (k-j-1)^{1-nu}] (f_{j+1} - f_j).
// Truncation error O(h^{2-nu}) for C^2 integrands.
double caputo_l1(const FractionalOrder& order, const SampledFunction& f, long t_index);

// exp(-alpha * modified integral) applied to the constant 1, evaluated by
// iterating the exact power rule (never by calling mittag_leffler); the sum
// equals E_nu(-alpha t^nu), which makes the identity a genuine cross-module
// check. nu in (0,1), t >= 0.
SeriesResult operator_exponential_on_one(const FractionalOrder& order, double alpha,
                                         double t, const SeriesPolicy& policy = {});

// exp(-alpha * Riemann-Liouville integral) applied to 1 by iterating the
// power rule with the extra 1/r!; equals phi(nu, 1; -alpha t^nu). nu > 0.
SeriesResult wright_exponential_on_one(const FractionalOrder& order, double alpha,
                                       double t, const SeriesPolicy& policy = {});

}  // namespace fracalc::fracops
