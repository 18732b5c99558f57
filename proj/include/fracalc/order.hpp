// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracalc {

// Fractional order nu > 0 together with m = ceil(nu). Each consumer states
// its own admissible window: the exact power rule takes (0,2], the L1
// scheme (0,1], the modified integral (0,1).
struct FractionalOrder {
  double nu;
  int m;

  explicit FractionalOrder(double order) : nu(order), m(0) {
    if (!(order > 0.0) || !std::isfinite(order))
      throw std::invalid_argument("FractionalOrder: nu must be positive and finite");
    m = static_cast<int>(std::ceil(order));
  }

  // Window check with half-open control: (lo, hi] when hi_closed, (lo, hi) otherwise.
  void require_window(double lo, double hi, bool hi_closed, const char* who) const {
    const bool hi_ok = hi_closed ? (nu <= hi) : (nu < hi);
    if (!(nu > lo) || !hi_ok)
      throw std::domain_error(std::string(who) + ": order " + std::to_string(nu) +
                              " outside admissible window");
  }
};

}  // namespace fracalc
