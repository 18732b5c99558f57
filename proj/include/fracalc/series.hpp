// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace fracalc {

// Truncation control shared by every infinite series in the library.
//
// A sum stops once `consecutive_small` successive terms satisfy
// |term| < rel_tol*|partial_sum| + abs_tol while the term magnitudes are
// non-increasing; otherwise it runs to max_terms and the result is flagged
// as not converged. The monotonicity requirement matters because many of
// these series grow before they decay (|x| > 1).
struct SeriesPolicy {
  double rel_tol = 1e-14;
  double abs_tol = 1e-300;
  int consecutive_small = 3;
  long max_terms = 10000;

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("SeriesPolicy: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("SeriesPolicy: abs_tol must be >= 0");
    if (consecutive_small < 1) throw std::invalid_argument("SeriesPolicy: consecutive_small must be >= 1");
    if (max_terms < 1) throw std::invalid_argument("SeriesPolicy: max_terms must be >= 1");
  }
};

// Outcome of a truncated series evaluation. est_error bounds the truncation
// error by the last term magnitude plus an estimate of summation noise.
//
// converged=false normally implies terms_used == max_terms (term budget
// exhausted). The one exception is a detected divergent tail (possible for
// the formal heat-polynomial series with non-integer exponent): there the
// sum stops at the smallest term, terms_used records where, and est_error
// carries that floor.
struct SeriesResult {
  double value = 0.0;
  long terms_used = 0;
  bool converged = false;
  double est_error = 0.0;
};

// Neumaier-compensated accumulator; drop-in for a plain double sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace fracalc
