// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0
//
// Two-tier summation shared by every series in the library.
//
// Tier 1 sums in double with Neumaier compensation while tracking the peak
// term magnitude. For alternating series that is not always enough: the
// exact value can sit many orders of magnitude below the largest term, and
// the 16 digits a double carries are consumed by cancellation (e.g. the
// Mittag-Leffler series at nu=0.4, x=-4 peaks near 5e12 while the sum is
// 0.15). When the estimated cancellation noise exceeds the accuracy target,
// the same series is re-summed in MPFR at a precision derived from the peak
// bound and rounded once at the end. Positive-term series never take the
// slow path.

#pragma once

#include <cfloat>
#include <cmath>
#include <limits>

#include "fracalc/series.hpp"
#include "detail/bigfloat.hpp"

namespace fracalc::detail {

inline constexpr double kLn10 = 2.302585092994045684;
// tier-1 acceptance: estimated cancellation noise must stay below this
// fraction of the summed value
inline constexpr double kCancelGuard = 2e-13;
inline constexpr double kMaxDigits = 6200.0;

struct LogTerm {
  double log_abs;  // natural log of |term|; ignored when sign == 0
  int sign;        // -1, 0, +1
};

// Scheme requirements:
//   LogTerm log_term(long r) const;
//   void big_begin(mpfr_prec_t prec);        // reset exact-path state
//   void big_term(long r, mpfr_ptr out);     // r strictly increasing from first_index
template <class Scheme>
SeriesResult sum_series_big(Scheme& scheme, const SeriesPolicy& policy, long first_index,
                            double peak_log) {
  double digits = std::max(45.0, peak_log / kLn10 + 45.0);
  SeriesResult out;
  for (int round = 0; round < 6; ++round) {
    digits = std::min(digits, kMaxDigits);
    const auto prec = static_cast<mpfr_prec_t>(digits * 3.321928095 + 64.0);
    scheme.big_begin(prec);
    MpReal sum, term, thr;
    sum.reset(prec);
    term.reset(prec);
    thr.reset(prec);
    long terms = 0;
    int small_run = 0;
    bool stopped = false;
    double last_abs_log = -std::numeric_limits<double>::infinity();
    double prev_abs_log = std::numeric_limits<double>::infinity();
    for (long r = first_index; r < first_index + policy.max_terms; ++r) {
      scheme.big_term(r, term.raw());
      mpfr_add(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
      ++terms;
      const bool zero_term = mpfr_zero_p(term.raw());
      const double abs_log = zero_term ? -std::numeric_limits<double>::infinity()
                                       : static_cast<double>(mpfr_get_exp(term.raw())) * 0.6931471805599453;
      if (!zero_term) last_abs_log = abs_log;
      // |term| < rel_tol*|sum| + abs_tol, with non-increasing magnitudes
      mpfr_abs(thr.raw(), sum.raw(), MPFR_RNDN);
      mpfr_mul_d(thr.raw(), thr.raw(), policy.rel_tol, MPFR_RNDN);
      mpfr_add_d(thr.raw(), thr.raw(), policy.abs_tol, MPFR_RNDN);
      const bool small = zero_term || mpfr_cmpabs(term.raw(), thr.raw()) < 0;
      if (small && abs_log <= prev_abs_log) {
        if (++small_run >= policy.consecutive_small) {
          stopped = true;
          break;
        }
      } else {
        small_run = 0;
      }
      prev_abs_log = zero_term ? prev_abs_log : abs_log;
    }
    out.value = mpfr_get_d(sum.raw(), MPFR_RNDN);
    out.terms_used = stopped ? terms : policy.max_terms;
    out.converged = stopped;
    const double peak_digits = std::max(0.0, peak_log / kLn10);
    double sum_digits;
    if (mpfr_zero_p(sum.raw())) {
      sum_digits = -340.0;  // below double subnormals; treat as a true underflow target
    } else {
      sum_digits = static_cast<double>(mpfr_get_exp(sum.raw())) * 0.301029995663981;
    }
    out.est_error = std::exp(std::min(709.0, last_abs_log)) +
                    std::pow(10.0, std::min(300.0, peak_digits - digits + sum_digits + 5.0));
    // precision must push the residual noise below whichever accuracy target
    // binds, the relative one or the policy's absolute floor
    const double target_digits =
        std::max(sum_digits + std::log10(policy.rel_tol),
                 policy.abs_tol > 0.0 ? std::log10(policy.abs_tol) : -340.0);
    const double needed = peak_digits - target_digits + 16.0;
    if (needed <= digits || digits >= kMaxDigits) {
      if (digits >= kMaxDigits && needed > digits) out.converged = false;
      return out;
    }
    digits = needed + 15.0;
  }
  return out;
}

struct ScanResult {
  double peak = -std::numeric_limits<double>::infinity();
  // terms dropped firmly below the peak (or vanished) within the budget;
  // without that the exact tier would burn its whole budget at extreme
  // precision for a sum it cannot finish
  bool settled = false;
};

// Pure log-space scan of the term magnitudes.
template <class Scheme>
ScanResult scan_terms(const Scheme& scheme, const SeriesPolicy& policy, long first_index) {
  ScanResult out;
  long zero_run = 0;
  for (long r = first_index; r < first_index + policy.max_terms; ++r) {
    const LogTerm lt = scheme.log_term(r);
    if (lt.sign == 0) {
      if (++zero_run >= 50) {  // finitely supported series
        out.settled = true;
        break;
      }
      continue;
    }
    zero_run = 0;
    if (lt.log_abs > out.peak) out.peak = lt.log_abs;
    if (lt.log_abs < out.peak - 240.0) {  // far past the hump
      out.settled = true;
      break;
    }
  }
  return out;
}

template <class Scheme>
SeriesResult sum_series(Scheme& scheme, const SeriesPolicy& policy, long first_index,
                        bool divergence_abort) {
  policy.validate();
  const double inf = std::numeric_limits<double>::infinity();

  CompensatedSum acc;
  double peak_log = -inf;
  double prev_abs = inf;
  double last_abs = 0.0;
  bool pos_seen = false, neg_seen = false;
  bool overflow = false;
  bool stopped = false;
  long terms = 0;
  int small_run = 0;

  // optimal-truncation snapshot for divergent tails
  double min_abs = inf;
  double sum_at_min = 0.0;
  long terms_at_min = 0;
  int grow_run = 0;
  bool diverged = false;

  for (long r = first_index; r < first_index + policy.max_terms; ++r) {
    const LogTerm lt = scheme.log_term(r);
    double abs_term = 0.0;
    if (lt.sign != 0) {
      if (lt.log_abs > peak_log) peak_log = lt.log_abs;
      if (lt.sign > 0) pos_seen = true; else neg_seen = true;
      if (lt.log_abs > 708.0) {
        overflow = true;
        if (pos_seen && neg_seen) break;  // double cannot represent the hump; re-sum exactly
      }
      abs_term = std::exp(std::min(lt.log_abs, 709.78));
      last_abs = abs_term;
    }
    acc.add(lt.sign >= 0 ? abs_term : -abs_term);
    ++terms;

    const double s_abs = std::abs(acc.value());
    const bool small = abs_term < policy.rel_tol * s_abs + policy.abs_tol;
    if (small && abs_term <= prev_abs) {
      if (++small_run >= policy.consecutive_small) {
        stopped = true;
        break;
      }
    } else {
      small_run = 0;
    }

    if (divergence_abort && lt.sign != 0) {
      if (abs_term < min_abs) {
        min_abs = abs_term;
        sum_at_min = acc.value();
        terms_at_min = terms;
        grow_run = 0;
      } else if (abs_term > prev_abs && abs_term > 8.0 * min_abs) {
        if (++grow_run >= 3 && terms_at_min > 0) {
          diverged = true;
          break;
        }
      } else {
        grow_run = 0;
      }
    }
    if (lt.sign != 0) prev_abs = abs_term;
  }

  if (diverged) {
    SeriesResult out;
    out.value = sum_at_min;
    out.terms_used = terms_at_min;
    out.converged = false;
    out.est_error = min_abs;
    return out;
  }

  const double s_abs = std::abs(acc.value());
  const double noise = (peak_log > -inf) ? std::exp(std::min(peak_log, 709.0)) * 1e-14 : 0.0;
  const bool mixed = pos_seen && neg_seen;
  const bool tier1_ok = !overflow && (!mixed || noise <= kCancelGuard * s_abs);

  if (tier1_ok) {
    SeriesResult out;
    out.value = acc.value();
    out.terms_used = stopped ? terms : policy.max_terms;
    out.converged = stopped;
    out.est_error = last_abs + (mixed ? noise : 0.0);
    return out;
  }

  if (!mixed) {
    // single-signed overflow: the true sum exceeds double range
    SeriesResult out;
    out.value = pos_seen ? inf : -inf;
    out.terms_used = stopped ? terms : policy.max_terms;
    out.converged = stopped;
    out.est_error = inf;
    return out;
  }

  const ScanResult scan = scan_terms(scheme, policy, first_index);
  if (!scan.settled) {
    // the tail never turns over inside the budget; report the compensated
    // partial sum honestly instead of attempting an unfinishable exact pass
    SeriesResult out;
    out.value = acc.value();
    out.terms_used = policy.max_terms;
    out.converged = false;
    out.est_error = last_abs + noise;
    return out;
  }
  return sum_series_big(scheme, policy, first_index, scan.peak);
}

}  // namespace fracalc::detail
