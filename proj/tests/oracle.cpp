// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#include "oracle.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

constexpr double kLog10_2 = 0.30102999566398120;

double lgamma_thread(double x) {
  int s = 0;
  return ::lgamma_r(x, &s);
}



// natural log of |Gamma(z)| via reflection for z <= 0; +inf at poles
double log_abs_gamma_any(double z) {
  if (z > 0.0) return lgamma_thread(z);
  if (z == std::floor(z)) return std::numeric_limits<double>::infinity();
  const double s = std::abs(std::sin(M_PI * (z - 2.0 * std::floor(z / 2.0)))); // crude is fine for a scan
  return std::log(M_PI) - std::log(s) - lgamma_thread(1.0 - z);
}

struct Guard {
  mpfr_t v;
  explicit Guard(mpfr_prec_t p) { mpfr_init2(v, p); mpfr_set_zero(v, 1); }
  ~Guard() { mpfr_clear(v); }
};

// generic driver: needs a double-precision log|term| for the peak scan and
// an exact MPFR term writer. Terms are computed fresh per index (powers via
// mpfr_pow_si), so no running state can drift.
template <class LogTermFn, class BigTermFn>
Value sum_adaptive(long first, long max_terms, LogTermFn log_term, BigTermFn big_term,
                   bool stop_at_minimum) {
  Value out;

  // peak scan in log space
  double peak = -std::numeric_limits<double>::infinity();
  double floor_seen = std::numeric_limits<double>::infinity();
  long min_index = -1;
  bool divergent = false;
  bool scan_settled = false;
  {
    double prev = std::numeric_limits<double>::infinity();
    int grow = 0;
    long zero_run = 0;
    for (long r = first; r < first + max_terms; ++r) {
      const double lt = log_term(r);
      if (lt == -std::numeric_limits<double>::infinity()) {
        if (++zero_run >= 50) {  // a terminated (finitely supported) series
          scan_settled = true;
          break;
        }
        continue;
      }
      zero_run = 0;
      peak = std::max(peak, lt);
      if (lt < floor_seen) {
        floor_seen = lt;
        min_index = r;
        grow = 0;
      } else if (stop_at_minimum && lt > prev && lt > floor_seen + 2.0) {
        if (++grow >= 3) {
          divergent = true;
          break;
        }
      } else {
        grow = 0;
      }
      if (lt < peak - 900.0) {  // far below anything a double result needs
        scan_settled = true;
        break;
      }
      prev = lt;
    }
  }
  if (peak == -std::numeric_limits<double>::infinity()) {
    out.ok = true;  // the zero series
    return out;
  }
  out.peak_digits = std::max(0.0, peak / 2.302585092994046);
  // refuse points the summation itself could not finish: term budget burnt
  // before the tail fell away, or precision demands beyond reason
  if ((!scan_settled && !divergent) || out.peak_digits > 2600.0) {
    out.ok = false;
    return out;
  }

  double digits = std::max(60.0, out.peak_digits + 45.0);
  for (int round = 0; round < 5; ++round) {
    digits = std::min(digits, 6500.0);
    const auto prec = static_cast<mpfr_prec_t>(digits / kLog10_2) + 64;
    Guard sum(prec), term(prec);
    long terms = 0;
    int quiet = 0;
    bool settled = false;
    for (long r = first; r < first + max_terms; ++r) {
      big_term(r, term.v, prec);
      mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
      ++terms;
      if (stop_at_minimum && divergent && r == min_index) {
        settled = true;  // optimal truncation of a divergent tail
        break;
      }
      if (!mpfr_zero_p(term.v) && !mpfr_zero_p(sum.v)) {
        // base-2 exponent gap of 466 bits ~ 140 decimal digits below the sum
        const auto gap = mpfr_get_exp(sum.v) - mpfr_get_exp(term.v);
        if (gap > static_cast<mpfr_exp_t>(140.0 / kLog10_2)) {
          if (++quiet >= 6) {
            settled = true;
            break;
          }
        } else {
          quiet = 0;
        }
      } else if (mpfr_zero_p(term.v)) {
        if (++quiet >= 6 && r > min_index) {
          settled = true;
          break;
        }
      }
    }
    out.terms = terms;
    out.value = mpfr_get_d(sum.v, MPFR_RNDN);
    out.ok = settled && !divergent;
    const double sum_digits = mpfr_zero_p(sum.v)
                                  ? -340.0
                                  : static_cast<double>(mpfr_get_exp(sum.v)) * kLog10_2;
    const double needed = out.peak_digits - sum_digits + 40.0;
    if (needed <= digits || digits >= 6500.0) {
      if (divergent) out.ok = false;
      return out;
    }
    digits = needed + 20.0;
  }
  return out;
}

void set_arg_linear(mpfr_t out, double a, long r, double b, mpfr_prec_t /*prec*/) {
  // out = a*r + b, exactly from the double inputs
  mpfr_set_d(out, a, MPFR_RNDN);
  mpfr_mul_si(out, out, r, MPFR_RNDN);
  mpfr_add_d(out, out, b, MPFR_RNDN);
}

}  // namespace

Value mittag_leffler(double g, double z, double x, long max_terms) {
  if (x == 0.0) {
    // only the r=0 term 1/Gamma(z); every caller here has z > 0
    Value v;
    v.value = z > 0.0 ? std::exp(-lgamma_thread(z)) : 0.0;
    v.ok = z > 0.0;
    v.terms = 1;
    return v;
  }
  const double lx = std::log(std::abs(x));
  auto log_term = [&](long r) { return r * lx - log_abs_gamma_any(g * r + z); };
  auto big_term = [&](long r, mpfr_t out, mpfr_prec_t prec) {
    Guard arg(prec), gm(prec), xp(prec), base(prec);
    set_arg_linear(arg.v, g, r, z, prec);
    if (mpfr_sgn(arg.v) <= 0 && mpfr_integer_p(arg.v)) {
      mpfr_set_zero(out, 1);
      return;
    }
    mpfr_gamma(gm.v, arg.v, MPFR_RNDN);
    mpfr_set_d(base.v, x, MPFR_RNDN);
    mpfr_pow_si(xp.v, base.v, r, MPFR_RNDN);
    mpfr_div(out, xp.v, gm.v, MPFR_RNDN);
  };
  return sum_adaptive(0, max_terms, log_term, big_term, /*stop_at_minimum=*/false);
}

Value wright(double g, double z, double x, long max_terms) {
  if (x == 0.0) return mittag_leffler(1.0, z, 0.0, 1);
  const double lx = std::log(std::abs(x));
  auto log_term = [&](long r) {
    return r * lx - lgamma_thread(r + 1.0) - log_abs_gamma_any(g * r + z);
  };
  auto big_term = [&](long r, mpfr_t out, mpfr_prec_t prec) {
    Guard arg(prec), gm(prec), xp(prec), base(prec), fact(prec);
    set_arg_linear(arg.v, g, r, z, prec);
    if (mpfr_sgn(arg.v) <= 0 && mpfr_integer_p(arg.v)) {
      mpfr_set_zero(out, 1);
      return;
    }
    mpfr_gamma(gm.v, arg.v, MPFR_RNDN);
    mpfr_fac_ui(fact.v, static_cast<unsigned long>(r), MPFR_RNDN);
    mpfr_mul(gm.v, gm.v, fact.v, MPFR_RNDN);
    mpfr_set_d(base.v, x, MPFR_RNDN);
    mpfr_pow_si(xp.v, base.v, r, MPFR_RNDN);
    mpfr_div(out, xp.v, gm.v, MPFR_RNDN);
  };
  return sum_adaptive(0, max_terms, log_term, big_term, /*stop_at_minimum=*/false);
}

Value wright_density(double nu, double xi, long max_terms) {
  const double lx = std::log(xi);
  auto log_term = [&](long r) {
    return r * lx - lgamma_thread(r + 1.0) - log_abs_gamma_any(1.0 - nu * (r + 1.0));
  };
  auto big_term = [&](long r, mpfr_t out, mpfr_prec_t prec) {
    Guard arg(prec), gm(prec), xp(prec), base(prec), fact(prec);
    mpfr_set_d(arg.v, nu, MPFR_RNDN);
    mpfr_mul_si(arg.v, arg.v, r + 1, MPFR_RNDN);
    mpfr_d_sub(arg.v, 1.0, arg.v, MPFR_RNDN);
    if (mpfr_sgn(arg.v) <= 0 && mpfr_integer_p(arg.v)) {
      mpfr_set_zero(out, 1);
      return;
    }
    mpfr_gamma(gm.v, arg.v, MPFR_RNDN);
    mpfr_fac_ui(fact.v, static_cast<unsigned long>(r), MPFR_RNDN);
    mpfr_mul(gm.v, gm.v, fact.v, MPFR_RNDN);
    mpfr_set_d(base.v, -xi, MPFR_RNDN);
    mpfr_pow_si(xp.v, base.v, r, MPFR_RNDN);
    mpfr_div(out, xp.v, gm.v, MPFR_RNDN);
  };
  return sum_adaptive(0, max_terms, log_term, big_term, /*stop_at_minimum=*/false);
}

Value heat_polynomial(double nu, double b, double x, double t, long max_terms) {
  const double lgb = lgamma_thread(b + 1.0);
  const double lx = std::log(x);
  const double lt = std::log(t);
  auto log_term = [&](long r) {
    return lgb + nu * r * lt + (b - 2.0 * r) * lx - lgamma_thread(nu * r + 1.0) -
           log_abs_gamma_any(b + 1.0 - 2.0 * r);
  };
  auto big_term = [&](long r, mpfr_t out, mpfr_prec_t prec) {
    Guard arg(prec), g1(prec), g2(prec), xp(prec), tp(prec), base(prec);
    set_arg_linear(arg.v, -2.0, r, b + 1.0, prec);
    if (mpfr_sgn(arg.v) <= 0 && mpfr_integer_p(arg.v)) {
      mpfr_set_zero(out, 1);
      return;
    }
    mpfr_gamma(g2.v, arg.v, MPFR_RNDN);
    set_arg_linear(arg.v, nu, r, 1.0, prec);
    mpfr_gamma(g1.v, arg.v, MPFR_RNDN);
    mpfr_mul(g1.v, g1.v, g2.v, MPFR_RNDN);
    // x^{b-2r} * t^{nu r} * Gamma(b+1)
    mpfr_set_d(base.v, x, MPFR_RNDN);
    set_arg_linear(arg.v, -2.0, r, b, prec);
    mpfr_pow(xp.v, base.v, arg.v, MPFR_RNDN);
    mpfr_set_d(base.v, t, MPFR_RNDN);
    set_arg_linear(arg.v, nu, r, 0.0, prec);
    mpfr_pow(tp.v, base.v, arg.v, MPFR_RNDN);
    mpfr_mul(xp.v, xp.v, tp.v, MPFR_RNDN);
    mpfr_set_d(base.v, b + 1.0, MPFR_RNDN);
    mpfr_gamma(g2.v, base.v, MPFR_RNDN);
    mpfr_mul(xp.v, xp.v, g2.v, MPFR_RNDN);
    mpfr_div(out, xp.v, g1.v, MPFR_RNDN);
  };
  return sum_adaptive(0, max_terms, log_term, big_term, /*stop_at_minimum=*/true);
}

}  // namespace oracle
