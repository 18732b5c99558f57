// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#include "fracalc/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fracalc/gammafn.hpp"
#include "fracalc/specfun.hpp"
#include "detail/series_engine.hpp"

namespace fracalc::models {

namespace {

using detail::LogTerm;
using detail::MpReal;

double lgamma_pos(double x) {
  int s = 0;
  return ::lgamma_r(x, &s);
}

bool is_nonneg_integer(double v) { return v >= 0.0 && v == std::floor(v); }

// sum_r Gamma(beta+1) t^{nu r} x^{beta-2r} / (Gamma(nu r + 1) Gamma(beta+1-2r)),
// optionally with the exact second-x-derivative factor (beta-2r)(beta-2r-1)
// and exponent shift. x != 0, t > 0 here; callers peel those cases off.
struct HeatPolyScheme {
  double nu, beta, x, t;
  bool dxx;
  double log_gb1;       // log Gamma(beta+1)
  double log_abs_x, log_t;
  int sign_xpow;        // sign of x^{beta-2r} (constant: the step is even)
  MpReal xm2, xpow, tnu, tpow, arg, g, fac;

  HeatPolyScheme(double nu_, double beta_, double x_, double t_, bool dxx_)
      : nu(nu_), beta(beta_), x(x_), t(t_), dxx(dxx_),
        log_gb1(lgamma_pos(beta_ + 1.0)),
        log_abs_x(std::log(std::abs(x_))), log_t(std::log(t_)) {
    // the running step is x^{-2}, so the parity of every exponent matches beta
    const bool odd_beta = is_nonneg_integer(beta_) && std::fmod(beta_, 2.0) == 1.0;
    sign_xpow = (x_ < 0.0 && odd_beta) ? -1 : 1;
  }

  LogTerm log_term(long r) const {
    const double rr = static_cast<double>(r);
    int rg_sign = 0;
    const double lrg = log_abs_reciprocal_gamma(beta + 1.0 - 2.0 * rr, rg_sign);
    if (rg_sign == 0) return {0.0, 0};
    double log_abs = log_gb1 + nu * rr * log_t + (beta - 2.0 * rr - (dxx ? 2.0 : 0.0)) * log_abs_x -
                     lgamma_pos(nu * rr + 1.0) + lrg;
    int sign = rg_sign * sign_xpow;
    if (dxx) {
      const double f = (beta - 2.0 * rr) * (beta - 2.0 * rr - 1.0);
      if (f == 0.0) return {0.0, 0};
      log_abs += std::log(std::abs(f));
      if (f < 0.0) sign = -sign;
    }
    return {log_abs, sign};
  }

  void big_begin(mpfr_prec_t prec) {
    xm2.reset(prec);
    xpow.reset(prec);
    tnu.reset(prec);
    tpow.reset(prec);
    arg.reset(prec);
    g.reset(prec);
    fac.reset(prec);
    // x^{beta} (adjusted by -2 for the derivative), then a running *x^{-2}
    mpfr_set_d(arg.raw(), std::abs(x), MPFR_RNDN);
    mpfr_set_d(g.raw(), beta - (dxx ? 2.0 : 0.0), MPFR_RNDN);
    mpfr_pow(xpow.raw(), arg.raw(), g.raw(), MPFR_RNDN);
    if (sign_xpow < 0) mpfr_neg(xpow.raw(), xpow.raw(), MPFR_RNDN);
    mpfr_set_d(arg.raw(), x, MPFR_RNDN);
    mpfr_mul(xm2.raw(), arg.raw(), arg.raw(), MPFR_RNDN);
    mpfr_ui_div(xm2.raw(), 1, xm2.raw(), MPFR_RNDN);
    mpfr_set_d(arg.raw(), t, MPFR_RNDN);
    mpfr_set_d(g.raw(), nu, MPFR_RNDN);
    mpfr_pow(tnu.raw(), arg.raw(), g.raw(), MPFR_RNDN);
    mpfr_set_d(tpow.raw(), 1.0, MPFR_RNDN);
  }

  void big_term(long r, mpfr_ptr out) {
    const double rr = static_cast<double>(r);
    const double tail_arg = beta + 1.0 - 2.0 * rr;
    const double dxx_factor = dxx ? (beta - 2.0 * rr) * (beta - 2.0 * rr - 1.0) : 1.0;
    if (is_gamma_pole(tail_arg) || dxx_factor == 0.0) {
      mpfr_set_zero(out, 1);
    } else {
      mpfr_set_d(arg.raw(), nu, MPFR_RNDN);
      mpfr_mul_si(arg.raw(), arg.raw(), r, MPFR_RNDN);
      mpfr_add_d(arg.raw(), arg.raw(), 1.0, MPFR_RNDN);
      mpfr_gamma(g.raw(), arg.raw(), MPFR_RNDN);
      mpfr_set_d(arg.raw(), tail_arg, MPFR_RNDN);
      mpfr_gamma(fac.raw(), arg.raw(), MPFR_RNDN);
      mpfr_mul(g.raw(), g.raw(), fac.raw(), MPFR_RNDN);
      mpfr_mul(out, xpow.raw(), tpow.raw(), MPFR_RNDN);
      mpfr_div(out, out, g.raw(), MPFR_RNDN);
      mpfr_mul_d(out, out, std::exp(log_gb1) * dxx_factor, MPFR_RNDN);
    }
    mpfr_mul(xpow.raw(), xpow.raw(), xm2.raw(), MPFR_RNDN);
    mpfr_mul(tpow.raw(), tpow.raw(), tnu.raw(), MPFR_RNDN);
  }
};

// tail series sum_{r>=k} (-1)^{r-k} s^r binom(r,k) / Gamma(nu r + 1), s >= 0
struct FppScheme {
  double nu, s;
  long k;
  double log_s, log_fact_k;
  MpReal sm, spow, binom, arg, g;

  FppScheme(double nu_, double s_, long k_)
      : nu(nu_), s(s_), k(k_), log_s(std::log(s_)),
        log_fact_k(lgamma_pos(static_cast<double>(k_) + 1.0)) {}

  LogTerm log_term(long r) const {
    const double rr = static_cast<double>(r);
    const double lb = lgamma_pos(rr + 1.0) - log_fact_k -
                      lgamma_pos(rr - static_cast<double>(k) + 1.0);
    const double log_abs = rr * log_s + lb - lgamma_pos(nu * rr + 1.0);
    return {log_abs, ((r - k) & 1) ? -1 : 1};
  }

  void big_begin(mpfr_prec_t prec) {
    sm.reset(prec);
    spow.reset(prec);
    binom.reset(prec);
    arg.reset(prec);
    g.reset(prec);
    mpfr_set_d(sm.raw(), -s, MPFR_RNDN);
    mpfr_set_d(arg.raw(), -s, MPFR_RNDN);
    mpfr_pow_si(spow.raw(), arg.raw(), k, MPFR_RNDN);  // (-s)^k
    mpfr_set_d(binom.raw(), 1.0, MPFR_RNDN);           // binom(k,k)
  }

  void big_term(long r, mpfr_ptr out) {
    mpfr_set_d(arg.raw(), nu, MPFR_RNDN);
    mpfr_mul_si(arg.raw(), arg.raw(), r, MPFR_RNDN);
    mpfr_add_d(arg.raw(), arg.raw(), 1.0, MPFR_RNDN);
    mpfr_gamma(g.raw(), arg.raw(), MPFR_RNDN);
    mpfr_mul(out, spow.raw(), binom.raw(), MPFR_RNDN);
    mpfr_div(out, out, g.raw(), MPFR_RNDN);
    if (k & 1) mpfr_neg(out, out, MPFR_RNDN);  // the (-1)^k of the closed form
    // advance: (-s)^{r+1}, binom(r+1,k) = binom(r,k)(r+1)/(r+1-k)
    mpfr_mul(spow.raw(), spow.raw(), sm.raw(), MPFR_RNDN);
    mpfr_mul_si(binom.raw(), binom.raw(), r + 1, MPFR_RNDN);
    mpfr_div_si(binom.raw(), binom.raw(), r + 1 - k, MPFR_RNDN);
  }
};

SeriesResult exact_result(double value) {
  SeriesResult out;
  out.value = value;
  out.terms_used = 1;
  out.converged = true;
  return out;
}

SeriesResult ml_one_param(double nu, double x, const SeriesPolicy& policy) {
  return specfun::mittag_leffler({nu, 1.0}, x, policy);
}

}  // namespace

void HeatPolyParams::validate() const {
  if (beta < 0.0 && beta == std::floor(beta))
    throw std::invalid_argument("HeatPolyParams: beta must not be a negative integer");
  nu.require_window(0.0, 1.0, /*hi_closed=*/true, "HeatPolyParams");
}

void FppParams::validate() const {
  if (!(rate > 0.0)) throw std::invalid_argument("FppParams: rate must be > 0");
  nu.require_window(0.0, 1.0, /*hi_closed=*/true, "FppParams");
}

namespace {

SeriesResult heat_series(const HeatPolyParams& p, double x, double t, const SeriesPolicy& policy,
                         bool dxx) {
  p.validate();
  policy.validate();
  if (!(t >= 0.0)) throw std::domain_error("heat_polynomial: t must be >= 0");
  const bool integer_beta = is_nonneg_integer(p.beta);
  if (x <= 0.0 && !integer_beta)
    throw std::domain_error("heat_polynomial: x must be > 0 for non-integer beta");

  const double shift = dxx ? 2.0 : 0.0;
  if (t == 0.0) {
    // initial condition x^beta (or its exact second derivative)
    const double factor = dxx ? p.beta * (p.beta - 1.0) : 1.0;
    if (factor == 0.0) return exact_result(0.0);
    if (x == 0.0) {
      if (p.beta == shift) return exact_result(factor);
      return exact_result(p.beta > shift ? 0.0 : std::numeric_limits<double>::infinity());
    }
    const double mag = std::exp((p.beta - shift) * std::log(std::abs(x)));
    const bool odd = integer_beta && std::fmod(p.beta - shift, 2.0) != 0.0;
    const double v = (x < 0.0 && odd) ? -mag : mag;
    return exact_result(factor * v);
  }

  if (x == 0.0) {
    // integer beta only (checked above): one surviving term where the
    // exponent beta - 2r - shift hits zero
    const double rstar = (p.beta - shift) / 2.0;
    if (rstar < 0.0 || rstar != std::floor(rstar)) return exact_result(0.0);
    const long r = static_cast<long>(rstar);
    const double tail = p.beta + 1.0 - 2.0 * rstar;
    if (is_gamma_pole(tail)) return exact_result(0.0);
    double v = std::exp(lgamma_pos(p.beta + 1.0) + p.nu.nu * rstar * std::log(t) -
                        lgamma_pos(p.nu.nu * rstar + 1.0) - lgamma_pos(tail));
    if (dxx) v *= (p.beta - 2.0 * rstar) * (p.beta - 2.0 * rstar - 1.0);
    SeriesResult out = exact_result(v);
    out.terms_used = r + 1;
    return out;
  }

  HeatPolyScheme scheme(p.nu.nu, p.beta, x, t, dxx);
  return detail::sum_series(scheme, policy, 0, /*divergence_abort=*/true);
}

}  // namespace

SeriesResult heat_polynomial(const HeatPolyParams& p, double x, double t,
                             const SeriesPolicy& policy) {
  return heat_series(p, x, t, policy, /*dxx=*/false);
}

SeriesResult heat_polynomial_dxx(const HeatPolyParams& p, double x, double t,
                                 const SeriesPolicy& policy) {
  return heat_series(p, x, t, policy, /*dxx=*/true);
}

SeriesResult vibrating_plate(const FractionalOrder& nu, double x, double t,
                             const SeriesPolicy& policy) {
  nu.require_window(0.0, 2.0, /*hi_closed=*/true, "vibrating_plate");
  if (!(t >= 0.0)) throw std::domain_error("vibrating_plate: t must be >= 0");
  SeriesResult ml = ml_one_param(nu.nu, -std::pow(t, nu.nu), policy);
  const double sx = std::sin(x);
  ml.value *= sx;
  ml.est_error *= std::abs(sx);
  return ml;
}

SeriesResult space_fractional_bvp(const FractionalOrder& nu, double x, double t,
                                  const SeriesPolicy& policy) {
  nu.require_window(0.0, 2.0, /*hi_closed=*/true, "space_fractional_bvp");
  if (!(x >= 0.0)) throw std::domain_error("space_fractional_bvp: x must be >= 0");
  SeriesResult ml = ml_one_param(nu.nu, -std::pow(x, nu.nu), policy);
  const double et = std::exp(-t);
  ml.value *= et;
  ml.est_error *= et;
  return ml;
}

PmfValue fpp_pmf(const FppParams& p, long k, double t, const SeriesPolicy& policy) {
  p.validate();
  policy.validate();
  if (k < 0) throw std::invalid_argument("fpp_pmf: k must be >= 0");
  if (!(t >= 0.0)) throw std::domain_error("fpp_pmf: t must be >= 0");

  PmfValue out;
  if (t == 0.0) {
    out.raw = exact_result(k == 0 ? 1.0 : 0.0);  // p_k(0) = delta_{k,0}
    out.clamped = out.raw.value;
    return out;
  }
  const double s = p.rate * std::pow(t, p.nu.nu);
  FppScheme scheme(p.nu.nu, s, k);
  out.raw = detail::sum_series(scheme, policy, k, /*divergence_abort=*/false);
  out.negative = out.raw.value < 0.0;
  out.clamped = std::max(out.raw.value, 0.0);
  return out;
}

SeriesResult fpp_pgf(const FppParams& p, double u, double t, const SeriesPolicy& policy) {
  p.validate();
  if (!(std::abs(u) <= 1.0)) throw std::domain_error("fpp_pgf: |u| must be <= 1");
  if (!(t >= 0.0)) throw std::domain_error("fpp_pgf: t must be >= 0");
  if (t == 0.0) return exact_result(1.0);
  return ml_one_param(p.nu.nu, -p.rate * (1.0 - u) * std::pow(t, p.nu.nu), policy);
}

PmfVector backward_shift_solution(const FppParams& p, double t, int k_max,
                                  const SeriesPolicy& policy) {
  p.validate();
  policy.validate();
  if (k_max < 0) throw std::invalid_argument("backward_shift_solution: k_max must be >= 0");
  if (!(t >= 0.0)) throw std::domain_error("backward_shift_solution: t must be >= 0");

  PmfVector out;
  out.values.assign(k_max + 1, 0.0);
  out.converged.assign(k_max + 1, true);
  if (t == 0.0) {
    out.values[0] = 1.0;  // the Kronecker initial state
    return out;
  }

  const double s = p.rate * std::pow(t, p.nu.nu);
  const double nu = p.nu.nu;
  const double log_s = std::log(s);

  // precision from the largest row contribution |(-s)^r/Gamma(nu r+1)| * binom(r, h<=k_max)
  double peak_log = 0.0;
  long r_end = policy.max_terms;
  for (long r = 0; r < policy.max_terms; ++r) {
    const double rr = static_cast<double>(r);
    const long h = std::min<long>(k_max, r / 2);
    const double lc =
        rr * log_s - lgamma_pos(nu * rr + 1.0) + log_binomial(r, std::min<long>(h, r));
    peak_log = std::max(peak_log, lc);
    if (lc < -110.0) {  // contributions below ~1e-48 of the O(1) scale
      r_end = r + 1;
      break;
    }
  }
  const double digits = peak_log / detail::kLn10 + 30.0;
  const double binom_bits = static_cast<double>(r_end) + 64.0;  // exact Pascal entries
  const auto prec =
      static_cast<mpfr_prec_t>(std::max(digits * 3.321928095 + 64.0, binom_bits));

  std::vector<MpReal> row(k_max + 1), acc(k_max + 1);
  for (auto& v : row) v.reset(prec);
  for (auto& v : acc) v.reset(prec);
  mpfr_set_d(row[0].raw(), 1.0, MPFR_RNDN);
  MpReal coeff, arg, g, contrib;
  coeff.reset(prec);
  arg.reset(prec);
  g.reset(prec);
  contrib.reset(prec);
  MpReal sm;
  sm.reset(prec);
  mpfr_set_d(sm.raw(), -s, MPFR_RNDN);
  mpfr_set_d(coeff.raw(), 1.0, MPFR_RNDN);  // (-s)^r, r = 0

  bool converged = false;
  int small_run = 0;
  double prev_max = std::numeric_limits<double>::infinity();
  for (long r = 0; r < policy.max_terms; ++r) {
    // c_r = (-s)^r / Gamma(nu r + 1)
    mpfr_set_d(arg.raw(), nu, MPFR_RNDN);
    mpfr_mul_si(arg.raw(), arg.raw(), r, MPFR_RNDN);
    mpfr_add_d(arg.raw(), arg.raw(), 1.0, MPFR_RNDN);
    mpfr_gamma(g.raw(), arg.raw(), MPFR_RNDN);

    double row_max = 0.0;
    for (int h = 0; h <= std::min<long>(k_max, r); ++h) {
      mpfr_mul(contrib.raw(), coeff.raw(), row[h].raw(), MPFR_RNDN);
      mpfr_div(contrib.raw(), contrib.raw(), g.raw(), MPFR_RNDN);
      mpfr_add(acc[h].raw(), acc[h].raw(), contrib.raw(), MPFR_RNDN);
      row_max = std::max(row_max, std::abs(mpfr_get_d(contrib.raw(), MPFR_RNDN)));
    }

    double acc_max = 0.0;
    for (int h = 0; h <= k_max; ++h)
      acc_max = std::max(acc_max, std::abs(mpfr_get_d(acc[h].raw(), MPFR_RNDN)));
    if (row_max < policy.rel_tol * acc_max + policy.abs_tol && row_max <= prev_max) {
      if (++small_run >= policy.consecutive_small) {
        converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
    prev_max = row_max;

    // advance the Pascal row (1-B)^{r+1} delta: v[h] <- v[h] - v[h-1], top down
    for (int h = std::min<long>(k_max, r + 1); h >= 1; --h)
      mpfr_sub(row[h].raw(), row[h].raw(), row[h - 1].raw(), MPFR_RNDN);
    mpfr_mul(coeff.raw(), coeff.raw(), sm.raw(), MPFR_RNDN);
  }

  for (int h = 0; h <= k_max; ++h) {
    out.values[h] = mpfr_get_d(acc[h].raw(), MPFR_RNDN);
    out.converged[h] = converged;
  }
  return out;
}

}  // namespace fracalc::models
