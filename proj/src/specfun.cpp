// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#include "fracalc/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracalc/gammafn.hpp"
#include "detail/series_engine.hpp"

namespace fracalc::specfun {

namespace {

using detail::LogTerm;
using detail::MpReal;

// sum_r x^r / Gamma(gamma r + zeta); gamma, zeta > 0 so the argument never
// hits a pole
struct MittagLefflerScheme {
  double gamma, zeta, x;
  double log_abs_x;
  MpReal xm, xpow, arg, g;

  MittagLefflerScheme(double gamma_, double zeta_, double x_)
      : gamma(gamma_), zeta(zeta_), x(x_), log_abs_x(std::log(std::abs(x_))) {}

  LogTerm log_term(long r) const {
    int gs = 0;
    const double lg = log_abs_gamma(gamma * static_cast<double>(r) + zeta, gs);
    const int sign = (x < 0.0 && (r & 1)) ? -1 : 1;
    return {static_cast<double>(r) * log_abs_x - lg, sign * gs};
  }

  void big_begin(mpfr_prec_t prec) {
    xm.reset(prec);
    xpow.reset(prec);
    arg.reset(prec);
    g.reset(prec);
    mpfr_set_d(xm.raw(), x, MPFR_RNDN);
    mpfr_set_d(xpow.raw(), 1.0, MPFR_RNDN);
  }

  void big_term(long r, mpfr_ptr out) {
    mpfr_set_d(arg.raw(), gamma, MPFR_RNDN);
    mpfr_mul_si(arg.raw(), arg.raw(), r, MPFR_RNDN);
    mpfr_add_d(arg.raw(), arg.raw(), zeta, MPFR_RNDN);
    mpfr_gamma(g.raw(), arg.raw(), MPFR_RNDN);
    mpfr_div(out, xpow.raw(), g.raw(), MPFR_RNDN);
    mpfr_mul(xpow.raw(), xpow.raw(), xm.raw(), MPFR_RNDN);
  }
};

// sum_r x^r / (r! Gamma(gamma r + zeta)); the argument may cross poles when
// gamma or zeta is non-positive, zeroing those terms
struct WrightScheme {
  double gamma, zeta, x;
  double log_abs_x;
  MpReal xm, xpow, fact, arg, g;

  WrightScheme(double gamma_, double zeta_, double x_)
      : gamma(gamma_), zeta(zeta_), x(x_), log_abs_x(std::log(std::abs(x_))) {}

  LogTerm log_term(long r) const {
    const double arg = gamma * static_cast<double>(r) + zeta;
    int gs = 0;
    const double lrg = log_abs_reciprocal_gamma(arg, gs);
    if (gs == 0) return {0.0, 0};
    int sign = (x < 0.0 && (r & 1)) ? -gs : gs;
    double lg;
    {
      int fs = 0;
      lg = log_abs_gamma(static_cast<double>(r) + 1.0, fs);
    }
    return {static_cast<double>(r) * log_abs_x + lrg - lg, sign};
  }

  void big_begin(mpfr_prec_t prec) {
    xm.reset(prec);
    xpow.reset(prec);
    fact.reset(prec);
    arg.reset(prec);
    g.reset(prec);
    mpfr_set_d(xm.raw(), x, MPFR_RNDN);
    mpfr_set_d(xpow.raw(), 1.0, MPFR_RNDN);
    mpfr_set_d(fact.raw(), 1.0, MPFR_RNDN);
  }

  void big_term(long r, mpfr_ptr out) {
    // exact binary argument; only true poles vanish (near-pole rows carry
    // the smooth sine-factor oscillation the cancellation depends on)
    mpfr_set_d(arg.raw(), gamma, MPFR_RNDN);
    mpfr_mul_si(arg.raw(), arg.raw(), r, MPFR_RNDN);
    mpfr_add_d(arg.raw(), arg.raw(), zeta, MPFR_RNDN);
    if (mpfr_sgn(arg.raw()) <= 0 && mpfr_integer_p(arg.raw())) {
      mpfr_set_zero(out, 1);
    } else {
      mpfr_gamma(g.raw(), arg.raw(), MPFR_RNDN);
      mpfr_mul(g.raw(), g.raw(), fact.raw(), MPFR_RNDN);
      mpfr_div(out, xpow.raw(), g.raw(), MPFR_RNDN);
    }
    mpfr_mul(xpow.raw(), xpow.raw(), xm.raw(), MPFR_RNDN);
    mpfr_mul_si(fact.raw(), fact.raw(), r + 1, MPFR_RNDN);
  }
};

// sum_r (-xi)^r / (r! Gamma(1 - nu (r+1)))
struct WrightDensityScheme {
  double nu, xi;
  double log_xi;
  MpReal xm, xpow, fact, arg, g;

  WrightDensityScheme(double nu_, double xi_) : nu(nu_), xi(xi_), log_xi(std::log(xi_)) {}

  LogTerm log_term(long r) const {
    const double arg = 1.0 - nu * (static_cast<double>(r) + 1.0);
    int gs = 0;
    const double lrg = log_abs_reciprocal_gamma(arg, gs);
    if (gs == 0) return {0.0, 0};
    int fs = 0;
    const double lf = log_abs_gamma(static_cast<double>(r) + 1.0, fs);
    return {static_cast<double>(r) * log_xi + lrg - lf, (r & 1) ? -gs : gs};
  }

  void big_begin(mpfr_prec_t prec) {
    xm.reset(prec);
    xpow.reset(prec);
    fact.reset(prec);
    arg.reset(prec);
    g.reset(prec);
    mpfr_set_d(xm.raw(), -xi, MPFR_RNDN);
    mpfr_set_d(xpow.raw(), 1.0, MPFR_RNDN);
    mpfr_set_d(fact.raw(), 1.0, MPFR_RNDN);
  }

  void big_term(long r, mpfr_ptr out) {
    mpfr_set_d(arg.raw(), nu, MPFR_RNDN);
    mpfr_mul_si(arg.raw(), arg.raw(), r + 1, MPFR_RNDN);
    mpfr_d_sub(arg.raw(), 1.0, arg.raw(), MPFR_RNDN);
    if (mpfr_sgn(arg.raw()) <= 0 && mpfr_integer_p(arg.raw())) {
      mpfr_set_zero(out, 1);
    } else {
      mpfr_gamma(g.raw(), arg.raw(), MPFR_RNDN);
      mpfr_mul(g.raw(), g.raw(), fact.raw(), MPFR_RNDN);
      mpfr_div(out, xpow.raw(), g.raw(), MPFR_RNDN);
    }
    mpfr_mul(xpow.raw(), xpow.raw(), xm.raw(), MPFR_RNDN);
    mpfr_mul_si(fact.raw(), fact.raw(), r + 1, MPFR_RNDN);
  }
};

// sum_r (-y)^r / (r!)^2
struct TricomiScheme {
  double y;
  double log_abs_y;
  MpReal xm, xpow, fact2;

  explicit TricomiScheme(double y_) : y(y_), log_abs_y(std::log(std::abs(y_))) {}

  LogTerm log_term(long r) const {
    int fs = 0;
    const double lf = log_abs_gamma(static_cast<double>(r) + 1.0, fs);
    const int sign = (y > 0.0 && (r & 1)) ? -1 : 1;
    return {static_cast<double>(r) * log_abs_y - 2.0 * lf, sign};
  }

  void big_begin(mpfr_prec_t prec) {
    xm.reset(prec);
    xpow.reset(prec);
    fact2.reset(prec);
    mpfr_set_d(xm.raw(), -y, MPFR_RNDN);
    mpfr_set_d(xpow.raw(), 1.0, MPFR_RNDN);
    mpfr_set_d(fact2.raw(), 1.0, MPFR_RNDN);
  }

  void big_term(long r, mpfr_ptr out) {
    mpfr_div(out, xpow.raw(), fact2.raw(), MPFR_RNDN);
    mpfr_mul(xpow.raw(), xpow.raw(), xm.raw(), MPFR_RNDN);
    mpfr_mul_si(fact2.raw(), fact2.raw(), r + 1, MPFR_RNDN);
    mpfr_mul_si(fact2.raw(), fact2.raw(), r + 1, MPFR_RNDN);
  }
};

SeriesResult exact_single_term(double value) {
  SeriesResult out;
  out.value = value;
  out.terms_used = 1;
  out.converged = true;
  out.est_error = 0.0;
  return out;
}

}  // namespace

SeriesResult mittag_leffler(const MittagLefflerParams& p, double x, const SeriesPolicy& policy) {
  p.validate();
  policy.validate();
  if (!std::isfinite(x)) throw std::domain_error("mittag_leffler: x must be finite");
  if (x < -50.0)
    throw std::domain_error(
        "mittag_leffler: negative arguments are supported only for |x| <= 50");
  if (x == 0.0) return exact_single_term(reciprocal_gamma(p.zeta));
  MittagLefflerScheme scheme(p.gamma, p.zeta, x);
  return detail::sum_series(scheme, policy, 0, /*divergence_abort=*/false);
}

double mittag_leffler_term(const MittagLefflerParams& p, double x, long r) {
  p.validate();
  if (x == 0.0) return r == 0 ? reciprocal_gamma(p.zeta) : 0.0;
  const MittagLefflerScheme scheme(p.gamma, p.zeta, x);
  const detail::LogTerm lt = scheme.log_term(r);
  if (lt.sign == 0) return 0.0;
  return lt.sign * std::exp(lt.log_abs);
}

SeriesResult wright(const WrightParams& p, double x, const SeriesPolicy& policy) {
  p.validate();
  policy.validate();
  if (!std::isfinite(x)) throw std::domain_error("wright: x must be finite");
  if (x < -50.0)
    throw std::domain_error("wright: negative arguments are supported only for |x| <= 50");
  if (x == 0.0) return exact_single_term(reciprocal_gamma(p.zeta));
  WrightScheme scheme(p.gamma, p.zeta, x);
  return detail::sum_series(scheme, policy, 0, /*divergence_abort=*/false);
}

SeriesResult wright_density(const FractionalOrder& nu, double xi, const SeriesPolicy& policy) {
  nu.require_window(0.0, 1.0, /*hi_closed=*/false, "wright_density");
  policy.validate();
  if (!(xi > 0.0)) throw std::domain_error("wright_density: xi must be > 0");
  WrightDensityScheme scheme(nu.nu, xi);
  return detail::sum_series(scheme, policy, 0, /*divergence_abort=*/false);
}

SeriesResult tricomi_c0(double y, const SeriesPolicy& policy) {
  policy.validate();
  if (!std::isfinite(y)) throw std::domain_error("tricomi_c0: y must be finite");
  if (y == 0.0) return exact_single_term(1.0);
  TricomiScheme scheme(y);
  return detail::sum_series(scheme, policy, 0, /*divergence_abort=*/false);
}

}  // namespace fracalc::specfun
