// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#include "fracalc/gammafn.hpp"

#include <cmath>
#include <limits>

namespace fracalc {

namespace {

// thread-safe log|Gamma(x)| for x > 0 (std::lgamma writes the global signgam)
double lgamma_pos(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

}  // namespace

bool is_gamma_pole(double z) { return z <= 0.0 && z == std::floor(z); }


double sinpi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  // reduce modulo 2 exactly, then fold onto [-1/2, 1/2] where sin is safe
  double r = std::fmod(x, 2.0);
  if (r < -1.0) r += 2.0;
  else if (r > 1.0) r -= 2.0;
  if (r > 0.5) r = 1.0 - r;
  else if (r < -0.5) r = -1.0 - r;
  return std::sin(M_PI * r);
}

double log_abs_gamma(double z, int& sign) {
  if (is_gamma_pole(z)) {
    sign = 0;  // pole
    return std::numeric_limits<double>::infinity();
  }
  if (z > 0.0) {
    sign = 1;
    return lgamma_pos(z);
  }
  // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1-z))
  const double s = sinpi(z);
  sign = s > 0.0 ? 1 : -1;
  return std::log(M_PI) - std::log(std::abs(s)) - lgamma_pos(1.0 - z);
}

double log_abs_reciprocal_gamma(double z, int& sign) {
  if (is_gamma_pole(z)) {
    sign = 0;
    return -std::numeric_limits<double>::infinity();
  }
  int gs = 0;
  const double lg = log_abs_gamma(z, gs);
  sign = gs;
  return -lg;
}

double reciprocal_gamma(double z) {
  int sign = 0;
  const double lr = log_abs_reciprocal_gamma(z, sign);
  if (sign == 0) return 0.0;
  return sign * std::exp(lr);  // may underflow to 0 or overflow to inf at the extremes
}

double log_binomial(long r, long k) {
  if (k < 0 || k > r) return -std::numeric_limits<double>::infinity();
  return lgamma_pos(static_cast<double>(r) + 1.0) - lgamma_pos(static_cast<double>(k) + 1.0) -
         lgamma_pos(static_cast<double>(r - k) + 1.0);
}

}  // namespace fracalc
