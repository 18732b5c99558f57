// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace fracalc {

// sin(pi*x) with exact argument reduction modulo 2 (|x| up to 2^52),
// avoiding the precision loss of sin(M_PI*x) for large |x|.
double sinpi(double x);

// true when z is a non-positive integer, i.e. a pole of Gamma
bool is_gamma_pole(double z);

// 1/Gamma(z) for any real z. Non-positive integers map to exactly 0
// (pole convention). Computed through log-gamma with sign tracking, so
// large |z| never overflows an intermediate Gamma value.
double reciprocal_gamma(double z);

// log|1/Gamma(z)| and the sign of 1/Gamma(z) (0 at poles). This is the
// form every series coefficient actually consumes.
double log_abs_reciprocal_gamma(double z, int& sign);

// log|Gamma(z)| with the sign of Gamma(z) (0 at poles).
double log_abs_gamma(double z, int& sign);

// log of binomial(r, k) for 0 <= k <= r, via log-gamma.
double log_binomial(long r, long k);

}  // namespace fracalc
