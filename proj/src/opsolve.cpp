// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#include "fracalc/opsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracalc/gammafn.hpp"

namespace fracalc::opsolve {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lgamma_pos(double x) {
  int s = 0;
  return ::lgamma_r(x, &s);
}

AnalyticFunction::Coeff make_coeff(double v) {
  if (v == 0.0) return {kNegInf, 0};
  return {std::log(std::abs(v)), static_cast<std::int8_t>(v > 0.0 ? 1 : -1)};
}

// multiply a log-space coefficient by a plain double factor
AnalyticFunction::Coeff scale_coeff(const AnalyticFunction::Coeff& c, double f) {
  if (c.sign == 0 || f == 0.0) return {kNegInf, 0};
  return {c.log_abs + std::log(std::abs(f)),
          static_cast<std::int8_t>(f > 0.0 ? c.sign : -c.sign)};
}

bool is_integer(double v) { return v == std::floor(v); }

// cap on eagerly cached operator powers; evaluation flags non-convergence
// if a point ever needs more
constexpr long kMaxCachedTerms = 400;

}  // namespace

AnalyticFunction::AnalyticFunction(double offset, std::vector<Coeff> coeffs, bool complete)
    : offset_(offset), coeffs_(std::move(coeffs)), complete_(complete) {}

AnalyticFunction AnalyticFunction::from_coefficients(double offset,
                                                     std::span<const double> coeffs) {
  if (!(offset >= 0.0))
    throw std::invalid_argument("AnalyticFunction: exponent offset must be >= 0");
  std::vector<Coeff> c;
  c.reserve(coeffs.size());
  for (double v : coeffs) c.push_back(make_coeff(v));
  return AnalyticFunction(offset, std::move(c), /*complete=*/true);
}

AnalyticFunction AnalyticFunction::monomial(double beta, double coeff) {
  return from_coefficients(beta, std::span<const double>(&coeff, 1));
}

AnalyticFunction AnalyticFunction::constant(double c) { return monomial(0.0, c); }

AnalyticFunction AnalyticFunction::sine(long n_coeffs) {
  std::vector<Coeff> c(n_coeffs, Coeff{kNegInf, 0});
  for (long k = 1; k < n_coeffs; k += 2) {
    const int sign = ((k - 1) / 2) % 2 == 0 ? 1 : -1;
    c[k] = {-lgamma_pos(static_cast<double>(k) + 1.0), static_cast<std::int8_t>(sign)};
  }
  return AnalyticFunction(0.0, std::move(c), /*complete=*/false);
}

AnalyticFunction AnalyticFunction::exp_neg(long n_coeffs) {
  std::vector<Coeff> c(n_coeffs, Coeff{kNegInf, 0});
  for (long k = 0; k < n_coeffs; ++k)
    c[k] = {-lgamma_pos(static_cast<double>(k) + 1.0),
            static_cast<std::int8_t>(k % 2 == 0 ? 1 : -1)};
  return AnalyticFunction(0.0, std::move(c), /*complete=*/false);
}

double AnalyticFunction::coefficient(long k) const {
  const Coeff& c = coeffs_.at(k);
  if (c.sign == 0) return 0.0;
  return c.sign * std::exp(c.log_abs);
}

bool AnalyticFunction::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Coeff& c) { return c.sign == 0; });
}

SeriesResult AnalyticFunction::evaluate(double x, const SeriesPolicy& policy) const {
  policy.validate();
  SeriesResult out;
  const long n = size();
  if (n == 0) {
    out.converged = true;
    return out;
  }

  if (x == 0.0) {
    // only the exponent-0 entry survives; negative exponents are singular
    for (long k = 0; k < n; ++k) {
      const double e = offset_ + static_cast<double>(k);
      if (coeffs_[k].sign == 0) continue;
      if (e < 0.0)
        throw std::domain_error("AnalyticFunction: evaluation at 0 with negative exponent");
      if (e == 0.0) out.value += coefficient(k);
    }
    out.terms_used = n;
    out.converged = true;
    return out;
  }
  if (x < 0.0 && !is_integer(offset_))
    throw std::domain_error("AnalyticFunction: negative argument requires an integer ladder");

  const double log_abs_x = std::log(std::abs(x));
  CompensatedSum acc;
  int small_run = 0;
  bool rule_stop = false;
  double prev_abs = std::numeric_limits<double>::infinity();
  double last_abs = 0.0;
  long used = 0;
  for (long k = 0; k < n; ++k) {
    const Coeff& c = coeffs_[k];
    ++used;
    if (c.sign == 0) continue;  // exact zeros carry no convergence information
    const double e = offset_ + static_cast<double>(k);
    const double lt = c.log_abs + e * log_abs_x;
    double sgn = c.sign;
    if (x < 0.0 && std::fmod(std::abs(e), 2.0) == 1.0) sgn = -sgn;
    const double term = sgn * std::exp(lt);
    acc.add(term);
    const double abs_term = std::abs(term);
    last_abs = abs_term;
    if (abs_term < policy.rel_tol * std::abs(acc.value()) + policy.abs_tol &&
        abs_term <= prev_abs) {
      if (++small_run >= policy.consecutive_small) {
        rule_stop = true;
        break;
      }
    } else {
      small_run = 0;
    }
    prev_abs = abs_term;
  }
  out.value = acc.value();
  out.terms_used = used;
  if (rule_stop) {
    out.converged = true;
    out.est_error = last_abs;
  } else if (complete_) {
    out.converged = true;  // the whole (finite) function was summed
    out.est_error = 0.0;
  } else {
    out.converged = false;  // truncated ladder exhausted while terms mattered
    out.est_error = last_abs;
  }
  return out;
}

AnalyticFunction AnalyticFunction::scaled(double f) const {
  std::vector<Coeff> c;
  c.reserve(coeffs_.size());
  for (const Coeff& v : coeffs_) c.push_back(scale_coeff(v, f));
  return AnalyticFunction(offset_, std::move(c), complete_);
}

AnalyticFunction AnalyticFunction::plus(const AnalyticFunction& other) const {
  // ladders can be merged when their offsets differ by an integer
  const double off = std::min(offset_, other.offset_);
  const double da = offset_ - off;
  const double db = other.offset_ - off;
  if (!is_integer(da) || !is_integer(db))
    throw std::invalid_argument("AnalyticFunction::plus: offsets differ by a non-integer");
  const long sa = static_cast<long>(da), sb = static_cast<long>(db);
  const long n = std::max(size() + sa, other.size() + sb);
  std::vector<Coeff> c(n, Coeff{kNegInf, 0});
  for (long k = 0; k < n; ++k) {
    const double a = (k >= sa && k - sa < size()) ? coefficient(k - sa) : 0.0;
    const double b = (k >= sb && k - sb < other.size()) ? other.coefficient(k - sb) : 0.0;
    c[k] = make_coeff(a + b);
  }
  return AnalyticFunction(off, std::move(c), complete_ && other.complete_);
}

AnalyticFunction apply_operator(const OperatorDescriptor& op, const AnalyticFunction& g) {
  using Kind = OperatorDescriptor::Kind;
  switch (op.kind) {
    case Kind::scalar:
      return g.scaled(op.scale);
    case Kind::second_derivative:
    case Kind::negated_fourth_derivative: {
      const int order = op.kind == Kind::second_derivative ? 2 : 4;
      const double sign_flip = op.kind == Kind::negated_fourth_derivative ? -1.0 : 1.0;
      std::vector<AnalyticFunction::Coeff> c;
      c.reserve(g.size());
      for (long k = 0; k < g.size(); ++k) {
        // exact action a_k x^e -> a_k e(e-1)...(e-order+1) x^{e-order};
        // the product vanishes exactly where the Gamma-ratio convention does
        const double e = g.offset() + static_cast<double>(k);
        double factor = sign_flip;
        for (int d = 0; d < order; ++d) factor *= (e - static_cast<double>(d));
        c.push_back(scale_coeff(g.coeff_log(k), factor));
      }
      return AnalyticFunction(g.offset() - static_cast<double>(order), std::move(c),
                              g.complete());
    }
    case Kind::backward_shift:
      throw std::invalid_argument(
          "apply_operator: backward_shift acts on Kronecker sequences, not power series");
  }
  throw std::invalid_argument("apply_operator: unknown operator kind");
}

OperationalSolution::OperationalSolution(FractionalOrder order, OperatorDescriptor op,
                                         Orientation orientation,
                                         std::vector<AnalyticFunction> terms, bool terminated)
    : order_(order), op_(op), orientation_(orientation), terms_(std::move(terms)),
      terminated_(terminated) {}

namespace {

OperationalSolution build_solution(const FractionalOrder& order, const OperatorDescriptor& op,
                                   const AnalyticFunction& g, const SeriesPolicy& policy,
                                   OperationalSolution::Orientation orientation) {
  policy.validate();
  order.require_window(0.0, 2.0, /*hi_closed=*/true, "operational solver");
  const long cap = std::min<long>(policy.max_terms, kMaxCachedTerms);
  std::vector<AnalyticFunction> terms;
  terms.reserve(cap);
  terms.push_back(g);
  bool terminated = false;
  for (long r = 1; r < cap; ++r) {
    AnalyticFunction next = apply_operator(op, terms.back());
    if (next.is_zero()) {
      // a vanished COMPLETE ladder ends the series exactly; a vanished
      // truncated ladder only means the representation ran out
      terminated = next.complete();
      break;
    }
    terms.push_back(std::move(next));
  }
  return OperationalSolution(order, op, orientation, std::move(terms), terminated);
}

}  // namespace

OperationalSolution solve_ivp(const FractionalOrder& order, const OperatorDescriptor& op,
                              const AnalyticFunction& g, const SeriesPolicy& policy) {
  return build_solution(order, op, g, policy, OperationalSolution::Orientation::time_fractional);
}

OperationalSolution solve_bvp(const FractionalOrder& order, const OperatorDescriptor& op,
                              const AnalyticFunction& g, const SeriesPolicy& policy) {
  return build_solution(order, op, g, policy, OperationalSolution::Orientation::space_fractional);
}

SeriesResult evaluate(const OperationalSolution& sol, double x, double t,
                      const SeriesPolicy& policy) {
  policy.validate();
  const bool time_frac = sol.orientation() == OperationalSolution::Orientation::time_fractional;
  const double s = time_frac ? t : x;  // fractional variable
  const double u = time_frac ? x : t;  // argument of the operator powers
  if (!(s >= 0.0)) throw std::domain_error("evaluate: the fractional variable must be >= 0");

  SeriesResult out;
  const double nu = sol.order().nu;

  if (s == 0.0) {
    out = sol.term(0).evaluate(u, policy);
    out.terms_used = 1;
    return out;  // initial/boundary data recovered exactly (Gamma(1) term only)
  }

  const double log_s = std::log(s);
  CompensatedSum acc;
  int small_run = 0;
  bool rule_stop = false;
  double prev_abs = std::numeric_limits<double>::infinity();
  double last_abs = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  double sum_at_min = 0.0;
  long terms_at_min = 0;
  int grow_run = 0;
  bool diverged = false;
  bool all_inner_converged = true;
  long used = 0;

  const long available = sol.term_count();
  for (long r = 0; r < available && r < policy.max_terms; ++r) {
    const SeriesResult inner = sol.term(r).evaluate(u, policy);
    if (!inner.converged) all_inner_converged = false;
    const double w = std::exp(nu * static_cast<double>(r) * log_s -
                              lgamma_pos(nu * static_cast<double>(r) + 1.0));
    const double term = w * inner.value;
    acc.add(term);
    ++used;
    if (term == 0.0) continue;
    const double abs_term = std::abs(term);
    last_abs = abs_term;
    if (abs_term < policy.rel_tol * std::abs(acc.value()) + policy.abs_tol &&
        abs_term <= prev_abs) {
      if (++small_run >= policy.consecutive_small) {
        rule_stop = true;
        break;
      }
    } else {
      small_run = 0;
    }
    if (abs_term < min_abs) {
      min_abs = abs_term;
      sum_at_min = acc.value();
      terms_at_min = used;
      grow_run = 0;
    } else if (abs_term > prev_abs && abs_term > 8.0 * min_abs) {
      if (++grow_run >= 3 && terms_at_min > 0) {
        diverged = true;
        break;
      }
    } else {
      grow_run = 0;
    }
    prev_abs = abs_term;
  }

  if (diverged) {
    // formal series: report the optimally truncated sum, flagged
    out.value = sum_at_min;
    out.terms_used = terms_at_min;
    out.converged = false;
    out.est_error = min_abs;
    return out;
  }

  out.value = acc.value();
  out.terms_used = used;
  if (rule_stop) {
    out.converged = all_inner_converged;
    out.est_error = last_abs;
  } else if (sol.terminated() && used == available) {
    // a terminated operator ladder makes the finite sum exact
    out.converged = all_inner_converged;
    out.est_error = 0.0;
  } else {
    out.converged = false;  // cached powers exhausted before the tail was small
    out.est_error = last_abs;
  }
  return out;
}

}  // namespace fracalc::opsolve
