// Copyright 2026 The tunnel_wkb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Special functions needed by the closed-form barrier actions: Gauss 2F1,
// Appell F1 (integral representation and its expansion near y1 = 1), both
// real branches of Lambert W, and Gamma-function ratios.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "tunnel_wkb/errors.hpp"
#include "tunnel_wkb/quadrature.hpp"

namespace tunnel_wkb {

struct EvalConfig {
  double rel_tol = 1e-12;
  int max_terms = 10'000;
  int quad_levels = 12;

  void validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("EvalConfig: rel_tol must be positive");
    if (max_terms < 1) throw DomainError("EvalConfig: max_terms must be >= 1");
    if (quad_levels < 1) throw DomainError("EvalConfig: quad_levels must be >= 1");
  }
};

namespace detail {

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

// 1/Gamma(x), zero at the poles.
inline double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / boost::math::tgamma(x);
}

inline double digamma(double x) { return boost::math::digamma(x); }

// Plain Maclaurin series; caller guarantees |x| is comfortably inside the unit disc
// or that the series terminates.
inline double hyp2f1_series(double a, double b, double c, double x, const EvalConfig& cfg) {
  double term = 1.0;
  double sum = 1.0;
  int small_in_a_row = 0;
  for (int n = 0; n < cfg.max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= 0.25 * cfg.rel_tol * std::abs(sum)) {
      if (++small_in_a_row == 2) return sum;
    } else {
      small_in_a_row = 0;
    }
  }
  throw ConvergenceError("gauss_2f1: series did not converge within max_terms");
}

// Connection formula to 1-x for non-integer c-a-b (A&S 15.3.6).
inline double hyp2f1_one_minus_x(double a, double b, double c, double x, const EvalConfig& cfg) {
  const double y = 1.0 - x;
  const double s = c - a - b;
  const double m_round = std::nearbyint(s);
  if (s == m_round) {
    const int m = static_cast<int>(m_round);
    if (m < 0) {
      // Euler transformation flips the sign of c-a-b.
      return std::pow(y, s) * hyp2f1_one_minus_x(c - a, c - b, c, x, cfg);
    }
    // Logarithmic case c = a + b + m, m >= 0 (A&S 15.3.10 / 15.3.11).
    const double gc = boost::math::tgamma(c);
    double finite = 0.0;
    if (m > 0) {
      const double pref = boost::math::tgamma(static_cast<double>(m)) * gc * rgamma(a + m) *
                          rgamma(b + m);
      double term = 1.0;
      for (int n = 0; n < m; ++n) {
        finite += term;
        if (n + 1 < m) term *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * y;
      }
      finite *= pref;
    }
    const double pref_log = (m % 2 == 0 ? -1.0 : 1.0) * gc * rgamma(a) * rgamma(b);
    double log_sum = 0.0;
    if (pref_log != 0.0) {
      const double log_y = std::log(y);
      double coef = 1.0 / boost::math::factorial<double>(static_cast<unsigned>(m));
      int small_in_a_row = 0;
      bool converged = false;
      for (int n = 0; n < cfg.max_terms; ++n) {
        const double bracket = log_y - digamma(n + 1.0) - digamma(n + m + 1.0) +
                               digamma(a + n + m) + digamma(b + n + m);
        const double term = coef * bracket;
        log_sum += term;
        if (std::abs(term) <= 0.25 * cfg.rel_tol * std::abs(log_sum) || coef == 0.0) {
          if (++small_in_a_row == 2) {
            converged = true;
            break;
          }
        } else {
          small_in_a_row = 0;
        }
        coef *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0)) * y;
      }
      if (!converged) throw ConvergenceError("gauss_2f1: log-case series did not converge");
      log_sum *= pref_log * std::pow(y, m);
    }
    return finite + log_sum;
  }

  const double gc = boost::math::tgamma(c);
  double result = 0.0;
  const double c1 = gc * boost::math::tgamma(s) * rgamma(c - a) * rgamma(c - b);
  if (c1 != 0.0) result += c1 * hyp2f1_series(a, b, 1.0 - s, y, cfg);
  const double c2 = gc * boost::math::tgamma(-s) * rgamma(a) * rgamma(b);
  if (c2 != 0.0) result += c2 * std::pow(y, s) * hyp2f1_series(c - a, c - b, 1.0 + s, y, cfg);
  return result;
}

// 2F1 for x in [0, 1).
inline double hyp2f1_unit_interval(double a, double b, double c, double x, const EvalConfig& cfg) {
  if (x <= 0.75) return hyp2f1_series(a, b, c, x, cfg);
  return hyp2f1_one_minus_x(a, b, c, x, cfg);
}

}  // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; x) for real x <= 1.
///
/// Negative arguments below -1/2 go through the Pfaff transformation, and
/// arguments above 3/4 through the connection formula in 1 - x (including the
/// logarithmic case of integer c - a - b), so accuracy holds up to x = 1.
inline double gauss_2f1(double a, double b, double c, double x, const EvalConfig& cfg = {}) {
  cfg.validate();
  if (detail::is_nonpositive_integer(c)) {
    throw DomainError("gauss_2f1: c must not be a non-positive integer");
  }
  if (!(x <= 1.0)) throw DomainError("gauss_2f1: argument must satisfy x <= 1");
  if (x == 0.0 || a == 0.0 || b == 0.0) return 1.0;
  if (x == 1.0) {
    if (!(c - a - b > 0.0)) {
      throw DivergenceError("gauss_2f1: series diverges at x = 1 unless c - a - b > 0");
    }
    return boost::math::tgamma(c) * boost::math::tgamma(c - a - b) * detail::rgamma(c - a) *
           detail::rgamma(c - b);
  }
  // Terminating series: exact polynomial.
  if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b)) {
    return detail::hyp2f1_series(a, b, c, x, cfg);
  }
  if (x < -0.5) {
    const double w = x / (x - 1.0);
    return std::pow(1.0 - x, -a) * detail::hyp2f1_unit_interval(a, c - b, c, w, cfg);
  }
  if (x < 0.0) return detail::hyp2f1_series(a, b, c, x, cfg);
  return detail::hyp2f1_unit_interval(a, b, c, x, cfg);
}

/// Appell F1(a; b1, b2; c; y1, y2) from its Euler integral representation,
/// valid for a > 0, c - a > 0, y1 < 1, y2 < 1.
///
/// The substitution t = sin^2(theta) absorbs the endpoint weight
/// t^(a-1) (1-t)^(c-a-1); the remaining integral over [0, pi/2] is refined by
/// level doubling until successive estimates agree to cfg.rel_tol.
inline double appell_f1(double a, double b1, double b2, double c, double y1, double y2,
                        const EvalConfig& cfg = {}) {
  cfg.validate();
  if (!(a > 0.0) || !(c - a > 0.0)) {
    throw DomainError("appell_f1: integral representation requires a > 0 and c - a > 0");
  }
  if (!(y1 < 1.0) || !(y2 < 1.0)) throw DomainError("appell_f1: requires y1 < 1 and y2 < 1");

  const double p = 2.0 * a - 1.0;
  const double q = 2.0 * (c - a) - 1.0;
  auto integrand = [&](double theta) {
    const double sn = std::sin(theta);
    const double cs = std::cos(theta);
    const double t = sn * sn;
    const double one_minus_t = cs * cs;
    // 1 - y t written so that y -> 1, t -> 1 does not cancel.
    const double f1 = one_minus_t + (1.0 - y1) * t;
    const double f2 = one_minus_t + (1.0 - y2) * t;
    double v = 2.0 * std::pow(sn, p) * std::pow(cs, q);
    if (b1 != 0.0) v *= std::pow(f1, -b1);
    if (b2 != 0.0) v *= std::pow(f2, -b2);
    return v;
  };
  quadrature::Options opt;
  opt.rel_tol = cfg.rel_tol;
  opt.max_levels = cfg.quad_levels;
  const double integral =
      quadrature::tanh_sinh(integrand, 0.0, 0.5 * std::numbers::pi, opt).value;
  const double norm = std::exp(boost::math::lgamma(c) - boost::math::lgamma(a) -
                               boost::math::lgamma(c - a));
  return norm * integral;
}

/// Two-term expansion of F1(3/2; -1/2, -1/2; 3; y1, y2) about y1 = 1.
///
/// For y2 below 0.05 the (y1 - 1) coefficient is taken from its hypergeometric
/// form -(48/5) 2F1(5/2, -1/2; 7/2; y2), which equals the elementary form but
/// does not suffer the 1/y2^2 cancellation.
inline double appell_f1_near_unity(double y1, double y2, const EvalConfig& cfg = {}) {
  if (!(y2 > 0.0 && y2 < 1.0)) throw DomainError("appell_f1_near_unity: requires 0 < y2 < 1");
  const double pi = std::numbers::pi;
  const double leading = 32.0 / (15.0 * pi) * gauss_2f1(-0.5, 1.5, 3.5, y2, cfg);
  double bracket;
  if (y2 < 0.05) {
    bracket = -9.6 * gauss_2f1(2.5, -0.5, 3.5, y2, cfg);
  } else {
    bracket = std::sqrt(1.0 - y2) * (2.0 / y2 + 3.0 / (y2 * y2) - 8.0) -
              3.0 * std::asin(std::sqrt(y2)) / std::pow(y2, 2.5);
  }
  return leading + bracket * (y1 - 1.0) / (6.0 * pi);
}

namespace detail {

inline constexpr double kInvE = 0.36787944117144232159552377016146;

// Halley iteration on w e^w = x. Converged once the correction stops shrinking
// the residual or reaches rounding level.
inline double lambert_halley(double x, double w) {
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (f == 0.0) return w;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) return w;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    const double next = w - step;
    if (!std::isfinite(next)) return w;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(next))) {
      return next;
    }
    w = next;
  }
  return w;
}

// sqrt(2 (e x + 1)), the branch-point coordinate; clamps rounding below -1/e.
inline double lambert_branch_p(double x) {
  const double r = 2.0 * (std::numbers::e * x + 1.0);
  return r > 0.0 ? std::sqrt(r) : 0.0;
}

}  // namespace detail

/// Principal branch W0 of the Lambert function, x >= -1/e.
inline double lambert_w0(double x) {
  if (!(x >= -detail::kInvE * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) ||
      !std::isfinite(x)) {
    throw DomainError("lambert_w0: requires finite x >= -1/e");
  }
  if (x == 0.0) return 0.0;
  double w;
  const double p = detail::lambert_branch_p(x);
  if (p < 1.0) {
    if (p == 0.0) return -1.0;
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (std::abs(x) < 0.25) {
    w = x * (1.0 - x * (1.0 - 1.5 * x));
  } else if (x < std::numbers::e) {
    w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  return detail::lambert_halley(x, w);
}

/// Lower branch W_{-1} of the Lambert function, -1/e <= x < 0.
inline double lambert_wm1(double x) {
  if (!(x >= -detail::kInvE * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) ||
      !(x < 0.0)) {
    throw DomainError("lambert_wm1: requires -1/e <= x < 0");
  }
  double w;
  const double p = detail::lambert_branch_p(x);
  if (p < 1.0) {
    if (p == 0.0) return -1.0;
    w = -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  return detail::lambert_halley(x, w);
}

/// Gamma(p) / Gamma(q) through log-Gamma, for p, q > 0.
inline double gamma_ratio(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw DomainError("gamma_ratio: arguments must be positive");
  if (p == q) return 1.0;
  return std::exp(boost::math::lgamma(p) - boost::math::lgamma(q));
}

}  // namespace tunnel_wkb
