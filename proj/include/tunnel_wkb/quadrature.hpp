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

// Double-exponential (tanh-sinh) quadrature on a finite interval.
//
// Each level halves the step of the underlying trapezoid rule and reuses the
// previous nodes, so successive estimates are nested. The rule tolerates
// integrable algebraic and logarithmic singularities at either endpoint; the
// integrand is never evaluated at a or b.

#include <cmath>
#include <numbers>
#include <string>

#include "tunnel_wkb/errors.hpp"

namespace tunnel_wkb::quadrature {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;  // |I_k - I_{k-1}| at the accepting level
  int levels = 0;
};

struct Options {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_levels = 12;
  int min_levels = 3;
};

namespace detail {

inline constexpr double kTMax = 4.0;
inline constexpr double kInitialStep = 0.5;

// Adds f(x(t)) w(t) for t and -t; t = 0 is handled by the caller.
template <class Fn>
double node_pair(Fn& f, double a, double b, double half, double t) {
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double cu = std::cosh(u);
  const double w = half * 0.5 * std::numbers::pi * std::cosh(t) / (cu * cu);
  if (w == 0.0) return 0.0;
  const double d = half * 2.0 / (1.0 + std::exp(2.0 * u));
  double acc = 0.0;
  for (const double x : {a + d, b - d}) {
    if (!(x > a && x < b)) continue;
    const double fx = f(x);
    if (!std::isfinite(fx)) {
      throw ConvergenceError("tanh_sinh: non-finite integrand at x = " + std::to_string(x));
    }
    acc += fx;
  }
  return acc * w;
}

}  // namespace detail

template <class Fn>
Result tanh_sinh(Fn&& f, double a, double b, const Options& opt = {}) {
  if (!(b > a)) {
    if (a == b) return {0.0, 0.0, 0};
    Result r = tanh_sinh(f, b, a, opt);
    r.value = -r.value;
    return r;
  }
  const double half = 0.5 * (b - a);
  const double mid = a + half;

  double h = detail::kInitialStep;
  double sum = half * 0.5 * std::numbers::pi * f(mid);
  for (double t = h; t <= detail::kTMax; t += h) sum += detail::node_pair(f, a, b, half, t);
  double estimate = h * sum;

  for (int level = 1; level <= opt.max_levels; ++level) {
    h *= 0.5;
    double added = 0.0;
    for (double t = h; t <= detail::kTMax; t += 2.0 * h) {
      added += detail::node_pair(f, a, b, half, t);
    }
    sum += added;
    const double next = h * sum;
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (level >= opt.min_levels &&
        (diff <= opt.rel_tol * std::abs(next) || diff <= opt.abs_tol)) {
      return {next, diff, level};
    }
  }
  throw ConvergenceError("tanh_sinh: no convergence within " + std::to_string(opt.max_levels) +
                         " levels");
}

}  // namespace tunnel_wkb::quadrature
