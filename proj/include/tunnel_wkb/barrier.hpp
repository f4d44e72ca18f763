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

// Barrier action exponent -2 integral_{x_L}^{x_R} |p(x)| dx by three routes:
// direct quadrature between numerically exact turning points (the oracle),
// exact closed forms in hypergeometric functions, and asymptotic expansions
// in the small field parameter.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tunnel_wkb/errors.hpp"
#include "tunnel_wkb/potentials.hpp"
#include "tunnel_wkb/quadrature.hpp"
#include "tunnel_wkb/special_functions.hpp"
#include "tunnel_wkb/turning_points.hpp"

namespace tunnel_wkb {

enum class ActionMethod { Oracle, ExactClosedForm, Asymptotic };

struct ActionTerm {
  std::string name;
  double value = 0.0;
};

struct ActionResult {
  double value = 0.0;  // always <= 0
  ActionMethod method = ActionMethod::Oracle;
  int order = 0;  // number of asymptotic terms kept; 0 otherwise
  double epsilon = 0.0;
  std::vector<ActionTerm> terms;
};

/// Which of the two transposition-equivalent closed forms to evaluate.
/// NearUnity swaps the outer roots so that the special-function argument
/// lies in [0, 1) close to 1; Original keeps the untransposed roots.
enum class ClosedForm { NearUnity, Original };

struct OracleOptions {
  double rel_tol = 1e-10;
  int max_levels = 14;
};

/// -2 integral |p| dx between the exact turning points of V(x) - F x at
/// energy E. Each half of the barrier is integrated after x = x_turn +/- u^2,
/// which removes the square-root zero of |p| at the turning point.
inline ActionResult action_oracle(const PotentialSpec& spec, double E, double F,
                                  const OracleOptions& opt = {}) {
  spec.validate();
  if (!(F > 0.0)) throw DomainError("action_oracle: requires F > 0");
  const double x_top = barrier_top(spec, F);
  const double gap = potential_total(spec, F, x_top) - E;
  ActionResult res;
  res.method = ActionMethod::Oracle;
  if (std::abs(gap) <= 1e-14 * std::max(1.0, std::abs(E))) return res;  // coincident turning points
  const RootSet roots = generic_turning_points(spec, E, F);
  const double xl = roots.x_left;
  const double xr = roots.x_right;

  quadrature::Options qo;
  qo.rel_tol = opt.rel_tol;
  qo.max_levels = opt.max_levels;
  // Floor for nearly coincident turning points, where the radicand is
  // dominated by rounding in V(x) - F x - E.
  qo.abs_tol = 1e-13 * (xr - xl) * std::sqrt(std::max(1.0, std::abs(E)));
  auto left = [&](double u) { return 2.0 * u * momentum_barrier(spec, E, F, xl + u * u); };
  auto right = [&](double u) { return 2.0 * u * momentum_barrier(spec, E, F, xr - u * u); };
  const double il = quadrature::tanh_sinh(left, 0.0, std::sqrt(x_top - xl), qo).value;
  const double ir = quadrature::tanh_sinh(right, 0.0, std::sqrt(xr - x_top), qo).value;
  res.value = -2.0 * (il + ir);
  res.terms = {{"left_of_top", -2.0 * il}, {"right_of_top", -2.0 * ir}};
  return res;
}

/// f(s) = integral_1^inf dy / ((sqrt(1 - y^-s) + 1) y^s) on 1 < s <= 2.
///
/// [1, 2] uses y = 1 + u^2; the tail y >= 2 uses y = 1/t and then
/// t = v^(1/(s-1)), which turns the t^(s-2) endpoint growth into a constant.
inline double f_of_s(double s, double rel_tol = 1e-12) {
  if (!(s > 1.0)) throw DomainError("f_of_s: integral diverges for s <= 1");
  if (!(s <= 2.0)) throw DomainError("f_of_s: defined for 1 < s <= 2");
  quadrature::Options qo;
  qo.rel_tol = rel_tol;
  qo.max_levels = 14;
  auto head = [s](double u) {
    const double l = std::log1p(u * u);
    const double root = std::sqrt(-std::expm1(-s * l));  // sqrt(1 - y^-s)
    return 2.0 * u * std::exp(-s * l) / (root + 1.0);
  };
  const double p = s / (s - 1.0);
  auto tail = [p](double v) { return 1.0 / (std::sqrt(1.0 - std::pow(v, p)) + 1.0); };
  const double h = quadrature::tanh_sinh(head, 0.0, 1.0, qo).value;
  const double t = quadrature::tanh_sinh(tail, 0.0, std::pow(2.0, 1.0 - s), qo).value / (s - 1.0);
  return h + t;
}

/// Weak-field decomposition for 1 < s < 2:
///   I_s1 = -2 (2|E|)^(3/2) / (3F)                (field-only leading term)
///   I_s2 = 2 sqrt(2) / |E|^(1/s - 1/2)           (allowed-region offset, field dropped)
///   I_s3 = 2 sqrt(2) f(s) / |E|^(1/s - 1/2)      (binding-potential correction)
inline ActionResult action_general_s(double s, double E, double F,
                                     double weak_field_threshold = 0.1) {
  if (!(s > 1.0 && s < 2.0)) throw DomainError("action_general_s: requires 1 < s < 2");
  if (!(F > 0.0)) throw DomainError("action_general_s: requires F > 0");
  const auto wf = weak_field_check(PotentialSpec::power_law(s), E, F, weak_field_threshold);
  if (!wf.valid) {
    throw ApplicabilityError("action_general_s: field not weak, F/|E|^(1+1/s) = " +
                             std::to_string(wf.ratio));
  }
  const double ae = -E;
  const double i1 = -2.0 * std::pow(2.0 * ae, 1.5) / (3.0 * F);
  const double scale = 2.0 * std::numbers::sqrt2 / std::pow(ae, 1.0 / s - 0.5);
  const double i2 = scale;
  const double i3 = scale * f_of_s(s);
  ActionResult r;
  r.value = i1 + i2 + i3;
  r.method = ActionMethod::Asymptotic;
  r.order = 3;
  r.epsilon = wf.ratio;
  r.terms = {{"I_s1", i1}, {"I_s2", i2}, {"I_s3", i3}};
  return r;
}

/// Exact Coulomb (s = 1) action through 2F1(1/2, 3/2; 3; .), eps = F/E^2.
inline ActionResult action_coulomb_exact(double epsilon, double E,
                                         ClosedForm form = ClosedForm::NearUnity,
                                         const EvalConfig& cfg = {}) {
  if (!(E < 0.0)) throw DomainError("action_coulomb_exact: requires E < 0");
  const RootSet r = coulomb_roots(epsilon);
  const double z1 = r.roots[0];
  const double z2 = r.roots[1];
  const double pref = -(2.0 * std::numbers::sqrt2 / std::sqrt(-E)) * (z2 - z1) * (z2 - z1) *
                      std::sqrt(epsilon) * std::numbers::pi / 8.0;
  double value;
  if (form == ClosedForm::NearUnity) {
    value = pref / std::sqrt(z2) * gauss_2f1(0.5, 1.5, 3.0, 1.0 - z1 / z2, cfg);
  } else {
    value = pref / std::sqrt(z1) * gauss_2f1(0.5, 1.5, 3.0, (z1 - z2) / z1, cfg);
  }
  ActionResult res;
  res.value = value;
  res.method = ActionMethod::ExactClosedForm;
  res.epsilon = epsilon;
  return res;
}

/// Small-eps Coulomb expansion -4n (2/(3 eps) + ln(eps)/2 - (ln 16 + 1)/2),
/// truncated to the first `order` terms (1..3).
inline ActionResult action_coulomb_asymptotic(double epsilon, int n, int order = 3) {
  if (!(epsilon > 0.0)) throw DomainError("action_coulomb_asymptotic: epsilon must be positive");
  if (n < 1) throw DomainError("action_coulomb_asymptotic: n must be >= 1");
  if (order < 1 || order > 3) throw DomainError("action_coulomb_asymptotic: order must be 1..3");
  const double t[3] = {2.0 / (3.0 * epsilon), 0.5 * std::log(epsilon),
                       -0.5 * (std::log(16.0) + 1.0)};
  ActionResult res;
  res.method = ActionMethod::Asymptotic;
  res.order = order;
  res.epsilon = epsilon;
  for (int k = 0; k < order; ++k) {
    res.value += -4.0 * n * t[k];
    res.terms.push_back({"term" + std::to_string(k + 1), -4.0 * n * t[k]});
  }
  return res;
}

/// Exact inverse-square-root (s = 1/2) action through Appell
/// F1(3/2; -1/2, -1/2; 3; y1, y2), eps = F/|E|^3.
inline ActionResult action_invsqrt_exact(double epsilon, double F,
                                         ClosedForm form = ClosedForm::NearUnity,
                                         const EvalConfig& cfg = {}) {
  if (!(F > 0.0)) throw DomainError("action_invsqrt_exact: requires F > 0");
  const RootSet r = cubic_roots_cardano(epsilon);
  const double z1 = r.roots[0];
  const double z2 = r.roots[1];
  const double z3 = r.roots[2];
  const double pref = -std::numbers::pi * std::numbers::sqrt2 * epsilon / (2.0 * std::sqrt(F));
  double value;
  if (form == ClosedForm::NearUnity) {
    value = pref * (z3 - z2) * (z3 - z2) * std::sqrt(z3 * (z3 - z1)) *
            appell_f1(1.5, -0.5, -0.5, 3.0, 1.0 - z2 / z3, (z2 - z3) / (z1 - z3), cfg);
  } else {
    value = pref * (z2 - z3) * (z2 - z3) * std::sqrt(z2 * (z2 - z1)) *
            appell_f1(1.5, -0.5, -0.5, 3.0, 1.0 - z3 / z2, (z3 - z2) / (z1 - z2), cfg);
  }
  ActionResult res;
  res.value = value;
  res.method = ActionMethod::ExactClosedForm;
  res.epsilon = epsilon;
  return res;
}

/// Small-eps inverse-square-root expansion
///   -(4 sqrt(2) eps / sqrt(F)) (1/(3 eps^(3/2)) - pi/(4 eps) + (2 - 3 pi)/(48 sqrt(eps)))
/// truncated to `order` terms (1..3).
inline ActionResult action_invsqrt_asymptotic(double epsilon, double F, int order = 3) {
  if (!(epsilon > 0.0) || !(F > 0.0)) {
    throw DomainError("action_invsqrt_asymptotic: epsilon and F must be positive");
  }
  if (order < 1 || order > 3) throw DomainError("action_invsqrt_asymptotic: order must be 1..3");
  const double pi = std::numbers::pi;
  const double pref = -4.0 * std::numbers::sqrt2 * epsilon / std::sqrt(F);
  const double t[3] = {1.0 / (3.0 * std::pow(epsilon, 1.5)), -pi / (4.0 * epsilon),
                       (2.0 - 3.0 * pi) / (48.0 * std::sqrt(epsilon))};
  ActionResult res;
  res.method = ActionMethod::Asymptotic;
  res.order = order;
  res.epsilon = epsilon;
  for (int k = 0; k < order; ++k) {
    res.value += pref * t[k];
    res.terms.push_back({"term" + std::to_string(k + 1), pref * t[k]});
  }
  return res;
}

/// Leading logarithmic-potential exponent -(4 sqrt(2) V0^(3/2) / (3F)) ln(1/eps)^(3/2),
/// the contribution of the neighbourhood of the outer turning point.
inline ActionResult action_log_leading_from_epsilon(double V0, double epsilon, double F) {
  if (!(V0 > 0.0) || !(F > 0.0)) throw DomainError("action_log_leading: V0 and F must be positive");
  if (!(epsilon > 0.0 && epsilon < detail::kInvE)) {
    throw DomainError("action_log_leading: requires 0 < epsilon < 1/e");
  }
  ActionResult res;
  res.value = -4.0 * std::numbers::sqrt2 * std::pow(V0, 1.5) / (3.0 * F) *
              std::pow(std::log(1.0 / epsilon), 1.5);
  res.method = ActionMethod::Asymptotic;
  res.order = 1;
  res.epsilon = epsilon;
  return res;
}

inline ActionResult action_log_leading(double V0, int n, double F) {
  if (n < 1) throw DomainError("action_log_leading: n must be >= 1");
  return action_log_leading_from_epsilon(V0, log_epsilon_from_n(V0, n, F), F);
}

/// Improved logarithmic-potential exponent with both Lambert-W turning points:
///   -(2 (2 V0 z_R)^(3/2) / (3F)) (1 + (6/z_R)(1 - coth(sqrt(1 - z_L/z_R))))
inline ActionResult action_log_improved_from_epsilon(double V0, double epsilon, double F) {
  if (!(V0 > 0.0) || !(F > 0.0)) {
    throw DomainError("action_log_improved: V0 and F must be positive");
  }
  const RootSet r = log_turning_points(epsilon);
  const double zl = r.roots[0];
  const double zr = r.roots[1];
  const double w = std::sqrt(1.0 - zl / zr);
  ActionResult res;
  res.value = -2.0 * std::pow(2.0 * V0 * zr, 1.5) / (3.0 * F) *
              (1.0 + 6.0 / zr * (1.0 - 1.0 / std::tanh(w)));
  res.method = ActionMethod::Asymptotic;
  res.order = 2;
  res.epsilon = epsilon;
  return res;
}

inline ActionResult action_log_improved(double V0, double a, double E, double F) {
  if (!(a > 0.0)) throw DomainError("action_log_improved: requires a > 0");
  return action_log_improved_from_epsilon(V0, log_epsilon(V0, a, E, F), F);
}

}  // namespace tunnel_wkb
