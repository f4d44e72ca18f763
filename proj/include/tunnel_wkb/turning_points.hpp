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

// Barrier turning points: closed-form roots for the Coulomb (quadratic),
// inverse-square-root (cubic) and logarithmic (Lambert W) cases, and a
// bisection fallback on the physical potential for any supported spec.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "tunnel_wkb/errors.hpp"
#include "tunnel_wkb/potentials.hpp"
#include "tunnel_wkb/special_functions.hpp"

namespace tunnel_wkb {

enum class ScaledCase { Coulomb, InvSqrt, Log };

/// Dimensionless field parameter of one of the three closed-form cases.
struct ScaledField {
  ScaledCase kind = ScaledCase::Coulomb;
  double epsilon = 0.0;

  void validate() const {
    if (!(epsilon > 0.0)) throw DomainError("scaled field: epsilon must be positive");
    if (kind == ScaledCase::Coulomb && !(epsilon < 0.25)) {
      throw DomainError("Coulomb case requires epsilon < 1/4 (barrier suppressed)");
    }
    if (kind == ScaledCase::InvSqrt && !(epsilon < 4.0 / 27.0)) {
      throw DomainError("inverse-sqrt case requires epsilon < 4/27 (three real roots)");
    }
    if (kind == ScaledCase::Log && !(epsilon < detail::kInvE)) {
      throw DomainError("logarithmic case requires epsilon < 1/e");
    }
  }
};

/// epsilon = F / E^2 for s = 1 (equals 4 n^4 F on E_n = -1/(2 n^2)).
inline double coulomb_epsilon(double E, double F) { return F / (E * E); }
/// epsilon = F / |E|^3 for s = 1/2.
inline double invsqrt_epsilon(double E, double F) { return F / std::pow(std::abs(E), 3.0); }
/// epsilon = a F e^(E/V0) / V0 for the logarithmic potential.
inline double log_epsilon(double V0, double a, double E, double F) {
  return a * F * std::exp(E / V0) / V0;
}
/// epsilon = (n - 1/4) F sqrt(2 pi) / V0^(3/2); equals log_epsilon on the WKB spectrum.
inline double log_epsilon_from_n(double V0, int n, double F) {
  return (n - 0.25) * F * std::sqrt(2.0 * std::numbers::pi) / std::pow(V0, 1.5);
}

struct RootSet {
  std::vector<double> roots;  // ascending, dimensionless (z-space)
  double x_left = std::numeric_limits<double>::quiet_NaN();
  double x_right = std::numeric_limits<double>::quiet_NaN();
};

/// Roots z1 < z2 of z - 1 - eps z^2 = 0. Physical points x = z/|E| when E is given.
inline RootSet coulomb_roots(double epsilon, std::optional<double> E = std::nullopt) {
  ScaledField{ScaledCase::Coulomb, epsilon}.validate();
  const double d = std::sqrt(1.0 - 4.0 * epsilon);
  // z1 in rationalized form avoids cancellation at small epsilon.
  const double z1 = 2.0 / (1.0 + d);
  const double z2 = (1.0 + d) / (2.0 * epsilon);
  RootSet r{{z1, z2}};
  if (E) {
    r.x_left = z1 / std::abs(*E);
    r.x_right = z2 / std::abs(*E);
  }
  return r;
}

/// Three real roots z1 < 1 < z2 < z3 of z - 1 - eps z^3 = 0 (trigonometric
/// Cardano form plus Newton polish). The barrier spans [z2, z3]; physical
/// points are x = z^2 / E^2 when E is given.
inline RootSet cubic_roots_cardano(double epsilon, std::optional<double> E = std::nullopt) {
  ScaledField{ScaledCase::InvSqrt, epsilon}.validate();
  // Depressed cubic z^3 + p z + q with p = -1/eps, q = 1/eps.
  const double m = 2.0 / std::sqrt(3.0 * epsilon);
  // cos(3 phi) = (3 q / 2 p) sqrt(-3/p) = -(3/2) sqrt(3 eps)
  const double arg = std::clamp(-1.5 * std::sqrt(3.0 * epsilon), -1.0, 1.0);
  const double phi = std::acos(arg) / 3.0;
  std::array<double, 3> z{};
  for (int k = 0; k < 3; ++k) z[k] = m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
  std::sort(z.begin(), z.end());
  // The middle root from Vieta's product z1 z2 z3 = -1/eps is free of cancellation.
  z[1] = -1.0 / (epsilon * z[0] * z[2]);
  for (double& r : z) {
    for (int it = 0; it < 3; ++it) {
      const double f = r - 1.0 - epsilon * r * r * r;
      const double df = 1.0 - 3.0 * epsilon * r * r;
      if (df == 0.0) break;
      const double step = f / df;
      r -= step;
      if (std::abs(step) <= std::numeric_limits<double>::epsilon() * std::abs(r)) break;
    }
  }
  if (!(z[0] < 1.0 && 1.0 < z[1] && z[1] < z[2])) {
    throw DomainError("cubic_roots_cardano: roots not in the three-real-root ordering");
  }
  RootSet r{{z[0], z[1], z[2]}};
  if (E) {
    const double e2 = (*E) * (*E);
    r.x_left = z[1] * z[1] / e2;
    r.x_right = z[2] * z[2] / e2;
  }
  return r;
}

/// z_L = -W0(-eps), z_R = -W_{-1}(-eps), the roots of z = eps e^z. With V0 and
/// F given, physical points are x = V0 eps e^z / F.
inline RootSet log_turning_points(double epsilon, std::optional<double> V0 = std::nullopt,
                                  std::optional<double> F = std::nullopt) {
  if (!(epsilon > 0.0)) throw DomainError("log_turning_points: epsilon must be positive");
  if (epsilon > detail::kInvE) throw DomainError("log_turning_points: requires epsilon < 1/e");
  const double zl = -lambert_w0(-epsilon);
  const double zr = -lambert_wm1(-epsilon);
  RootSet r{{zl, zr}};
  if (V0 && F) {
    r.x_left = (*V0) * epsilon * std::exp(zl) / (*F);
    r.x_right = (*V0) * epsilon * std::exp(zr) / (*F);
  }
  return r;
}

namespace detail {

// Bisection to the last representable bit; g(lo) and g(hi) must differ in sign.
template <class G>
double bisect(G&& g, double lo, double hi) {
  double glo = g(lo);
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Barrier turning points of V(x) - F x at energy E, by bisection on
/// V(x) - F x - E. Roots are returned in physical x.
inline RootSet generic_turning_points(const PotentialSpec& spec, double E, double F) {
  spec.validate();
  if (!(F > 0.0)) throw DomainError("generic_turning_points: requires F > 0");
  const double x_top = barrier_top(spec, F);
  auto g = [&](double x) { return potential_total(spec, F, x) - E; };
  if (!(g(x_top) > 0.0)) {
    throw NoBarrierError("generic_turning_points: barrier maximum lies below the energy");
  }
  double lo = x_top;
  for (int it = 0; g(lo) >= 0.0; ++it) {
    lo *= 0.5;
    if (it > 2000 || lo == 0.0) throw BracketError("generic_turning_points: no left bracket");
  }
  double hi = x_top;
  for (int it = 0; g(hi) >= 0.0; ++it) {
    hi *= 2.0;
    if (it > 2000 || !std::isfinite(hi)) {
      throw BracketError("generic_turning_points: no right bracket");
    }
  }
  const double xl = detail::bisect(g, lo, x_top);
  const double xr = detail::bisect(g, x_top, hi);
  RootSet r{{xl, xr}};
  r.x_left = xl;
  r.x_right = xr;
  return r;
}

}  // namespace tunnel_wkb
