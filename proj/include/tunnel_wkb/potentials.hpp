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

// Confining potentials, the total potential in a static field, and the
// classical / under-barrier momenta. Units: m = hbar = e = 1; the power-law
// depth V0 is fixed to 1.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "tunnel_wkb/errors.hpp"

namespace tunnel_wkb {

enum class PotentialKind { PowerLaw, Logarithmic };

inline std::string_view to_string(PotentialKind k) {
  return k == PotentialKind::PowerLaw ? "powerlaw" : "log";
}

/// V(x) = -1/x^s (PowerLaw, 0 < s < 2) or V(x) = V0 ln(x/a) (Logarithmic).
struct PotentialSpec {
  PotentialKind kind = PotentialKind::PowerLaw;
  double s = 1.0;
  double V0 = 1.0;
  double a = 1.0;

  static PotentialSpec power_law(double s) {
    PotentialSpec p{PotentialKind::PowerLaw, s, 1.0, 1.0};
    p.validate();
    return p;
  }
  static PotentialSpec logarithmic(double V0, double a) {
    PotentialSpec p{PotentialKind::Logarithmic, 0.0, V0, a};
    p.validate();
    return p;
  }

  void validate() const {
    if (kind == PotentialKind::PowerLaw) {
      // At s = 2 the particle falls to the origin and no bound states exist.
      if (!(s > 0.0 && s < 2.0)) throw DomainError("power-law exponent must satisfy 0 < s < 2");
    } else {
      if (!(V0 > 0.0)) throw DomainError("logarithmic potential requires V0 > 0");
      if (!(a > 0.0)) throw DomainError("logarithmic potential requires a > 0");
    }
  }
};

enum class FieldMode { Static, LowFrequencyAC };

/// Field strength F >= 0. In LowFrequencyAC mode F is the peak amplitude; the
/// frequency drops out of the cycle-averaged rate and is not stored.
struct FieldSpec {
  double F = 0.0;
  FieldMode mode = FieldMode::Static;

  void validate() const {
    if (!(F >= 0.0)) throw DomainError("field strength must be non-negative");
  }
};

/// Unperturbed potential V(x).
inline double potential(const PotentialSpec& spec, double x) {
  if (!(x > 0.0)) throw DomainError("potential: requires x > 0");
  if (spec.kind == PotentialKind::PowerLaw) return -std::pow(x, -spec.s);
  return spec.V0 * std::log(x / spec.a);
}

/// V(x) - F x.
inline double potential_total(const PotentialSpec& spec, double F, double x) {
  return potential(spec, x) - F * x;
}

/// Position of the barrier top of V(x) - F x; F must be positive.
inline double barrier_top(const PotentialSpec& spec, double F) {
  if (!(F > 0.0)) throw DomainError("barrier_top: requires F > 0");
  if (spec.kind == PotentialKind::PowerLaw) return std::pow(spec.s / F, 1.0 / (spec.s + 1.0));
  return spec.V0 / F;
}

namespace detail {

inline constexpr double kRadicandTolerance = 1e-12;

inline double checked_sqrt2(double radicand, double scale, const char* who) {
  if (radicand < 0.0) {
    if (radicand < -kRadicandTolerance * std::max(1.0, std::abs(scale))) {
      throw DomainError(std::string(who) + ": negative radicand " + std::to_string(radicand));
    }
    return 0.0;
  }
  return std::sqrt(2.0 * radicand);
}

}  // namespace detail

/// p0(x) = sqrt(2 (E - V(x))) in the classically allowed region, no field.
inline double momentum_classical(const PotentialSpec& spec, double E, double x) {
  return detail::checked_sqrt2(E - potential(spec, x), E, "momentum_classical");
}

/// |p(x)| = sqrt(2 (V(x) - F x - E)) under the barrier.
inline double momentum_barrier(const PotentialSpec& spec, double E, double F, double x) {
  return detail::checked_sqrt2(potential_total(spec, F, x) - E, E, "momentum_barrier");
}

struct WeakFieldCheck {
  double ratio = 0.0;
  bool valid = false;
};

/// Weak-field measure F / |E|^(1+1/s) for the power-law case.
inline WeakFieldCheck weak_field_check(const PotentialSpec& spec, double E, double F,
                                       double threshold = 0.1) {
  if (spec.kind != PotentialKind::PowerLaw) {
    throw UnsupportedError(
        "weak_field_check: logarithmic potential uses its own small parameter epsilon");
  }
  if (!(E < 0.0)) throw DomainError("weak_field_check: requires E < 0");
  const double ratio = F / std::pow(-E, 1.0 + 1.0 / spec.s);
  return {ratio, ratio < threshold};
}

}  // namespace tunnel_wkb
