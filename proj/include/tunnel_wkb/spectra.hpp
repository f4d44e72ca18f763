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

// WKB bound states: energies (closed forms and Bohr-Sommerfeld quantization
// with a Maslov index) and the normalization constant A^2 of the
// classically-allowed wave function.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "tunnel_wkb/errors.hpp"
#include "tunnel_wkb/potentials.hpp"
#include "tunnel_wkb/quadrature.hpp"
#include "tunnel_wkb/special_functions.hpp"

namespace tunnel_wkb {

struct BoundState {
  int n = 0;        // 0 when the state was built from an explicit energy
  double mu = 0.0;  // Maslov index
  double E = 0.0;
  double x_inner = 0.0;  // inner turning point of the field-free potential
  double A_sq = 0.0;
};

/// Inner turning point of the unperturbed potential: |E|^(-1/s) or a e^(E/V0).
inline double inner_turning_point(const PotentialSpec& spec, double E) {
  if (spec.kind == PotentialKind::PowerLaw) {
    if (!(E < 0.0)) throw DomainError("power-law bound states require E < 0");
    return std::pow(-E, -1.0 / spec.s);
  }
  return spec.a * std::exp(E / spec.V0);
}

/// Maslov index that reproduces the known closed-form spectra (s = 1, s = 1/2,
/// logarithmic). Empty for other exponents.
inline std::optional<double> default_maslov(const PotentialSpec& spec) {
  if (spec.kind == PotentialKind::Logarithmic) return 0.25;
  if (spec.s == 1.0) return 0.0;
  if (spec.s == 0.5) return 1.0 / 6.0;
  return std::nullopt;
}

inline double energy_closed(const PotentialSpec& spec, int n) {
  if (n < 1) throw DomainError("energy_closed: quantum number must be >= 1");
  if (spec.kind == PotentialKind::Logarithmic) {
    return spec.V0 *
           std::log((n - 0.25) / spec.a * std::sqrt(2.0 * std::numbers::pi / spec.V0));
  }
  if (spec.s == 1.0) return -0.5 / (static_cast<double>(n) * n);
  if (spec.s == 0.5) return -0.5 * std::pow(n - 1.0 / 6.0, -2.0 / 3.0);
  throw UnsupportedError("energy_closed: no closed form for s = " + std::to_string(spec.s) +
                         "; use energy_quantize with an explicit Maslov index");
}

/// Classical action over the allowed region, integral_0^{x_inner} p0(x) dx.
inline double classical_action(const PotentialSpec& spec, double E, double rel_tol = 1e-13) {
  const double x_in = inner_turning_point(spec, E);
  quadrature::Options opt;
  opt.rel_tol = rel_tol;
  opt.max_levels = 14;
  if (spec.kind == PotentialKind::PowerLaw) {
    // x = x_in v^k with k = 2/(2-s) cancels the x^(-s/2) growth of p0 at the origin.
    const double k = 2.0 / (2.0 - spec.s);
    // Integrand limit at v -> 0, used once v^k underflows.
    const double at_origin = std::numbers::sqrt2 * k * std::pow(x_in, 1.0 - 0.5 * spec.s);
    auto f = [&](double v) {
      const double x = x_in * std::pow(v, k);
      if (!(x > 0.0)) return at_origin;
      const double val = momentum_classical(spec, E, x) * k * x_in * std::pow(v, k - 1.0);
      return std::isfinite(val) ? val : at_origin;
    };
    return quadrature::tanh_sinh(f, 0.0, 1.0, opt).value;
  }
  auto f = [&](double x) { return momentum_classical(spec, E, x); };
  return quadrature::tanh_sinh(f, 0.0, x_in, opt).value;
}

/// Energy solving integral_0^{x_inner} p0 dx = pi (n - mu), by geometric
/// bracketing and a bracketed root search. The action grows monotonically
/// with E in every supported potential.
inline double energy_quantize(const PotentialSpec& spec, int n, double mu) {
  spec.validate();
  if (n < 1) throw DomainError("energy_quantize: quantum number must be >= 1");
  if (!(mu >= 0.0 && mu < 1.0)) throw DomainError("energy_quantize: Maslov index must be in [0, 1)");
  const double target = std::numbers::pi * (n - mu);

  // Search over a positive variable: |E| for the power law, x_inner for the
  // logarithmic potential.
  const bool power_law = spec.kind == PotentialKind::PowerLaw;
  auto to_energy = [&](double v) { return power_law ? -v : spec.V0 * std::log(v / spec.a); };
  auto g = [&](double v) { return classical_action(spec, to_energy(v)) - target; };

  std::uintmax_t max_iter = 300;
  const boost::math::tools::eps_tolerance<double> tol(48);
  std::pair<double, double> bracket;
  try {
    const double guess = power_law ? 1.0 : spec.a;
    // Action falls with |E| (power law) and rises with x_inner (logarithmic).
    bracket = boost::math::tools::bracket_and_solve_root(g, guess, 2.0, !power_law, tol, max_iter);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw BracketError(std::string("energy_quantize: bracketing failed: ") + e.what());
  }
  if (max_iter >= 300) throw ConvergenceError("energy_quantize: root search did not converge");
  return to_energy(0.5 * (bracket.first + bracket.second));
}

/// Normalization constant A^2 fixed by A^2 integral_0^{x_inner} dx / (2 p0) = 1.
inline double normalization(const PotentialSpec& spec, const BoundState& state) {
  if (spec.kind == PotentialKind::PowerLaw) {
    const double s = spec.s;
    const double x0 = inner_turning_point(spec, state.E);
    return 2.0 * std::pow(x0, -1.0 - 0.5 * s) * std::sqrt(2.0 / std::numbers::pi) *
           gamma_ratio(1.0 / s, 0.5 + 1.0 / s);
  }
  // n - 1/4, or its equivalent x_inner sqrt(V0 / 2 pi) for an explicit energy.
  const double nu = state.n >= 1 ? state.n - 0.25
                                 : inner_turning_point(spec, state.E) *
                                       std::sqrt(spec.V0 / (2.0 * std::numbers::pi));
  return 2.0 * spec.V0 / (std::numbers::pi * nu);
}

namespace detail {

inline BoundState complete_state(const PotentialSpec& spec, int n, double mu, double E) {
  BoundState st{n, mu, E, inner_turning_point(spec, E), 0.0};
  st.A_sq = normalization(spec, st);
  return st;
}

}  // namespace detail

/// Bound state from the closed-form spectrum (s = 1, s = 1/2, logarithmic).
inline BoundState bound_state(const PotentialSpec& spec, int n) {
  const double E = energy_closed(spec, n);
  return detail::complete_state(spec, n, default_maslov(spec).value_or(0.0), E);
}

/// Bound state from Bohr-Sommerfeld quantization with Maslov index mu.
inline BoundState bound_state(const PotentialSpec& spec, int n, double mu) {
  return detail::complete_state(spec, n, mu, energy_quantize(spec, n, mu));
}

/// Bound state at an explicitly supplied energy (n left as 0).
inline BoundState bound_state_from_energy(const PotentialSpec& spec, double E) {
  spec.validate();
  return detail::complete_state(spec, 0, 0.0, E);
}

}  // namespace tunnel_wkb
