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

// Ionization probability per unit time w = prefactor * exp(exponent) [* AC factor]
// for the power-law and logarithmic potentials, plus the low-frequency
// cycle-averaging factor and two textbook reference rates.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tunnel_wkb/barrier.hpp"
#include "tunnel_wkb/errors.hpp"
#include "tunnel_wkb/potentials.hpp"
#include "tunnel_wkb/special_functions.hpp"
#include "tunnel_wkb/spectra.hpp"
#include "tunnel_wkb/turning_points.hpp"

namespace tunnel_wkb {

/// Provenance of the exponent. Asymptotic is the leading closed form for the
/// logarithmic potential; Improved is its two-turning-point refinement.
enum class RateMethod { Oracle, Exact, Asymptotic, Improved };

inline std::string_view to_string(RateMethod m) {
  switch (m) {
    case RateMethod::Oracle: return "oracle";
    case RateMethod::Exact: return "exact";
    case RateMethod::Asymptotic: return "asymptotic";
    case RateMethod::Improved: return "improved";
  }
  return "unknown";
}

inline RateMethod parse_rate_method(std::string_view s) {
  if (s == "oracle") return RateMethod::Oracle;
  if (s == "exact") return RateMethod::Exact;
  if (s == "asymptotic") return RateMethod::Asymptotic;
  if (s == "improved") return RateMethod::Improved;
  throw UsageError("unknown method '" + std::string(s) + "'");
}

struct RateResult {
  double w = 0.0;
  double log_w = 0.0;  // kept because w underflows for very weak fields
  double prefactor = 0.0;
  double exponent = 0.0;
  std::optional<double> ac_factor;
  RateMethod method = RateMethod::Exact;
  double epsilon = 0.0;
  std::vector<std::string> flags;
};

struct AcFactor {
  double value = 0.0;
  bool reliable = true;  // false when the static exponent is below 10
};

inline constexpr double kAcExponentFloor = 10.0;

/// Cycle-average multiplier sqrt(3F / (pi (2|E|)^(3/2))) for a field F|cos wt|.
inline AcFactor ac_average_factor(double E, double F) {
  if (!(F > 0.0)) throw DomainError("ac_average_factor: requires F > 0");
  const double k = std::pow(2.0 * std::abs(E), 1.5);
  const double static_exponent = 2.0 * k / (3.0 * F);
  return {std::sqrt(3.0 * F / (std::numbers::pi * k)), static_exponent >= kAcExponentFloor};
}

/// Logarithmic-potential variant, with L = ln(1/eps) = ln(V0^(3/2) / ((n - 1/4) F sqrt(2 pi))):
/// L^(-3/4) sqrt(3F / (pi (2 V0)^(3/2))).
inline AcFactor ac_average_factor_log_from_epsilon(double V0, double epsilon, double F) {
  if (!(F > 0.0) || !(V0 > 0.0)) throw DomainError("ac_average_factor_log: V0, F must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("ac_average_factor_log: requires 0 < epsilon < 1");
  }
  const double L = std::log(1.0 / epsilon);
  const double k = std::pow(2.0 * V0, 1.5);
  const double static_exponent = 4.0 * std::numbers::sqrt2 * std::pow(V0, 1.5) *
                                 std::pow(L, 1.5) / (3.0 * F);
  return {std::pow(L, -0.75) * std::sqrt(3.0 * F / (std::numbers::pi * k)),
          static_exponent >= kAcExponentFloor};
}

inline AcFactor ac_average_factor_log(double V0, int n, double F) {
  if (n < 1) throw DomainError("ac_average_factor_log: n must be >= 1");
  return ac_average_factor_log_from_epsilon(V0, log_epsilon_from_n(V0, n, F), F);
}

namespace detail {

inline RateResult assemble(double prefactor, double exponent, RateMethod method, double epsilon,
                           std::optional<AcFactor> ac) {
  RateResult r;
  r.prefactor = prefactor;
  r.exponent = exponent;
  r.method = method;
  r.epsilon = epsilon;
  r.log_w = std::log(prefactor) + exponent;
  if (ac) {
    r.ac_factor = ac->value;
    r.log_w += std::log(ac->value);
    if (!ac->reliable) r.flags.emplace_back("ac_exponent_below_10");
  }
  r.w = prefactor * std::exp(exponent) * r.ac_factor.value_or(1.0);
  return r;
}

inline std::optional<AcFactor> maybe_ac(FieldMode mode, double E, double F) {
  if (mode == FieldMode::LowFrequencyAC) return ac_average_factor(E, F);
  return std::nullopt;
}

}  // namespace detail

/// |E|^(1/2+1/s) sqrt(1/(2 pi)) Gamma(1/s) / Gamma(1/2 + 1/s), i.e. A^2/4 for 0 < s < 2.
inline double general_prefactor(double s, double E) {
  if (!(s > 0.0 && s < 2.0)) throw DomainError("general_prefactor: requires 0 < s < 2");
  if (!(E < 0.0)) throw DomainError("general_prefactor: requires E < 0");
  return std::pow(-E, 0.5 + 1.0 / s) * std::sqrt(0.5 / std::numbers::pi) *
         gamma_ratio(1.0 / s, 0.5 + 1.0 / s);
}

/// Rate for 1 < s < 2. The result only applies while the field-independent
/// part of the exponent is smaller than the leading 1/F part (times `margin`).
inline RateResult rate_general_s(double s, double E, double F, RateMethod method,
                                 FieldMode mode = FieldMode::Static, double margin = 1.0) {
  if (!(s > 1.0 && s < 2.0)) throw DomainError("rate_general_s: requires 1 < s < 2");
  if (!(E < 0.0) || !(F > 0.0)) throw DomainError("rate_general_s: requires E < 0 and F > 0");
  const double ae = -E;
  const double leading = 2.0 * std::pow(2.0 * ae, 1.5) / (3.0 * F);
  const double correction = 2.0 * std::numbers::sqrt2 * (f_of_s(s) + 1.0) / std::pow(ae, 1.0 / s - 0.5);
  if (!(correction < margin * leading)) {
    throw ApplicabilityError("rate_general_s: correction term " + std::to_string(correction) +
                             " not smaller than leading term " + std::to_string(leading));
  }
  const PotentialSpec spec = PotentialSpec::power_law(s);
  const auto wf = weak_field_check(spec, E, F);
  double exponent;
  switch (method) {
    case RateMethod::Asymptotic: exponent = action_general_s(s, E, F).value; break;
    case RateMethod::Oracle: exponent = action_oracle(spec, E, F).value; break;
    default:
      throw UnsupportedError("rate_general_s: only oracle and asymptotic methods exist for general s");
  }
  RateResult r = detail::assemble(general_prefactor(s, E), exponent, method, wf.ratio,
                                  detail::maybe_ac(mode, E, F));
  if (!wf.valid) r.flags.emplace_back("weak_field_violated");
  return r;
}

/// Rate for the n-th Coulomb (s = 1) level, eps = 4 n^4 F < 1/4.
inline RateResult rate_coulomb(int n, double F, RateMethod method,
                               FieldMode mode = FieldMode::Static) {
  if (n < 1) throw DomainError("rate_coulomb: n must be >= 1");
  if (!(F > 0.0)) throw DomainError("rate_coulomb: requires F > 0");
  const double nn = n;
  const double E = -0.5 / (nn * nn);
  const double eps = 4.0 * nn * nn * nn * nn * F;
  if (!(eps < 0.25)) throw DomainError("rate_coulomb: eps = 4 n^4 F must be < 1/4");
  const double prefactor = 1.0 / (2.0 * std::numbers::pi * nn * nn * nn);
  double exponent;
  switch (method) {
    case RateMethod::Exact: exponent = action_coulomb_exact(eps, E).value; break;
    case RateMethod::Asymptotic:
      // w = (1/(2 pi n^3)) (4/(n^4 F))^(2n) exp(-2/(3 n^3 F) + 2n)
      exponent = 2.0 * nn * std::log(4.0 / (nn * nn * nn * nn * F)) - 2.0 / (3.0 * nn * nn * nn * F) +
                 2.0 * nn;
      break;
    case RateMethod::Oracle:
      exponent = action_oracle(PotentialSpec::power_law(1.0), E, F).value;
      break;
    default: throw UnsupportedError("rate_coulomb: no improved method for the Coulomb case");
  }
  return detail::assemble(prefactor, exponent, method, eps, detail::maybe_ac(mode, E, F));
}

/// Rate for the inverse-square-root potential at energy E, eps = F/|E|^3.
inline RateResult rate_invsqrt(double E, double F, RateMethod method,
                               FieldMode mode = FieldMode::Static) {
  if (!(E < 0.0) || !(F > 0.0)) throw DomainError("rate_invsqrt: requires E < 0 and F > 0");
  const double ae = -E;
  const double eps = invsqrt_epsilon(E, F);
  ScaledField{ScaledCase::InvSqrt, eps}.validate();
  const double prefactor = 2.0 * std::numbers::sqrt2 / (3.0 * std::numbers::pi) * std::pow(ae, 2.5);
  double exponent;
  switch (method) {
    case RateMethod::Exact: exponent = action_invsqrt_exact(eps, F).value; break;
    case RateMethod::Asymptotic: {
      const double pi = std::numbers::pi;
      exponent = -2.0 * std::pow(2.0 * ae, 1.5) / (3.0 * F) + pi * std::numbers::sqrt2 / std::sqrt(F) -
                 std::numbers::sqrt2 * (2.0 - 3.0 * pi) / (12.0 * std::pow(ae, 1.5));
      break;
    }
    case RateMethod::Oracle:
      exponent = action_oracle(PotentialSpec::power_law(0.5), E, F).value;
      break;
    default: throw UnsupportedError("rate_invsqrt: no improved method for s = 1/2");
  }
  return detail::assemble(prefactor, exponent, method, eps, detail::maybe_ac(mode, E, F));
}

inline RateResult rate_invsqrt_level(int n, double F, RateMethod method,
                                     FieldMode mode = FieldMode::Static) {
  return rate_invsqrt(energy_closed(PotentialSpec::power_law(0.5), n), F, method, mode);
}

/// Rate for the logarithmic potential at an explicit energy E.
inline RateResult rate_log_from_energy(double V0, double a, double E, double F, RateMethod method,
                                       FieldMode mode = FieldMode::Static) {
  const PotentialSpec spec = PotentialSpec::logarithmic(V0, a);
  if (!(F > 0.0)) throw DomainError("rate_log: requires F > 0");
  const double eps = log_epsilon(V0, a, E, F);
  if (!(eps < detail::kInvE)) {
    throw DomainError("rate_log: eps = " + std::to_string(eps) + " must be < 1/e");
  }
  // V0 / (pi (n - 1/4)), i.e. A^2 / 2 (the power-law rates carry A^2 / 4).
  const double prefactor = 0.5 * normalization(spec, bound_state_from_energy(spec, E));
  double exponent;
  switch (method) {
    case RateMethod::Asymptotic: exponent = action_log_leading_from_epsilon(V0, eps, F).value; break;
    case RateMethod::Improved: exponent = action_log_improved_from_epsilon(V0, eps, F).value; break;
    case RateMethod::Oracle: exponent = action_oracle(spec, E, F).value; break;
    default: throw UnsupportedError("rate_log: no exact closed form for the logarithmic potential");
  }
  std::optional<AcFactor> ac;
  if (mode == FieldMode::LowFrequencyAC) ac = ac_average_factor_log_from_epsilon(V0, eps, F);
  return detail::assemble(prefactor, exponent, method, eps, ac);
}

/// Rate for the n-th WKB level of V0 ln(x/a).
inline RateResult rate_log(double V0, double a, int n, double F, RateMethod method,
                           FieldMode mode = FieldMode::Static) {
  const double E = energy_closed(PotentialSpec::logarithmic(V0, a), n);
  return rate_log_from_energy(V0, a, E, F, method, mode);
}

enum class ReferenceKind { Hydrogen1s, ShortRangeWell };

/// Three-dimensional textbook rates, for comparison only:
/// hydrogen ground state (4/F) e^(-2/(3F)); short-range well (F/(2 kappa)) e^(-2 kappa^3/(3F)).
inline RateResult reference_rate(ReferenceKind kind, double F, double kappa = 1.0) {
  if (!(F > 0.0)) throw DomainError("reference_rate: requires F > 0");
  if (kind == ReferenceKind::Hydrogen1s) {
    RateResult r = detail::assemble(4.0 / F, -2.0 / (3.0 * F), RateMethod::Asymptotic, F, std::nullopt);
    if (!(F < 0.1)) r.flags.emplace_back("field_not_weak");
    return r;
  }
  if (!(kappa > 0.0)) throw DomainError("reference_rate: requires kappa > 0");
  const double k3 = kappa * kappa * kappa;
  RateResult r = detail::assemble(F / (2.0 * kappa), -2.0 * k3 / (3.0 * F), RateMethod::Asymptotic,
                                  F / k3, std::nullopt);
  if (!(F < 0.1 * k3)) r.flags.emplace_back("field_not_weak");
  return r;
}

/// Exponent of the barrier penetrability D ~ exp(-2 (2|E|)^(3/2) / (3F)).
inline double penetrability_exponent(double E, double F) {
  if (!(F > 0.0)) throw DomainError("penetrability_exponent: requires F > 0");
  return -2.0 * std::pow(2.0 * std::abs(E), 1.5) / (3.0 * F);
}

/// Dispatches on the potential: s = 1 and s = 1/2 have exact closed forms,
/// 1 < s < 2 the weak-field decomposition, the logarithmic potential its
/// leading and improved forms. Any other exponent supports the oracle only.
inline RateResult compute_rate(const PotentialSpec& spec, const BoundState& state,
                               const FieldSpec& field, RateMethod method) {
  spec.validate();
  field.validate();
  const double F = field.F;
  if (!(F > 0.0)) throw DomainError("compute_rate: requires F > 0");
  if (spec.kind == PotentialKind::Logarithmic) {
    return rate_log_from_energy(spec.V0, spec.a, state.E, F, method, field.mode);
  }
  const double s = spec.s;
  const double E = state.E;
  if (s == 1.0) {
    if (state.n >= 1 && E == energy_closed(spec, state.n)) {
      return rate_coulomb(state.n, F, method, field.mode);
    }
    const double eps = coulomb_epsilon(E, F);
    ScaledField{ScaledCase::Coulomb, eps}.validate();
    double exponent;
    switch (method) {
      case RateMethod::Exact: exponent = action_coulomb_exact(eps, E).value; break;
      case RateMethod::Asymptotic: {
        // The expansion is exact in n through |E| = 1/(2 n^2); use the effective n.
        const double n_eff = 1.0 / std::sqrt(-2.0 * E);
        const double t = 2.0 / (3.0 * eps) + 0.5 * std::log(eps) - 0.5 * (std::log(16.0) + 1.0);
        exponent = -4.0 * n_eff * t;
        break;
      }
      case RateMethod::Oracle: exponent = action_oracle(spec, E, F).value; break;
      default: throw UnsupportedError("compute_rate: no improved method for s = 1");
    }
    return detail::assemble(general_prefactor(s, E), exponent, method, eps,
                            detail::maybe_ac(field.mode, E, F));
  }
  if (s == 0.5) return rate_invsqrt(E, F, method, field.mode);
  if (s > 1.0) return rate_general_s(s, E, F, method, field.mode);
  if (method != RateMethod::Oracle) {
    throw UnsupportedError("compute_rate: only the oracle method exists for s = " + std::to_string(s));
  }
  const auto wf = weak_field_check(spec, E, F);
  RateResult r = detail::assemble(general_prefactor(s, E), action_oracle(spec, E, F).value, method,
                                  wf.ratio, detail::maybe_ac(field.mode, E, F));
  if (!wf.valid) r.flags.emplace_back("weak_field_violated");
  return r;
}

}  // namespace tunnel_wkb
