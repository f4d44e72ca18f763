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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tunnel_wkb/spectra.hpp"
#include "tunnel_wkb/validation.hpp"

namespace tunnel_wkb {
namespace {

using testing::rel_err;
constexpr double kPi = std::numbers::pi;

TEST(EnergyClosed, PinnedValues) {
  EXPECT_DOUBLE_EQ(energy_closed(PotentialSpec::power_law(1.0), 2), -0.125);
  EXPECT_NEAR(energy_closed(PotentialSpec::power_law(0.5), 1), -0.5646216173286171, 1e-15);
  EXPECT_NEAR(energy_closed(PotentialSpec::logarithmic(1.0, 1.0), 1), 0.6312564607528918, 1e-15);
}

TEST(EnergyClosed, ErrorPaths) {
  EXPECT_THROW(energy_closed(PotentialSpec::power_law(1.0), 0), DomainError);
  EXPECT_THROW(energy_closed(PotentialSpec::power_law(1.5), 1), UnsupportedError);
}

TEST(EnergyQuantize, ReproducesClosedForms) {
  EXPECT_NEAR(energy_quantize(PotentialSpec::power_law(1.0), 1, 0.0), -0.5, 1e-12);
  const auto inv = PotentialSpec::power_law(0.5);
  EXPECT_LT(rel_err(energy_quantize(inv, 1, 1.0 / 6.0), energy_closed(inv, 1)), 1e-8);
  const auto lg = PotentialSpec::logarithmic(1.0, 1.0);
  EXPECT_LT(rel_err(energy_quantize(lg, 3, 0.25), energy_closed(lg, 3)), 1e-8);
}

TEST(EnergyQuantize, GeneralExponentRegression) {
  // Value recorded at build time; s = 1.7 has no closed-form spectrum.
  EXPECT_NEAR(energy_quantize(PotentialSpec::power_law(1.7), 3, 0.3), -1.8474078413, 1e-9);
}

TEST(EnergyQuantize, SatisfiesQuantizationCondition) {
  const auto spec = PotentialSpec::power_law(1.3);
  for (int n = 1; n <= 4; ++n) {
    const double E = energy_quantize(spec, n, 0.2);
    EXPECT_NEAR(classical_action(spec, E), kPi * (n - 0.2), 1e-10);
  }
}

TEST(EnergyQuantize, RejectsBadInputs) {
  const auto spec = PotentialSpec::power_law(1.0);
  EXPECT_THROW(energy_quantize(spec, 0, 0.0), DomainError);
  EXPECT_THROW(energy_quantize(spec, 1, 1.0), DomainError);
  EXPECT_THROW(energy_quantize(spec, 1, -0.1), DomainError);
}

TEST(ClassicalAction, CoulombClosedForm) {
  // integral_0^{x_in} p0 dx = pi / sqrt(2|E|) for s = 1.
  for (double E : {-0.5, -0.125, -2.0}) {
    EXPECT_LT(rel_err(classical_action(PotentialSpec::power_law(1.0), E), kPi / std::sqrt(-2.0 * E)), 1e-12);
  }
}

TEST(Normalization, PinnedValues) {
  EXPECT_NEAR(bound_state(PotentialSpec::power_law(1.0), 1).A_sq, 2.0 / kPi, 1e-14);
  const double aE = 0.5646216173286171;
  const auto st = bound_state_from_energy(PotentialSpec::power_law(0.5), -aE);
  EXPECT_LT(rel_err(st.A_sq, 8.0 * std::numbers::sqrt2 / (3.0 * kPi) * std::pow(aE, 2.5)), 1e-12);
  EXPECT_NEAR(bound_state(PotentialSpec::logarithmic(1.0, 1.0), 2).A_sq, 2.0 / (kPi * 1.75), 1e-14);
}

TEST(Normalization, ExplicitEnergyMatchesQuantumNumberForLog) {
  const auto spec = PotentialSpec::logarithmic(1.5, 0.7);
  const auto by_n = bound_state(spec, 2);
  const auto by_E = bound_state_from_energy(spec, by_n.E);
  EXPECT_LT(rel_err(by_E.A_sq, by_n.A_sq), 1e-13);
}

TEST(Normalization, ClosureOverAllowedRegion) {
  for (double s : {0.3, 0.5, 1.0, 1.5, 1.9}) {
    const auto spec = PotentialSpec::power_law(s);
    for (double E : {-0.3, -1.0}) {
      const auto st = bound_state_from_energy(spec, E);
      EXPECT_NEAR(validation::oracle::normalization_closure(spec, st), 1.0, 1e-10) << "s=" << s;
    }
  }
  const auto lg = PotentialSpec::logarithmic(1.0, 1.0);
  for (int n = 1; n <= 3; ++n) {
    EXPECT_NEAR(validation::oracle::normalization_closure(lg, bound_state(lg, n)), 1.0, 1e-2);
  }
}

TEST(BoundState, CarriesTurningPointAndMaslov) {
  const auto st = bound_state(PotentialSpec::power_law(0.5), 2);
  EXPECT_EQ(st.n, 2);
  EXPECT_DOUBLE_EQ(st.mu, 1.0 / 6.0);
  EXPECT_NEAR(st.x_inner, std::pow(-st.E, -2.0), 1e-14);
  EXPECT_FALSE(default_maslov(PotentialSpec::power_law(1.2)).has_value());
}

TEST(BoundState, PowerLawRequiresNegativeEnergy) {
  EXPECT_THROW(bound_state_from_energy(PotentialSpec::power_law(1.0), 0.1), DomainError);
}

}  // namespace
}  // namespace tunnel_wkb
