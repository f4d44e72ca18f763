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
#include "tunnel_wkb/rates.hpp"
#include "tunnel_wkb/validation.hpp"

namespace tunnel_wkb {
namespace {

using testing::rel_err;
constexpr double kPi = std::numbers::pi;

TEST(Prefactor, SpecializesToCoulombAndInverseSqrt) {
  EXPECT_LT(rel_err(general_prefactor(1.0, -0.5), 1.0 / (2.0 * kPi)), 1e-12);
  for (int n = 1; n <= 3; ++n) {
    const auto st = bound_state(PotentialSpec::power_law(0.5), n);
    EXPECT_LT(rel_err(general_prefactor(0.5, st.E), st.A_sq / 4.0), 1e-12);
    EXPECT_LT(rel_err(general_prefactor(0.5, st.E),
                      2.0 * std::numbers::sqrt2 / (3.0 * kPi) * std::pow(-st.E, 2.5)),
              1e-12);
  }
}

TEST(RateCoulomb, AsymptoticClosedForm) {
  const auto r = rate_coulomb(1, 0.005, RateMethod::Asymptotic);
  const double want = 1.0 / (2.0 * kPi) * 800.0 * 800.0 * std::exp(-2.0 / 0.015 + 2.0);
  EXPECT_LT(rel_err(r.w, want), 1e-12);
  EXPECT_LT(rel_err(r.log_w, std::log(want)), 1e-14);
}

TEST(RateCoulomb, AsymptoticConvergesToExact) {
  double previous = INFINITY;
  for (double F : {1e-2, 1e-3, 1e-4}) {
    const double gap = std::abs(rate_coulomb(1, F, RateMethod::Asymptotic).log_w -
                                rate_coulomb(1, F, RateMethod::Exact).log_w);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_LT(previous, 5e-3);
}

TEST(RateCoulomb, ExcitedStateAtMatchedScaledField) {
  // eps = 4 n^4 F is shared when F(n = 2) = F(n = 1) / 16; the n = 2 exponent doubles.
  const auto r1 = rate_coulomb(1, 0.01, RateMethod::Exact);
  const auto r2 = rate_coulomb(2, 0.01 / 16.0, RateMethod::Exact);
  EXPECT_GT(r1.w, 0.0);
  EXPECT_GT(r2.w, 0.0);
  EXPECT_LT(r2.log_w, r1.log_w);
  EXPECT_LT(rel_err(r2.exponent, 2.0 * r1.exponent), 1e-13);
}

TEST(RateCoulomb, ErrorPaths) {
  EXPECT_THROW(rate_coulomb(1, 0.0625, RateMethod::Exact), DomainError);
  EXPECT_THROW(rate_coulomb(0, 0.01, RateMethod::Exact), DomainError);
  EXPECT_THROW(rate_coulomb(1, 0.01, RateMethod::Improved), UnsupportedError);
}

TEST(RateInvSqrt, AsymptoticExponentConvergesRelatively) {
  // The absolute log-rate gap grows slowly as F falls (the three-term
  // expansion misses a ln(eps)/sqrt(eps) term), but relative to the exponent
  // it vanishes.
  double previous = INFINITY;
  for (double F : {1e-3, 1e-4, 1e-5}) {
    const auto ex = rate_invsqrt(-0.5, F, RateMethod::Exact);
    const double gap = std::abs(rate_invsqrt(-0.5, F, RateMethod::Asymptotic).exponent - ex.exponent) /
                       std::abs(ex.exponent);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_LT(previous, 1e-3);
}

TEST(RateInvSqrt, VanishesMonotonicallyAsFieldFalls) {
  double previous = INFINITY;
  for (double F : {1e-2, 1e-3, 1e-4}) {
    const auto r = rate_invsqrt(-0.5, F, RateMethod::Exact);
    EXPECT_GE(r.w, 0.0);
    EXPECT_LT(r.log_w, previous);
    previous = r.log_w;
  }
}

TEST(RateInvSqrt, LevelUsesClosedFormEnergy) {
  const auto a = rate_invsqrt_level(1, 1e-3, RateMethod::Exact);
  const auto b = rate_invsqrt(energy_closed(PotentialSpec::power_law(0.5), 1), 1e-3, RateMethod::Exact);
  EXPECT_DOUBLE_EQ(a.w, b.w);
}

TEST(RateGeneralS, OracleAndAsymptoticConverge) {
  double previous = INFINITY;
  for (double F : {1e-3, 1e-4, 1e-5}) {
    const double gap = std::abs(rate_general_s(1.5, -0.5, F, RateMethod::Asymptotic).log_w -
                                rate_general_s(1.5, -0.5, F, RateMethod::Oracle).log_w);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
}

TEST(RateGeneralS, GuardAndUnsupportedMethods) {
  EXPECT_THROW(rate_general_s(1.5, -0.5, 0.3, RateMethod::Oracle), ApplicabilityError);
  EXPECT_THROW(rate_general_s(1.5, -0.5, 1e-3, RateMethod::Exact), UnsupportedError);
  EXPECT_THROW(rate_general_s(0.5, -0.5, 1e-3, RateMethod::Oracle), DomainError);
}

TEST(RateLog, LeadingMethodClosedForm) {
  const double eps = log_epsilon_from_n(1.0, 1, 0.01);
  // w itself underflows here; compare logarithms.
  const double want = std::log(1.0 / (0.75 * kPi)) -
                      (4.0 * std::numbers::sqrt2 / 0.03) * std::pow(std::log(1.0 / eps), 1.5);
  EXPECT_LT(rel_err(rate_log(1.0, 1.0, 1, 0.01, RateMethod::Asymptotic).log_w, want), 1e-14);
}

TEST(RateLog, ImprovedLiesBetweenLeadingAndOracle) {
  const double F = 0.01;
  for (double eps : {1e-3, 0.01, 0.05}) {
    const double E = std::log(eps / F);
    const double lead = rate_log_from_energy(1.0, 1.0, E, F, RateMethod::Asymptotic).log_w;
    const double impr = rate_log_from_energy(1.0, 1.0, E, F, RateMethod::Improved).log_w;
    const double orc = rate_log_from_energy(1.0, 1.0, E, F, RateMethod::Oracle).log_w;
    EXPECT_GT(impr, std::min(lead, orc));
    EXPECT_LT(impr, std::max(lead, orc));
  }
}

TEST(RateLog, HighLevelsLeaveTheDomain) {
  EXPECT_NO_THROW(rate_log(1.0, 1.0, 1, 0.01, RateMethod::Asymptotic));
  EXPECT_THROW(rate_log(1.0, 1.0, 30, 0.01, RateMethod::Asymptotic), DomainError);
  EXPECT_THROW(rate_log(1.0, 1.0, 1, 0.5, RateMethod::Asymptotic), DomainError);
  EXPECT_THROW(rate_log(1.0, 1.0, 1, 0.01, RateMethod::Exact), UnsupportedError);
}

TEST(AcFactor, PinnedValueAndLimits) {
  EXPECT_NEAR(ac_average_factor(-0.5, 0.01).value, std::sqrt(0.03 / kPi), 1e-15);
  EXPECT_LT(ac_average_factor(-0.5, 1e-8).value, 1e-3);
  EXPECT_TRUE(ac_average_factor(-0.5, 0.01).reliable);
  EXPECT_FALSE(ac_average_factor(-0.5, 0.1).reliable);
}

TEST(AcFactor, MatchesNumericalCycleAverage) {
  for (double F : {0.02, 0.01, 0.005}) {
    const double K = -penetrability_exponent(-0.5, F);
    ASSERT_GE(K, 30.0);
    const double predicted = ac_average_factor(-0.5, F).value * std::exp(-K);
    EXPECT_LT(rel_err(predicted, validation::oracle::ac_average_numeric(-0.5, F)), 0.05);
  }
}

TEST(AcFactor, AveragedRateIsSlower) {
  const auto st = rate_coulomb(1, 0.01, RateMethod::Exact, FieldMode::Static);
  const auto ac = rate_coulomb(1, 0.01, RateMethod::Exact, FieldMode::LowFrequencyAC);
  ASSERT_TRUE(ac.ac_factor.has_value());
  EXPECT_LT(ac.w, st.w);
  EXPECT_LT(rel_err(ac.w, st.w * *ac.ac_factor), 1e-14);
  const auto lg = rate_log(1.0, 1.0, 1, 0.01, RateMethod::Improved, FieldMode::LowFrequencyAC);
  EXPECT_LT(*lg.ac_factor, 1.0);
}

TEST(AcFactor, LowExponentIsFlagged) {
  // Static exponent 2 (2|E|)^(3/2) / (3F) is about 5.9 at E = -2, F = 0.9 (eps = 0.225).
  const auto spec = PotentialSpec::power_law(1.0);
  const auto r = compute_rate(spec, bound_state_from_energy(spec, -2.0), {0.9, FieldMode::LowFrequencyAC},
                              RateMethod::Exact);
  ASSERT_EQ(r.flags.size(), 1u);
  EXPECT_EQ(r.flags[0], "ac_exponent_below_10");
}

TEST(ReferenceRates, PinnedValues) {
  const auto h = reference_rate(ReferenceKind::Hydrogen1s, 0.05);
  EXPECT_LT(rel_err(h.w, 80.0 * std::exp(-40.0 / 3.0)), 1e-14);
  const auto s = reference_rate(ReferenceKind::ShortRangeWell, 0.05);
  EXPECT_LT(rel_err(s.w, 0.025 * std::exp(-40.0 / 3.0)), 1e-14);
  EXPECT_DOUBLE_EQ(h.exponent, s.exponent);
  EXPECT_DOUBLE_EQ(h.exponent, penetrability_exponent(-0.5, 0.05));
  EXPECT_FALSE(reference_rate(ReferenceKind::Hydrogen1s, 0.2).flags.empty());
}

TEST(ComputeRate, DispatchesPerPotential) {
  const auto coul = compute_rate(PotentialSpec::power_law(1.0), bound_state(PotentialSpec::power_law(1.0), 1),
                                 {0.01, FieldMode::Static}, RateMethod::Exact);
  EXPECT_LT(rel_err(coul.exponent, action_coulomb_exact(0.04, -0.5).value), 1e-14);

  const auto spec17 = PotentialSpec::power_law(1.7);
  const auto g = compute_rate(spec17, bound_state_from_energy(spec17, -0.4), {1e-4, FieldMode::Static},
                              RateMethod::Oracle);
  EXPECT_TRUE(std::isfinite(g.log_w));
  EXPECT_LT(g.exponent, 0.0);

  const auto spec07 = PotentialSpec::power_law(0.7);
  EXPECT_THROW(compute_rate(spec07, bound_state_from_energy(spec07, -0.5), {1e-3, FieldMode::Static},
                            RateMethod::Exact),
               UnsupportedError);
  EXPECT_NO_THROW(compute_rate(spec07, bound_state_from_energy(spec07, -0.5), {1e-3, FieldMode::Static},
                               RateMethod::Oracle));
}

TEST(ComputeRate, ExplicitCoulombEnergyUsesEffectiveQuantumNumber) {
  const auto spec = PotentialSpec::power_law(1.0);
  const auto by_n = compute_rate(spec, bound_state(spec, 2), {1e-3, FieldMode::Static}, RateMethod::Asymptotic);
  const auto by_E = compute_rate(spec, bound_state_from_energy(spec, -0.125), {1e-3, FieldMode::Static},
                                 RateMethod::Asymptotic);
  EXPECT_LT(rel_err(by_E.exponent, by_n.exponent), 1e-13);
}

TEST(RateProperties, LogRateFallsWithFieldForEveryMethod) {
  const RateMethod methods[] = {RateMethod::Oracle, RateMethod::Exact, RateMethod::Asymptotic};
  for (auto m : methods) {
    double previous = INFINITY;
    for (double F : {1e-2, 3e-3, 1e-3, 3e-4}) {
      const double lw = rate_coulomb(1, F, m).log_w;
      EXPECT_LT(lw, previous) << to_string(m);
      previous = lw;
    }
  }
}

TEST(RateMethodNames, RoundTrip) {
  for (auto m : {RateMethod::Oracle, RateMethod::Exact, RateMethod::Asymptotic, RateMethod::Improved}) {
    EXPECT_EQ(parse_rate_method(to_string(m)), m);
  }
  EXPECT_THROW(parse_rate_method("bogus"), UsageError);
}

}  // namespace
}  // namespace tunnel_wkb
