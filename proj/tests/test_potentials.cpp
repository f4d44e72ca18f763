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

#include <gtest/gtest.h>

#include "tunnel_wkb/potentials.hpp"

namespace tunnel_wkb {
namespace {

TEST(PotentialSpec, ValidatesExponentRange) {
  EXPECT_NO_THROW(PotentialSpec::power_law(1.999));
  EXPECT_THROW(PotentialSpec::power_law(2.0), DomainError);
  EXPECT_THROW(PotentialSpec::power_law(0.0), DomainError);
  EXPECT_THROW(PotentialSpec::logarithmic(0.0, 1.0), DomainError);
  EXPECT_THROW(PotentialSpec::logarithmic(1.0, -1.0), DomainError);
}

TEST(FieldSpec, RejectsNegativeField) {
  EXPECT_THROW((FieldSpec{-1e-3, FieldMode::Static}.validate()), DomainError);
  EXPECT_NO_THROW((FieldSpec{0.0, FieldMode::Static}.validate()));
}

TEST(Potential, CoulombWithField) {
  EXPECT_DOUBLE_EQ(potential_total(PotentialSpec::power_law(1.0), 0.01, 1.0), -1.01);
}

TEST(Potential, LogarithmicVanishesAtScaleLength) {
  EXPECT_EQ(potential_total(PotentialSpec::logarithmic(1.0, 1.0), 0.0, 1.0), 0.0);
}

TEST(Potential, CoulombBarrierShapeHasSingleMaximum) {
  const auto spec = PotentialSpec::power_law(1.0);
  const double F = 0.01;
  const double top = barrier_top(spec, F);
  EXPECT_NEAR(top, 10.0, 1e-12);
  for (double x = 0.2; x < 120.0; x *= 1.1) {
    EXPECT_LE(potential_total(spec, F, x), potential_total(spec, F, top) + 1e-15);
  }
}

TEST(Potential, LogarithmicBarrierTop) {
  EXPECT_DOUBLE_EQ(barrier_top(PotentialSpec::logarithmic(2.0, 1.0), 0.1), 20.0);
}

TEST(Momentum, VanishesAtClassicalTurningPoint) {
  EXPECT_EQ(momentum_classical(PotentialSpec::power_law(1.0), -0.5, 2.0), 0.0);
}

TEST(Momentum, InverseSqrtAllowedRegion) {
  EXPECT_DOUBLE_EQ(momentum_classical(PotentialSpec::power_law(0.5), -0.5, 1.0), 1.0);
}

TEST(Momentum, LogarithmicUnderBarrier) {
  const double got = momentum_barrier(PotentialSpec::logarithmic(1.0, 1.0), 1.0, 0.01, 10.0);
  EXPECT_DOUBLE_EQ(got, std::sqrt(2.0 * (-1.0 + std::log(10.0) - 0.1)));
}

TEST(Momentum, RoundingNegativeRadicandClampsToZero) {
  // x slightly inside the allowed region, radicand about -1e-16.
  const double x = 2.0 * (1.0 + 1e-16);
  EXPECT_EQ(momentum_barrier(PotentialSpec::power_law(1.0), -0.5, 0.0, x), 0.0);
}

TEST(Momentum, ClearlyForbiddenPointThrows) {
  EXPECT_THROW(momentum_classical(PotentialSpec::power_law(1.0), -0.5, 10.0), DomainError);
}

TEST(WeakField, CoulombRatios) {
  const auto spec = PotentialSpec::power_law(1.0);
  const auto ok = weak_field_check(spec, -0.5, 0.01);
  EXPECT_DOUBLE_EQ(ok.ratio, 0.04);
  EXPECT_TRUE(ok.valid);
  const auto bad = weak_field_check(spec, -0.5, 0.25);
  EXPECT_DOUBLE_EQ(bad.ratio, 1.0);
  EXPECT_FALSE(bad.valid);
}

TEST(WeakField, InverseSqrtRatio) {
  const auto r = weak_field_check(PotentialSpec::power_law(0.5), -0.5, 0.001);
  EXPECT_NEAR(r.ratio, 0.008, 1e-17);
  EXPECT_TRUE(r.valid);
}

TEST(WeakField, LogarithmicUnsupported) {
  EXPECT_THROW(weak_field_check(PotentialSpec::logarithmic(1.0, 1.0), 0.5, 0.01), UnsupportedError);
}

TEST(ErrorCategory, NamesAndHierarchy) {
  EXPECT_EQ(to_string(ErrorCategory::Applicability), "applicability");
  try {
    throw NoBarrierError("x");
  } catch (const DomainError& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Domain);
  }
  try {
    throw BracketError("x");
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Convergence);
  }
}

}  // namespace
}  // namespace tunnel_wkb
