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

#include <cmath>
#include <cstdint>
#include <random>

namespace tunnel_wkb::testing {

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

/// Seeded engine for the randomized property tests; runs are reproducible.
inline std::mt19937_64 make_rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed'2026ULL + salt); }

}  // namespace tunnel_wkb::testing
