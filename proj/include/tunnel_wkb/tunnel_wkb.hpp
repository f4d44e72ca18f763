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

#include "tunnel_wkb/barrier.hpp"
#include "tunnel_wkb/errors.hpp"
#include "tunnel_wkb/potentials.hpp"
#include "tunnel_wkb/quadrature.hpp"
#include "tunnel_wkb/rates.hpp"
#include "tunnel_wkb/special_functions.hpp"
#include "tunnel_wkb/spectra.hpp"
#include "tunnel_wkb/turning_points.hpp"
