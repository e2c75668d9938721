// Copyright 2026 The taqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "taqc/linalg.hpp"
#include "taqc/optics.hpp"

namespace taqc {

/// In-place element application. PS multiplies one amplitude by exp(-i phi);
/// BS maps (x_a, x_b) to (cos t x_a + sin t x_b, -sin t x_a + cos t x_b).
void apply_in_place(const OpticalElement &element, ComplexVector &amps);
void apply_in_place(const Cell &cell, ComplexVector &amps);

StateVector apply_element(const OpticalElement &element, const StateVector &psi);

/// Elements applied in stored order, cell 0 first.
StateVector run_netlist(const Netlist &netlist, const StateVector &psi);

/// 1 - |<target|out>|^2.
double infidelity(const StateVector &target, const StateVector &out);

} // namespace taqc
