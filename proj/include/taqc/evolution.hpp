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

/**
 * @file
 * Trotterized adiabatic propagation.
 *
 * The evolution over [0, T] is cut into k segments. Segment a (a = 0 first
 * in time) has duration tau_a and samples the schedule at the left
 * endpoint s_a = a / k. Three levels of approximation are provided:
 *
 *  - StepExact: exp(-i H(s_a) tau_a) per segment.
 *  - Split:     exp(-i s_a tau_a Hp) exp(-i (1 - s_a) tau_a H0), H0 acting first.
 *  - GateLevel: the split product with Hp further factored into a diagonal
 *               layer and one two-mode block per coupling, i.e. the optical
 *               netlist produced by the compiler.
 *
 * Durations either equal T/k or follow the randomized Trotter formula
 * tau_a = (T/k)(1 + g_a) with g_a uniform on [-eta, eta].
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "taqc/linalg.hpp"
#include "taqc/model.hpp"

namespace taqc {

enum class Level { StepExact, Split, GateLevel };

std::string to_string(Level level);
Level parse_level(const std::string &text);

struct TrotterConfig {
    std::size_t k = 1;
    Level level = Level::Split;
    /// eta; 0 disables the randomized formula.
    double rtf_amplitude = 0.0;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument unless k >= 1 and 0 <= eta < 1.
    void validate() const;
};

struct StepDurations {
    std::vector<double> taus;

    [[nodiscard]] std::size_t k() const { return taus.size(); }
    /// Sum of all tau_a.
    [[nodiscard]] double total() const;
};

/// tau_a = (T/k)(1 + g_a), g_a i.i.d. uniform on [-eta, eta]. eta = 0 gives T/k exactly.
StepDurations rtf_durations(double total_time, std::size_t k, double eta, std::uint64_t seed);

/// Durations implied by a config and the spec's total time.
StepDurations durations_for(const ProblemSpec &spec, const TrotterConfig &config);

UnitaryMatrix evolve_step_exact(const ProblemSpec &spec, const StepDurations &durations);
UnitaryMatrix evolve_split(const ProblemSpec &spec, const StepDurations &durations);

/// Runs the compiled optical netlist on `psi`. Cells are compiled and
/// applied one at a time, so memory stays O(N^2) for any k.
StateVector evolve_gate_level(const ProblemSpec &spec, const StepDurations &durations,
                              const StateVector &psi);

/// Applies the chosen level to a single state; O(k N^3) for StepExact,
/// O(k N^2) for Split and O(k (N + nnz)) for GateLevel.
StateVector propagate(const ProblemSpec &spec, const StepDurations &durations, Level level,
                      const StateVector &psi);

struct ProtocolResult {
    StateVector psi_f;
    /// 1 - |<psi_ad|psi_f>|^2.
    double delta = 0.0;
    /// A ground level of H0 or Hp is degenerate.
    bool degenerate = false;
};

/// Ground states of H0 and Hp and the Hp eigensystem, computed once and
/// reused across many Trotter numbers.
class AdiabaticProtocol {
  public:
    explicit AdiabaticProtocol(ProblemSpec spec);

    [[nodiscard]] const ProblemSpec &spec() const { return spec_; }
    [[nodiscard]] const GroundState &initial() const { return initial_; }
    [[nodiscard]] const GroundState &target() const { return target_; }
    [[nodiscard]] bool degenerate() const { return initial_.degenerate || target_.degenerate; }

    [[nodiscard]] StateVector evolve(const StepDurations &durations, Level level) const;
    [[nodiscard]] ProtocolResult run(const TrotterConfig &config) const;

  private:
    ProblemSpec spec_;
    GroundState initial_;
    GroundState target_;
    Eigensystem hp_eig_;
};

/// Prepare |psi_0>, evolve at the configured level, compare with the Hp ground state.
ProtocolResult run_protocol(const ProblemSpec &spec, const TrotterConfig &config);

} // namespace taqc
