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
 * Compilation of Trotter steps into linear-optical netlists.
 *
 * Primitives, acting on the one-photon subspace (|m><n| = b_m^dagger b_n):
 *
 *   PS(m, phi)      = exp(-i phi b_m^dagger b_m)
 *   BS(m, n, theta) = exp(theta (b_m^dagger b_n - b_m b_n^dagger))
 *
 * A unit cell implements one step of the split product. It starts with one
 * PS per mode carrying the merged diagonal phase
 * phi_n = (1 - a/k) tau_a eps_n + (a/k) tau_a eps'_n, followed by a two-mode
 * block per nonzero coupling J_mn (m < n) in lexicographic order.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <variant>
#include <vector>

#include "json.hpp"

#include "taqc/evolution.hpp"
#include "taqc/model.hpp"

namespace taqc {

struct PhaseShifter {
    std::size_t mode = 0;
    double phase = 0.0;

    friend bool operator==(const PhaseShifter &, const PhaseShifter &) = default;
};

struct BeamSplitter {
    std::size_t mode_a = 0;
    std::size_t mode_b = 1;
    double theta = 0.0;

    friend bool operator==(const BeamSplitter &, const BeamSplitter &) = default;
};

using OpticalElement = std::variant<PhaseShifter, BeamSplitter>;
using Cell = std::vector<OpticalElement>;

struct NetlistMetadata {
    std::size_t k = 0;
    double total_time = 0.0;
    Level level = Level::GateLevel;
    std::uint64_t seed = 0;
    double eta = 0.0;
    /// Durations used for each cell, so the netlist can be replayed.
    std::vector<double> taus;

    friend bool operator==(const NetlistMetadata &, const NetlistMetadata &) = default;
};

struct Netlist {
    std::size_t n_modes = 0;
    std::vector<Cell> cells;
    NetlistMetadata metadata;

    /// Throws InvalidArgument on out-of-range modes or a BS with equal modes.
    void validate() const;

    friend bool operator==(const Netlist &, const Netlist &) = default;
};

struct CompileOptions {
    /// Keep elements whose parameter is exactly zero.
    bool emit_identity = false;
};

/// One PS per mode with the merged H0/Hp diagonal phase of step `a`.
Cell compile_diag_cell(const ProblemSpec &spec, std::size_t a, std::size_t k, double tau_a,
                       const CompileOptions &options = {});

/**
 * Two-mode block equal to
 *   exp[c Im J (b_m^dagger b_n - b_m b_n^dagger)] exp[-i c Re J (b_m^dagger b_n + b_m b_n^dagger)]
 * with c = (a/k) tau_a, in stored (first applied first) order:
 *
 *   PS(m, -pi/4) PS(n, +pi/4) BS(m, n, c Re J) PS(m, +pi/4) PS(n, -pi/4)   real part
 *   BS(m, n, c Im J)                                                       imaginary part
 *
 * The PS sandwich rotates the BS generator i Y into -i X.
 */
Cell compile_pair_block(std::size_t m, std::size_t n, Complex coupling, std::size_t a,
                        std::size_t k, double tau_a, const CompileOptions &options = {});

/// Whole cell for step `a`: diagonal layer then every pair block.
Cell compile_cell(const ProblemSpec &spec, std::size_t a, std::size_t k, double tau_a,
                  const CompileOptions &options = {});

Netlist compile_evolution(const ProblemSpec &spec, const TrotterConfig &config,
                          const CompileOptions &options = {});
Netlist compile_evolution(const ProblemSpec &spec, const StepDurations &durations,
                          const CompileOptions &options = {});

struct CostReport {
    std::size_t ps_count = 0;
    std::size_t bs_count = 0;
    /// Length of the longest chain of elements linked through shared modes.
    std::size_t depth = 0;

    friend bool operator==(const CostReport &, const CostReport &) = default;
};

CostReport element_cost_report(const Netlist &netlist);

/// File format: {version, n_modes, metadata{k, T, level, seed, eta, taus},
/// cells: [[{type: "ps", mode, phase} | {type: "bs", a, b, theta}, ...], ...]}.
inline constexpr int kNetlistFormatVersion = 1;

nlohmann::json to_json(const Netlist &netlist);
Netlist netlist_from_json(const nlohmann::json &j);
void write_netlist(const std::filesystem::path &path, const Netlist &netlist);
Netlist read_netlist(const std::filesystem::path &path);

} // namespace taqc
