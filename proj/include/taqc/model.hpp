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
 * Problem Hamiltonians for the adiabatic protocol.
 *
 * H0 = sum_s eps_s b_s^dagger b_s and
 * Hp = sum_l eps'_l b_l^dagger b_l + sum_{m != n} J_mn b_m^dagger b_n,
 * both represented on the one-photon subspace, where b_m^dagger b_n is the
 * matrix unit |m><n|.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "taqc/linalg.hpp"

namespace taqc {

enum class HpKind { Pentadiagonal, RandomSparse, Dense };

/// Off-diagonal structure of a generated problem Hamiltonian.
struct HpVariant {
    HpKind kind = HpKind::Dense;
    /// Target fraction of occupied cells, diagonal included. Only used by RandomSparse.
    double density = 1.0;

    static HpVariant pentadiagonal() { return {HpKind::Pentadiagonal, 1.0}; }
    static HpVariant random_sparse(double density);
    static HpVariant dense() { return {HpKind::Dense, 1.0}; }

    /// "pentadiagonal", "dense", "sparse" or "sparse:<density>".
    static HpVariant parse(const std::string &text);
    [[nodiscard]] std::string name() const;

    friend bool operator==(const HpVariant &, const HpVariant &) = default;
};

/// T = coefficient * N^exponent.
struct TimeRule {
    double coefficient = 10.0;
    double exponent = 0.5;

    [[nodiscard]] double total_time(std::size_t n_modes) const;
};

/// Diagonal energies of H0 and Hp, the coupling matrix J and the total time T.
class ProblemSpec {
  public:
    /// Rejects mismatched sizes, a non-Hermitian J, a nonzero J diagonal and T <= 0.
    static ProblemSpec create(std::vector<double> h0_diag, std::vector<double> hp_diag,
                              ComplexMatrix couplings, double total_time);
    /// Splits a full Hp into diagonal and couplings.
    static ProblemSpec from_matrices(const HermitianMatrix &h0, const HermitianMatrix &hp,
                                     double total_time);

    [[nodiscard]] std::size_t n_modes() const { return h0_diag_.size(); }
    [[nodiscard]] const std::vector<double> &h0_diag() const { return h0_diag_; }
    [[nodiscard]] const std::vector<double> &hp_diag() const { return hp_diag_; }
    [[nodiscard]] const ComplexMatrix &couplings() const { return couplings_; }
    [[nodiscard]] Complex coupling(std::size_t m, std::size_t n) const {
        return couplings_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    }
    [[nodiscard]] double total_time() const { return total_time_; }

    [[nodiscard]] HermitianMatrix h0() const;
    [[nodiscard]] HermitianMatrix hp() const;
    [[nodiscard]] bool has_couplings() const;

    [[nodiscard]] ProblemSpec with_total_time(double total_time) const;

  private:
    ProblemSpec() = default;
    std::vector<double> h0_diag_;
    std::vector<double> hp_diag_;
    ComplexMatrix couplings_;
    double total_time_ = 1.0;
};

/// diag(0.5, 1.5, ..., N - 0.5).
HermitianMatrix build_h0(std::size_t n_modes);

/// Diagonal (0, 1, ..., N-1) plus real uniform(0, 1) couplings on the
/// variant's pattern. Deterministic in `seed`.
HermitianMatrix build_hp(std::size_t n_modes, const HpVariant &variant, std::uint64_t seed);

/// build_h0 / build_hp bundled with T.
ProblemSpec make_problem(std::size_t n_modes, const HpVariant &variant, std::uint64_t seed,
                         double total_time);

/// (1 - t/T) H0 + (t/T) Hp, for 0 <= t <= T.
HermitianMatrix hamiltonian_at(const ProblemSpec &spec, double t);

/// Same as hamiltonian_at with the schedule fraction s = t/T given directly.
HermitianMatrix hamiltonian_at_fraction(const ProblemSpec &spec, double s);

struct GroundState {
    double energy = 0.0;
    StateVector state;
    /// Set when the two lowest levels are closer than Tolerances::degenerate_gap.
    bool degenerate = false;
    double gap = 0.0;
};

/// Lowest eigenpair; the phase makes the largest-magnitude amplitude real positive.
GroundState ground_state(const HermitianMatrix &h);

/// (N + nonzero off-diagonal cells) / N^2. Diagonal cells count as occupied.
double structural_density(const HermitianMatrix &h);

/// Plain-text `key = value` problem file. See README for the schema.
void write_problem(std::ostream &out, const ProblemSpec &spec);
ProblemSpec read_problem(std::istream &in, const std::string &source = "<input>");
ProblemSpec load_problem(const std::filesystem::path &path);

} // namespace taqc
