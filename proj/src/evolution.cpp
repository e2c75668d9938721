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

#include "taqc/evolution.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "taqc/circuit.hpp"
#include "taqc/optics.hpp"

namespace taqc {

namespace {

double fraction(std::size_t a, std::size_t k) {
    return static_cast<double>(a) / static_cast<double>(k);
}

void check_durations(const StepDurations &durations) {
    if (durations.k() == 0) {
        throw InvalidArgument("evolution: at least one step required");
    }
}

/// Accepts roundoff drift that grows linearly with the step count, then renormalizes.
StateVector finish(const ComplexVector &amps, std::size_t steps) {
    const double tol =
        Tolerances::normalization + Tolerances::drift_per_step * static_cast<double>(steps);
    const double drift = std::abs(amps.squaredNorm() - 1.0);
    if (!(drift <= tol)) {
        throw std::runtime_error("propagation lost normalization: drift " + std::to_string(drift));
    }
    return StateVector::normalized(amps);
}

} // namespace

std::string to_string(Level level) {
    switch (level) {
    case Level::StepExact:
        return "step-exact";
    case Level::Split:
        return "split";
    case Level::GateLevel:
        return "gate-level";
    }
    return "unknown";
}

Level parse_level(const std::string &text) {
    if (text == "step-exact" || text == "exact") {
        return Level::StepExact;
    }
    if (text == "split") {
        return Level::Split;
    }
    if (text == "gate-level" || text == "gate") {
        return Level::GateLevel;
    }
    throw InvalidArgument("unknown evolution level `" + text + "`");
}

void TrotterConfig::validate() const {
    if (k < 1) {
        throw InvalidArgument("TrotterConfig: k must be at least 1");
    }
    if (!(rtf_amplitude >= 0.0 && rtf_amplitude < 1.0)) {
        throw InvalidArgument("TrotterConfig: RTF amplitude must lie in [0, 1)");
    }
}

double StepDurations::total() const { return std::accumulate(taus.begin(), taus.end(), 0.0); }

StepDurations rtf_durations(double total_time, std::size_t k, double eta, std::uint64_t seed) {
    if (k < 1) {
        throw InvalidArgument("rtf_durations: k must be at least 1");
    }
    if (!(eta >= 0.0 && eta < 1.0)) {
        throw InvalidArgument("rtf_durations: eta must lie in [0, 1)");
    }
    const double tau = total_time / static_cast<double>(k);
    StepDurations out{std::vector<double>(k, tau)};
    if (eta == 0.0) {
        return out;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> g(-eta, eta);
    for (auto &t : out.taus) {
        t = tau * (1.0 + g(rng));
    }
    return out;
}

StepDurations durations_for(const ProblemSpec &spec, const TrotterConfig &config) {
    config.validate();
    return rtf_durations(spec.total_time(), config.k, config.rtf_amplitude, config.seed);
}

UnitaryMatrix evolve_step_exact(const ProblemSpec &spec, const StepDurations &durations) {
    check_durations(durations);
    const std::size_t k = durations.k();
    UnitaryMatrix u = UnitaryMatrix::identity(spec.n_modes());
    for (std::size_t a = 0; a < k; ++a) {
        u = unitary_of(hamiltonian_at_fraction(spec, fraction(a, k)), durations.taus[a]) * u;
    }
    return u;
}

UnitaryMatrix evolve_split(const ProblemSpec &spec, const StepDurations &durations) {
    check_durations(durations);
    const std::size_t k = durations.k();
    const HermitianMatrix h0 = spec.h0();
    const Eigensystem hp_eig = eig_hermitian(spec.hp());
    UnitaryMatrix u = UnitaryMatrix::identity(spec.n_modes());
    for (std::size_t a = 0; a < k; ++a) {
        const double s = fraction(a, k);
        const double tau = durations.taus[a];
        u = unitary_of(hp_eig, s * tau) * (unitary_of(h0, (1.0 - s) * tau) * u);
    }
    return u;
}

StateVector evolve_gate_level(const ProblemSpec &spec, const StepDurations &durations,
                              const StateVector &psi) {
    check_durations(durations);
    if (psi.dim() != spec.n_modes()) {
        throw InvalidArgument("evolve_gate_level: state dimension mismatch");
    }
    const std::size_t k = durations.k();
    ComplexVector amps = psi.amplitudes();
    for (std::size_t a = 0; a < k; ++a) {
        apply_in_place(compile_cell(spec, a, k, durations.taus[a]), amps);
    }
    return finish(amps, k);
}

namespace {

ComplexVector propagate_split(const ProblemSpec &spec, const Eigensystem &hp_eig,
                              const StepDurations &durations, ComplexVector amps) {
    const std::size_t k = durations.k();
    const auto &e0 = spec.h0_diag();
    for (std::size_t a = 0; a < k; ++a) {
        const double s = fraction(a, k);
        const double tau = durations.taus[a];
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            amps(i) *= std::polar(1.0, -(1.0 - s) * tau * e0[static_cast<std::size_t>(i)]);
        }
        if (s != 0.0) {
            amps = apply_exponential(hp_eig, s * tau, amps);
        }
    }
    return amps;
}

ComplexVector propagate_step_exact(const ProblemSpec &spec, const StepDurations &durations,
                                   ComplexVector amps) {
    const std::size_t k = durations.k();
    for (std::size_t a = 0; a < k; ++a) {
        const auto eig = eig_hermitian(hamiltonian_at_fraction(spec, fraction(a, k)));
        amps = apply_exponential(eig, durations.taus[a], amps);
    }
    return amps;
}

} // namespace

StateVector propagate(const ProblemSpec &spec, const StepDurations &durations, Level level,
                      const StateVector &psi) {
    check_durations(durations);
    if (psi.dim() != spec.n_modes()) {
        throw InvalidArgument("propagate: state dimension mismatch");
    }
    switch (level) {
    case Level::StepExact:
        return finish(propagate_step_exact(spec, durations, psi.amplitudes()), durations.k());
    case Level::Split:
        return finish(
            propagate_split(spec, eig_hermitian(spec.hp()), durations, psi.amplitudes()),
            durations.k());
    case Level::GateLevel:
        return evolve_gate_level(spec, durations, psi);
    }
    throw InvalidArgument("propagate: unknown level");
}

AdiabaticProtocol::AdiabaticProtocol(ProblemSpec spec)
    : spec_(std::move(spec)), initial_(ground_state(spec_.h0())),
      target_(ground_state(spec_.hp())), hp_eig_(eig_hermitian(spec_.hp())) {}

StateVector AdiabaticProtocol::evolve(const StepDurations &durations, Level level) const {
    check_durations(durations);
    if (level == Level::Split) {
        return finish(propagate_split(spec_, hp_eig_, durations, initial_.state.amplitudes()),
                      durations.k());
    }
    return propagate(spec_, durations, level, initial_.state);
}

ProtocolResult AdiabaticProtocol::run(const TrotterConfig &config) const {
    config.validate();
    StateVector psi_f = evolve(durations_for(spec_, config), config.level);
    const double delta = infidelity(target_.state, psi_f);
    return ProtocolResult{std::move(psi_f), delta, degenerate()};
}

ProtocolResult run_protocol(const ProblemSpec &spec, const TrotterConfig &config) {
    return AdiabaticProtocol(spec).run(config);
}

} // namespace taqc
