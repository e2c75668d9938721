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
 * Leading-order error analysis and regression helpers for the k-N study.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "taqc/linalg.hpp"
#include "taqc/model.hpp"

namespace taqc {

/// Leading error operators of the Trotterized evolution, with tau = T/k and
/// s_a = a/k:
///
///   d1 = tau (Hp - H0) / 2                         continuum -> finite difference
///   d2 = -(-i tau)^2 / 2 sum_a H(s_a)^2             finite difference -> step product
///   d3 = -(-i tau)^2 / 2 sum_a s_a (1 - s_a) [Hp, H0]  step product -> split product
///
/// The schedule weights in d3 come from H(s) = (1 - s) H0 + s Hp.
struct ErrorBudget {
    ComplexMatrix d1;
    ComplexMatrix d2;
    ComplexMatrix d3;
    double predicted_delta = 0.0;

    [[nodiscard]] ComplexMatrix total() const { return d1 + d2 + d3; }
};

ErrorBudget error_terms(const ProblemSpec &spec, std::size_t k);

/// Delta_pred = T^2 / (3k) * overlap0 * [E0^2 + E0 Ep - 3/(2T) (Ep - E0) + Ep^2],
/// overlap0 = Re<psi_ad|psi_0>.
double predicted_delta(double e0g, double epg, double total_time, std::size_t k, double overlap0);

/// The same bracket regrouped as A + B Ep + C Ep^2, so that
/// Delta_pred = T^2 / (3k) (A + B Ep + C Ep^2).
struct DeltaCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    [[nodiscard]] double evaluate(double epg, double total_time, std::size_t k) const;
};

DeltaCoefficients delta_coefficients(double e0g, double total_time, double overlap0);

/// E0g, Epg and Re<psi_ad|psi_0> for a spec.
struct SpectralSummary {
    double e0g = 0.0;
    double epg = 0.0;
    double overlap0 = 0.0;
    bool degenerate = false;
};

SpectralSummary spectral_summary(const ProblemSpec &spec);

/// Inverts predicted_delta for k; returns +inf when the bracket is not positive.
double predicted_trotter_number(const SpectralSummary &s, double total_time, double delta);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    /// 1 when the data have no y variance (the fit is exact).
    double r_squared = 0.0;
    /// Standard error of the slope; 0 for two points.
    double slope_stderr = 0.0;
    std::size_t n_points = 0;
};

/// Ordinary least squares. Rejects fewer than two points or zero x variance.
FitResult linear_fit(const std::vector<std::pair<double, double>> &points);

struct EpgSample {
    std::size_t n_modes = 0;
    std::uint64_t seed = 0;
    double energy = 0.0;
    double gap = 0.0;
};

struct EpgStudy {
    HpVariant variant;
    std::vector<EpgSample> samples;
    /// (N, mean E_pg^2) per N.
    std::vector<std::pair<double, double>> points;
    FitResult fit;
    /// Instances redrawn because the ground level was degenerate.
    std::size_t redrawn = 0;
};

/// Seed offset applied when an instance has a degenerate ground level.
inline constexpr std::uint64_t kRedrawSeedOffset = 1'000'003;

/// Ground energies of Hp over N and seeds, fitted as E_pg^2 against N.
EpgStudy epg_scaling_study(const HpVariant &variant, const std::vector<std::size_t> &n_values,
                           const std::vector<std::uint64_t> &seeds);

} // namespace taqc
