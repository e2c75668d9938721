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

#include "taqc/analysis.hpp"

#include <cmath>
#include <limits>

namespace taqc {

ErrorBudget error_terms(const ProblemSpec &spec, std::size_t k) {
    if (k < 1) {
        throw InvalidArgument("error_terms: k must be at least 1");
    }
    const double kk = static_cast<double>(k);
    const double tau = spec.total_time() / kk;
    const ComplexMatrix h0 = spec.h0().matrix();
    const ComplexMatrix hp = spec.hp().matrix();

    // Schedule sums over s_a = a/k, a = 0..k-1, in closed form.
    const double sum_s = (kk - 1.0) / 2.0;
    const double sum_s2 = (kk - 1.0) * (2.0 * kk - 1.0) / (6.0 * kk);
    const double sum_f2 = kk - 2.0 * sum_s + sum_s2; // sum (1 - s)^2
    const double sum_fg = sum_s - sum_s2;            // sum s (1 - s)

    // -(-i tau)^2 / 2 = tau^2 / 2.
    const double half_tau2 = 0.5 * tau * tau;

    ErrorBudget out;
    out.d1 = 0.5 * tau * (hp - h0);
    out.d2 = half_tau2 * (sum_f2 * h0 * h0 + sum_fg * (h0 * hp + hp * h0) + sum_s2 * hp * hp);
    out.d3 = half_tau2 * sum_fg * (hp * h0 - h0 * hp);

    const auto s = spectral_summary(spec);
    out.predicted_delta = predicted_delta(s.e0g, s.epg, spec.total_time(), k, s.overlap0);
    return out;
}

double predicted_delta(double e0g, double epg, double total_time, std::size_t k, double overlap0) {
    if (k < 1 || !(total_time > 0.0)) {
        throw InvalidArgument("predicted_delta: requires k >= 1 and T > 0");
    }
    const double bracket =
        e0g * e0g + e0g * epg - 3.0 / (2.0 * total_time) * (epg - e0g) + epg * epg;
    return total_time * total_time / (3.0 * static_cast<double>(k)) * overlap0 * bracket;
}

DeltaCoefficients delta_coefficients(double e0g, double total_time, double overlap0) {
    // E0^2 + E0 Ep - 3/(2T) Ep + 3/(2T) E0 + Ep^2, grouped by powers of Ep.
    const double w = 3.0 / (2.0 * total_time);
    return DeltaCoefficients{overlap0 * (e0g * e0g + w * e0g), overlap0 * (e0g - w), overlap0};
}

double DeltaCoefficients::evaluate(double epg, double total_time, std::size_t k) const {
    return total_time * total_time / (3.0 * static_cast<double>(k)) * (a + b * epg + c * epg * epg);
}

SpectralSummary spectral_summary(const ProblemSpec &spec) {
    const auto g0 = ground_state(spec.h0());
    const auto gp = ground_state(spec.hp());
    return SpectralSummary{g0.energy, gp.energy, inner(gp.state, g0.state).real(),
                           g0.degenerate || gp.degenerate};
}

double predicted_trotter_number(const SpectralSummary &s, double total_time, double delta) {
    const double per_k = predicted_delta(s.e0g, s.epg, total_time, 1, s.overlap0);
    if (!(per_k > 0.0) || !(delta > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return per_k / delta;
}

FitResult linear_fit(const std::vector<std::pair<double, double>> &points) {
    const std::size_t n = points.size();
    if (n < 2) {
        throw InvalidArgument("linear_fit: at least two points required");
    }
    double mx = 0.0, my = 0.0;
    for (const auto &[x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto &[x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (!(sxx > 0.0)) {
        throw InvalidArgument("linear_fit: x values have zero variance");
    }
    FitResult fit;
    fit.n_points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto &[x, y] : points) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
    if (n > 2) {
        fit.slope_stderr = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
    }
    return fit;
}

EpgStudy epg_scaling_study(const HpVariant &variant, const std::vector<std::size_t> &n_values,
                           const std::vector<std::uint64_t> &seeds) {
    if (seeds.empty()) {
        throw InvalidArgument("epg_scaling_study: at least one seed required");
    }
    EpgStudy study;
    study.variant = variant;
    for (const std::size_t n : n_values) {
        double sum_sq = 0.0;
        for (const std::uint64_t seed0 : seeds) {
            std::uint64_t seed = seed0;
            GroundState gs = ground_state(build_hp(n, variant, seed));
            // Bounded redraw; a persistent degeneracy is kept and stays visible via `gap`.
            for (int attempt = 0; gs.degenerate && attempt < 16; ++attempt) {
                ++study.redrawn;
                seed += kRedrawSeedOffset;
                gs = ground_state(build_hp(n, variant, seed));
            }
            study.samples.push_back(EpgSample{n, seed, gs.energy, gs.gap});
            sum_sq += gs.energy * gs.energy;
        }
        study.points.emplace_back(static_cast<double>(n), sum_sq / static_cast<double>(seeds.size()));
    }
    study.fit = linear_fit(study.points);
    return study;
}

} // namespace taqc
