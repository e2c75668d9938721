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

#include "taqc/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <utility>

#include "taqc/keyvalue.hpp"

namespace taqc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

double draw_open_unit(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    double v = 0.0;
    while (v == 0.0) {
        v = dist(rng);
    }
    return v;
}

std::vector<std::pair<std::size_t, std::size_t>> coupling_pattern(std::size_t n,
                                                                  const HpVariant &variant,
                                                                  std::mt19937_64 &rng) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    switch (variant.kind) {
    case HpKind::Pentadiagonal:
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t n2 = m + 1; n2 < std::min(n, m + 3); ++n2) {
                pairs.emplace_back(m, n2);
            }
        }
        break;
    case HpKind::Dense:
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t n2 = m + 1; n2 < n; ++n2) {
                pairs.emplace_back(m, n2);
            }
        }
        break;
    case HpKind::RandomSparse: {
        std::vector<std::pair<std::size_t, std::size_t>> all;
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t n2 = m + 1; n2 < n; ++n2) {
                all.emplace_back(m, n2);
            }
        }
        // Occupied cells = N (diagonal) + 2 * pairs.
        const double target_cells = variant.density * static_cast<double>(n * n);
        const double wanted = std::round((target_cells - static_cast<double>(n)) / 2.0);
        const auto count =
            static_cast<std::size_t>(std::clamp(wanted, 0.0, static_cast<double>(all.size())));
        // Partial Fisher-Yates: the first `count` slots become a uniform sample.
        for (std::size_t i = 0; i < count; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
            std::swap(all[i], all[pick(rng)]);
        }
        all.resize(count);
        std::sort(all.begin(), all.end());
        pairs = std::move(all);
        break;
    }
    }
    return pairs;
}

} // namespace

HpVariant HpVariant::random_sparse(double density) {
    if (!(density > 0.0 && density <= 1.0)) {
        throw InvalidArgument("HpVariant: density must lie in (0, 1]");
    }
    return {HpKind::RandomSparse, density};
}

HpVariant HpVariant::parse(const std::string &text) {
    if (text == "pentadiagonal" || text == "penta") {
        return pentadiagonal();
    }
    if (text == "dense") {
        return dense();
    }
    if (text == "sparse") {
        return random_sparse(0.5);
    }
    if (text.rfind("sparse:", 0) == 0) {
        const std::string num = text.substr(7);
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(num, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != num.size()) {
            throw InvalidArgument("HpVariant: bad density in `" + text + "`");
        }
        return random_sparse(d);
    }
    throw InvalidArgument("HpVariant: unknown variant `" + text + "`");
}

std::string HpVariant::name() const {
    switch (kind) {
    case HpKind::Pentadiagonal:
        return "pentadiagonal";
    case HpKind::Dense:
        return "dense";
    case HpKind::RandomSparse:
        return density == 0.5 ? "sparse" : "sparse:" + format_double(density);
    }
    return "unknown";
}

double TimeRule::total_time(std::size_t n_modes) const {
    return coefficient * std::pow(static_cast<double>(n_modes), exponent);
}

ProblemSpec ProblemSpec::create(std::vector<double> h0_diag, std::vector<double> hp_diag,
                                ComplexMatrix couplings, double total_time) {
    const std::size_t n = h0_diag.size();
    if (n == 0) {
        throw InvalidArgument("ProblemSpec: at least one mode required");
    }
    if (hp_diag.size() != n || couplings.rows() != idx(n) || couplings.cols() != idx(n)) {
        throw InvalidArgument("ProblemSpec: inconsistent dimensions");
    }
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
        throw InvalidArgument("ProblemSpec: total time must be positive and finite");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(h0_diag[i]) || !std::isfinite(hp_diag[i])) {
            throw InvalidArgument("ProblemSpec: non-finite diagonal energy");
        }
        if (couplings(idx(i), idx(i)) != Complex(0.0)) {
            throw InvalidArgument("ProblemSpec: coupling diagonal must be zero");
        }
    }
    // Reuses the Hermitian check and takes the exactly symmetric part.
    const auto sym = HermitianMatrix::from_entries(couplings);
    ProblemSpec spec;
    spec.h0_diag_ = std::move(h0_diag);
    spec.hp_diag_ = std::move(hp_diag);
    spec.couplings_ = sym.matrix();
    spec.total_time_ = total_time;
    return spec;
}

ProblemSpec ProblemSpec::from_matrices(const HermitianMatrix &h0, const HermitianMatrix &hp,
                                       double total_time) {
    if (h0.dim() != hp.dim()) {
        throw InvalidArgument("ProblemSpec: H0 and Hp dimensions differ");
    }
    const std::size_t n = h0.dim();
    std::vector<double> d0(n), dp(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && h0(i, j) != Complex(0.0)) {
                throw InvalidArgument("ProblemSpec: H0 must be diagonal");
            }
        }
        d0[i] = h0(i, i).real();
        dp[i] = hp(i, i).real();
    }
    ComplexMatrix j = hp.matrix();
    j.diagonal().setZero();
    return create(std::move(d0), std::move(dp), std::move(j), total_time);
}

HermitianMatrix ProblemSpec::h0() const { return HermitianMatrix::diagonal(h0_diag_); }

HermitianMatrix ProblemSpec::hp() const {
    ComplexMatrix m = couplings_;
    for (std::size_t i = 0; i < n_modes(); ++i) {
        m(idx(i), idx(i)) = hp_diag_[i];
    }
    return HermitianMatrix::from_entries(m, 0.0);
}

bool ProblemSpec::has_couplings() const { return !couplings_.isZero(0.0); }

ProblemSpec ProblemSpec::with_total_time(double total_time) const {
    return create(h0_diag_, hp_diag_, couplings_, total_time);
}

HermitianMatrix build_h0(std::size_t n_modes) {
    if (n_modes == 0) {
        throw InvalidArgument("build_h0: N must be at least 1");
    }
    std::vector<double> d(n_modes);
    for (std::size_t i = 0; i < n_modes; ++i) {
        d[i] = static_cast<double>(i) + 0.5;
    }
    return HermitianMatrix::diagonal(d);
}

HermitianMatrix build_hp(std::size_t n_modes, const HpVariant &variant, std::uint64_t seed) {
    if (n_modes == 0) {
        throw InvalidArgument("build_hp: N must be at least 1");
    }
    if (variant.kind == HpKind::RandomSparse && !(variant.density > 0.0 && variant.density <= 1.0)) {
        throw InvalidArgument("build_hp: density must lie in (0, 1]");
    }
    std::mt19937_64 rng(seed);
    ComplexMatrix m = ComplexMatrix::Zero(idx(n_modes), idx(n_modes));
    for (std::size_t i = 0; i < n_modes; ++i) {
        m(idx(i), idx(i)) = static_cast<double>(i);
    }
    for (const auto &[a, b] : coupling_pattern(n_modes, variant, rng)) {
        const double v = draw_open_unit(rng);
        m(idx(a), idx(b)) = v;
        m(idx(b), idx(a)) = v;
    }
    return HermitianMatrix::from_entries(m, 0.0);
}

ProblemSpec make_problem(std::size_t n_modes, const HpVariant &variant, std::uint64_t seed,
                         double total_time) {
    return ProblemSpec::from_matrices(build_h0(n_modes), build_hp(n_modes, variant, seed),
                                      total_time);
}

HermitianMatrix hamiltonian_at_fraction(const ProblemSpec &spec, double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw InvalidArgument("hamiltonian_at: schedule fraction outside [0, 1]");
    }
    ComplexMatrix m = s * spec.couplings();
    for (std::size_t i = 0; i < spec.n_modes(); ++i) {
        m(idx(i), idx(i)) = (1.0 - s) * spec.h0_diag()[i] + s * spec.hp_diag()[i];
    }
    return HermitianMatrix::from_entries(m, 0.0);
}

HermitianMatrix hamiltonian_at(const ProblemSpec &spec, double t) {
    if (!(t >= 0.0 && t <= spec.total_time())) {
        throw InvalidArgument("hamiltonian_at: t outside [0, T]");
    }
    return hamiltonian_at_fraction(spec, t / spec.total_time());
}

GroundState ground_state(const HermitianMatrix &h) {
    const Eigensystem eig = eig_hermitian(h);
    ComplexVector v = eig.vectors.matrix().col(0);
    Eigen::Index big = 0;
    v.cwiseAbs().maxCoeff(&big);
    v *= std::conj(v(big)) / std::abs(v(big));
    v(big) = std::abs(v(big));
    GroundState gs{eig.values(0), StateVector::normalized(v), false, 0.0};
    if (h.dim() > 1) {
        gs.gap = eig.values(1) - eig.values(0);
        gs.degenerate = gs.gap < Tolerances::degenerate_gap;
    }
    return gs;
}

double structural_density(const HermitianMatrix &h) {
    const std::size_t n = h.dim();
    std::size_t occupied = n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && h(i, j) != Complex(0.0)) {
                ++occupied;
            }
        }
    }
    return static_cast<double>(occupied) / static_cast<double>(n * n);
}

void write_problem(std::ostream &out, const ProblemSpec &spec) {
    const auto join = [](const std::vector<double> &xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            s += (i ? ", " : "") + format_double(xs[i]);
        }
        return s;
    };
    out << "n_modes = " << spec.n_modes() << '\n';
    out << "total_time = " << format_double(spec.total_time()) << '\n';
    out << "h0_diag = " << join(spec.h0_diag()) << '\n';
    out << "hp_diag = " << join(spec.hp_diag()) << '\n';
    for (std::size_t m = 0; m < spec.n_modes(); ++m) {
        for (std::size_t n = m + 1; n < spec.n_modes(); ++n) {
            const Complex j = spec.coupling(m, n);
            if (j != Complex(0.0)) {
                out << "coupling = " << m << ", " << n << ", " << format_double(j.real())
                    << ", " << format_double(j.imag()) << '\n';
            }
        }
    }
}

ProblemSpec read_problem(std::istream &in, const std::string &source) {
    const auto file = KeyValueFile::parse(in, source);
    file.require_known({"n_modes", "total_time", "h0_diag", "hp_diag", "coupling", "variant",
                        "seed", "time_coefficient", "time_exponent"});
    const auto *n_entry = file.find("n_modes");
    if (n_entry == nullptr) {
        throw ConfigError(source + ": missing `n_modes`");
    }
    const auto n_raw = parse_int(file, *n_entry);
    if (n_raw < 1) {
        throw ConfigError(file.location(*n_entry) + ": `n_modes` must be at least 1");
    }
    const auto n = static_cast<std::size_t>(n_raw);

    TimeRule rule;
    if (const auto *e = file.find("time_coefficient")) {
        rule.coefficient = parse_double(file, *e);
    }
    if (const auto *e = file.find("time_exponent")) {
        rule.exponent = parse_double(file, *e);
    }
    double total_time = rule.total_time(n);
    if (const auto *e = file.find("total_time")) {
        total_time = parse_double(file, *e);
        if (!(total_time > 0.0)) {
            throw ConfigError(file.location(*e) + ": `total_time` must be positive");
        }
    }

    if (const auto *v = file.find("variant")) {
        HpVariant variant;
        try {
            variant = HpVariant::parse(v->value);
        } catch (const InvalidArgument &err) {
            throw ConfigError(file.location(*v) + ": " + err.what());
        }
        std::uint64_t seed = 0;
        if (const auto *e = file.find("seed")) {
            seed = parse_uint(file, *e);
        }
        for (const char *explicit_key : {"h0_diag", "hp_diag", "coupling"}) {
            if (const auto *e = file.find(explicit_key)) {
                throw ConfigError(file.location(*e) + ": `" + explicit_key +
                                  "` cannot be combined with `variant`");
            }
        }
        return make_problem(n, variant, seed, total_time);
    }

    const auto read_diag = [&](const char *key) {
        const auto *e = file.find(key);
        if (e == nullptr) {
            throw ConfigError(source + ": missing `" + std::string(key) + "`");
        }
        auto xs = parse_double_list(file, *e);
        if (xs.size() != n) {
            throw ConfigError(file.location(*e) + ": `" + std::string(key) + "` needs " +
                              std::to_string(n) + " values");
        }
        return xs;
    };
    auto h0 = read_diag("h0_diag");
    auto hp = read_diag("hp_diag");
    ComplexMatrix j = ComplexMatrix::Zero(idx(n), idx(n));
    for (const auto *e : file.find_all("coupling")) {
        const auto xs = parse_double_list(file, *e);
        if (xs.size() != 4) {
            throw ConfigError(file.location(*e) + ": `coupling` expects m, n, re, im");
        }
        const auto m = static_cast<long long>(xs[0]);
        const auto nn = static_cast<long long>(xs[1]);
        if (static_cast<double>(m) != xs[0] || static_cast<double>(nn) != xs[1] || m < 0 ||
            nn < 0 || m >= static_cast<long long>(n) || nn >= static_cast<long long>(n) ||
            m == nn) {
            throw ConfigError(file.location(*e) + ": `coupling` mode indices invalid");
        }
        const Complex val(xs[2], xs[3]);
        j(m, nn) = val;
        j(nn, m) = std::conj(val);
    }
    try {
        return ProblemSpec::create(std::move(h0), std::move(hp), std::move(j), total_time);
    } catch (const InvalidArgument &err) {
        throw ConfigError(source + ": " + err.what());
    }
}

ProblemSpec load_problem(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string() + ": file not found");
    }
    return read_problem(in, path.string());
}

} // namespace taqc
