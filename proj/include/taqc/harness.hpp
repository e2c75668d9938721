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
 * Trotter-number sweeps: for each Hp structure and system size, the
 * smallest k whose final overlap with the Hp ground state exceeds a
 * threshold, averaged over random instances and fitted against N.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "taqc/analysis.hpp"
#include "taqc/evolution.hpp"
#include "taqc/model.hpp"

namespace taqc {

enum class SearchMode {
    /// Geometric growth to bracket the first passing k, then bisection.
    Bracketed,
    /// k_start, k_start + 1, ... until the first pass.
    Linear,
};

struct KSearch {
    std::size_t k_start = 1;
    double growth_factor = 1.3;
    std::size_t k_max = 1u << 16;
    SearchMode mode = SearchMode::Bracketed;
    /// Bracketed mode: a passing grid point only ends the growth phase if the
    /// next `confirmations` grid points pass as well. 0 accepts the first pass.
    std::size_t confirmations = 0;
};

struct SweepConfig {
    std::vector<HpVariant> variants{HpVariant::pentadiagonal(), HpVariant::random_sparse(0.5),
                                    HpVariant::dense()};
    std::vector<std::size_t> n_values{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    double overlap_threshold = 0.9;
    std::size_t repetitions = 8;
    Level level = Level::Split;
    bool rtf_enabled = true;
    double rtf_eta = 0.1;
    TimeRule time_rule{};
    KSearch k_search{};
    std::uint64_t base_seed = 1;
    std::size_t threads = 1;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// Reads `key = value` text; unspecified keys keep their defaults.
SweepConfig read_sweep_config(std::istream &in, const std::string &source = "<input>");
SweepConfig load_sweep_config(const std::filesystem::path &path);
/// Fully resolved config in the same format.
void write_sweep_config(std::ostream &out, const SweepConfig &config);

struct KSearchResult {
    std::size_t k_min = 0;
    double overlap = 0.0;
    /// No k <= k_max passed; k_min is k_max.
    bool censored = false;
    std::size_t evaluations = 0;
    /// The bisection boundary failed verification and a linear scan was used.
    bool fell_back_to_linear = false;
};

/// Overlap |<psi_ad|psi_f(k)>|^2 for a candidate Trotter number.
using OverlapAt = std::function<double(std::size_t k)>;

/// Smallest k (within the search grid) whose overlap exceeds `threshold`.
KSearchResult find_min_k(const OverlapAt &overlap_at, double threshold, const KSearch &search);

/// find_min_k on a concrete protocol.
KSearchResult find_min_k(const AdiabaticProtocol &protocol, Level level, double rtf_eta,
                         std::uint64_t rtf_seed, double threshold, const KSearch &search);

/// Seed of the duration jitter stream for an instance seed.
std::uint64_t rtf_seed_for(std::uint64_t instance_seed);

struct SweepRecord {
    std::string variant;
    std::size_t n_modes = 0;
    std::uint64_t seed = 0;
    std::size_t k_min = 0;
    double overlap = 0.0;
    bool rtf = false;
    double elapsed_seconds = 0.0;
    bool censored = false;
};

/// Linear fit of the instance-averaged k against N for one series.
struct SeriesFit {
    std::string variant;
    bool rtf = false;
    std::vector<std::pair<double, double>> points;
    std::optional<FitResult> fit;
    std::size_t censored = 0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<SeriesFit> fits;
};

/// Called once per finished record, from one thread at a time.
using RecordSink = std::function<void(const SweepRecord &)>;

/// Runs every (variant, N, instance, rtf) task on `config.threads` workers.
/// Records are returned in canonical order regardless of thread count.
SweepResult run_sweep(const SweepConfig &config, const RecordSink &sink = {});

/// Groups records by (variant, rtf), averages k over non-censored instances
/// per N and fits against N.
std::vector<SeriesFit> fit_series(const std::vector<SweepRecord> &records);

/// Canonical order: variant, rtf, N, seed.
void sort_records(std::vector<SweepRecord> &records);

inline constexpr const char *kSweepCsvHeader = "variant,N,seed,k_min,overlap,rtf,elapsed_s";

std::string format_sig(double v, int digits = 12);
std::string to_csv_row(const SweepRecord &r);
/// Parses the CSV written by run_sweep. `threshold` marks censored rows
/// (overlap not above it).
std::vector<SweepRecord> read_sweep_csv(std::istream &in, double threshold,
                                        const std::string &source = "<input>");

} // namespace taqc
