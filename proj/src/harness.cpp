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

#include "taqc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "taqc/keyvalue.hpp"

namespace taqc {

void SweepConfig::validate() const {
    if (variants.empty()) {
        throw ConfigError("sweep config: no variants");
    }
    if (n_values.empty()) {
        throw ConfigError("sweep config: no N values");
    }
    for (const auto n : n_values) {
        if (n < 2) {
            throw ConfigError("sweep config: every N must be at least 2");
        }
    }
    if (!(overlap_threshold > 0.0 && overlap_threshold < 1.0)) {
        throw ConfigError("sweep config: overlap_threshold must lie in (0, 1)");
    }
    if (repetitions < 1) {
        throw ConfigError("sweep config: repetitions must be at least 1");
    }
    if (!(rtf_eta >= 0.0 && rtf_eta < 1.0)) {
        throw ConfigError("sweep config: rtf_eta must lie in [0, 1)");
    }
    if (!(time_rule.coefficient > 0.0) || !std::isfinite(time_rule.exponent)) {
        throw ConfigError("sweep config: time rule must give a positive T");
    }
    if (k_search.k_start < 1 || k_search.k_start > k_search.k_max) {
        throw ConfigError("sweep config: need 1 <= k_start <= k_max");
    }
    if (!(k_search.growth_factor > 1.0)) {
        throw ConfigError("sweep config: growth_factor must exceed 1");
    }
    if (threads < 1) {
        throw ConfigError("sweep config: threads must be at least 1");
    }
}

SweepConfig read_sweep_config(std::istream &in, const std::string &source) {
    const auto f = KeyValueFile::parse(in, source);
    f.require_known({"variants", "n_values", "overlap_threshold", "repetitions", "level",
                     "rtf_enabled", "rtf_eta", "time_coefficient", "time_exponent", "k_start",
                     "growth_factor", "k_max", "search", "confirmations", "base_seed",
                     "threads"});
    SweepConfig c;
    const auto positive_size = [&](const KeyValueEntry &e) {
        const auto v = parse_int(f, e);
        if (v < 0) {
            throw ConfigError(f.location(e) + ": `" + e.key + "` must be non-negative");
        }
        return static_cast<std::size_t>(v);
    };
    for (const auto &e : f.entries()) {
        try {
            if (e.key == "variants") {
                c.variants.clear();
                for (const auto &item : split_list(e.value)) {
                    c.variants.push_back(HpVariant::parse(item));
                }
            } else if (e.key == "n_values") {
                c.n_values.clear();
                for (const auto v : parse_int_list(f, e)) {
                    if (v < 0) {
                        throw ConfigError(f.location(e) + ": N must be positive");
                    }
                    c.n_values.push_back(static_cast<std::size_t>(v));
                }
            } else if (e.key == "overlap_threshold") {
                c.overlap_threshold = parse_double(f, e);
            } else if (e.key == "repetitions") {
                c.repetitions = positive_size(e);
            } else if (e.key == "level") {
                c.level = parse_level(e.value);
            } else if (e.key == "rtf_enabled") {
                c.rtf_enabled = parse_bool(f, e);
            } else if (e.key == "rtf_eta") {
                c.rtf_eta = parse_double(f, e);
            } else if (e.key == "time_coefficient") {
                c.time_rule.coefficient = parse_double(f, e);
            } else if (e.key == "time_exponent") {
                c.time_rule.exponent = parse_double(f, e);
            } else if (e.key == "k_start") {
                c.k_search.k_start = positive_size(e);
            } else if (e.key == "growth_factor") {
                c.k_search.growth_factor = parse_double(f, e);
            } else if (e.key == "k_max") {
                c.k_search.k_max = positive_size(e);
            } else if (e.key == "search") {
                if (e.value == "bracketed") {
                    c.k_search.mode = SearchMode::Bracketed;
                } else if (e.value == "linear") {
                    c.k_search.mode = SearchMode::Linear;
                } else {
                    throw ConfigError(f.location(e) + ": `search` must be bracketed or linear");
                }
            } else if (e.key == "confirmations") {
                c.k_search.confirmations = positive_size(e);
            } else if (e.key == "base_seed") {
                c.base_seed = parse_uint(f, e);
            } else if (e.key == "threads") {
                c.threads = positive_size(e);
            }
        } catch (const InvalidArgument &err) {
            throw ConfigError(f.location(e) + ": " + err.what());
        }
    }
    try {
        c.validate();
    } catch (const ConfigError &err) {
        throw ConfigError(source + ": " + err.what());
    }
    return c;
}

SweepConfig load_sweep_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string() + ": file not found");
    }
    return read_sweep_config(in, path.string());
}

void write_sweep_config(std::ostream &out, const SweepConfig &c) {
    const auto join = [](const auto &xs, auto fmt) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            s += (i ? ", " : "") + fmt(xs[i]);
        }
        return s;
    };
    out << "variants = "
        << join(c.variants, [](const HpVariant &v) { return v.name(); }) << '\n';
    out << "n_values = " << join(c.n_values, [](std::size_t n) { return std::to_string(n); })
        << '\n';
    out << "overlap_threshold = " << format_double(c.overlap_threshold) << '\n';
    out << "repetitions = " << c.repetitions << '\n';
    out << "level = " << to_string(c.level) << '\n';
    out << "rtf_enabled = " << (c.rtf_enabled ? "true" : "false") << '\n';
    out << "rtf_eta = " << format_double(c.rtf_eta) << '\n';
    out << "time_coefficient = " << format_double(c.time_rule.coefficient) << '\n';
    out << "time_exponent = " << format_double(c.time_rule.exponent) << '\n';
    out << "k_start = " << c.k_search.k_start << '\n';
    out << "growth_factor = " << format_double(c.k_search.growth_factor) << '\n';
    out << "k_max = " << c.k_search.k_max << '\n';
    out << "search = " << (c.k_search.mode == SearchMode::Linear ? "linear" : "bracketed")
        << '\n';
    out << "confirmations = " << c.k_search.confirmations << '\n';
    out << "base_seed = " << c.base_seed << '\n';
    out << "threads = " << c.threads << '\n';
}

KSearchResult find_min_k(const OverlapAt &overlap_at, double threshold, const KSearch &search) {
    if (search.k_start < 1 || search.k_start > search.k_max || !(search.growth_factor > 1.0)) {
        throw InvalidArgument("find_min_k: invalid search parameters");
    }
    KSearchResult result;
    std::map<std::size_t, double> seen;
    const auto eval = [&](std::size_t k) {
        auto it = seen.find(k);
        if (it == seen.end()) {
            ++result.evaluations;
            it = seen.emplace(k, overlap_at(k)).first;
        }
        return it->second;
    };
    const auto passes = [&](std::size_t k) { return eval(k) > threshold; };
    const auto linear_scan = [&](std::size_t from, std::size_t to) -> std::optional<std::size_t> {
        for (std::size_t k = from; k <= to; ++k) {
            if (passes(k)) {
                return k;
            }
        }
        return std::nullopt;
    };

    if (search.mode == SearchMode::Linear) {
        if (const auto k = linear_scan(search.k_start, search.k_max)) {
            result.k_min = *k;
        } else {
            result.k_min = search.k_max;
            result.censored = true;
        }
        result.overlap = eval(result.k_min);
        return result;
    }

    const auto grow = [&](std::size_t k) {
        const auto grown =
            static_cast<std::size_t>(std::ceil(static_cast<double>(k) * search.growth_factor));
        return std::min(search.k_max, std::max(k + 1, grown));
    };
    // A pass counts once the following grid points pass too; isolated passes
    // occur where tau times the spectral width of Hp exceeds 2 pi.
    const auto confirmed = [&](std::size_t k) {
        for (std::size_t c = 0; c < search.confirmations && k < search.k_max; ++c) {
            k = grow(k);
            if (!passes(k)) {
                return false;
            }
        }
        return true;
    };

    std::size_t k = search.k_start;
    std::optional<std::size_t> last_fail;
    while (!(passes(k) && confirmed(k))) {
        last_fail = k;
        if (k >= search.k_max) {
            result.k_min = search.k_max;
            result.overlap = eval(search.k_max);
            result.censored = true;
            return result;
        }
        k = grow(k);
    }

    std::size_t hi = k;
    if (last_fail) {
        std::size_t lo = *last_fail;
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (passes(mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // The boundary must pass with its left neighbour failing.
        if (!passes(hi) || (hi > search.k_start && passes(hi - 1))) {
            result.fell_back_to_linear = true;
            hi = linear_scan(*last_fail + 1, k).value_or(k);
        }
    }
    result.k_min = hi;
    result.overlap = eval(hi);
    return result;
}

std::uint64_t rtf_seed_for(std::uint64_t instance_seed) {
    // splitmix64 finalizer, so duration jitter is decorrelated from the Hp draws.
    std::uint64_t z = instance_seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

KSearchResult find_min_k(const AdiabaticProtocol &protocol, Level level, double rtf_eta,
                         std::uint64_t rtf_seed, double threshold, const KSearch &search) {
    const OverlapAt overlap_at = [&](std::size_t k) {
        const auto durations = rtf_durations(protocol.spec().total_time(), k, rtf_eta, rtf_seed);
        return fidelity(protocol.target().state, protocol.evolve(durations, level));
    };
    return find_min_k(overlap_at, threshold, search);
}

namespace {

struct SweepTask {
    HpVariant variant;
    std::size_t n_modes = 0;
    std::size_t repetition = 0;
    bool rtf = false;
};

SweepRecord run_task(const SweepConfig &config, const SweepTask &task) {
    const auto start = std::chrono::steady_clock::now();
    const double total_time = config.time_rule.total_time(task.n_modes);
    std::uint64_t seed = config.base_seed + task.repetition;
    auto protocol =
        AdiabaticProtocol(make_problem(task.n_modes, task.variant, seed, total_time));
    for (int attempt = 0; protocol.degenerate() && attempt < 16; ++attempt) {
        seed += kRedrawSeedOffset;
        protocol = AdiabaticProtocol(make_problem(task.n_modes, task.variant, seed, total_time));
    }
    const auto found =
        find_min_k(protocol, config.level, task.rtf ? config.rtf_eta : 0.0, rtf_seed_for(seed),
                   config.overlap_threshold, config.k_search);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return SweepRecord{task.variant.name(), task.n_modes, seed,  found.k_min,
                       found.overlap,       task.rtf,     elapsed.count(), found.censored};
}

} // namespace

SweepResult run_sweep(const SweepConfig &config, const RecordSink &sink) {
    config.validate();
    std::vector<SweepTask> tasks;
    for (const auto &variant : config.variants) {
        for (const bool rtf : {false, true}) {
            if (rtf && !config.rtf_enabled) {
                continue;
            }
            for (const auto n : config.n_values) {
                for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
                    tasks.push_back(SweepTask{variant, n, rep, rtf});
                }
            }
        }
    }

    std::vector<SweepRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex sink_mutex;
    std::exception_ptr failure;
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) {
                return;
            }
            try {
                records[i] = run_task(config, tasks[i]);
                if (sink) {
                    const std::lock_guard lock(sink_mutex);
                    sink(records[i]);
                }
            } catch (...) {
                const std::lock_guard lock(sink_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(tasks.size());
                return;
            }
        }
    };
    const std::size_t n_threads = std::min(config.threads, std::max<std::size_t>(1, tasks.size()));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    SweepResult result{std::move(records), {}};
    result.fits = fit_series(result.records);
    return result;
}

std::vector<SeriesFit> fit_series(const std::vector<SweepRecord> &records) {
    // (variant, rtf) -> N -> (sum k, count, censored)
    std::map<std::pair<std::string, bool>, std::map<std::size_t, std::tuple<double, std::size_t>>>
        groups;
    std::map<std::pair<std::string, bool>, std::size_t> censored;
    std::vector<std::pair<std::string, bool>> order;
    for (const auto &r : records) {
        const auto key = std::make_pair(r.variant, r.rtf);
        if (!groups.contains(key)) {
            order.push_back(key);
            censored[key] = 0;
        }
        auto &bucket = groups[key];
        if (r.censored) {
            ++censored[key];
            bucket.try_emplace(r.n_modes, 0.0, 0);
            continue;
        }
        auto &[sum, count] = bucket[r.n_modes];
        sum += static_cast<double>(r.k_min);
        ++count;
    }
    std::vector<SeriesFit> fits;
    for (const auto &key : order) {
        SeriesFit s;
        s.variant = key.first;
        s.rtf = key.second;
        s.censored = censored[key];
        for (const auto &[n, acc] : groups[key]) {
            const auto &[sum, count] = acc;
            if (count > 0) {
                s.points.emplace_back(static_cast<double>(n), sum / static_cast<double>(count));
            }
        }
        if (s.points.size() >= 2) {
            s.fit = linear_fit(s.points);
        }
        fits.push_back(std::move(s));
    }
    return fits;
}

void sort_records(std::vector<SweepRecord> &records) {
    std::stable_sort(records.begin(), records.end(), [](const auto &a, const auto &b) {
        return std::tie(a.variant, a.rtf, a.n_modes, a.seed) <
               std::tie(b.variant, b.rtf, b.n_modes, b.seed);
    });
}

std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::string to_csv_row(const SweepRecord &r) {
    std::ostringstream os;
    os << r.variant << ',' << r.n_modes << ',' << r.seed << ',' << r.k_min << ','
       << format_sig(r.overlap) << ',' << (r.rtf ? 1 : 0) << ',' << format_sig(r.elapsed_seconds);
    return os.str();
}

std::vector<SweepRecord> read_sweep_csv(std::istream &in, double threshold,
                                        const std::string &source) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader) {
        throw ConfigError(source + ":1: expected header `" + std::string(kSweepCsvHeader) + "`");
    }
    std::vector<SweepRecord> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) {
            cols.push_back(col);
        }
        const auto where = source + ":" + std::to_string(lineno);
        if (cols.size() != 7) {
            throw ConfigError(where + ": expected 7 columns");
        }
        try {
            SweepRecord r;
            r.variant = cols[0];
            r.n_modes = std::stoul(cols[1]);
            r.seed = std::stoull(cols[2]);
            r.k_min = std::stoul(cols[3]);
            r.overlap = std::stod(cols[4]);
            r.rtf = cols[5] == "1";
            if (cols[5] != "0" && cols[5] != "1") {
                throw ConfigError(where + ": rtf column must be 0 or 1");
            }
            r.elapsed_seconds = std::stod(cols[6]);
            r.censored = !(r.overlap > threshold);
            out.push_back(std::move(r));
        } catch (const std::logic_error &) {
            throw ConfigError(where + ": malformed number");
        }
    }
    return out;
}

} // namespace taqc
