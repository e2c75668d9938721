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

// Command-line driver: compile, simulate, sweep, analyze, epg-study, print-config.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "taqc/analysis.hpp"
#include "taqc/circuit.hpp"
#include "taqc/evolution.hpp"
#include "taqc/harness.hpp"
#include "taqc/keyvalue.hpp"
#include "taqc/model.hpp"
#include "taqc/optics.hpp"

namespace {

using namespace taqc;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// Usage and input errors map to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<std::size_t> threads;
};

void add_common(CLI::App *cmd, CommonOptions &common) {
    cmd->add_option("--seed", common.seed, "Random seed override");
    cmd->add_option("--out", common.out, "Output file (default: stdout where applicable)");
    cmd->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Writes to --out when given, stdout otherwise.
class Output {
  public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw UsageError("cannot open " + path + " for writing");
            }
        }
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

  private:
    std::ofstream file_;
};

struct EvolveOptions {
    std::string problem;
    std::size_t k = 64;
    std::string level = "split";
    double eta = 0.0;
};

void add_evolve_options(CLI::App *cmd, EvolveOptions &o) {
    cmd->add_option("--problem", o.problem, "Problem spec file (key = value)")->required();
    cmd->add_option("--k", o.k, "Trotter number")->check(CLI::PositiveNumber);
    cmd->add_option("--eta", o.eta, "Randomized-Trotter amplitude in [0, 1)");
}

TrotterConfig trotter_config(const EvolveOptions &o, const CommonOptions &common) {
    TrotterConfig cfg;
    cfg.k = o.k;
    cfg.level = parse_level(o.level);
    cfg.rtf_amplitude = o.eta;
    cfg.seed = common.seed.value_or(0);
    cfg.validate();
    return cfg;
}

int cmd_compile(const EvolveOptions &o, const CommonOptions &common, bool emit_identity) {
    const auto spec = load_problem(o.problem);
    auto cfg = trotter_config(o, common);
    cfg.level = Level::GateLevel;
    const auto net = compile_evolution(spec, cfg, CompileOptions{emit_identity});
    const auto cost = element_cost_report(net);
    if (common.out.empty()) {
        std::cout << to_json(net).dump() << '\n';
    } else {
        write_netlist(common.out, net);
    }
    std::cerr << "cells=" << net.cells.size() << " ps=" << cost.ps_count
              << " bs=" << cost.bs_count << " depth=" << cost.depth << '\n';
    return kExitOk;
}

int cmd_simulate(const EvolveOptions &o, const CommonOptions &common, const std::string &netlist) {
    const auto spec = load_problem(o.problem);
    const AdiabaticProtocol protocol(spec);
    StateVector psi_f = protocol.initial().state;
    double delta = 0.0;
    if (!netlist.empty()) {
        const auto net = read_netlist(netlist);
        if (net.n_modes != spec.n_modes()) {
            throw UsageError("netlist has " + std::to_string(net.n_modes) +
                             " modes, problem has " + std::to_string(spec.n_modes()));
        }
        psi_f = run_netlist(net, protocol.initial().state);
        delta = infidelity(protocol.target().state, psi_f);
    } else {
        auto result = protocol.run(trotter_config(o, common));
        psi_f = result.psi_f;
        delta = result.delta;
    }
    if (protocol.degenerate()) {
        std::cerr << "warning: degenerate ground level\n";
    }
    std::cout << "delta = " << fmt17(delta) << '\n';
    std::cout << "overlap = " << fmt17(1.0 - delta) << '\n';
    if (!common.out.empty()) {
        Output out(common.out);
        out.stream() << "mode,re,im\n";
        for (std::size_t i = 0; i < psi_f.dim(); ++i) {
            out.stream() << i << ',' << fmt17(psi_f[i].real()) << ',' << fmt17(psi_f[i].imag())
                         << '\n';
        }
    }
    return kExitOk;
}

void print_fits(std::ostream &os, const std::vector<SeriesFit> &fits) {
    os << "variant,rtf,points,slope,intercept,r_squared,censored\n";
    for (const auto &s : fits) {
        os << s.variant << ',' << (s.rtf ? 1 : 0) << ',' << s.points.size() << ',';
        if (s.fit) {
            os << fmt17(s.fit->slope) << ',' << fmt17(s.fit->intercept) << ','
               << fmt17(s.fit->r_squared);
        } else {
            os << ",,";
        }
        os << ',' << s.censored << '\n';
    }
}

SweepConfig resolve_config(const std::string &path, const CommonOptions &common) {
    SweepConfig cfg = path.empty() ? SweepConfig{} : load_sweep_config(path);
    if (common.seed) {
        cfg.base_seed = *common.seed;
    }
    if (common.threads) {
        cfg.threads = *common.threads;
    }
    cfg.validate();
    return cfg;
}

int cmd_sweep(const std::string &config_path, const CommonOptions &common, bool sorted) {
    const auto cfg = resolve_config(config_path, common);
    Output out(common.out);
    auto &os = out.stream();
    os << kSweepCsvHeader << '\n' << std::flush;
    const auto result = run_sweep(cfg, [&](const SweepRecord &r) {
        if (!sorted) {
            os << to_csv_row(r) << '\n' << std::flush;
        }
    });
    if (sorted) {
        auto records = result.records;
        sort_records(records);
        for (const auto &r : records) {
            os << to_csv_row(r) << '\n';
        }
        os << std::flush;
    }
    print_fits(std::cerr, result.fits);
    return kExitOk;
}

int cmd_analyze(const std::string &csv, const std::string &config_path, double threshold,
                const CommonOptions &common) {
    std::ifstream in(csv);
    if (!in) {
        throw UsageError(csv + ": file not found");
    }
    std::optional<SweepConfig> cfg;
    if (!config_path.empty()) {
        cfg = resolve_config(config_path, common);
        threshold = cfg->overlap_threshold;
    }
    const auto records = read_sweep_csv(in, threshold, csv);
    if (records.empty()) {
        throw UsageError(csv + ": no data rows");
    }
    Output out(common.out);
    print_fits(out.stream(), fit_series(records));

    if (cfg) {
        // Leading-order prediction of k at Delta = 1 - threshold, per (variant, N).
        std::map<std::pair<std::string, std::size_t>, std::pair<double, double>> sums;
        std::map<std::pair<std::string, std::size_t>, std::size_t> counts;
        for (const auto &r : records) {
            if (r.rtf || r.censored) {
                continue;
            }
            const double total_time = cfg->time_rule.total_time(r.n_modes);
            const auto spec =
                make_problem(r.n_modes, HpVariant::parse(r.variant), r.seed, total_time);
            const double k_pred =
                predicted_trotter_number(spectral_summary(spec), total_time, 1.0 - threshold);
            auto &[measured, predicted] = sums[{r.variant, r.n_modes}];
            measured += static_cast<double>(r.k_min);
            predicted += k_pred;
            ++counts[{r.variant, r.n_modes}];
        }
        out.stream() << "\nvariant,N,k_measured,k_predicted\n";
        for (const auto &[key, acc] : sums) {
            const double c = static_cast<double>(counts[key]);
            out.stream() << key.first << ',' << key.second << ',' << fmt17(acc.first / c) << ','
                         << fmt17(acc.second / c) << '\n';
        }
    }
    return kExitOk;
}

int cmd_epg(const std::vector<std::string> &variants, const std::vector<std::size_t> &n_values,
            std::size_t repetitions, const CommonOptions &common) {
    if (n_values.size() < 2) {
        throw UsageError("epg-study needs at least two N values");
    }
    std::vector<std::uint64_t> seeds;
    const std::uint64_t base = common.seed.value_or(1);
    for (std::size_t i = 0; i < repetitions; ++i) {
        seeds.push_back(base + i);
    }
    Output out(common.out);
    out.stream() << "variant,N,seed,E_pg,E_pg_sq,gap\n";
    for (const auto &name : variants) {
        const auto study = epg_scaling_study(HpVariant::parse(name), n_values, seeds);
        for (const auto &s : study.samples) {
            out.stream() << study.variant.name() << ',' << s.n_modes << ',' << s.seed << ','
                         << fmt17(s.energy) << ',' << fmt17(s.energy * s.energy) << ','
                         << fmt17(s.gap) << '\n';
        }
        std::cerr << study.variant.name() << ": slope=" << fmt17(study.fit.slope)
                  << " intercept=" << fmt17(study.fit.intercept)
                  << " r_squared=" << fmt17(study.fit.r_squared) << " redrawn=" << study.redrawn
                  << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Trotterized adiabatic simulation with linear-optical compilation"};
    app.require_subcommand(1);

    CommonOptions common;
    EvolveOptions evolve;

    auto *compile = app.add_subcommand("compile", "Compile a problem into an optical netlist");
    add_evolve_options(compile, evolve);
    bool emit_identity = false;
    compile->add_flag("--emit-identity", emit_identity, "Keep zero-parameter elements");
    add_common(compile, common);

    auto *simulate = app.add_subcommand("simulate", "Evolve a problem and report the infidelity");
    add_evolve_options(simulate, evolve);
    simulate->add_option("--level", evolve.level, "step-exact | split | gate-level");
    std::string netlist;
    simulate->add_option("--netlist", netlist, "Run a compiled netlist instead of evolving");
    add_common(simulate, common);

    auto *sweep = app.add_subcommand("sweep", "Minimum-k sweep over variants and sizes (CSV)");
    std::string config_path;
    bool sorted = false;
    sweep->add_option("--config", config_path, "Sweep config file (key = value)");
    sweep->add_flag("--sorted", sorted, "Write rows in canonical order once finished");
    add_common(sweep, common);

    auto *analyze = app.add_subcommand("analyze", "Fit a sweep CSV and compare with prediction");
    std::string csv;
    double threshold = 0.9;
    analyze->add_option("--csv", csv, "Sweep CSV")->required();
    analyze->add_option("--config", config_path, "Sweep config, enables the k prediction");
    analyze->add_option("--threshold", threshold, "Overlap threshold for censoring");
    add_common(analyze, common);

    auto *epg = app.add_subcommand("epg-study", "Ground energies of Hp across N (CSV)");
    std::vector<std::string> variants{"pentadiagonal", "sparse", "dense"};
    std::vector<std::size_t> n_values{20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
    std::size_t repetitions = 8;
    epg->add_option("--variants", variants, "Variants")->delimiter(',');
    epg->add_option("--n-values", n_values, "System sizes")->delimiter(',');
    epg->add_option("--repetitions", repetitions, "Instances per N")->check(CLI::PositiveNumber);
    add_common(epg, common);

    auto *print_config = app.add_subcommand("print-config", "Echo the resolved sweep config");
    print_config->add_option("--config", config_path, "Sweep config file");
    add_common(print_config, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*compile) {
            return cmd_compile(evolve, common, emit_identity);
        }
        if (*simulate) {
            return cmd_simulate(evolve, common, netlist);
        }
        if (*sweep) {
            return cmd_sweep(config_path, common, sorted);
        }
        if (*analyze) {
            return cmd_analyze(csv, config_path, threshold, common);
        }
        if (*epg) {
            return cmd_epg(variants, n_values, repetitions, common);
        }
        if (*print_config) {
            Output out(common.out);
            write_sweep_config(out.stream(), resolve_config(config_path, common));
            return kExitOk;
        }
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
