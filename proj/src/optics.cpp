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

#include "taqc/optics.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <string>

namespace taqc {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

double schedule_weight(std::size_t a, std::size_t k) {
    return static_cast<double>(a) / static_cast<double>(k);
}

void check_step(std::size_t a, std::size_t k) {
    if (k == 0 || a >= k) {
        throw InvalidArgument("optics: step index must satisfy 0 <= a < k");
    }
}

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

} // namespace

void Netlist::validate() const {
    if (cells.size() != metadata.k) {
        throw InvalidArgument("Netlist: cell count does not match k");
    }
    for (const auto &cell : cells) {
        for (const auto &el : cell) {
            std::visit(Overloaded{
                           [&](const PhaseShifter &ps) {
                               if (ps.mode >= n_modes) {
                                   throw InvalidArgument("Netlist: PS mode out of range");
                               }
                           },
                           [&](const BeamSplitter &bs) {
                               if (bs.mode_a >= n_modes || bs.mode_b >= n_modes) {
                                   throw InvalidArgument("Netlist: BS mode out of range");
                               }
                               if (bs.mode_a == bs.mode_b) {
                                   throw InvalidArgument("Netlist: BS modes must differ");
                               }
                           },
                       },
                       el);
        }
    }
}

Cell compile_diag_cell(const ProblemSpec &spec, std::size_t a, std::size_t k, double tau_a,
                       const CompileOptions &options) {
    check_step(a, k);
    const double s = schedule_weight(a, k);
    Cell cell;
    cell.reserve(spec.n_modes());
    for (std::size_t n = 0; n < spec.n_modes(); ++n) {
        const double phase =
            (1.0 - s) * tau_a * spec.h0_diag()[n] + s * tau_a * spec.hp_diag()[n];
        if (phase != 0.0 || options.emit_identity) {
            cell.emplace_back(PhaseShifter{n, phase});
        }
    }
    return cell;
}

Cell compile_pair_block(std::size_t m, std::size_t n, Complex coupling, std::size_t a,
                        std::size_t k, double tau_a, const CompileOptions &options) {
    if (m >= n) {
        throw InvalidArgument("compile_pair_block: modes must satisfy m < n");
    }
    check_step(a, k);
    const double c = schedule_weight(a, k) * tau_a;
    const double re_theta = c * coupling.real();
    const double im_theta = c * coupling.imag();
    Cell block;
    if (re_theta != 0.0 || options.emit_identity) {
        block.emplace_back(PhaseShifter{m, -kQuarterPi});
        block.emplace_back(PhaseShifter{n, kQuarterPi});
        block.emplace_back(BeamSplitter{m, n, re_theta});
        block.emplace_back(PhaseShifter{m, kQuarterPi});
        block.emplace_back(PhaseShifter{n, -kQuarterPi});
    }
    if (im_theta != 0.0 || options.emit_identity) {
        block.emplace_back(BeamSplitter{m, n, im_theta});
    }
    return block;
}

Cell compile_cell(const ProblemSpec &spec, std::size_t a, std::size_t k, double tau_a,
                  const CompileOptions &options) {
    Cell cell = compile_diag_cell(spec, a, k, tau_a, options);
    for (std::size_t m = 0; m < spec.n_modes(); ++m) {
        for (std::size_t n = m + 1; n < spec.n_modes(); ++n) {
            const Complex j = spec.coupling(m, n);
            if (j == Complex(0.0)) {
                continue;
            }
            const Cell block = compile_pair_block(m, n, j, a, k, tau_a, options);
            cell.insert(cell.end(), block.begin(), block.end());
        }
    }
    return cell;
}

Netlist compile_evolution(const ProblemSpec &spec, const StepDurations &durations,
                          const CompileOptions &options) {
    const std::size_t k = durations.k();
    if (k == 0) {
        throw InvalidArgument("compile_evolution: k must be at least 1");
    }
    Netlist net;
    net.n_modes = spec.n_modes();
    net.metadata.k = k;
    net.metadata.total_time = spec.total_time();
    net.metadata.level = Level::GateLevel;
    net.metadata.taus = durations.taus;
    net.cells.reserve(k);
    for (std::size_t a = 0; a < k; ++a) {
        net.cells.push_back(compile_cell(spec, a, k, durations.taus[a], options));
    }
    return net;
}

Netlist compile_evolution(const ProblemSpec &spec, const TrotterConfig &config,
                          const CompileOptions &options) {
    config.validate();
    Netlist net = compile_evolution(spec, durations_for(spec, config), options);
    net.metadata.seed = config.seed;
    net.metadata.eta = config.rtf_amplitude;
    return net;
}

CostReport element_cost_report(const Netlist &netlist) {
    CostReport report;
    std::vector<std::size_t> mode_depth(netlist.n_modes, 0);
    for (const auto &cell : netlist.cells) {
        for (const auto &el : cell) {
            std::visit(Overloaded{
                           [&](const PhaseShifter &ps) {
                               ++report.ps_count;
                               ++mode_depth.at(ps.mode);
                           },
                           [&](const BeamSplitter &bs) {
                               ++report.bs_count;
                               const std::size_t layer =
                                   std::max(mode_depth.at(bs.mode_a), mode_depth.at(bs.mode_b)) + 1;
                               mode_depth[bs.mode_a] = layer;
                               mode_depth[bs.mode_b] = layer;
                           },
                       },
                       el);
        }
    }
    for (const auto d : mode_depth) {
        report.depth = std::max(report.depth, d);
    }
    return report;
}

nlohmann::json to_json(const Netlist &netlist) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto &cell : netlist.cells) {
        nlohmann::json jc = nlohmann::json::array();
        for (const auto &el : cell) {
            std::visit(Overloaded{
                           [&](const PhaseShifter &ps) {
                               jc.push_back({{"type", "ps"}, {"mode", ps.mode}, {"phase", ps.phase}});
                           },
                           [&](const BeamSplitter &bs) {
                               jc.push_back({{"type", "bs"},
                                             {"a", bs.mode_a},
                                             {"b", bs.mode_b},
                                             {"theta", bs.theta}});
                           },
                       },
                       el);
        }
        cells.push_back(std::move(jc));
    }
    const auto &md = netlist.metadata;
    return {
        {"version", kNetlistFormatVersion},
        {"n_modes", netlist.n_modes},
        {"metadata",
         {{"k", md.k},
          {"T", md.total_time},
          {"level", to_string(md.level)},
          {"seed", md.seed},
          {"eta", md.eta},
          {"taus", md.taus}}},
        {"cells", std::move(cells)},
    };
}

Netlist netlist_from_json(const nlohmann::json &j) {
    Netlist net;
    try {
        if (j.at("version").get<int>() != kNetlistFormatVersion) {
            throw InvalidArgument("netlist: unsupported format version");
        }
        net.n_modes = j.at("n_modes").get<std::size_t>();
        const auto &md = j.at("metadata");
        net.metadata.k = md.at("k").get<std::size_t>();
        net.metadata.total_time = md.at("T").get<double>();
        net.metadata.level = parse_level(md.at("level").get<std::string>());
        net.metadata.seed = md.at("seed").get<std::uint64_t>();
        net.metadata.eta = md.at("eta").get<double>();
        if (md.contains("taus")) {
            net.metadata.taus = md.at("taus").get<std::vector<double>>();
        }
        for (const auto &jc : j.at("cells")) {
            Cell cell;
            for (const auto &je : jc) {
                const auto type = je.at("type").get<std::string>();
                if (type == "ps") {
                    cell.emplace_back(
                        PhaseShifter{je.at("mode").get<std::size_t>(), je.at("phase").get<double>()});
                } else if (type == "bs") {
                    cell.emplace_back(BeamSplitter{je.at("a").get<std::size_t>(),
                                                   je.at("b").get<std::size_t>(),
                                                   je.at("theta").get<double>()});
                } else {
                    throw InvalidArgument("netlist: unknown element type `" + type + "`");
                }
            }
            net.cells.push_back(std::move(cell));
        }
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("netlist: malformed document: ") + e.what());
    }
    net.validate();
    return net;
}

void write_netlist(const std::filesystem::path &path, const Netlist &netlist) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    // nlohmann emits doubles with round-trip precision (up to 17 significant digits).
    out << to_json(netlist).dump() << '\n';
}

Netlist read_netlist(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument(path.string() + ": file not found");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
    return netlist_from_json(j);
}

} // namespace taqc
