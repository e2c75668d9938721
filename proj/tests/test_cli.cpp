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

// Drives the command-line tool as a subprocess.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "taqc/circuit.hpp"
#include "taqc/evolution.hpp"
#include "taqc/optics.hpp"

using namespace taqc;

namespace {

struct Run {
    int status = -1;
    std::string output;
};

Run run_cli(const std::string &args) {
    const std::string cmd = std::string(TAQC_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) {
        r.output += buf.data();
    }
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "taqc_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::filesystem::path write_two_level_problem() {
    const auto path = scratch("two_level.cfg");
    std::ofstream(path) << "# two modes, one coupling\n"
                           "n_modes = 2\n"
                           "total_time = 20\n"
                           "h0_diag = 0.5, 1.5\n"
                           "hp_diag = 0, 1\n"
                           "coupling = 0, 1, 0.5, 0\n";
    return path;
}

double value_after(const std::string &text, const std::string &key) {
    const auto pos = text.find(key + " = ");
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + key.size() + 3));
}

} // namespace

TEST_CASE("cli: missing config file is a usage error") {
    const auto r = run_cli("sweep --config /nonexistent/missing.cfg");
    CHECK(r.status == 2);
    CHECK(r.output.find("file not found") != std::string::npos);
}

TEST_CASE("cli: malformed config reports the line") {
    const auto path = scratch("bad.cfg");
    std::ofstream(path) << "repetitions = 2\nthreshold = 0.9\n";
    const auto r = run_cli("print-config --config " + path.string());
    CHECK(r.status == 2);
    CHECK(r.output.find(path.string() + ":2") != std::string::npos);
}

TEST_CASE("cli: unknown subcommand or flag") {
    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("simulate --problem x --k 0").status == 2);
}

TEST_CASE("cli: simulate matches the library bit for bit") {
    const auto problem = write_two_level_problem();
    const auto r = run_cli("simulate --problem " + problem.string() + " --k 512 --level step-exact");
    REQUIRE(r.status == 0);
    const auto spec = load_problem(problem);
    const auto lib = run_protocol(spec, TrotterConfig{512, Level::StepExact, 0.0, 0});
    CHECK(value_after(r.output, "delta") == lib.delta);
    CHECK(lib.delta < 0.1);
}

TEST_CASE("cli: compiled netlist replays the gate-level evolution") {
    const auto problem = write_two_level_problem();
    const auto net_path = scratch("two_level_net.json");
    const auto c = run_cli("compile --problem " + problem.string() + " --k 50 --eta 0.1 --seed 3 --out " +
                           net_path.string());
    REQUIRE(c.status == 0);
    const auto s = run_cli("simulate --problem " + problem.string() + " --netlist " + net_path.string());
    REQUIRE(s.status == 0);
    const auto spec = load_problem(problem);
    const auto lib = run_protocol(spec, TrotterConfig{50, Level::GateLevel, 0.1, 3});
    CHECK(std::abs(value_after(s.output, "delta") - lib.delta) < 1e-12);
    const auto net = read_netlist(net_path);
    CHECK(net.metadata.eta == 0.1);
    CHECK(net.metadata.taus == rtf_durations(20.0, 50, 0.1, 3).taus);
}

TEST_CASE("cli: sweep writes the csv schema") {
    const auto cfg = scratch("tiny_sweep.cfg");
    std::ofstream(cfg) << "variants = dense\nn_values = 4, 6\nrepetitions = 2\n"
                          "time_coefficient = 3\nrtf_enabled = false\n";
    const auto csv = scratch("tiny_sweep.csv");
    const auto r = run_cli("sweep --config " + cfg.string() + " --sorted --threads 2 --out " + csv.string());
    REQUIRE(r.status == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "variant,N,seed,k_min,overlap,rtf,elapsed_s");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) {
        rows += line.empty() ? 0 : 1;
    }
    CHECK(rows == 4);
    const auto a = run_cli("analyze --csv " + csv.string());
    CHECK(a.status == 0);
    CHECK(a.output.find("variant,rtf,points,slope,intercept,r_squared,censored") != std::string::npos);
    CHECK(a.output.find("dense,0,2,") != std::string::npos);
}

TEST_CASE("cli: print-config echoes defaults") {
    const auto r = run_cli("print-config");
    CHECK(r.status == 0);
    CHECK(r.output.find("overlap_threshold = 0.9") != std::string::npos);
    CHECK(r.output.find("repetitions = 8") != std::string::npos);
}
