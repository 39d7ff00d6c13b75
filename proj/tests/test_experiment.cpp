// SPDX-License-Identifier: Apache-2.0
//
// arisbf - sum-rate beamforming for active-RIS-aided multiuser MISO links
// Copyright (C) 2026 The arisbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "arisbf/experiment.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

using namespace arisbf;
namespace fs = std::filesystem;

namespace {

ScenarioConfig small_config() {
    ScenarioConfig c;
    c.M = 8;
    c.N = 2;
    c.K = 2;
    return c;
}

// CSV row without the trailing wall-time column
std::string without_time(const std::string& row) { return row.substr(0, row.rfind(',')); }

std::size_t count_lines(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    return n;
}

}  // namespace

TEST_CASE("one seed writes one row and one report per scheme") {
    const fs::path dir = fs::temp_directory_path() / "arisbf_test_run";
    fs::remove_all(dir);
    const std::vector<Scheme> schemes{Scheme::BcdAso, Scheme::NoRis};
    const auto runs = run_trials(small_config(), schemes, 1);
    REQUIRE(runs.size() == 2);
    write_run_outputs(dir, runs, true);
    CHECK(count_lines(dir / "runs.csv") == 3);
    int json_files = 0;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") {
            ++json_files;
            std::ifstream in(e.path());
            const json j = json::parse(in);
            CHECK(j.contains("objective_trace"));
            CHECK(j.contains("final_W"));
            CHECK(j["config"]["M"] == 8);
        }
    CHECK(json_files == 2);
    fs::remove_all(dir);
}

TEST_CASE("repeated runs give identical rows apart from wall time") {
    const auto a = run_trials(small_config(), {Scheme::BcdAso}, 1);
    const auto b = run_trials(small_config(), {Scheme::BcdAso}, 1);
    CHECK(without_time(csv_row(a[0])) == without_time(csv_row(b[0])));
}

TEST_CASE("parallel execution matches serial execution") {
    const std::vector<Scheme> schemes{Scheme::BcdAso};
    const auto serial = run_trials(small_config(), schemes, 8, 1);
    const auto par = run_trials(small_config(), schemes, 8, 4);
    REQUIRE(serial.size() == par.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].seed == small_config().seed + i);
        CHECK(without_time(csv_row(serial[i])) == without_time(csv_row(par[i])));
    }
}

TEST_CASE("single-point sweep equals a plain run") {
    ScenarioConfig c = small_config();
    const SweepResult s = run_sweep(c, "power_dBm", {25.0}, {Scheme::BcdAso}, 1);
    c.P_budget = dbm_to_watt(25.0);
    const auto r = run_trials(c, {Scheme::BcdAso}, 1);
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0].median == r[0].sum_rate);
    CHECK(s.points[0].q1 == r[0].sum_rate);
    CHECK(without_time(csv_row(s.runs[0])) == without_time(csv_row(r[0])));
}

TEST_CASE("sweep helpers") {
    CHECK(sweep_grid(0.0, 40.0, 10.0) == std::vector<double>{0.0, 10.0, 20.0, 30.0, 40.0});
    CHECK(sweep_grid(1.0, 1.0, 1.0) == std::vector<double>{1.0});
    CHECK_THROWS_AS(sweep_grid(0.0, 1.0, 0.0), InvalidInput);
    CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.25) == 1.75);
    ScenarioConfig c;
    apply_sweep_value(c, "kappa", 0.01);
    CHECK(c.kappa_t == 0.01);
    CHECK(c.kappa_r == std::vector<double>{0.01});
    apply_sweep_value(c, "M", 4.0);
    CHECK(c.M == 4);
    CHECK_THROWS_AS(apply_sweep_value(c, "M", 2.5), InvalidInput);
    CHECK_THROWS_AS(apply_sweep_value(c, "foo", 1.0), InvalidInput);
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(run_trials(small_config(), {Scheme::BcdAso}, 0), InvalidInput);
    CHECK_THROWS_AS(run_trials(small_config(), {}, 1), InvalidInput);
}
