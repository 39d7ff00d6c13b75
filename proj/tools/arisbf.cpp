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

// arisbf run | sweep | validate

#include "arisbf/experiment.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace arisbf;

namespace {

struct Common {
    std::string config;
    std::string out = "out";
    int seeds = 1;
    unsigned parallel = 1;
    std::vector<std::string> schemes;
    bool matrices = false;
};

ScenarioConfig load(const Common& c) { return c.config.empty() ? ScenarioConfig{} : load_config(c.config); }

std::vector<Scheme> schemes_of(const Common& c) {
    std::vector<Scheme> s;
    for (const auto& n : c.schemes) s.push_back(parse_scheme(n));
    if (s.empty()) s.push_back(Scheme::BcdAso);
    return s;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "scenario file (key = value lines)");
    app->add_option("--out", c.out, "output directory");
    app->add_option("--seeds", c.seeds, "number of seeds, counting up from the config seed")->check(CLI::PositiveNumber);
    app->add_option("--parallel", c.parallel, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--scheme", c.schemes, "bcd_aso | active_random_phase | passive_unit_modulus | no_ris (repeatable)");
    app->add_flag("--matrices", c.matrices, "include final W and psi in the JSON reports");
}

int cmd_run(const Common& c) {
    const ScenarioConfig cfg = load(c);
    const auto runs = run_trials(cfg, schemes_of(c), c.seeds, c.parallel);
    write_run_outputs(c.out, runs, c.matrices);
    for (const auto& r : runs)
        std::cout << r.scheme << " seed=" << r.seed << " sum_rate=" << r.sum_rate << " bps/Hz iterations=" << r.iterations
                  << (r.converged ? "" : " (not converged)") << '\n';
    return 0;
}

int cmd_sweep(const Common& c, const std::string& param, double from, double to, double step,
              const std::vector<double>& values) {
    const ScenarioConfig cfg = load(c);
    const std::vector<double> grid = values.empty() ? sweep_grid(from, to, step) : values;
    const SweepResult res = run_sweep(cfg, param, grid, schemes_of(c), c.seeds, c.parallel);
    fs::create_directories(c.out);
    std::string s = std::string(sweep_csv_header()) + '\n';
    for (const auto& p : res.points) s += sweep_csv_row(p) + '\n';
    write_text(fs::path(c.out) / "sweep.csv", s);
    write_text(fs::path(c.out) / "runs.csv", runs_csv(res.runs));
    for (const auto& p : res.points)
        std::cout << param << '=' << p.value << ' ' << p.scheme << " median=" << p.median << " [" << p.q1 << ", "
                  << p.q3 << "] converged " << p.converged << '/' << p.seeds << '\n';
    return 0;
}

int cmd_validate(const Common& c, const ValidationOptions& vo) {
    const ScenarioConfig cfg = load(c);
    const ValidationReport rep = run_validation(cfg, vo);
    fs::create_directories(c.out);
    json j = validation_json(rep);
    j["config"] = config_json(cfg);
    j["tolerance_scale"] = vo.tolerance_scale;
    write_text(fs::path(c.out) / "validation.json", j.dump(2) + '\n');
    for (const auto& ch : rep.checks)
        std::cout << (ch.passed ? "PASS " : "FAIL ") << ch.name << " value=" << ch.value << " threshold=" << ch.threshold
                  << (ch.detail.empty() ? "" : " (" + ch.detail + ")") << '\n';
    return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sum-rate beamforming for active-RIS-aided multiuser MISO links"};
    app.require_subcommand(1);

    Common run_opts;
    auto* run = app.add_subcommand("run", "solve the configured scenario over a set of seeds");
    add_common(run, run_opts);

    Common sweep_opts;
    std::string param;
    double from = 0.0, to = 0.0, step = 1.0;
    std::vector<double> values;
    auto* sweep = app.add_subcommand("sweep", "median sum rate over a parameter grid");
    add_common(sweep, sweep_opts);
    sweep->add_option("--param", param, "power_dBm | kappa | M | kappa_t | kappa_r")
        ->required()
        ->check(CLI::IsMember(sweep_parameters()));
    sweep->add_option("--from", from);
    sweep->add_option("--to", to);
    sweep->add_option("--step", step);
    sweep->add_option("--values", values, "explicit grid, overrides from/to/step")->delimiter(',');

    Common val_opts;
    ValidationOptions vo;
    auto* val = app.add_subcommand("validate", "run the oracle suite; exit status 1 on any failure");
    add_common(val, val_opts);
    val->add_option("--tolerance-scale", vo.tolerance_scale, "multiplies every threshold");
    val->add_option("--mc-trials", vo.mc_trials);
    val->add_option("--moment-samples", vo.moment_samples);
    val->add_option("--grid-seeds", vo.grid_seeds);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) return cmd_run(run_opts);
        if (*sweep) return cmd_sweep(sweep_opts, param, from, to, step, values);
        if (*val) {
            vo.threads = val_opts.parallel;
            return cmd_validate(val_opts, vo);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
