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

#ifndef ARISBF_EXPERIMENT_HPP
#define ARISBF_EXPERIMENT_HPP

#include "arisbf/config.hpp"
#include "arisbf/orchestrator.hpp"
#include "arisbf/validation.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

// Multi-seed runs, parameter sweeps and their CSV/JSON products.

namespace arisbf {

using json = nlohmann::json;

struct RunRecord {
    std::string scheme;
    double P_dBm = 0.0;
    double kappa_t = 0.0;
    std::string kappa_r;
    int M = 0, N = 0, K = 0;
    std::uint64_t seed = 0;
    double sum_rate = 0.0;
    int iterations = 0;
    bool converged = false;
    double P_T = 0.0;
    double P_A = 0.0;
    double wall_time = 0.0;
    SolveReport report;
    ScenarioConfig cfg;
};

inline const char* csv_header() {
    return "scheme,P_dBm,kappa_t,kappa_r,M,N,K,seed,sum_rate_bpshz,iterations,converged,P_T_W,P_A_W,wall_time_s";
}

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

inline std::string kappa_r_text(const ScenarioConfig& c) {
    const bool same = std::all_of(c.kappa_r.begin(), c.kappa_r.end(), [&](double k) { return k == c.kappa_r[0]; });
    if (same) return fmt(c.kappa_r[0]);
    std::string s;
    for (std::size_t i = 0; i < c.kappa_r.size(); ++i) s += (i ? ";" : "") + fmt(c.kappa_r[i]);
    return s;
}

}  // namespace detail

inline std::string csv_row(const RunRecord& r) {
    std::ostringstream os;
    os << r.scheme << ',' << detail::fmt(r.P_dBm) << ',' << detail::fmt(r.kappa_t) << ',' << r.kappa_r << ',' << r.M
       << ',' << r.N << ',' << r.K << ',' << r.seed << ',' << detail::fmt(r.sum_rate) << ',' << r.iterations << ','
       << (r.converged ? 1 : 0) << ',' << detail::fmt(r.P_T) << ',' << detail::fmt(r.P_A) << ','
       << detail::fmt(r.wall_time);
    return os.str();
}

inline RunRecord run_one(const ScenarioConfig& base, Scheme scheme, std::uint64_t seed, const SolveOptions& opt = {}) {
    ScenarioConfig cfg = base;
    cfg.seed = seed;
    const ChannelSet ch = generate_channels(cfg, seed);
    RunRecord r;
    r.report = run_scheme(scheme, cfg, ch, opt);
    r.cfg = cfg;
    r.scheme = scheme_name(scheme);
    r.P_dBm = watt_to_dbm(cfg.P_budget);
    r.kappa_t = cfg.kappa_t;
    r.kappa_r = detail::kappa_r_text(cfg);
    r.M = cfg.M;
    r.N = cfg.N;
    r.K = cfg.K;
    r.seed = seed;
    r.sum_rate = r.report.sum_rate();
    r.iterations = r.report.iterations;
    r.converged = r.report.converged;
    r.P_T = r.report.P_T;
    r.P_A = r.report.P_A;
    r.wall_time = r.report.wall_time;
    return r;
}

/// Seeds base.seed, base.seed+1, ... Output order is (seed, scheme) no matter
/// how many worker threads ran.
inline std::vector<RunRecord> run_trials(const ScenarioConfig& base, const std::vector<Scheme>& schemes, int seeds,
                                         unsigned parallel = 1, const SolveOptions& opt = {}) {
    if (seeds < 1) throw InvalidInput("run_trials: seeds must be >= 1");
    if (schemes.empty()) throw InvalidInput("run_trials: no scheme selected");
    validate(base);
    const std::size_t jobs = static_cast<std::size_t>(seeds) * schemes.size();
    std::vector<RunRecord> out(jobs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs; j = next++) {
            try {
                const std::uint64_t seed = base.seed + j / schemes.size();
                out[j] = run_one(base, schemes[j % schemes.size()], seed, opt);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    parallel = std::max(1u, parallel);
    if (parallel == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < parallel; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    return out;
}

// ---- sweeps ----------------------------------------------------------------

inline const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> p{"power_dBm", "kappa", "M", "kappa_t", "kappa_r"};
    return p;
}

inline void apply_sweep_value(ScenarioConfig& c, const std::string& param, double v) {
    if (param == "power_dBm") c.P_budget = dbm_to_watt(v);
    else if (param == "kappa") {
        c.kappa_t = v;
        c.kappa_r = {v};
    } else if (param == "M") {
        if (v < 1 || v != std::floor(v)) throw InvalidInput("sweep: M needs positive integers");
        c.M = static_cast<int>(v);
    } else if (param == "kappa_t") c.kappa_t = v;
    else if (param == "kappa_r") c.kappa_r = {v};
    else throw InvalidInput("sweep: unknown parameter '" + param + "'");
}

/// from, from+step, ... up to `to` inclusive (half a step of slack).
inline std::vector<double> sweep_grid(double from, double to, double step) {
    if (!(step > 0.0) || to < from) throw InvalidInput("sweep: need step > 0 and to >= from");
    std::vector<double> v;
    const long n = static_cast<long>(std::floor((to - from) / step + 0.5));
    for (long i = 0; i <= n; ++i) v.push_back(from + static_cast<double>(i) * step);
    return v;
}

/// Linear-interpolated quantile of unsorted data.
inline double quantile(std::vector<double> x, double q) {
    if (x.empty()) throw InvalidInput("quantile: empty sample");
    std::sort(x.begin(), x.end());
    const double pos = q * static_cast<double>(x.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    return i + 1 < x.size() ? x[i] * (1.0 - frac) + x[i + 1] * frac : x[i];
}

struct SweepPoint {
    std::string param;
    double value = 0.0;
    std::string scheme;
    double median = 0.0, q1 = 0.0, q3 = 0.0;
    int seeds = 0;
    int converged = 0;
};

inline const char* sweep_csv_header() { return "param,value,scheme,median_bpshz,q1_bpshz,q3_bpshz,seeds,converged"; }

inline std::string sweep_csv_row(const SweepPoint& p) {
    std::ostringstream os;
    os << p.param << ',' << detail::fmt(p.value) << ',' << p.scheme << ',' << detail::fmt(p.median) << ','
       << detail::fmt(p.q1) << ',' << detail::fmt(p.q3) << ',' << p.seeds << ',' << p.converged;
    return os.str();
}

struct SweepResult {
    std::vector<SweepPoint> points;
    std::vector<RunRecord> runs;
};

inline SweepResult run_sweep(const ScenarioConfig& base, const std::string& param, const std::vector<double>& values,
                             const std::vector<Scheme>& schemes, int seeds, unsigned parallel = 1,
                             const SolveOptions& opt = {}) {
    SweepResult res;
    for (double v : values) {
        ScenarioConfig c = base;
        apply_sweep_value(c, param, v);
        validate(c);
        auto runs = run_trials(c, schemes, seeds, parallel, opt);
        for (Scheme s : schemes) {
            std::vector<double> rates;
            SweepPoint p;
            p.param = param;
            p.value = v;
            p.scheme = scheme_name(s);
            for (const auto& r : runs)
                if (r.scheme == p.scheme) {
                    rates.push_back(r.sum_rate);
                    p.converged += r.converged ? 1 : 0;
                }
            p.seeds = static_cast<int>(rates.size());
            p.median = quantile(rates, 0.5);
            p.q1 = quantile(rates, 0.25);
            p.q3 = quantile(rates, 0.75);
            res.points.push_back(p);
        }
        res.runs.insert(res.runs.end(), std::make_move_iterator(runs.begin()), std::make_move_iterator(runs.end()));
    }
    return res;
}

// ---- JSON ------------------------------------------------------------------

inline json config_json(const ScenarioConfig& c) {
    json j;
    j["N"] = c.N;
    j["M"] = c.M;
    j["K"] = c.K;
    j["bs_pos"] = c.bs_pos;
    j["ris_pos"] = c.ris_pos;
    j["user_center"] = c.user_center;
    j["user_radius_m"] = c.user_radius;
    j["rician_K"] = {{"bs_ris", c.rician_K.bs_ris}, {"ris_user", c.rician_K.ris_user}, {"bs_user", c.rician_K.bs_user}};
    j["pathloss"] = {{"c0_db", c.pathloss.c0_db},
                     {"exp_bs_ris", c.pathloss.exp_bs_ris},
                     {"exp_ris_user", c.pathloss.exp_ris_user},
                     {"exp_bs_user", c.pathloss.exp_bs_user}};
    j["sigma_d_sq_W"] = c.sigma_d_sq;
    j["sigma_k_sq_W"] = c.sigma_k_sq;
    j["kappa_t"] = c.kappa_t;
    j["kappa_r"] = c.kappa_r;
    j["xi_T"] = c.xi_T;
    j["xi_A"] = c.xi_A;
    j["P_sw_W"] = c.P_sw;
    j["P_dc_W"] = c.P_dc;
    j["P_bs_W"] = c.P_bs;
    j["P_budget_W"] = c.P_budget;
    j["P_budget_dBm"] = watt_to_dbm(c.P_budget);
    j["split_rule"] = c.split_rule.kind == SplitRule::Kind::Even
                          ? std::string("even")
                          : "fraction:" + detail::fmt(c.split_rule.transmit_fraction);
    j["seed"] = c.seed;
    return j;
}

inline json complex_matrix_json(const CMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
        rows.push_back(row);
    }
    return rows;
}

inline json run_json(const RunRecord& r, bool with_matrices) {
    json j;
    j["config"] = config_json(r.cfg);
    j["scheme"] = r.scheme;
    j["seed"] = r.seed;
    j["sum_rate_bpshz"] = r.sum_rate;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["P_T_W"] = r.P_T;
    j["P_A_W"] = r.P_A;
    j["ris_on"] = r.report.ris_on;
    j["repairs"] = r.report.repairs;
    j["wall_time_s"] = r.wall_time;
    j["objective_trace"] = r.report.objective_trace;
    j["fp_trace"] = r.report.fp_trace;
    json sl = json::array();
    for (const auto& s : r.report.constraint_slacks) sl.push_back({s.first, s.second});
    j["constraint_slacks"] = sl;
    if (with_matrices) {
        j["final_W"] = complex_matrix_json(r.report.final_W);
        j["final_psi"] = complex_matrix_json(r.report.final_psi);
    }
    return j;
}

inline json validation_json(const ValidationReport& rep) {
    json j;
    j["passed"] = rep.passed();
    json arr = json::array();
    for (const auto& c : rep.checks)
        arr.push_back({{"name", c.name},
                       {"value", c.value},
                       {"threshold", c.threshold},
                       {"passed", c.passed},
                       {"detail", c.detail}});
    j["checks"] = arr;
    return j;
}

// ---- files -----------------------------------------------------------------

inline void write_text(const std::filesystem::path& p, const std::string& s) {
    std::ofstream out(p);
    if (!out) throw InvalidInput("cannot write '" + p.string() + "'");
    out << s;
}

inline std::string runs_csv(const std::vector<RunRecord>& runs) {
    std::string s = std::string(csv_header()) + '\n';
    for (const auto& r : runs) s += csv_row(r) + '\n';
    return s;
}

/// runs.csv plus one JSON document per run.
inline void write_run_outputs(const std::filesystem::path& dir, const std::vector<RunRecord>& runs,
                              bool with_matrices) {
    std::filesystem::create_directories(dir);
    write_text(dir / "runs.csv", runs_csv(runs));
    for (const auto& r : runs) {
        const std::string name = r.scheme + "_P" + detail::fmt(r.P_dBm) + "_M" + std::to_string(r.M) + "_kt" +
                                 detail::fmt(r.kappa_t) + "_seed" + std::to_string(r.seed) + ".json";
        write_text(dir / name, run_json(r, with_matrices).dump(2) + '\n');
    }
}

}  // namespace arisbf

#endif
