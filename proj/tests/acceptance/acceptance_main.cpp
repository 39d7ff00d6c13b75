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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Pass criterion numbers as arguments to run
// a subset, e.g. `acceptance 1 2 8`.

#include "arisbf/arisbf.hpp"
#include "arisbf/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace arisbf;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string num(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

CVec gaussian_vec(Eigen::Index n, std::mt19937_64& rng) { return complex_gaussian(RVec::Ones(n), rng); }

// 1: FP objective at the closed-form auxiliaries equals the approximate sum rate
Outcome fp_identity() {
    const auto t0 = Clock::now();
    ScenarioConfig cfg;
    double worst = 0.0;
    for (std::uint64_t s = 1; s <= 50; ++s) {
        const RandomInstance in = random_instance(cfg, s);
        const double fp = objective_r(in.ch, in.W, in.psi, in.hwi, in.aux) * kLog2e;
        worst = std::max(worst, rel(fp, sum_rate(in.ch, in.W, in.psi, in.hwi)));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-8 && t < 60.0, "worst relative gap " + num(worst) + " over 50 scenarios, " + num(t) + " s"};
}

// 2: both quadratic subproblem forms reproduce the negated FP objective
Outcome subproblem_equivalence() {
    ScenarioConfig cfg;
    const RandomInstance in = random_instance(cfg, 77);
    std::mt19937_64 rng(mix_seed(77, 21));
    const WSubproblem wsp = assemble_w_subproblem(in.ch, in.psi, in.hwi, in.aux, in.P_A);
    const PsiSubproblem psp = assemble_psi_subproblem(in.ch, in.W, in.hwi, in.aux);
    double worst_w = 0.0, worst_psi = 0.0;
    const double wscale = in.W.norm() / std::sqrt(double(in.W.size()));
    for (int t = 0; t < 50; ++t) {
        const CVec w = wscale * gaussian_vec(in.W.size(), rng);
        const CMat W = Beamformer::from_vec(w, in.ch.N(), in.ch.K()).W;
        worst_w = std::max(worst_w, rel(-wsp.objective(w), objective_r(in.ch, W, in.psi, in.hwi, in.aux)));
        const CVec p = (in.psi.norm() / std::sqrt(double(in.psi.size()))) * gaussian_vec(in.psi.size(), rng);
        worst_psi = std::max(worst_psi, rel(-psp.objective(p), objective_r(in.ch, in.W, p, in.hwi, in.aux)));
    }
    return {std::max(worst_w, worst_psi) <= 1e-8,
            "beamformer form " + num(worst_w) + ", reflection form " + num(worst_psi) + " (50 points each)"};
}

// 3: MM surrogates are tight, first-order exact and dominating
Outcome surrogate_suite() {
    ScenarioConfig cfg;
    SurrogateReport worst;
    worst.w_domination = worst.psi_obj_domination = worst.psi_con_domination = -std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 1; s <= 5; ++s) {
        const SurrogateReport r = check_surrogates(random_instance(cfg, 100 + s), 100, mix_seed(s, 31));
        worst.w_tightness = std::max(worst.w_tightness, r.w_tightness);
        worst.w_gradient = std::max(worst.w_gradient, r.w_gradient);
        worst.w_domination = std::max(worst.w_domination, r.w_domination);
        worst.psi_obj_tightness = std::max(worst.psi_obj_tightness, r.psi_obj_tightness);
        worst.psi_obj_gradient = std::max(worst.psi_obj_gradient, r.psi_obj_gradient);
        worst.psi_obj_domination = std::max(worst.psi_obj_domination, r.psi_obj_domination);
        worst.psi_con_tightness = std::max(worst.psi_con_tightness, r.psi_con_tightness);
        worst.psi_con_gradient = std::max(worst.psi_con_gradient, r.psi_con_gradient);
        worst.psi_con_domination = std::max(worst.psi_con_domination, r.psi_con_domination);
    }
    const double tight = std::max({worst.w_tightness, worst.psi_obj_tightness, worst.psi_con_tightness});
    const double grad = std::max({worst.w_gradient, worst.psi_obj_gradient, worst.psi_con_gradient});
    const double dom = std::max({worst.w_domination, worst.psi_obj_domination, worst.psi_con_domination});
    return {tight <= 1e-10 && grad <= 1e-5 && dom <= 1e-10,
            "tightness " + num(tight) + ", gradient " + num(grad) + ", domination " + num(dom) +
                " (5 instances x 100 points)"};
}

// 4: the two dual functions are non-increasing in their multipliers
Outcome monotonicity_lemmas() {
    ScenarioConfig cfg;
    int violations = 0, checked = 0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const RandomInstance in = random_instance(cfg, 200 + s);
        const WSubproblem sp = assemble_w_subproblem(in.ch, in.psi, in.hwi, in.aux, in.P_A);
        const ShiftedPsdSolver xi(sp.Xi);
        WDualSolver d(sp, xi);
        d.set_surrogate(majorize_gamma(sp.Gamma, Beamformer{in.W}.vec(), sp.P_m));
        d.set_power_budget(in.P_T);
        const double scale = d.multiplier_scale(in.P_T);
        double p1 = d.case1_constraint(0.0), p2 = d.case2_power(0.0);
        for (int i = 1; i < 10; ++i) {
            const double x = scale * std::pow(10.0, i - 5);
            const double v1 = d.case1_constraint(x), v2 = d.case2_power(x);
            violations += v1 > p1 + 1e-12 * std::abs(p1);
            violations += v2 > p2 + 1e-12 * std::abs(p2);
            checked += 2;
            p1 = v1;
            p2 = v2;
        }
    }
    return {violations == 0, std::to_string(violations) + " increases in " + std::to_string(checked) + " grid steps"};
}

// 5: KKT conditions at the converged beamformer subproblem
Outcome kkt() {
    ScenarioConfig cfg;
    WSolveOptions opt;
    opt.max_mm_iters = 2000;
    opt.tol = 1e-14;
    KktResiduals worst;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const RandomInstance in = random_instance(cfg, 300 + s);
        // tighten the amplification budget on half of the instances so both constraints get exercised
        const double pa = (s % 2) ? in.P_A : 0.5 * amplification_power(in.ch, in.W, in.psi, in.hwi.kappa_t, in.hwi.sigma_d_sq);
        const WSubproblem sp = assemble_w_subproblem(in.ch, in.psi, in.hwi, in.aux, pa);
        const WSolveResult r = optimize_w(sp, Beamformer{in.W}.vec(), in.P_T, opt);
        const KktResiduals k = kkt_residuals(sp, r.w, in.P_T);
        worst.stationarity = std::max(worst.stationarity, k.stationarity);
        worst.feasibility = std::max(worst.feasibility, k.feasibility);
        worst.slackness = std::max(worst.slackness, k.slackness);
    }
    return {worst.stationarity <= 1e-5 && worst.feasibility <= 1e-6 && worst.slackness <= 1e-6,
            "stationarity " + num(worst.stationarity) + ", feasibility " + num(worst.feasibility) + ", slackness " +
                num(worst.slackness) + " (20 instances)"};
}

// 6: monotone sum-rate trace and convergence on the default scenario
Outcome default_convergence() {
    const auto t0 = Clock::now();
    ScenarioConfig cfg;
    SolveOptions opt;
    opt.throw_on_nonmonotone = false;
    int monotone = 0, converged = 0, max_iter = 0;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        cfg.seed = s;
        const SolveReport r = run_bcd_aso(cfg, generate_channels(cfg, s), opt);
        bool ok = true;
        for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
            ok = ok && r.objective_trace[i] >= r.objective_trace[i - 1] - 1e-9 * std::abs(r.objective_trace[i - 1]);
        monotone += ok;
        converged += r.converged && r.iterations <= 100;
        max_iter = std::max(max_iter, r.iterations);
    }
    const double t = seconds_since(t0);
    return {monotone == 100 && converged == 100 && t < 600.0,
            std::to_string(monotone) + "/100 monotone, " + std::to_string(converged) +
                "/100 converged within 100 iterations (max " + std::to_string(max_iter) + "), " + num(t) + " s"};
}

// 7: two-element, two-antenna, single-user links against the exhaustive grid
Outcome desk_grid() {
    const auto t0 = Clock::now();
    const ScenarioConfig desk = desk_scenario(ScenarioConfig{});
    int ok = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 1; s <= 20; ++s) {
        ScenarioConfig c = desk;
        c.seed = s;
        const ChannelSet ch = generate_channels(c, s);
        const PowerSplit ps = active_split(c);
        const double bcd = run_bcd_aso(c, ch).sum_rate();
        const double grid = grid_search_small(ch, make_hwi(c), ps.P_T, ps.P_A).best_rate;
        const double ratio = bcd / grid;
        ok += ratio >= 0.95;
        worst = std::min(worst, ratio);
    }
    const double t = seconds_since(t0);
    return {ok == 20 && t < 300.0, std::to_string(ok) + "/20 seeds at >= 0.95 of the grid optimum (worst ratio " +
                                       num(worst) + "), " + num(t) + " s"};
}

// 8: phase-noise moments
Outcome moments() {
    const MomentReport m = check_phase_noise_moments(4, 1000000, 8);
    return {m.max_abs_z <= 3.0 && m.max_diag_error <= 1e-12,
            "max |z| " + num(m.max_abs_z) + " over 1e6 samples, diagonal error " + num(m.max_diag_error)};
}

// 9: closed-form average rate against Monte Carlo at the optimized point
Outcome rate_gap() {
    ScenarioConfig cfg;
    const ChannelSet ch = generate_channels(cfg, cfg.seed);
    const SolveReport r = run_bcd_aso(cfg, ch);
    const RateGapReport g = check_rate_approximation(ch, r.final_W, r.final_psi, make_hwi(cfg), 100000, 9);
    return {g.gap <= 0.10, "approx " + num(g.approx) + ", MC " + num(g.mc_mean) + " +- " + num(g.mc_std_error) +
                               ", relative gap " + num(g.gap)};
}

// 10: qualitative trends over seeds
Outcome trends() {
    const int seeds = 20;
    ScenarioConfig base;
    std::string detail;
    bool pass = true;

    {
        const auto t0 = Clock::now();
        std::vector<double> kappas;
        for (double k : {0.0, 0.02, 0.04, 0.06, 0.08, 0.10}) kappas.push_back(k * k);
        const SweepResult s = run_sweep(base, "kappa", kappas, {Scheme::BcdAso}, seeds);
        bool mono = true;
        std::string meds;
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            meds += (i ? "/" : "") + num(s.points[i].median);
            if (i > 0) mono = mono && s.points[i].median <= s.points[i - 1].median * (1.0 + 1e-9);
        }
        const double t = seconds_since(t0);
        pass = pass && mono && t < 900.0;
        detail += std::string("(a) ") + (mono ? "non-increasing" : "NOT non-increasing") + " medians " + meds + ", " +
                  num(t) + " s; ";
    }
    {
        const auto t0 = Clock::now();
        const SweepResult s = run_sweep(base, "power_dBm", sweep_grid(0.0, 40.0, 10.0),
                                        {Scheme::BcdAso, Scheme::PassiveUnitModulus}, seeds);
        int ok = 0, points = 0;
        for (std::size_t i = 0; i + 1 < s.points.size(); i += 2) {
            ++points;
            ok += s.points[i].median >= s.points[i + 1].median;
        }
        const double t = seconds_since(t0);
        pass = pass && ok == points && t < 900.0;
        detail += "(b) active >= passive at " + std::to_string(ok) + "/" + std::to_string(points) + " powers, " +
                  num(t) + " s; ";
    }
    {
        const auto t0 = Clock::now();
        const auto runs = run_trials(base, {Scheme::BcdAso, Scheme::ActiveRandomPhase}, seeds);
        int wins = 0;
        for (std::size_t i = 0; i + 1 < runs.size(); i += 2) wins += runs[i].sum_rate >= runs[i + 1].sum_rate;
        const double t = seconds_since(t0);
        pass = pass && wins >= (9 * seeds + 9) / 10 && t < 900.0;
        detail += "(c) optimized >= random phase on " + std::to_string(wins) + "/" + std::to_string(seeds) +
                  " seeds, " + num(t) + " s";
    }
    return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"FP identity", fp_identity},
        {"subproblem equivalence", subproblem_equivalence},
        {"MM surrogate suite", surrogate_suite},
        {"multiplier monotonicity", monotonicity_lemmas},
        {"beamformer KKT residuals", kkt},
        {"default-scenario convergence", default_convergence},
        {"small-link grid optimality", desk_grid},
        {"phase-noise moments", moments},
        {"rate approximation vs Monte Carlo", rate_gap},
        {"trends", trends},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.passed;
        std::printf("%s criterion %d (%s): %s\n", o.passed ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
