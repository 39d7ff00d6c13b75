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

#ifndef ARISBF_ORCHESTRATOR_HPP
#define ARISBF_ORCHESTRATOR_HPP

#include "arisbf/beamformer_solver.hpp"
#include "arisbf/fp_core.hpp"
#include "arisbf/reflection_solver.hpp"
#include "arisbf/scenario.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace arisbf {

enum class Scheme { BcdAso, ActiveRandomPhase, PassiveUnitModulus, NoRis };

inline const char* scheme_name(Scheme s) {
    switch (s) {
    case Scheme::BcdAso: return "bcd_aso";
    case Scheme::ActiveRandomPhase: return "active_random_phase";
    case Scheme::PassiveUnitModulus: return "passive_unit_modulus";
    case Scheme::NoRis: return "no_ris";
    }
    return "?";
}

inline Scheme parse_scheme(const std::string& s) {
    if (s == "bcd_aso") return Scheme::BcdAso;
    if (s == "active_random_phase") return Scheme::ActiveRandomPhase;
    if (s == "passive_unit_modulus") return Scheme::PassiveUnitModulus;
    if (s == "no_ris") return Scheme::NoRis;
    throw InvalidInput("unknown scheme '" + s + "'");
}

struct SolveOptions {
    double eps = 1e-4;  // relative sum-rate change
    int n_max = 100;
    double monotone_tol = 1e-9;
    bool throw_on_nonmonotone = true;
    WSolveOptions w;
    PsiSolveOptions psi;
};

struct SolveReport {
    std::string scheme;
    std::vector<double> objective_trace;  // sum rate [bps/Hz], entry 0 is the initial point
    std::vector<double> fp_trace;         // FP objective * log2(e) right after each (u, v) update
    std::vector<std::pair<double, double>> constraint_slacks;  // (P_T - ||W||^2, P_A - P_yRIS)
    int iterations = 0;
    bool converged = false;
    double wall_time = 0.0;  // seconds
    CMat final_W;
    CVec final_psi;
    double P_T = 0.0;
    double P_A = 0.0;
    bool ris_on = false;
    int repairs = 0;

    double sum_rate() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

/// Matched filter towards each direct channel, equal power per user.
inline Beamformer init_beamformer(const ChannelSet& ch, double P_T) {
    const Eigen::Index N = ch.N(), K = ch.K();
    CMat W(N, K);
    for (Eigen::Index k = 0; k < K; ++k) {
        const CVec& f = ch.f[static_cast<std::size_t>(k)];
        const double n = f.norm();
        W.col(k) = n > 0.0 ? CVec(f / n) : CVec(CVec::Constant(N, cd(1.0 / std::sqrt(double(N)), 0.0)));
    }
    W *= std::sqrt(P_T / static_cast<double>(K));
    return {W};
}

/// Random phases, common amplitude chosen so that P_yRIS = 0.9 P_A.
template <class Rng>
ReflectionCoefficients init_reflection(const ChannelSet& ch, const CMat& W, double P_A, const HwiParams& hwi,
                                       Rng& rng) {
    const Eigen::Index M = ch.M();
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    ReflectionCoefficients r;
    r.phi.resize(M);
    for (Eigen::Index m = 0; m < M; ++m) r.phi(m) = u(rng);
    const double per_unit = amplification_diagonal(ch, W, hwi.kappa_t, hwi.sigma_d_sq).sum();
    const double a0 = per_unit > 0.0 ? std::sqrt(0.9 * P_A / per_unit) : 0.0;
    r.a = RVec::Constant(M, a0);
    return r;
}

namespace detail {

enum class RisMode { Joint, AmplitudeOnly, Passive, Off };

inline void drop_amplification_constraint(WSubproblem& sp) {
    sp.Gamma.setZero();
    sp.Gamma_block.setZero();
    sp.P_m = std::numeric_limits<double>::infinity();
}

inline std::string dump_state(const SolveReport& rep, const CMat& W, const CVec& psi) {
    std::ostringstream os;
    os.precision(17);
    os << "scheme=" << rep.scheme << " iteration=" << rep.iterations << "\nrate trace:";
    for (double v : rep.objective_trace) os << ' ' << v;
    os << "\nW=\n" << W << "\npsi=\n" << psi.transpose() << '\n';
    return os.str();
}

inline SolveReport run_alternating(const ChannelSet& ch, const HwiParams& hwi, double P_T, double P_A, RisMode mode,
                                   ReflectionCoefficients refl, const SolveOptions& opt, std::string name) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    rep.scheme = std::move(name);
    rep.P_T = P_T;
    rep.P_A = P_A;
    rep.ris_on = mode != RisMode::Off;
    if (!(P_T > 0.0)) throw InvalidInput("transmit power budget must be positive");

    CMat W = init_beamformer(ch, P_T).W;
    CVec psi = refl.psi();
    const bool amp_limited = mode == RisMode::Joint || mode == RisMode::AmplitudeOnly;

    auto slacks = [&] {
        const double pa = amp_limited ? P_A - amplification_power(ch, W, psi, hwi.kappa_t, hwi.sigma_d_sq) : 0.0;
        return std::make_pair(P_T - W.squaredNorm(), pa);
    };

    double rate = sum_rate(ch, W, psi, hwi);
    rep.objective_trace.push_back(rate);
    rep.constraint_slacks.push_back(slacks());

    PsiSolveOptions psi_opt = opt.psi;
    if (mode == RisMode::AmplitudeOnly) psi_opt.mode = PsiMode::AmplitudeOnly;
    if (mode == RisMode::Passive) psi_opt.mode = PsiMode::PhaseOnly;

    for (int n = 0; n < opt.n_max; ++n) {
        AuxiliaryVars aux = update_aux(ch, W, psi, hwi);
        rep.fp_trace.push_back(objective_r(ch, W, psi, hwi, aux) * kLog2e);

        WSubproblem wsp;
        if (amp_limited) {
            try {
                wsp = assemble_w_subproblem(ch, psi, hwi, aux, P_A);
            } catch (const InfeasibleReflection&) {
                // RIS noise alone fills the budget: shrink amplitudes and restart this round
                const double noise = hwi.sigma_d_sq * refl.a.squaredNorm();
                refl.a *= std::sqrt(0.9 * P_A / noise);
                psi = refl.psi();
                ++rep.repairs;
                aux = update_aux(ch, W, psi, hwi);
                wsp = assemble_w_subproblem(ch, psi, hwi, aux, P_A);
            }
        } else {
            wsp = assemble_w_subproblem(ch, psi, hwi, aux, std::numeric_limits<double>::infinity());
            drop_amplification_constraint(wsp);
        }
        const WSolveResult wr = optimize_w(wsp, Beamformer{W}.vec(), P_T, opt.w);
        W = Beamformer::from_vec(wr.w, ch.N(), ch.K()).W;

        if (mode != RisMode::Off) {
            const PsiSubproblem psp = assemble_psi_subproblem(ch, W, hwi, aux);
            const double budget = amp_limited ? P_A : std::numeric_limits<double>::infinity();
            const PsiSolveResult pr = optimize_psi(psp, refl, budget, psi_opt);
            refl = pr.coeffs;
            psi = pr.psi;
        }

        const double prev = rate;
        rate = sum_rate(ch, W, psi, hwi);
        rep.objective_trace.push_back(rate);
        rep.constraint_slacks.push_back(slacks());
        ++rep.iterations;
        if (rate < prev - opt.monotone_tol * std::abs(prev) && opt.throw_on_nonmonotone && rep.repairs == 0)
            throw NonMonotoneObjective("sum rate decreased\n" + dump_state(rep, W, psi));
        if (prev > 0.0 && (rate - prev) / prev < opt.eps) {
            rep.converged = true;
            break;
        }
        if (prev == 0.0 && rate == 0.0) {
            rep.converged = true;
            break;
        }
    }
    rep.final_W = W;
    rep.final_psi = psi;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace detail

/// Joint beamforming and reflection design by alternating FP/MM/ASO steps.
inline SolveReport run_bcd_aso(const ScenarioConfig& cfg, const ChannelSet& ch, const SolveOptions& opt = {}) {
    const HwiParams hwi = make_hwi(cfg);
    const PowerSplit ps = active_split(cfg);
    if (!ps.ris_on)
        return detail::run_alternating(ch, hwi, ps.P_T, 0.0, detail::RisMode::Off,
                                       ReflectionCoefficients::off(ch.M()), opt, scheme_name(Scheme::BcdAso));
    std::mt19937_64 rng(mix_seed(cfg.seed, 1));
    const Beamformer W0 = init_beamformer(ch, ps.P_T);
    ReflectionCoefficients refl = init_reflection(ch, W0.W, ps.P_A, hwi, rng);
    return detail::run_alternating(ch, hwi, ps.P_T, ps.P_A, detail::RisMode::Joint, refl, opt,
                                   scheme_name(Scheme::BcdAso));
}

/// Reference schemes. The passive one is an in-repo simplification (unit
/// amplitudes, MM phase updates), not a reproduction of any published method.
inline SolveReport run_baseline(Scheme kind, const ScenarioConfig& cfg, const ChannelSet& ch,
                                const SolveOptions& opt = {}) {
    HwiParams hwi = make_hwi(cfg);
    std::mt19937_64 rng(mix_seed(cfg.seed, 1));
    switch (kind) {
    case Scheme::BcdAso: return run_bcd_aso(cfg, ch, opt);
    case Scheme::ActiveRandomPhase: {
        const PowerSplit ps = active_split(cfg);
        if (!ps.ris_on)
            return detail::run_alternating(ch, hwi, ps.P_T, 0.0, detail::RisMode::Off,
                                           ReflectionCoefficients::off(ch.M()), opt, scheme_name(kind));
        const Beamformer W0 = init_beamformer(ch, ps.P_T);
        ReflectionCoefficients refl = init_reflection(ch, W0.W, ps.P_A, hwi, rng);
        return detail::run_alternating(ch, hwi, ps.P_T, ps.P_A, detail::RisMode::AmplitudeOnly, refl, opt,
                                       scheme_name(kind));
    }
    case Scheme::PassiveUnitModulus: {
        const PowerSplit ps = passive_split(cfg);
        hwi.sigma_d_sq = 0.0;  // no amplifier, no dynamic noise
        if (!ps.ris_on)
            return detail::run_alternating(ch, hwi, ps.P_T, 0.0, detail::RisMode::Off,
                                           ReflectionCoefficients::off(ch.M()), opt, scheme_name(kind));
        std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
        ReflectionCoefficients refl;
        refl.a = RVec::Ones(ch.M());
        refl.phi.resize(ch.M());
        for (Eigen::Index m = 0; m < ch.M(); ++m) refl.phi(m) = u(rng);
        return detail::run_alternating(ch, hwi, ps.P_T, 0.0, detail::RisMode::Passive, refl, opt, scheme_name(kind));
    }
    case Scheme::NoRis: {
        const PowerSplit ps = no_ris_split(cfg);
        return detail::run_alternating(ch, hwi, ps.P_T, 0.0, detail::RisMode::Off, ReflectionCoefficients::off(ch.M()),
                                       opt, scheme_name(kind));
    }
    }
    throw InvalidInput("run_baseline: unknown scheme");
}

inline SolveReport run_scheme(Scheme s, const ScenarioConfig& cfg, const ChannelSet& ch, const SolveOptions& opt = {}) {
    return s == Scheme::BcdAso ? run_bcd_aso(cfg, ch, opt) : run_baseline(s, cfg, ch, opt);
}

}  // namespace arisbf

#endif
