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

#ifndef ARISBF_BEAMFORMER_SOLVER_HPP
#define ARISBF_BEAMFORMER_SOLVER_HPP

#include "arisbf/fp_core.hpp"
#include "arisbf/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

namespace arisbf {

/// Isotropic upper bound of w^H Gamma w around an anchor:
///   f(w) = lambda ||w||^2 - 2 Re{b^H w} + w_t^H (Z - Gamma) w_t,  b = (Z - Gamma) w_t.
struct WSurrogate {
    double lambda_gamma = 0.0;
    double P_m_tilde = 0.0;
    CVec w_anchor;
    CVec b;
    double anchor_gap = 0.0;  // w_t^H (Z - Gamma) w_t

    /// Left-hand side of the majorized constraint (compared against P_m_tilde).
    double constraint(const CVec& w) const { return lambda_gamma * w.squaredNorm() - 2.0 * b.dot(w).real(); }
    /// Majorizer of w^H Gamma w.
    double value(const CVec& w) const { return constraint(w) + anchor_gap; }
};

inline WSurrogate majorize_gamma(const CMat& Gamma, const CVec& w_anchor, double P_m,
                                 std::optional<double> lambda_gamma = std::nullopt) {
    if (Gamma.rows() != w_anchor.size()) throw InvalidInput("majorize_gamma: dimension mismatch");
    WSurrogate s;
    s.lambda_gamma = lambda_gamma ? *lambda_gamma : max_eigenvalue(Gamma);
    s.w_anchor = w_anchor;
    s.b = s.lambda_gamma * w_anchor - Gamma * w_anchor;
    s.anchor_gap = w_anchor.dot(s.b).real();
    s.P_m_tilde = P_m - s.anchor_gap;
    return s;
}

struct Case1Result {
    CVec w;
    double mu = 0.0;
    int iterations = 0;
};

struct Case2Result {
    CVec w;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    int iterations = 0;
    bool consistent = true;  // the returned w also satisfies the majorized constraint
};

/// Dual solutions of the majorized beamformer subproblem for one anchor. All
/// candidate w are formed in the eigenbasis of Xi, which is decomposed once.
class WDualSolver {
  public:
    WDualSolver(const WSubproblem& sp, const ShiftedPsdSolver& xi) : sp_(sp), xi_(xi) {
        c_omega_ = xi_.to_eigenbasis(sp_.omega);
    }

    void set_surrogate(const WSurrogate& sur) {
        sur_ = sur;
        c_b_ = xi_.to_eigenbasis(sur.b);
    }
    const WSurrogate& surrogate() const { return sur_; }

    /// Natural scale of the multipliers: eigenvalue scale of Xi or, when Xi
    /// vanishes, the shift that brings ||Xi^+ omega|| to the power budget.
    double multiplier_scale(double P_T) const {
        double s = xi_.eig().max();
        if (P_T > 0.0) s = std::max(s, sp_.omega.norm() / std::sqrt(P_T));
        return s > 0.0 ? s : 1.0;
    }

    // -- Case I: only the majorized amplification constraint --------------
    CVec coords_case1(double mu) const {
        const RVec inv = xi_.inverse_weights(mu * sur_.lambda_gamma);
        return inv.cwiseProduct(c_omega_ + mu * c_b_);
    }
    double case1_constraint(double mu) const { return constraint_in_basis(coords_case1(mu)); }
    CVec w_case1(double mu) const { return xi_.from_eigenbasis(coords_case1(mu)); }

    Case1Result solve_case1(const BisectionSettings& bs = {}) const {
        Case1Result r;
        if (constraint_in_basis(coords_case1(0.0)) <= sur_.P_m_tilde || !(sur_.lambda_gamma > 0.0)) {
            r.w = w_case1(0.0);
            return r;
        }
        const double xmax = xi_.eig().max();
        const double scale = (xmax > 0.0 ? xmax : 1.0) / sur_.lambda_gamma;
        const BisectOptions opt = bs.options();
        const auto br = bisect_bracket([&](double t) { return case1_constraint(t * scale); }, sur_.P_m_tilde,
                                       0.0, 1.0, opt);
        r.mu = br.hi * scale;
        r.iterations = br.iterations + br.expansions;
        r.w = w_case1(r.mu);
        return r;
    }

    // -- Case II: transmit power active, amplification constraint linearized
    double lambda2_star(const RVec& inv) const {
        const double p_hat = sur_.lambda_gamma * pt_ - sur_.P_m_tilde;
        const CVec x_omega = inv.cwiseProduct(c_omega_);
        const double lin0 = 2.0 * c_b_.dot(x_omega).real();
        if (lin0 >= p_hat) return 0.0;
        const double den = 2.0 * inv.dot(c_b_.cwiseAbs2());
        if (!(den > 0.0)) return 0.0;
        return std::max(0.0, (p_hat - lin0) / den);
    }
    CVec coords_case2(double lambda1, double* lambda2_out = nullptr) const {
        const RVec inv = xi_.inverse_weights(lambda1);
        const double l2 = lambda2_star(inv);
        if (lambda2_out) *lambda2_out = l2;
        return inv.cwiseProduct(c_omega_ + l2 * c_b_);
    }
    double case2_power(double lambda1) const { return coords_case2(lambda1).squaredNorm(); }

    Case2Result solve_case2(double P_T, const BisectionSettings& bs = {}) {
        pt_ = P_T;
        Case2Result r;
        double l2 = 0.0;
        CVec c = coords_case2(0.0, &l2);
        if (c.squaredNorm() <= P_T) {
            r.lambda2 = l2;
        } else {
            const double scale = multiplier_scale(P_T);
            const BisectOptions opt = bs.options();
            const auto br = bisect_bracket([&](double t) { return case2_power(t * scale); }, P_T, 0.0, 1.0, opt);
            r.lambda1 = br.hi * scale;
            r.iterations = br.iterations + br.expansions;
            c = coords_case2(r.lambda1, &l2);
            r.lambda2 = l2;
        }
        const double slack_tol = 1e-10 * (std::abs(sur_.P_m_tilde) + sur_.lambda_gamma * P_T);
        r.consistent = constraint_in_basis(c) <= sur_.P_m_tilde + slack_tol;
        r.w = xi_.from_eigenbasis(c);
        return r;
    }

    void set_power_budget(double P_T) { pt_ = P_T; }

  private:
    double constraint_in_basis(const CVec& c) const {
        return sur_.lambda_gamma * c.squaredNorm() - 2.0 * c_b_.dot(c).real();
    }

    const WSubproblem& sp_;
    const ShiftedPsdSolver& xi_;
    WSurrogate sur_;
    CVec c_omega_;
    CVec c_b_;
    double pt_ = 0.0;
};

/// Case I on the majorized problem (stand-alone form; decomposes Xi).
inline Case1Result solve_case1(const WSubproblem& sp, const WSurrogate& sur, const BisectionSettings& bs = {}) {
    const ShiftedPsdSolver xi(sp.Xi);
    WDualSolver d(sp, xi);
    d.set_surrogate(sur);
    return d.solve_case1(bs);
}

inline Case2Result solve_case2(const WSubproblem& sp, const WSurrogate& sur, double P_T,
                               const BisectionSettings& bs = {}) {
    const ShiftedPsdSolver xi(sp.Xi);
    WDualSolver d(sp, xi);
    d.set_surrogate(sur);
    return d.solve_case2(P_T, bs);
}

// ---- MM outer loop ---------------------------------------------------------

struct WSolveOptions {
    int max_mm_iters = 30;
    double tol = 1e-6;  // relative objective change
    BisectionSettings bisection;
};

struct WSolveResult {
    CVec w;
    std::vector<double> trace;  // subproblem objective, starting with the initial point
    int iterations = 0;
    int case2_calls = 0;
    int rejected_steps = 0;
    double mu = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    bool converged = false;
};

/// Scales w into the feasible set of both true constraints.
inline CVec make_w_feasible(const WSubproblem& sp, const CVec& w, double P_T) {
    double s = 1.0;
    const double pw = w.squaredNorm();
    if (pw > P_T) s = std::min(s, std::sqrt(P_T / pw));
    const double pg = sp.gamma_form(w);
    if (pg > sp.P_m) s = std::min(s, std::sqrt(sp.P_m / pg));
    return s * w;
}

inline bool w_feasible(const WSubproblem& sp, const CVec& w, double P_T, double rel = 1e-10) {
    return w.squaredNorm() <= P_T * (1.0 + rel) && sp.gamma_form(w) <= sp.P_m * (1.0 + rel);
}

inline WSolveResult optimize_w(const WSubproblem& sp, const CVec& w_init, double P_T, const WSolveOptions& opt = {}) {
    if (w_init.size() != sp.omega.size()) throw InvalidInput("optimize_w: initial point has wrong size");
    if (!(P_T > 0.0)) throw InvalidInput("optimize_w: P_T must be positive");
    WSolveResult res;
    res.w = make_w_feasible(sp, w_init, P_T);
    double obj = sp.objective(res.w);
    res.trace.push_back(obj);
    if (sp.omega.squaredNorm() == 0.0) {
        res.w.setZero();
        res.trace.push_back(sp.objective(res.w));
        res.converged = true;
        return res;
    }

    const ShiftedPsdSolver xi(sp.Xi);
    const double lambda_gamma = max_eigenvalue(sp.Gamma_block.rows() ? sp.Gamma_block : sp.Gamma);
    WDualSolver dual(sp, xi);
    dual.set_power_budget(P_T);
    const double obj_scale = [&] {
        const double s = std::abs(sp.c) + sp.omega.norm() * std::sqrt(P_T);
        return s > 0.0 ? s : 1.0;
    }();

    for (int it = 0; it < opt.max_mm_iters; ++it) {
        dual.set_surrogate(majorize_gamma(sp.Gamma, res.w, sp.P_m, lambda_gamma));
        CVec cand = res.w;
        double mu = 0.0, l1 = 0.0, l2 = 0.0;
        try {
            Case1Result c1 = dual.solve_case1(opt.bisection);
            cand = c1.w;
            mu = c1.mu;
            if (cand.squaredNorm() > P_T) {
                ++res.case2_calls;
                Case2Result c2 = dual.solve_case2(P_T, opt.bisection);
                mu = 0.0;
                l1 = c2.lambda1;
                l2 = c2.lambda2;
                cand = c2.consistent ? c2.w : res.w;
            }
        } catch (const BracketFailure&) {
            // the anchor already minimizes the majorized constraint on its boundary
            cand = res.w;
        }
        ++res.iterations;
        const double cand_obj = sp.objective(cand);
        // keep the trace exactly monotone: steps that are infeasible or worse are dropped
        if (!w_feasible(sp, cand, P_T) || cand_obj > obj) {
            ++res.rejected_steps;
            res.trace.push_back(obj);
            res.converged = true;
            break;
        }
        const double change = obj - cand_obj;
        res.w = cand;
        res.mu = mu;
        res.lambda1 = l1;
        res.lambda2 = l2;
        obj = cand_obj;
        res.trace.push_back(obj);
        if (change <= opt.tol * std::max(std::abs(obj), 1e-300 + 1e-12 * obj_scale)) {
            res.converged = true;
            break;
        }
    }
    return res;
}

// ---- KKT diagnostics -------------------------------------------------------

struct KktResiduals {
    double stationarity = 0.0;  // ||grad L|| / ||omega||
    double feasibility = 0.0;   // worst relative violation of the two budgets
    double slackness = 0.0;     // multiplier * slack, relative to the objective scale
    double nu_power = 0.0;
    double nu_gamma = 0.0;
};

/// Residuals of Xi w - omega + nu1 w + nu2 Gamma w = 0 with the best-fitting
/// multipliers nu >= 0 (two-variable non-negative least squares).
inline KktResiduals kkt_residuals(const WSubproblem& sp, const CVec& w, double P_T) {
    const CVec g0 = sp.Xi * w - sp.omega;
    const CVec a1 = w;
    const CVec a2 = sp.Gamma * w;
    auto resid = [&](double n1, double n2) { return (g0 + n1 * a1 + n2 * a2).norm(); };

    const double a11 = a1.squaredNorm(), a22 = a2.squaredNorm(), a12 = a1.dot(a2).real();
    const double b1 = -a1.dot(g0).real(), b2 = -a2.dot(g0).real();
    std::vector<std::array<double, 2>> cands{{0.0, 0.0}};
    if (a11 > 0.0) cands.push_back({std::max(0.0, b1 / a11), 0.0});
    if (a22 > 0.0) cands.push_back({0.0, std::max(0.0, b2 / a22)});
    const double det = a11 * a22 - a12 * a12;
    if (det > 1e-14 * a11 * a22) {
        const double n1 = (b1 * a22 - b2 * a12) / det, n2 = (a11 * b2 - a12 * b1) / det;
        if (n1 >= 0.0 && n2 >= 0.0) cands.push_back({n1, n2});
    }
    KktResiduals r;
    double best = resid(0.0, 0.0);
    for (const auto& c : cands) {
        const double v = resid(c[0], c[1]);
        if (v <= best) {
            best = v;
            r.nu_power = c[0];
            r.nu_gamma = c[1];
        }
    }
    const double on = sp.omega.norm();
    r.stationarity = on > 0.0 ? best / on : best;
    const double pw = w.squaredNorm(), pg = sp.gamma_form(w);
    r.feasibility = std::max({0.0, pw / P_T - 1.0, sp.P_m > 0.0 ? pg / sp.P_m - 1.0 : 0.0});
    const double scale = std::abs(w.dot(sp.Xi * w).real()) + std::abs(sp.omega.dot(w));
    const double sl = std::max(r.nu_power * std::abs(P_T - pw), r.nu_gamma * std::abs(sp.P_m - pg));
    r.slackness = scale > 0.0 ? sl / scale : sl;
    return r;
}

}  // namespace arisbf

#endif
