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

#ifndef ARISBF_REFLECTION_SOLVER_HPP
#define ARISBF_REFLECTION_SOLVER_HPP

#include "arisbf/fp_core.hpp"
#include "arisbf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace arisbf {

/// Separable majorizers of the reflection subproblem around psi_t:
///   f(psi) = lambda_delta ||psi||^2 + Re{psi^H p} + d_tilde
///   g(psi) = lambda_lambda ||psi||^2 + Re{psi^H q}  <=  P_A_tilde
struct PsiSurrogate {
    double lambda_delta = 0.0;
    double lambda_lambda = 0.0;
    CVec p;
    CVec q;
    double d_tilde = 0.0;
    double P_A_tilde = 0.0;
    CVec psi_anchor;

    double f(const CVec& psi) const { return lambda_delta * psi.squaredNorm() + psi.dot(p).real() + d_tilde; }
    double g(const CVec& psi) const { return lambda_lambda * psi.squaredNorm() + psi.dot(q).real(); }
    /// g plus the constant it carries on the right-hand side; majorizes psi^H Lambda psi.
    double g_full(const CVec& psi, double P_A) const { return g(psi) + (P_A - P_A_tilde); }
    double h(const CVec& psi, double eta) const { return f(psi) + eta * g(psi); }
};

inline PsiSurrogate majorize_psi(const PsiSubproblem& sp, const CVec& psi_anchor, double P_A) {
    if (psi_anchor.size() != sp.alpha.size()) throw InvalidInput("majorize_psi: dimension mismatch");
    PsiSurrogate s;
    s.lambda_delta = max_eigenvalue(sp.Delta);
    s.lambda_lambda = sp.Lambda.size() ? std::max(0.0, sp.Lambda.maxCoeff()) : 0.0;
    s.psi_anchor = psi_anchor;
    const CVec zd = s.lambda_delta * psi_anchor - sp.Delta * psi_anchor;  // (Z_Delta - Delta) psi_t
    const CVec zl = (s.lambda_lambda - sp.Lambda.array()).matrix().cast<cd>().cwiseProduct(psi_anchor);
    s.p = -2.0 * (sp.alpha + zd);
    s.d_tilde = -sp.d + psi_anchor.dot(zd).real();
    s.q = -2.0 * zl;
    s.P_A_tilde = P_A - psi_anchor.dot(zl).real();
    return s;
}

struct AsoElement {
    cd theta;  // unit modulus
    double a = 0.0;
};

/// Closed-form minimizer of (z_d + eta z_l) a^2 + Re{b theta^* a} for one element.
/// b = 0 leaves the phase untouched and switches the element off.
inline AsoElement aso_step(Eigen::Index m, const ReflectionCoefficients& state, const PsiSurrogate& sur, double eta) {
    const double z = sur.lambda_delta + eta * sur.lambda_lambda;
    if (!(z > 0.0)) throw InvalidInput("aso_step: non-positive curvature");
    const cd b = sur.p(m) + eta * sur.q(m);
    AsoElement e;
    if (b == cd(0.0, 0.0)) {
        e.theta = std::polar(1.0, state.phi(m));
        e.a = 0.0;
        return e;
    }
    e.theta = std::polar(1.0, std::arg(b) - kPi);
    e.a = std::abs(b) / (2.0 * z);
    return e;
}

/// Which parts of psi the element updates may change.
enum class PsiMode {
    Joint,          // phase and amplitude
    AmplitudeOnly,  // phases frozen
    PhaseOnly,      // amplitudes frozen, no amplification constraint
};

struct PsiSolveOptions {
    int max_iters = 50;
    double tol = 1e-6;  // relative objective change
    PsiMode mode = PsiMode::Joint;
    bool shuffle_order = false;
    std::uint64_t order_seed = 0;
    BisectionSettings bisection;
};

namespace detail {

inline double wrap_phase(double p) {
    p = std::fmod(p, 2.0 * kPi);
    return p < 0.0 ? p + 2.0 * kPi : p;
}

}  // namespace detail

/// One full element sweep for a fixed price. Since b_m only depends on the
/// anchor, the sweep yields the exact minimizer of h for this eta.
inline ReflectionCoefficients aso_sweep(const ReflectionCoefficients& start, const PsiSurrogate& sur, double eta,
                                        PsiMode mode, const std::vector<Eigen::Index>& order) {
    ReflectionCoefficients st = start;
    const double z = sur.lambda_delta + eta * sur.lambda_lambda;
    for (Eigen::Index m : order) {
        switch (mode) {
        case PsiMode::Joint: {
            const AsoElement e = aso_step(m, st, sur, eta);
            st.phi(m) = detail::wrap_phase(std::arg(e.theta));
            st.a(m) = e.a;
            break;
        }
        case PsiMode::AmplitudeOnly: {
            const cd b = sur.p(m) + eta * sur.q(m);
            const cd theta = std::polar(1.0, st.phi(m));
            st.a(m) = z > 0.0 ? std::max(0.0, -(b * std::conj(theta)).real()) / (2.0 * z) : 0.0;
            break;
        }
        case PsiMode::PhaseOnly: {
            const cd b = sur.p(m) + eta * sur.q(m);
            if (b != cd(0.0, 0.0)) st.phi(m) = detail::wrap_phase(std::arg(b) - kPi);
            break;
        }
        }
    }
    return st;
}

inline std::vector<Eigen::Index> sweep_order(Eigen::Index M, bool shuffle, std::uint64_t seed) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(M));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    if (shuffle) {
        std::mt19937_64 rng(seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    return order;
}

/// Smallest price (within tolerance) whose element-wise minimizer satisfies
/// the majorized amplification constraint. Returns the feasible bracket end.
inline double find_price(const PsiSurrogate& sur, const ReflectionCoefficients& start, PsiMode mode = PsiMode::Joint,
                         const BisectionSettings& bs = {}) {
    if (mode == PsiMode::PhaseOnly) return 0.0;
    const auto order = sweep_order(sur.p.size(), false, 0);
    auto g_of = [&](double eta) { return sur.g(aso_sweep(start, sur, eta, mode, order).psi()); };
    if (!(sur.lambda_lambda > 0.0) || g_of(0.0) <= sur.P_A_tilde) return 0.0;
    const double scale = sur.lambda_delta > 0.0 ? sur.lambda_delta / sur.lambda_lambda : 1.0;
    const BisectOptions opt = bs.options();
    const auto br = bisect_bracket([&](double t) { return g_of(t * scale); }, sur.P_A_tilde, 0.0, 1.0, opt);
    return br.hi * scale;
}

/// Price for the joint mode, sweeping from the anchor itself.
inline double find_price(const PsiSurrogate& sur, const BisectionSettings& bs = {}) {
    return find_price(sur, ReflectionCoefficients::from_psi(sur.psi_anchor), PsiMode::Joint, bs);
}

struct PsiSolveResult {
    ReflectionCoefficients coeffs;
    CVec psi;
    std::vector<double> trace;  // true subproblem objective, starting with the initial point
    int iterations = 0;
    int rejected_steps = 0;
    double eta = 0.0;
    bool converged = false;
};

inline bool psi_feasible(const PsiSubproblem& sp, const CVec& psi, double P_A, double rel = 1e-10) {
    return sp.lambda_form(psi) <= P_A * (1.0 + rel);
}

inline PsiSolveResult optimize_psi(const PsiSubproblem& sp, const ReflectionCoefficients& init, double P_A,
                                   const PsiSolveOptions& opt = {}) {
    const Eigen::Index M = sp.alpha.size();
    if (init.a.size() != M || init.phi.size() != M) throw InvalidInput("optimize_psi: initial point has wrong size");
    const bool constrained = opt.mode != PsiMode::PhaseOnly;
    PsiSolveResult res;
    res.coeffs = init;
    res.psi = init.psi();
    if (constrained && !psi_feasible(sp, res.psi, P_A, 1e-9)) {
        const double s = std::sqrt(P_A / sp.lambda_form(res.psi));
        res.coeffs.a *= s;
        res.psi = res.coeffs.psi();
    }
    double obj = sp.objective(res.psi);
    res.trace.push_back(obj);
    const auto order = sweep_order(M, opt.shuffle_order, opt.order_seed);

    for (int it = 0; it < opt.max_iters; ++it) {
        PsiSurrogate sur = majorize_psi(sp, res.psi, P_A);
        double eta = 0.0;
        ReflectionCoefficients cand = res.coeffs;
        bool stalled = false;
        try {
            eta = constrained ? find_price(sur, res.coeffs, opt.mode, opt.bisection) : 0.0;
            cand = aso_sweep(res.coeffs, sur, eta, opt.mode, order);
        } catch (const BracketFailure&) {
            stalled = true;
        }
        ++res.iterations;
        const CVec cpsi = cand.psi();
        const double cand_obj = sp.objective(cpsi);
        if (stalled || (constrained && !psi_feasible(sp, cpsi, P_A)) || cand_obj > obj) {
            ++res.rejected_steps;
            res.trace.push_back(obj);
            res.converged = true;
            break;
        }
        const double change = obj - cand_obj;
        res.coeffs = cand;
        res.psi = cpsi;
        res.eta = eta;
        obj = cand_obj;
        res.trace.push_back(obj);
        if (change <= opt.tol * std::abs(obj)) {
            res.converged = true;
            break;
        }
    }
    return res;
}

}  // namespace arisbf

#endif
