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

#ifndef ARISBF_FP_CORE_HPP
#define ARISBF_FP_CORE_HPP

#include "arisbf/rate_model.hpp"

#include <cmath>
#include <vector>

// Quadratic-transform reformulation of the sum rate. All r-values are in
// nats: sum_k r_k at the optimal (u, v) equals sum_k R_k / log2(e).

namespace arisbf {

inline constexpr double kLog2e = 1.4426950408889634;

struct AuxiliaryVars {
    std::vector<CVec> u;  // length M+1 each; u[k](0) pairs with f_hat
    std::vector<double> v;
};

inline double update_v(const ChannelSet& ch, const CMat& W, const CVec& psi, const HwiParams& hwi, Eigen::Index k) {
    return approx_average_rate(ch, W, psi, hwi, k).sinr_tilde;
}

inline CVec update_u(const ChannelSet& ch, const CMat& W, const CVec& psi, const HwiParams& hwi, double v,
                     Eigen::Index k) {
    detail::check_shapes(ch, W, psi);
    const CMat gbar = effective_channel(ch, psi, k);
    const RateBreakdown rb = rate_terms(gbar, W, psi, ch, hwi, k);
    return (std::sqrt(1.0 + v) / (rb.varpi2 + rb.varpi3)) * (gbar.adjoint() * W.col(k));
}

/// Closed-form optimum of both auxiliary groups. v is computed first and
/// then used inside u.
inline AuxiliaryVars update_aux(const ChannelSet& ch, const CMat& W, const CVec& psi, const HwiParams& hwi) {
    detail::check_shapes(ch, W, psi);
    AuxiliaryVars aux;
    for (Eigen::Index k = 0; k < ch.K(); ++k) {
        const CMat gbar = effective_channel(ch, psi, k);
        const RateBreakdown rb = rate_terms(gbar, W, psi, ch, hwi, k);
        const double v = rb.sinr_tilde;
        aux.v.push_back(v);
        aux.u.push_back((std::sqrt(1.0 + v) / (rb.varpi2 + rb.varpi3)) * (gbar.adjoint() * W.col(k)));
    }
    return aux;
}

inline double objective_r_user(const ChannelSet& ch, const CMat& W, const CVec& psi, const HwiParams& hwi,
                               const CVec& u, double v, Eigen::Index k) {
    const CMat gbar = effective_channel(ch, psi, k);
    const RateBreakdown rb = rate_terms(gbar, W, psi, ch, hwi, k);
    const cd cross = u.dot(gbar.adjoint() * W.col(k));  // u^H Gbar^H w_k
    return std::log(1.0 + v) - v + 2.0 * std::sqrt(1.0 + v) * cross.real() -
           u.squaredNorm() * (rb.varpi2 + rb.varpi3);
}

inline double objective_r(const ChannelSet& ch, const CMat& W, const CVec& psi, const HwiParams& hwi,
                          const AuxiliaryVars& aux) {
    detail::check_shapes(ch, W, psi);
    if (static_cast<Eigen::Index>(aux.u.size()) != ch.K() || static_cast<Eigen::Index>(aux.v.size()) != ch.K())
        throw InvalidInput("objective_r: auxiliary variables need K entries");
    double s = 0.0;
    for (Eigen::Index k = 0; k < ch.K(); ++k)
        s += objective_r_user(ch, W, psi, hwi, aux.u[static_cast<std::size_t>(k)], aux.v[static_cast<std::size_t>(k)], k);
    return s;
}

// ---- beamformer subproblem -------------------------------------------------

/// min_w w^H Xi w - 2 Re{omega^H w} - c  s.t. ||w||^2 <= P_T, w^H Gamma w <= P_m.
struct WSubproblem {
    CMat Xi;
    CVec omega;
    double c = 0.0;
    CMat Gamma;
    double P_m = 0.0;
    CMat Gamma_block;  // N x N block repeated K times on the diagonal of Gamma

    double objective(const CVec& w) const { return w.dot(Xi * w).real() - 2.0 * omega.dot(w).real() - c; }
    double gamma_form(const CVec& w) const { return w.dot(Gamma * w).real(); }
};

inline CMat kron_identity(Eigen::Index k, const CMat& block) {
    const Eigen::Index n = block.rows();
    CMat out = CMat::Zero(n * k, n * k);
    for (Eigen::Index i = 0; i < k; ++i) out.block(i * n, i * n, n, n) = block;
    return out;
}

/// B + kappa_t diag(B), B = G^H Psi^H Psi G.
inline CMat amplification_block(const ChannelSet& ch, const CVec& psi, double kappa_t) {
    const CMat PG = psi.asDiagonal() * ch.G;
    CMat B = PG.adjoint() * PG;
    B.diagonal() *= (1.0 + kappa_t);
    return B;
}

inline WSubproblem assemble_w_subproblem(const ChannelSet& ch, const CVec& psi, const HwiParams& hwi,
                                         const AuxiliaryVars& aux, double P_A) {
    const Eigen::Index N = ch.N(), K = ch.K();
    if (psi.size() != ch.M()) throw InvalidInput("assemble_w_subproblem: psi length differs from M");
    if (static_cast<Eigen::Index>(aux.u.size()) != K) throw InvalidInput("assemble_w_subproblem: aux size");
    WSubproblem sp;
    sp.P_m = P_A - hwi.sigma_d_sq * psi.squaredNorm();
    if (!(sp.P_m > 0.0)) throw InfeasibleReflection("amplified RIS noise exhausts the amplification budget");

    CMat xi_sum = CMat::Zero(N, N);
    sp.omega = CVec::Zero(N * K);
    sp.c = 0.0;
    for (Eigen::Index k = 0; k < K; ++k) {
        const CVec& u = aux.u[static_cast<std::size_t>(k)];
        const double v = aux.v[static_cast<std::size_t>(k)];
        const double kr = hwi.kr(k);
        const CMat gbar = effective_channel(ch, psi, k);
        CMat R = gbar * gbar.adjoint();
        R.diagonal() *= (1.0 + hwi.kappa_t);
        xi_sum += ((1.0 + kr) * u.squaredNorm()) * R;
        sp.omega.segment(k * N, N) = std::sqrt(1.0 + v) * (gbar * u);
        const double varpi3 = (1.0 + kr) * (ris_noise_at_user(ch, psi, hwi.sigma_d_sq, k) + hwi.noise(k));
        sp.c += std::log(1.0 + v) - v - u.squaredNorm() * varpi3;
    }
    xi_sum = 0.5 * (xi_sum + xi_sum.adjoint());
    sp.Xi = kron_identity(K, xi_sum);
    sp.Gamma_block = amplification_block(ch, psi, hwi.kappa_t);
    sp.Gamma = kron_identity(K, sp.Gamma_block);
    return sp;
}

// ---- reflection subproblem -------------------------------------------------

/// min_psi psi^H Delta psi - 2 Re{psi^H alpha} - d  s.t. psi^H Lambda psi <= P_A.
struct PsiSubproblem {
    CMat Delta;
    CVec alpha;
    double d = 0.0;
    RVec Lambda;  // diagonal of the amplification-power matrix

    double objective(const CVec& psi) const {
        return psi.dot(Delta * psi).real() - 2.0 * psi.dot(alpha).real() - d;
    }
    double lambda_form(const CVec& psi) const { return psi.cwiseAbs2().dot(Lambda); }
};

/// W W^H + kappa_t diag(W W^H).
inline CMat transmit_covariance(const CMat& W, double kappa_t) {
    CMat X = W * W.adjoint();
    X.diagonal() *= (1.0 + kappa_t);
    return X;
}

inline RVec amplification_diagonal(const ChannelSet& ch, const CMat& W, double kappa_t, double sigma_d_sq) {
    const CMat X = transmit_covariance(W, kappa_t);
    const CMat GX = ch.G * X;
    RVec lam(ch.M());
    for (Eigen::Index m = 0; m < ch.M(); ++m) lam(m) = GX.row(m).dot(ch.G.row(m)).real() + sigma_d_sq;
    return lam;
}

inline PsiSubproblem assemble_psi_subproblem(const ChannelSet& ch, const CMat& W, const HwiParams& hwi,
                                             const AuxiliaryVars& aux) {
    const Eigen::Index M = ch.M(), K = ch.K();
    if (W.rows() != ch.N() || W.cols() != K) throw InvalidInput("assemble_psi_subproblem: W must be N x K");
    if (static_cast<Eigen::Index>(aux.u.size()) != K) throw InvalidInput("assemble_psi_subproblem: aux size");
    constexpr double mc = PhaseNoiseStats::mean_conj_scale;
    const double dscale = std::sqrt(PhaseNoiseStats::dd_scale);
    const CMat X = transmit_covariance(W, hwi.kappa_t);
    const CMat GXG = ch.G * X * ch.G.adjoint();

    PsiSubproblem sp;
    sp.Delta = CMat::Zero(M, M);
    sp.alpha = CVec::Zero(M);
    sp.d = 0.0;
    for (Eigen::Index k = 0; k < K; ++k) {
        const CVec& h = ch.h[static_cast<std::size_t>(k)];
        const CVec& f = ch.f[static_cast<std::size_t>(k)];
        const CVec& u = aux.u[static_cast<std::size_t>(k)];
        const double v = aux.v[static_cast<std::size_t>(k)];
        const double kr = hwi.kr(k);
        const double q = u.squaredNorm() * (1.0 + kr);  // Q_k = q X
        const double sv = std::sqrt(1.0 + v);
        const cd u_psi = u(0);
        const auto u_vec = u.tail(M);

        // Delta_1: (4/pi^2 h h^H) .* (G Q G^H)^T plus the diagonal phase-noise part
        const CMat GQG = q * GXG;
        CMat d1 = (PhaseNoiseStats::offdiag * (h * h.adjoint())).cwiseProduct(GQG.transpose());
        for (Eigen::Index m = 0; m < M; ++m) d1(m, m) += PhaseNoiseStats::dd_scale * std::norm(h(m)) * GQG(m, m).real();
        sp.Delta += d1;
        // Delta_2: amplified RIS noise
        for (Eigen::Index m = 0; m < M; ++m) sp.Delta(m, m) += hwi.sigma_d_sq * q * std::norm(h(m));

        const CVec gw = ch.G * W.col(k);
        const CVec gqf = q * (ch.G * (X * f));
        for (Eigen::Index m = 0; m < M; ++m) {
            const cd a1 = (mc * u_psi + dscale * u_vec(m)) * h(m) * std::conj(gw(m));
            const cd a2 = mc * h(m) * std::conj(gqf(m));
            sp.alpha(m) += sv * a1 - a2;
        }
        const cd d1s = std::conj(u_psi) * f.dot(W.col(k));  // u_psi^* f^H w_k
        const double d2s = q * f.dot(X * f).real();
        sp.d += std::log(1.0 + v) - v - (1.0 + kr) * hwi.noise(k) * u.squaredNorm() + 2.0 * (sv * d1s).real() - d2s;
    }
    sp.Delta = 0.5 * (sp.Delta + sp.Delta.adjoint());
    sp.Lambda = amplification_diagonal(ch, W, hwi.kappa_t, hwi.sigma_d_sq);
    return sp;
}

}  // namespace arisbf

#endif
