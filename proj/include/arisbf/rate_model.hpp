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

#ifndef ARISBF_RATE_MODEL_HPP
#define ARISBF_RATE_MODEL_HPP

#include "arisbf/hwi_model.hpp"
#include "arisbf/scenario.hpp"
#include "arisbf/types.hpp"

#include <cmath>
#include <random>
#include <thread>
#include <vector>

namespace arisbf {

/// Transmit precoder; column k serves user k.
struct Beamformer {
    CMat W;

    CVec vec() const { return Eigen::Map<const CVec>(W.data(), W.size()); }

    static Beamformer from_vec(const CVec& w, Eigen::Index n, Eigen::Index k) {
        if (w.size() != n * k) throw InvalidInput("Beamformer::from_vec: size mismatch");
        return {Eigen::Map<const CMat>(w.data(), n, k)};
    }
};

/// psi = a .* exp(j phi).
struct ReflectionCoefficients {
    RVec a;
    RVec phi;

    CVec psi() const {
        CVec out(a.size());
        for (Eigen::Index m = 0; m < a.size(); ++m) out(m) = std::polar(a(m), phi(m));
        return out;
    }

    static ReflectionCoefficients from_psi(const CVec& psi) {
        ReflectionCoefficients r;
        r.a = psi.cwiseAbs();
        r.phi.resize(psi.size());
        for (Eigen::Index m = 0; m < psi.size(); ++m) {
            double p = std::arg(psi(m));
            if (p < 0.0) p += 2.0 * kPi;
            r.phi(m) = p;
        }
        return r;
    }

    static ReflectionCoefficients off(Eigen::Index m) { return {RVec::Zero(m), RVec::Zero(m)}; }
};

struct RateBreakdown {
    double varpi1 = 0.0;
    double varpi2 = 0.0;
    double varpi3 = 0.0;
    double sinr_tilde = 0.0;
    double rate_tilde = 0.0;  // bps/Hz
};

namespace detail {

inline void check_shapes(const ChannelSet& ch, const CMat& W, const CVec& psi) {
    if (psi.size() != ch.M()) throw InvalidInput("reflection vector length differs from M");
    if (W.rows() != ch.N() || W.cols() != ch.K()) throw InvalidInput("beamformer must be N x K");
}

}  // namespace detail

/// Averaged effective channel [f_hat, G_hat] (N x (M+1)); its Gram matrix
/// is the phase-noise average of g_k g_k^H.
inline CMat effective_channel(const ChannelSet& ch, const CVec& psi, Eigen::Index k) {
    const Eigen::Index M = ch.M(), N = ch.N();
    if (psi.size() != M) throw InvalidInput("effective_channel: psi length differs from M");
    const CVec& h = ch.h.at(static_cast<std::size_t>(k));
    const CVec& f = ch.f.at(static_cast<std::size_t>(k));
    const double dscale = std::sqrt(PhaseNoiseStats::dd_scale);
    const CVec ph = psi.conjugate().cwiseProduct(h);  // conj(psi_m) h_km
    CMat gb(N, M + 1);
    gb.col(0) = PhaseNoiseStats::mean_conj_scale * (ch.G.adjoint() * ph) + f;
    for (Eigen::Index m = 0; m < M; ++m) gb.col(m + 1) = (dscale * ph(m)) * ch.G.row(m).adjoint();
    return gb;
}

/// Cascaded instantaneous channel g_k for one phase-noise draw phi.
inline CVec instantaneous_channel(const ChannelSet& ch, const CVec& psi, const CVec& phi, Eigen::Index k) {
    const CVec& h = ch.h.at(static_cast<std::size_t>(k));
    const CVec x = psi.cwiseProduct(phi).conjugate().cwiseProduct(h);
    return ch.G.adjoint() * x + ch.f.at(static_cast<std::size_t>(k));
}

/// RIS dynamic-noise power reaching user k: sigma_d^2 sum_m |h_km psi_m|^2.
inline double ris_noise_at_user(const ChannelSet& ch, const CVec& psi, double sigma_d_sq, Eigen::Index k) {
    return sigma_d_sq * ch.h.at(static_cast<std::size_t>(k)).cwiseProduct(psi).squaredNorm();
}

inline double instantaneous_sinr(const ChannelSet& ch, const CMat& W, const CVec& psi, const CVec& phi,
                                 const HwiParams& hwi, Eigen::Index k) {
    detail::check_shapes(ch, W, psi);
    const CVec g = instantaneous_channel(ch, psi, phi, k);
    const CVec gw = W.adjoint() * g;  // entry i = w_i^H g
    const double kr = hwi.kr(k);
    const double sig = std::norm(gw(k));
    double tx_dist = 0.0;
    for (Eigen::Index n = 0; n < W.rows(); ++n) tx_dist += W.row(n).squaredNorm() * std::norm(g(n));
    double interf = 0.0;
    for (Eigen::Index i = 0; i < gw.size(); ++i)
        if (i != k) interf += std::norm(gw(i));
    const double den = kr * sig + (1.0 + kr) * hwi.kappa_t * tx_dist +
                       (1.0 + kr) * (interf + ris_noise_at_user(ch, psi, hwi.sigma_d_sq, k) + hwi.noise(k));
    if (!(den > 0.0)) throw InvalidModel("instantaneous_sinr: non-positive denominator");
    return sig / den;
}

/// Approximate average-rate terms for user k, given Gbar_k (from effective_channel).
inline RateBreakdown rate_terms(const CMat& gbar, const CMat& W, const CVec& psi, const ChannelSet& ch,
                                const HwiParams& hwi, Eigen::Index k) {
    const double kr = hwi.kr(k);
    const CMat P = gbar.adjoint() * W;  // (M+1) x K, column i = Gbar^H w_i
    RateBreakdown r;
    r.varpi1 = P.col(k).squaredNorm();
    const RVec gdiag = gbar.rowwise().squaredNorm();  // [Gbar Gbar^H]_nn
    double dist = 0.0;
    for (Eigen::Index n = 0; n < W.rows(); ++n) dist += W.row(n).squaredNorm() * gdiag(n);
    r.varpi2 = (1.0 + kr) * (P.squaredNorm() + hwi.kappa_t * dist);
    r.varpi3 = (1.0 + kr) * (ris_noise_at_user(ch, psi, hwi.sigma_d_sq, k) + hwi.noise(k));
    const double den = r.varpi2 + r.varpi3 - r.varpi1;
    if (!(den > 0.0)) throw InvalidModel("approx_average_rate: varpi2 + varpi3 <= varpi1");
    r.sinr_tilde = r.varpi1 / den;
    r.rate_tilde = std::log2(1.0 + r.sinr_tilde);
    return r;
}

inline RateBreakdown approx_average_rate(const ChannelSet& ch, const CMat& W, const CVec& psi,
                                         const HwiParams& hwi, Eigen::Index k) {
    detail::check_shapes(ch, W, psi);
    return rate_terms(effective_channel(ch, psi, k), W, psi, ch, hwi, k);
}

inline double sum_rate(const ChannelSet& ch, const CMat& W, const CVec& psi, const HwiParams& hwi) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < ch.K(); ++k) s += approx_average_rate(ch, W, psi, hwi, k).rate_tilde;
    return s;
}

/// Signal-plus-noise power at the RIS output. Phases cancel, so only |psi| matters.
inline double amplification_power(const ChannelSet& ch, const CMat& W, const CVec& psi, double kappa_t,
                                  double sigma_d_sq) {
    detail::check_shapes(ch, W, psi);
    const RVec a2 = psi.cwiseAbs2();
    const CMat GW = ch.G * W;
    const RVec wrow = W.rowwise().squaredNorm();  // [W W^H]_nn
    double p = 0.0;
    for (Eigen::Index m = 0; m < ch.M(); ++m) {
        const double dist = ch.G.row(m).cwiseAbs2().dot(wrow);
        p += a2(m) * (GW.row(m).squaredNorm() + kappa_t * dist + sigma_d_sq);
    }
    return p;
}

/// xi_T P_T + xi_A P_A + P_BS + M (P_SW + P_DC).
inline double total_power(double P_T, double P_A, const ScenarioConfig& c) {
    return c.xi_T * P_T + c.xi_A * P_A + c.P_bs + c.M * (c.P_sw + c.P_dc);
}

/// Passive surface: no amplifiers and no DC biasing.
inline double total_power_passive(double P_T, const ScenarioConfig& c) {
    return c.xi_T * P_T + c.P_bs + c.M * c.P_sw;
}

// ---- Monte-Carlo rate oracle -----------------------------------------------

struct MonteCarloRate {
    double mean = 0.0;    // bps/Hz, summed over users
    double std_error = 0.0;
    long long trials = 0;
};

namespace detail {

struct RunningStats {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const RunningStats& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double tot = static_cast<double>(n + o.n);
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.n) / tot;
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / tot;
        n += o.n;
    }
};

inline constexpr long long kMcBlock = 4096;

}  // namespace detail

/// Mean of sum_k log2(1 + gamma_k(Phi)) over i.i.d. phase-noise draws. Trials
/// are cut into fixed blocks with their own RNG streams, so the result does not
/// depend on the thread count.
inline MonteCarloRate monte_carlo_rate(const ChannelSet& ch, const CMat& W, const CVec& psi, const HwiParams& hwi,
                                       long long trials, std::uint64_t seed, unsigned threads = 1) {
    if (trials < 1) throw InvalidInput("monte_carlo_rate: trials must be >= 1");
    detail::check_shapes(ch, W, psi);
    const long long nblocks = (trials + detail::kMcBlock - 1) / detail::kMcBlock;
    std::vector<detail::RunningStats> blocks(static_cast<std::size_t>(nblocks));

    auto run_block = [&](long long b) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(b)));
        const long long count = std::min(detail::kMcBlock, trials - b * detail::kMcBlock);
        detail::RunningStats st;
        for (long long t = 0; t < count; ++t) {
            const CVec phi = phase_noise_sample(ch.M(), rng);
            double s = 0.0;
            for (Eigen::Index k = 0; k < ch.K(); ++k) s += std::log2(1.0 + instantaneous_sinr(ch, W, psi, phi, hwi, k));
            st.push(s);
        }
        blocks[static_cast<std::size_t>(b)] = st;
    };

    threads = std::max(1u, threads);
    if (threads == 1) {
        for (long long b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (long long b = t; b < nblocks; b += threads) run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    detail::RunningStats all;
    for (const auto& b : blocks) all.merge(b);
    MonteCarloRate r;
    r.mean = all.mean;
    r.trials = all.n;
    r.std_error = all.n > 1 ? std::sqrt(all.m2 / static_cast<double>(all.n - 1) / static_cast<double>(all.n)) : 0.0;
    return r;
}

}  // namespace arisbf

#endif
