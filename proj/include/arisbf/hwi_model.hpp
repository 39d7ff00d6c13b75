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

#ifndef ARISBF_HWI_MODEL_HPP
#define ARISBF_HWI_MODEL_HPP

#include "arisbf/types.hpp"

#include <random>
#include <vector>

namespace arisbf {

/// Hardware-impairment and noise parameters seen by the rate model.
struct HwiParams {
    double kappa_t = 0.0;
    std::vector<double> kappa_r;     // per user
    double sigma_d_sq = 0.0;         // RIS dynamic noise power [W]
    std::vector<double> sigma_k_sq;  // per-user receiver noise [W]

    double kr(Eigen::Index k) const { return kappa_r.at(static_cast<std::size_t>(k)); }
    double noise(Eigen::Index k) const { return sigma_k_sq.at(static_cast<std::size_t>(k)); }
};

/// Phase errors uniform on [-pi/2, pi/2]:
///   E{phi phi^H} = I + J, J off-diagonal entries 4/pi^2,
///   E{phi^*} = (2/pi) 1,
///   D D^T = (1 - 4/pi^2) I.
struct PhaseNoiseStats {
    static constexpr double mean_conj_scale = 2.0 / kPi;
    static constexpr double offdiag = 4.0 / (kPi * kPi);
    static constexpr double dd_scale = 1.0 - 4.0 / (kPi * kPi);

    CMat second_moment;
};

inline CMat phase_noise_second_moment(Eigen::Index m) {
    CMat out = CMat::Constant(m, m, cd(PhaseNoiseStats::offdiag, 0.0));
    out.diagonal().setOnes();
    return out;
}

inline PhaseNoiseStats phase_noise_stats(Eigen::Index m) {
    PhaseNoiseStats s;
    s.second_moment = phase_noise_second_moment(m);
    return s;
}

template <class Rng>
CVec phase_noise_sample(Eigen::Index m, Rng& rng) {
    std::uniform_real_distribution<double> u(-0.5 * kPi, 0.5 * kPi);
    CVec phi(m);
    for (Eigen::Index i = 0; i < m; ++i) phi(i) = std::polar(1.0, u(rng));
    return phi;
}

/// Transmit distortion covariance kappa_t * diag(W W^H).
inline CMat transmit_distortion_cov(const CMat& w, double kappa_t) {
    if (kappa_t < 0.0 || kappa_t >= 1.0) throw InvalidInput("kappa_t must lie in [0,1)");
    CMat out = CMat::Zero(w.rows(), w.rows());
    for (Eigen::Index n = 0; n < w.rows(); ++n) out(n, n) = kappa_t * w.row(n).squaredNorm();
    return out;
}

inline double receive_distortion_power(double signal_power, double kappa_r) {
    if (kappa_r < 0.0 || kappa_r >= 1.0) throw InvalidInput("kappa_r must lie in [0,1)");
    return kappa_r * signal_power;
}

/// Circular complex Gaussian vector with covariance diag(variances).
template <class Rng>
CVec complex_gaussian(const RVec& variances, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    CVec out(variances.size());
    for (Eigen::Index i = 0; i < variances.size(); ++i) {
        const double s = std::sqrt(0.5 * variances(i));
        const double re = nd(rng);
        const double im = nd(rng);
        out(i) = cd(s * re, s * im);
    }
    return out;
}

}  // namespace arisbf

#endif
