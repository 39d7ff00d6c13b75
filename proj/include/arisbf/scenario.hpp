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

#ifndef ARISBF_SCENARIO_HPP
#define ARISBF_SCENARIO_HPP

#include "arisbf/hwi_model.hpp"
#include "arisbf/types.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace arisbf {

using Point3 = std::array<double, 3>;

inline double distance(const Point3& a, const Point3& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// How the amplifier-side budget P - M(P_SW + P_DC) is divided between the
/// BS transmit power and the RIS amplification power.
struct SplitRule {
    enum class Kind { Even, Fraction };
    Kind kind = Kind::Even;
    double transmit_fraction = 0.5;  // share of the budget given to xi_T * P_T

    double fraction() const { return kind == Kind::Even ? 0.5 : transmit_fraction; }
};

struct RicianFactors {
    double bs_ris = 10.0;   // linear
    double ris_user = 10.0;
    double bs_user = 1.0;
};

struct PathLossParams {
    double c0_db = -30.0;  // gain at 1 m
    double exp_bs_ris = 2.2;
    double exp_ris_user = 2.3;
    double exp_bs_user = 3.5;
};

struct ScenarioConfig {
    int N = 4;
    int M = 16;
    int K = 3;
    Point3 bs_pos{0.0, 0.0, 10.0};
    Point3 ris_pos{80.0, 10.0, 10.0};
    Point3 user_center{100.0, 0.0, 1.5};
    double user_radius = 5.0;
    RicianFactors rician_K;
    PathLossParams pathloss;
    double sigma_d_sq = dbm_to_watt(-80.0);
    std::vector<double> sigma_k_sq{dbm_to_watt(-80.0)};  // one entry broadcasts to all users
    double kappa_t = 1e-4;
    std::vector<double> kappa_r{1e-4};
    double xi_T = 1.2;
    double xi_A = 1.2;
    double P_sw = 1e-3;
    double P_dc = 5e-3;
    double P_bs = dbw_to_watt(9.0);
    double P_budget = dbm_to_watt(20.0);
    SplitRule split_rule;
    std::uint64_t seed = 1;

    double kappa_r_of(int k) const { return kappa_r.size() == 1 ? kappa_r[0] : kappa_r.at(k); }
    double sigma_k_sq_of(int k) const { return sigma_k_sq.size() == 1 ? sigma_k_sq[0] : sigma_k_sq.at(k); }
};

inline void validate(const ScenarioConfig& c) {
    if (c.N < 1 || c.M < 1 || c.K < 1) throw InvalidInput("N, M, K must be >= 1");
    if (c.kappa_t < 0.0 || c.kappa_t >= 1.0) throw InvalidInput("kappa_t must lie in [0,1)");
    if (c.kappa_r.empty() || (c.kappa_r.size() != 1 && static_cast<int>(c.kappa_r.size()) != c.K))
        throw InvalidInput("kappa_r needs 1 or K entries");
    for (double k : c.kappa_r)
        if (k < 0.0 || k >= 1.0) throw InvalidInput("kappa_r must lie in [0,1)");
    if (c.sigma_k_sq.empty() || (c.sigma_k_sq.size() != 1 && static_cast<int>(c.sigma_k_sq.size()) != c.K))
        throw InvalidInput("sigma_k_sq needs 1 or K entries");
    for (double s : c.sigma_k_sq)
        if (!(s > 0.0)) throw InvalidInput("sigma_k_sq must be positive");
    if (c.xi_T < 1.0 || c.xi_A < 1.0) throw InvalidInput("xi_T, xi_A must be >= 1");
    if (c.sigma_d_sq < 0.0 || c.P_sw < 0.0 || c.P_dc < 0.0 || c.P_bs < 0.0 || c.P_budget < 0.0)
        throw InvalidInput("powers must be non-negative");
    if (c.user_radius < 0.0) throw InvalidInput("user_radius must be non-negative");
    const double f = c.split_rule.fraction();
    if (!(f > 0.0 && f < 1.0)) throw InvalidInput("split fraction must lie in (0,1)");
}

inline HwiParams make_hwi(const ScenarioConfig& c) {
    HwiParams h;
    h.kappa_t = c.kappa_t;
    h.sigma_d_sq = c.sigma_d_sq;
    for (int k = 0; k < c.K; ++k) {
        h.kappa_r.push_back(c.kappa_r_of(k));
        h.sigma_k_sq.push_back(c.sigma_k_sq_of(k));
    }
    return h;
}

// ---- power budget split ----------------------------------------------------

struct PowerSplit {
    double P_T = 0.0;
    double P_A = 0.0;
    bool ris_on = false;
};

/// Active RIS: xi_T P_T + xi_A P_A = P - M (P_SW + P_DC). The RIS stays off
/// (and the whole budget feeds the BS) until P covers its static power.
inline PowerSplit active_split(const ScenarioConfig& c) {
    const double rest = c.P_budget - c.M * (c.P_sw + c.P_dc);
    if (rest <= 0.0) return {c.P_budget / c.xi_T, 0.0, false};
    const double f = c.split_rule.fraction();
    return {f * rest / c.xi_T, (1.0 - f) * rest / c.xi_A, true};
}

/// Passive RIS under the same total budget: xi_T P_T = P - M P_SW.
inline PowerSplit passive_split(const ScenarioConfig& c) {
    const double rest = c.P_budget - c.M * c.P_sw;
    if (rest <= 0.0) return {c.P_budget / c.xi_T, 0.0, false};
    return {rest / c.xi_T, 0.0, true};
}

inline PowerSplit no_ris_split(const ScenarioConfig& c) { return {c.P_budget / c.xi_T, 0.0, false}; }

// ---- channels --------------------------------------------------------------

struct ChannelSet {
    CMat G;               // M x N, BS -> RIS
    std::vector<CVec> h;  // K vectors of length M, RIS -> user k
    std::vector<CVec> f;  // K vectors of length N, BS -> user k
    std::vector<Point3> user_pos;

    Eigen::Index M() const { return G.rows(); }
    Eigen::Index N() const { return G.cols(); }
    Eigen::Index K() const { return static_cast<Eigen::Index>(f.size()); }
};

inline double path_loss_gain(double d, double c0_db, double exponent) {
    if (!(d > 0.0)) throw InvalidInput("path_loss_gain: distance must be positive");
    return db_to_linear(c0_db) * std::pow(d, -exponent);
}

/// Half-wavelength ULA response along `axis` towards unit direction `dir`.
inline CVec ula_steering(Eigen::Index n, const Point3& axis, const Point3& dir) {
    const double c = axis[0] * dir[0] + axis[1] * dir[1] + axis[2] * dir[2];
    CVec a(n);
    for (Eigen::Index i = 0; i < n; ++i) a(i) = std::polar(1.0, kPi * static_cast<double>(i) * c);
    return a;
}

inline Point3 unit_direction(const Point3& from, const Point3& to) {
    const double d = distance(from, to);
    return {(to[0] - from[0]) / d, (to[1] - from[1]) / d, (to[2] - from[2]) / d};
}

inline constexpr Point3 kBsArrayAxis{0.0, 1.0, 0.0};
inline constexpr Point3 kRisArrayAxis{1.0, 0.0, 0.0};

template <class Rng>
CMat rician_matrix(Eigen::Index rows, Eigen::Index cols, double k_factor, const CMat& los, Rng& rng) {
    if (k_factor < 0.0) throw InvalidInput("rician_matrix: negative K factor");
    if (los.rows() != rows || los.cols() != cols) throw InvalidInput("rician_matrix: LoS shape mismatch");
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    CMat nlos(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = nd(rng);
            const double im = nd(rng);
            nlos(i, j) = cd(re, im);
        }
    return std::sqrt(k_factor / (1.0 + k_factor)) * los + std::sqrt(1.0 / (1.0 + k_factor)) * nlos;
}

template <class Rng>
Point3 draw_user_position(const ScenarioConfig& c, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = c.user_radius * std::sqrt(u(rng));
    const double t = 2.0 * kPi * u(rng);
    return {c.user_center[0] + r * std::cos(t), c.user_center[1] + r * std::sin(t), c.user_center[2]};
}

template <class Rng>
ChannelSet generate_channels(const ScenarioConfig& c, Rng& rng) {
    validate(c);
    ChannelSet ch;
    for (int k = 0; k < c.K; ++k) ch.user_pos.push_back(draw_user_position(c, rng));

    const auto& pl = c.pathloss;
    const double d_br = distance(c.bs_pos, c.ris_pos);
    const CMat los_g = ula_steering(c.M, kRisArrayAxis, unit_direction(c.ris_pos, c.bs_pos)) *
                       ula_steering(c.N, kBsArrayAxis, unit_direction(c.bs_pos, c.ris_pos)).adjoint();
    ch.G = std::sqrt(path_loss_gain(d_br, pl.c0_db, pl.exp_bs_ris)) *
           rician_matrix(c.M, c.N, c.rician_K.bs_ris, los_g, rng);

    for (int k = 0; k < c.K; ++k) {
        const Point3& up = ch.user_pos[k];
        const double d_ru = distance(c.ris_pos, up);
        const CMat los_h = ula_steering(c.M, kRisArrayAxis, unit_direction(c.ris_pos, up));
        ch.h.push_back(std::sqrt(path_loss_gain(d_ru, pl.c0_db, pl.exp_ris_user)) *
                       rician_matrix(c.M, 1, c.rician_K.ris_user, los_h, rng).col(0));
        const double d_bu = distance(c.bs_pos, up);
        const CMat los_f = ula_steering(c.N, kBsArrayAxis, unit_direction(c.bs_pos, up));
        ch.f.push_back(std::sqrt(path_loss_gain(d_bu, pl.c0_db, pl.exp_bs_user)) *
                       rician_matrix(c.N, 1, c.rician_K.bs_user, los_f, rng).col(0));
    }
    return ch;
}

/// Channels for (config, seed); the stream index keeps channel draws
/// independent from other per-seed randomness.
inline ChannelSet generate_channels(const ScenarioConfig& c, std::uint64_t seed) {
    std::mt19937_64 rng(mix_seed(seed, 0));
    return generate_channels(c, rng);
}

}  // namespace arisbf

#endif
