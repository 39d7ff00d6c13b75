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

#ifndef ARISBF_VALIDATION_HPP
#define ARISBF_VALIDATION_HPP

#include "arisbf/beamformer_solver.hpp"
#include "arisbf/orchestrator.hpp"
#include "arisbf/reflection_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

// Independent oracles. None of them reuse the solver code paths they check.

namespace arisbf {

struct CheckResult {
    std::string name;
    double value = 0.0;      // measured statistic
    double threshold = 0.0;  // pass iff value <= threshold
    bool passed = false;
    std::string detail;
};

inline CheckResult make_check(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value, threshold, value <= threshold, std::move(detail)};
}

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
    void add(CheckResult c) { checks.push_back(std::move(c)); }
    void append(const ValidationReport& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
};

// ---- phase-noise moments ---------------------------------------------------

struct MomentReport {
    CMat second_moment;  // empirical E{phi phi^H}
    CVec mean_conj;      // empirical E{phi^*}
    double max_abs_z = 0.0;
    double max_diag_error = 0.0;
    long long samples = 0;
};

/// z-scores use the per-entry sample standard deviation, so they do not rely
/// on the closed-form variance.
inline MomentReport check_phase_noise_moments(Eigen::Index M, long long samples, std::uint64_t seed) {
    if (M < 1 || samples < 2) throw InvalidInput("check_phase_noise_moments: need M >= 1 and samples >= 2");
    std::mt19937_64 rng(seed);
    CMat s1 = CMat::Zero(M, M);
    RMat s2re = RMat::Zero(M, M), s2im = RMat::Zero(M, M);
    CVec m1 = CVec::Zero(M);
    RVec m2re = RVec::Zero(M), m2im = RVec::Zero(M);
    for (long long t = 0; t < samples; ++t) {
        const CVec phi = phase_noise_sample(M, rng);
        for (Eigen::Index i = 0; i < M; ++i) {
            const cd c = std::conj(phi(i));
            m1(i) += c;
            m2re(i) += c.real() * c.real();
            m2im(i) += c.imag() * c.imag();
            for (Eigen::Index j = 0; j < M; ++j) {
                const cd x = phi(i) * std::conj(phi(j));
                s1(i, j) += x;
                s2re(i, j) += x.real() * x.real();
                s2im(i, j) += x.imag() * x.imag();
            }
        }
    }
    const double n = static_cast<double>(samples);
    MomentReport r;
    r.samples = samples;
    r.second_moment = s1 / n;
    r.mean_conj = m1 / n;
    auto z = [n](double mean, double sq, double target) {
        const double var = std::max(0.0, (sq / n - mean * mean) * n / (n - 1.0));
        const double se = std::sqrt(var / n);
        if (se == 0.0) return mean == target ? 0.0 : std::numeric_limits<double>::infinity();
        return std::abs(mean - target) / se;
    };
    const double off = 4.0 / (kPi * kPi);
    const double mc = 2.0 / kPi;
    for (Eigen::Index i = 0; i < M; ++i) {
        r.max_diag_error = std::max(r.max_diag_error, std::abs(r.second_moment(i, i) - cd(1.0, 0.0)));
        r.max_abs_z = std::max(r.max_abs_z, z(r.mean_conj(i).real(), m2re(i), mc));
        r.max_abs_z = std::max(r.max_abs_z, z(r.mean_conj(i).imag(), m2im(i), 0.0));
        for (Eigen::Index j = i + 1; j < M; ++j) {
            r.max_abs_z = std::max(r.max_abs_z, z(r.second_moment(i, j).real(), s2re(i, j), off));
            r.max_abs_z = std::max(r.max_abs_z, z(r.second_moment(i, j).imag(), s2im(i, j), 0.0));
        }
    }
    return r;
}

// ---- random subproblem instances -------------------------------------------

/// A full problem snapshot at a random (W, psi) with fresh auxiliary variables.
struct RandomInstance {
    ScenarioConfig cfg;
    ChannelSet ch;
    HwiParams hwi;
    CMat W;
    CVec psi;
    AuxiliaryVars aux;
    double P_T = 0.0;
    double P_A = 0.0;
};

/// W is a perturbed matched filter at full power; psi has random phases and
/// amplitudes spread around the level that fills 0.9 P_A.
inline RandomInstance random_instance(const ScenarioConfig& base, std::uint64_t seed) {
    RandomInstance in;
    in.cfg = base;
    in.cfg.seed = seed;
    in.ch = generate_channels(in.cfg, seed);
    in.hwi = make_hwi(in.cfg);
    const PowerSplit ps = active_split(in.cfg);
    in.P_T = ps.P_T;
    in.P_A = ps.P_A > 0.0 ? ps.P_A : ps.P_T;
    std::mt19937_64 rng(mix_seed(seed, 7));
    CMat W = init_beamformer(in.ch, in.P_T).W;
    const double wn = W.norm();
    W += (0.5 * wn / std::sqrt(static_cast<double>(W.size()))) * CVec(complex_gaussian(RVec::Ones(W.size()), rng)).reshaped(W.rows(), W.cols());
    W *= std::sqrt(in.P_T) / W.norm();
    in.W = W;
    ReflectionCoefficients r = init_reflection(in.ch, W, in.P_A, in.hwi, rng);
    std::uniform_real_distribution<double> spread(0.5, 1.2);
    for (Eigen::Index m = 0; m < r.a.size(); ++m) r.a(m) *= spread(rng);
    in.psi = r.psi();
    in.aux = update_aux(in.ch, in.W, in.psi, in.hwi);
    return in;
}

// ---- MM surrogate conditions -----------------------------------------------

namespace detail {

/// Central-difference gradient w.r.t. (Re x, Im x), packed as a complex vector
/// g with g_i = d/dRe + j d/dIm.
template <class F>
CVec central_gradient(const F& f, const CVec& x, double step) {
    CVec g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        CVec xp = x, xm = x;
        xp(i) += step;
        xm(i) -= step;
        const double dre = (f(xp) - f(xm)) / (2.0 * step);
        xp = x;
        xm = x;
        xp(i) += cd(0.0, step);
        xm(i) -= cd(0.0, step);
        const double dim = (f(xp) - f(xm)) / (2.0 * step);
        g(i) = cd(dre, dim);
    }
    return g;
}

}  // namespace detail

struct SurrogateReport {
    double w_tightness = 0.0;   // |surrogate - true| / |true| at the anchor
    double w_gradient = 0.0;    // relative gradient mismatch at the anchor
    double w_domination = 0.0;  // worst (true - surrogate) / scale, <= 0 means dominated
    double psi_obj_tightness = 0.0;
    double psi_obj_gradient = 0.0;
    double psi_obj_domination = 0.0;
    double psi_con_tightness = 0.0;
    double psi_con_gradient = 0.0;
    double psi_con_domination = 0.0;
    int points = 0;
};

/// Checks the three majorizer conditions (tight at the anchor, equal gradient,
/// upper bound everywhere) for the beamformer constraint surrogate and both
/// reflection surrogates. The gradient of each surrogate is taken analytically
/// and compared to central differences of the true function.
inline SurrogateReport check_surrogates(const RandomInstance& in, int trials, std::uint64_t seed, double rel_step = 1e-6) {
    SurrogateReport rep;
    rep.points = trials;
    std::mt19937_64 rng(seed);

    // beamformer amplification constraint
    const WSubproblem wsp = assemble_w_subproblem(in.ch, in.psi, in.hwi, in.aux, in.P_A);
    const CVec w0 = Beamformer{in.W}.vec();
    const WSurrogate ws = majorize_gamma(wsp.Gamma, w0, wsp.P_m);
    auto gam = [&](const CVec& w) { return w.dot(wsp.Gamma * w).real(); };
    const double g0 = gam(w0);
    rep.w_tightness = std::abs(ws.value(w0) - g0) / std::max(std::abs(g0), 1e-300);
    const double wstep = rel_step * w0.norm() / std::sqrt(static_cast<double>(w0.size()));
    const CVec fd_w = detail::central_gradient(gam, w0, wstep);
    const CVec an_w = 2.0 * (ws.lambda_gamma * w0 - ws.b);
    rep.w_gradient = (fd_w - an_w).norm() / std::max(an_w.norm(), 1e-300);

    // reflection objective and amplification constraint
    const PsiSubproblem psp = assemble_psi_subproblem(in.ch, in.W, in.hwi, in.aux);
    const PsiSurrogate ps = majorize_psi(psp, in.psi, in.P_A);
    auto obj = [&](const CVec& p) { return psp.objective(p); };
    auto con = [&](const CVec& p) { return p.dot(psp.Lambda.cast<cd>().cwiseProduct(p)).real(); };
    const double o0 = obj(in.psi), c0 = con(in.psi);
    const double oscale = std::max({std::abs(o0), std::abs(psp.d), 1e-300});
    rep.psi_obj_tightness = std::abs(ps.f(in.psi) - o0) / oscale;
    rep.psi_con_tightness = std::abs(ps.g_full(in.psi, in.P_A) - c0) / std::max(std::abs(c0), 1e-300);
    const double pstep = rel_step * in.psi.norm() / std::sqrt(static_cast<double>(in.psi.size()));
    const CVec fd_o = detail::central_gradient(obj, in.psi, pstep);
    const CVec an_o = 2.0 * ps.lambda_delta * in.psi + ps.p;
    rep.psi_obj_gradient = (fd_o - an_o).norm() / std::max(an_o.norm(), 1e-300);
    const CVec fd_c = detail::central_gradient(con, in.psi, pstep);
    const CVec an_c = 2.0 * ps.lambda_lambda * in.psi + ps.q;
    rep.psi_con_gradient = (fd_c - an_c).norm() / std::max(an_c.norm(), 1e-300);

    // domination on random points around each anchor
    std::uniform_real_distribution<double> radius(0.0, 2.0);
    rep.w_domination = -std::numeric_limits<double>::infinity();
    rep.psi_obj_domination = -std::numeric_limits<double>::infinity();
    rep.psi_con_domination = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        CVec w = complex_gaussian(RVec::Ones(w0.size()), rng);
        w *= radius(rng) * w0.norm() / w.norm();
        const double gw = gam(w);
        rep.w_domination = std::max(rep.w_domination, (gw - ws.value(w)) / std::max(std::abs(gw), g0));

        CVec p = complex_gaussian(RVec::Ones(in.psi.size()), rng);
        p *= radius(rng) * in.psi.norm() / p.norm();
        const double op = obj(p), cp = con(p);
        rep.psi_obj_domination =
            std::max(rep.psi_obj_domination, (op - ps.f(p)) / std::max({std::abs(op), std::abs(ps.f(p)), oscale}));
        rep.psi_con_domination =
            std::max(rep.psi_con_domination, (cp - ps.g_full(p, in.P_A)) / std::max(std::abs(cp), c0));
    }
    return rep;
}

// ---- desk-scale exhaustive search ------------------------------------------

struct GridSpec {
    int phases = 64;
    int amplitudes = 32;
};

struct GridResult {
    double best_rate = 0.0;  // bps/Hz
    CVec best_psi;
    CVec best_w;
    long long evaluated = 0;
};

namespace detail {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

/// Largest generalized eigenpair of (R, A) for 2x2 Hermitian R and PD A.
inline Vec2 top_generalized_vector(const Mat2& R, const Mat2& A) {
    const double detA = (A(0, 0) * A(1, 1)).real() - std::norm(A(0, 1));
    const double detR = (R(0, 0) * R(1, 1)).real() - std::norm(R(0, 1));
    const double tr = (R(0, 0) * A(1, 1) + R(1, 1) * A(0, 0)).real() - 2.0 * (R(0, 1) * std::conj(A(0, 1))).real();
    const double disc = std::max(0.0, tr * tr - 4.0 * detA * detR);
    const double lam = (tr + std::sqrt(disc)) / (2.0 * detA);
    const Mat2 Mx = R - lam * A;
    Vec2 u1(Mx(0, 1), -Mx(0, 0));
    Vec2 u2(Mx(1, 1), -Mx(1, 0));
    Vec2 u = u1.squaredNorm() >= u2.squaredNorm() ? u1 : u2;
    if (u.squaredNorm() == 0.0) u = Vec2(1.0, 0.0);
    return u;
}

/// Best achievable SINR over w with ||w||^2 <= P_T and w^H Gam w <= P_m.
/// Bisects the weight nu of the two normalized budgets in the denominator of a
/// generalized Rayleigh quotient; every candidate is scaled onto the feasible
/// boundary and evaluated directly, so the value is always attainable.
inline double best_single_user_sinr(const Mat2& R, const Mat2& Q, double c, const Mat2& Gam, double P_T, double P_m,
                                    Vec2* w_out) {
    double best = 0.0;
    auto eval = [&](const Vec2& u) {
        const double uu = u.squaredNorm();
        const double ug = u.dot(Gam * u).real();
        double s = P_T / uu;
        if (ug > 0.0) s = std::min(s, P_m / ug);
        const Vec2 w = std::sqrt(s) * u;
        const double sinr = w.dot(R * w).real() / (w.dot(Q * w).real() + c);
        if (sinr > best) {
            best = sinr;
            if (w_out) *w_out = w;
        }
        return uu / P_T - ug / P_m;
    };
    const Mat2 I = Mat2::Identity();
    auto u_of = [&](double nu) { return top_generalized_vector(R, Q + c * (nu / P_T * I + (1.0 - nu) / P_m * Gam)); };
    double lo = 1e-9, hi = 1.0;
    if (eval(u_of(hi)) >= 0.0) return best;  // transmit budget binds alone
    if (eval(u_of(lo)) <= 0.0) return best;  // amplification budget binds alone
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eval(u_of(mid)) > 0.0) lo = mid;
        else hi = mid;
    }
    return best;
}

}  // namespace detail

/// Exhaustive search over per-element phases and amplitudes for K = 1 and
/// N, M <= 2, with the beamformer solved exactly at every grid point. The
/// amplitude grid of element m runs up to the level at which that element
/// alone exhausts P_A under isotropic transmission at full power.
inline GridResult grid_search_small(const ChannelSet& ch, const HwiParams& hwi, double P_T, double P_A,
                                    const GridSpec& spec = {}) {
    const Eigen::Index M = ch.M(), N = ch.N();
    if (ch.K() != 1 || M > 2 || N > 2 || N < 1) throw InvalidInput("grid_search_small: needs K = 1, M <= 2, 1 <= N <= 2");
    if (spec.phases < 1 || spec.amplitudes < 2) throw InvalidInput("grid_search_small: grid too small");
    const double kt = hwi.kappa_t, kr = hwi.kr(0), sd = hwi.sigma_d_sq, s2 = hwi.noise(0);
    const CVec& h = ch.h[0];
    const CVec& f = ch.f[0];

    // fixed 2x2 storage; with one antenna only the first entry is used
    detail::Mat2 Gm[2];
    detail::Vec2 cm[2];
    detail::Vec2 f2 = detail::Vec2::Zero();
    for (Eigen::Index n = 0; n < N; ++n) f2(n) = f(n);
    RVec amax = RVec::Zero(M);
    for (Eigen::Index m = 0; m < M; ++m) {
        detail::Vec2 g = detail::Vec2::Zero();
        for (Eigen::Index n = 0; n < N; ++n) g(n) = std::conj(ch.G(m, n));  // (row m of G)^H
        Gm[m] = g * g.adjoint();
        cm[m] = (2.0 / kPi) * h(m) * g;
        const double iso = (1.0 + kt) * P_T / static_cast<double>(N) * ch.G.row(m).squaredNorm() + sd;
        amax(m) = iso > 0.0 ? std::sqrt(P_A / iso) : 0.0;
    }
    const double dd = PhaseNoiseStats::dd_scale;

    std::vector<cd> rot(static_cast<std::size_t>(spec.phases));
    for (int i = 0; i < spec.phases; ++i)
        rot[static_cast<std::size_t>(i)] = std::polar(1.0, -2.0 * kPi * i / spec.phases);  // conj(e^{j phi})

    GridResult res;
    const int A = spec.amplitudes, P = spec.phases;
    const long long na = M >= 1 ? A : 1, nb = M >= 2 ? A : 1;
    const long long pa = M >= 1 ? P : 1, pb = M >= 2 ? P : 1;
    for (long long ia = 0; ia < na; ++ia) {
        for (long long ib = 0; ib < nb; ++ib) {
            double a[2] = {0.0, 0.0};
            if (M >= 1) a[0] = amax(0) * static_cast<double>(ia) / (A - 1);
            if (M >= 2) a[1] = amax(1) * static_cast<double>(ib) / (A - 1);
            detail::Mat2 Rg = detail::Mat2::Zero(), Gam = detail::Mat2::Zero();
            double ris_noise = 0.0, asq = 0.0;
            for (Eigen::Index m = 0; m < M; ++m) {
                Rg += (dd * a[m] * a[m] * std::norm(h(m))) * Gm[m];
                Gam += (a[m] * a[m]) * Gm[m];
                ris_noise += sd * a[m] * a[m] * std::norm(h(m));
                asq += a[m] * a[m];
            }
            Gam.diagonal() *= (1.0 + kt);
            const double P_m = P_A - sd * asq;
            if (!(P_m > 0.0)) continue;
            const double c = (1.0 + kr) * (ris_noise + s2);
            for (long long qa = 0; qa < pa; ++qa) {
                for (long long qb = 0; qb < pb; ++qb) {
                    detail::Vec2 fh = f2;
                    if (M >= 1) fh += (a[0] * rot[static_cast<std::size_t>(qa)]) * cm[0];
                    if (M >= 2) fh += (a[1] * rot[static_cast<std::size_t>(qb)]) * cm[1];
                    detail::Mat2 R = fh * fh.adjoint() + Rg;
                    detail::Mat2 Q = kr * R;
                    Q.diagonal() += (1.0 + kr) * kt * R.diagonal().real().cast<cd>();
                    if (N == 1) {
                        // the padded antenna stays unused: only w_0 is free
                        const double r00 = R(0, 0).real(), q00 = Q(0, 0).real(), g00 = Gam(0, 0).real();
                        double s = P_T;
                        if (g00 > 0.0) s = std::min(s, P_m / g00);
                        const double sinr = s * r00 / (s * q00 + c);
                        ++res.evaluated;
                        const double rate = std::log2(1.0 + sinr);
                        if (rate > res.best_rate) {
                            res.best_rate = rate;
                            res.best_w = CVec::Constant(1, std::sqrt(s));
                            res.best_psi = CVec::Zero(M);
                            if (M >= 1) res.best_psi(0) = a[0] * std::conj(rot[static_cast<std::size_t>(qa)]);
                            if (M >= 2) res.best_psi(1) = a[1] * std::conj(rot[static_cast<std::size_t>(qb)]);
                        }
                        continue;
                    }
                    detail::Vec2 w;
                    const double sinr = detail::best_single_user_sinr(R, Q, c, Gam, P_T, P_m, &w);
                    ++res.evaluated;
                    const double rate = std::log2(1.0 + sinr);
                    if (rate > res.best_rate) {
                        res.best_rate = rate;
                        res.best_w = w;
                        res.best_psi = CVec::Zero(M);
                        if (M >= 1) res.best_psi(0) = a[0] * std::conj(rot[static_cast<std::size_t>(qa)]);
                        if (M >= 2) res.best_psi(1) = a[1] * std::conj(rot[static_cast<std::size_t>(qb)]);
                    }
                }
            }
        }
    }
    return res;
}

// ---- approximate vs Monte-Carlo rate ---------------------------------------

struct RateGapReport {
    double approx = 0.0;     // closed-form average-rate approximation, bps/Hz
    double mc_mean = 0.0;    // Monte-Carlo ergodic sum rate, bps/Hz
    double mc_std_error = 0.0;
    double gap = 0.0;        // |approx - mc| / mc
    double gap_lo = 0.0;     // 95% band from the MC standard error
    double gap_hi = 0.0;
    long long trials = 0;
};

inline RateGapReport check_rate_approximation(const ChannelSet& ch, const CMat& W, const CVec& psi,
                                              const HwiParams& hwi, long long trials, std::uint64_t seed,
                                              unsigned threads = 1) {
    RateGapReport r;
    r.approx = sum_rate(ch, W, psi, hwi);
    const MonteCarloRate mc = monte_carlo_rate(ch, W, psi, hwi, trials, seed, threads);
    r.mc_mean = mc.mean;
    r.mc_std_error = mc.std_error;
    r.trials = mc.trials;
    r.gap = std::abs(r.approx - mc.mean) / mc.mean;
    const double lo = mc.mean - 1.96 * mc.std_error, hi = mc.mean + 1.96 * mc.std_error;
    const double g1 = std::abs(r.approx - lo) / lo, g2 = std::abs(r.approx - hi) / hi;
    r.gap_lo = (r.approx >= lo && r.approx <= hi) ? 0.0 : std::min(g1, g2);
    r.gap_hi = std::max(g1, g2);
    return r;
}

// ---- suite -----------------------------------------------------------------

struct ValidationOptions {
    double tolerance_scale = 1.0;  // multiplies every threshold; 0 forces failures
    long long moment_samples = 1000000;
    long long mc_trials = 100000;
    int surrogate_points = 100;
    int grid_seeds = 3;
    unsigned threads = 1;
};

/// Desk-scale companion of a scenario: one user, two elements, two antennas.
inline ScenarioConfig desk_scenario(const ScenarioConfig& base) {
    ScenarioConfig c = base;
    c.M = 2;
    c.N = 2;
    c.K = 1;
    if (c.kappa_r.size() > 1) c.kappa_r.resize(1);
    if (c.sigma_k_sq.size() > 1) c.sigma_k_sq.resize(1);
    return c;
}

inline ValidationReport run_validation(const ScenarioConfig& cfg, const ValidationOptions& opt = {}) {
    ValidationReport rep;
    const double ts = opt.tolerance_scale;

    {
        const MomentReport m = check_phase_noise_moments(4, opt.moment_samples, mix_seed(cfg.seed, 11));
        rep.add(make_check("phase_noise_moments_max_z", m.max_abs_z, 3.0 * ts));
        rep.add(make_check("phase_noise_diagonal", m.max_diag_error, 1e-12 * ts));
    }
    {
        const RandomInstance in = random_instance(cfg, cfg.seed);
        const SurrogateReport s = check_surrogates(in, opt.surrogate_points, mix_seed(cfg.seed, 12));
        rep.add(make_check("w_surrogate_tightness", s.w_tightness, 1e-10 * ts));
        rep.add(make_check("w_surrogate_gradient", s.w_gradient, 1e-5 * ts));
        rep.add(make_check("w_surrogate_domination", s.w_domination, 1e-10 * ts));
        rep.add(make_check("psi_objective_surrogate_tightness", s.psi_obj_tightness, 1e-10 * ts));
        rep.add(make_check("psi_objective_surrogate_gradient", s.psi_obj_gradient, 1e-5 * ts));
        rep.add(make_check("psi_objective_surrogate_domination", s.psi_obj_domination, 1e-10 * ts));
        rep.add(make_check("psi_constraint_surrogate_tightness", s.psi_con_tightness, 1e-10 * ts));
        rep.add(make_check("psi_constraint_surrogate_gradient", s.psi_con_gradient, 1e-5 * ts));
        rep.add(make_check("psi_constraint_surrogate_domination", s.psi_con_domination, 1e-10 * ts));
    }
    {
        const ScenarioConfig desk = desk_scenario(cfg);
        double worst = std::numeric_limits<double>::infinity();
        for (int s = 0; s < opt.grid_seeds; ++s) {
            ScenarioConfig c = desk;
            c.seed = cfg.seed + static_cast<std::uint64_t>(s);
            const ChannelSet ch = generate_channels(c, c.seed);
            const PowerSplit ps = active_split(c);
            if (!ps.ris_on) continue;
            const SolveReport r = run_bcd_aso(c, ch);
            const GridResult g = grid_search_small(ch, make_hwi(c), ps.P_T, ps.P_A);
            worst = std::min(worst, r.sum_rate() / g.best_rate);
        }
        if (std::isfinite(worst))
            rep.add(make_check("desk_grid_shortfall", 1.0 - worst, 0.05 * ts, "1 - BCD / grid optimum, worst seed"));
    }
    {
        const ChannelSet ch = generate_channels(cfg, cfg.seed);
        const SolveReport r = run_bcd_aso(cfg, ch);
        const RateGapReport g =
            check_rate_approximation(ch, r.final_W, r.final_psi, make_hwi(cfg), opt.mc_trials, mix_seed(cfg.seed, 13),
                                     opt.threads);
        rep.add(make_check("rate_approximation_gap", g.gap, 0.10 * ts,
                           "approx=" + std::to_string(g.approx) + " mc=" + std::to_string(g.mc_mean)));
    }
    return rep;
}

}  // namespace arisbf

#endif
