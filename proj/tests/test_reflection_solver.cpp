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

#include "test_support.hpp"

#include <catch_amalgamated.hpp>

using namespace arisbf;
using namespace arisbf::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct PsiCase {
    PsiSubproblem sp;
    ReflectionCoefficients init;
    double P_A = 1.0;
};

PsiCase make_case(std::mt19937_64& rng, int M, double pa_factor) {
    const ChannelSet ch = iid_channels(2, M, 2, rng);
    const HwiParams hwi = simple_hwi(2, 0.01, 0.01, 0.01, 0.05);
    const CMat W = random_cmat(2, 2, rng);
    const CVec psi = random_psi(M, rng);
    const AuxiliaryVars aux = update_aux(ch, W, psi, hwi);
    PsiCase c;
    c.sp = assemble_psi_subproblem(ch, W, hwi, aux);
    c.init = ReflectionCoefficients::from_psi(psi);
    c.P_A = pa_factor * c.sp.lambda_form(psi);
    return c;
}

PsiSurrogate bare_surrogate(const CVec& p) {
    PsiSurrogate s;
    s.lambda_delta = 1.0;
    s.lambda_lambda = 1.0;
    s.p = p;
    s.q = CVec::Zero(p.size());
    s.psi_anchor = CVec::Zero(p.size());
    return s;
}

}  // namespace

TEST_CASE("element update closed form") {
    const ReflectionCoefficients st{RVec::Ones(1), RVec::Zero(1)};
    CVec p(1);
    p << cd(-2.0, 0.0);
    AsoElement e = aso_step(0, st, bare_surrogate(p), 0.0);
    CHECK(std::abs(e.theta - cd(1.0, 0.0)) < 1e-15);
    CHECK_THAT(e.a, WithinAbs(1.0, 1e-15));

    p << cd(0.0, 2.0);
    e = aso_step(0, st, bare_surrogate(p), 0.0);
    CHECK(std::abs(e.theta - std::polar(1.0, 1.5 * kPi)) < 1e-15);
    CHECK_THAT(e.a, WithinAbs(1.0, 1e-15));

    const ReflectionCoefficients swept = aso_sweep(st, bare_surrogate(p), 0.0, PsiMode::Joint, {0});
    CHECK_THAT(swept.phi(0), WithinAbs(1.5 * kPi, 1e-14));

    p << cd(0.0, 0.0);
    e = aso_step(0, st, bare_surrogate(p), 0.0);
    CHECK(e.a == 0.0);
}

TEST_CASE("element update beats random alternatives") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ua(0.0, 3.0), up(0.0, 2.0 * kPi), ue(0.0, 2.0);
    for (int t = 0; t < 10; ++t) {
        const PsiCase c = make_case(rng, 4, 0.8);
        const PsiSurrogate sur = majorize_psi(c.sp, c.init.psi(), c.P_A);
        const double eta = ue(rng) * sur.lambda_delta / sur.lambda_lambda;
        for (Eigen::Index m = 0; m < 4; ++m) {
            const AsoElement e = aso_step(m, c.init, sur, eta);
            auto h_with = [&](cd value) {
                CVec x = c.init.psi();
                x(m) = value;
                return sur.h(x, eta);
            };
            const double best = h_with(e.a * e.theta);
            for (int r = 0; r < 1000; ++r)
                CHECK(best <= h_with(std::polar(ua(rng), up(rng))) + 1e-12 * std::abs(best));
        }
    }
}

TEST_CASE("surrogates are tight at the anchor and dominate") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        const PsiCase c = make_case(rng, 5, 1.0);
        const CVec a = c.init.psi();
        const PsiSurrogate s = majorize_psi(c.sp, a, c.P_A);
        CHECK(std::abs(s.f(a) - c.sp.objective(a)) <= 1e-10 * std::abs(c.sp.objective(a)));
        CHECK(std::abs(s.g_full(a, c.P_A) - c.sp.lambda_form(a)) <= 1e-10 * c.sp.lambda_form(a));
        for (int r = 0; r < 50; ++r) {
            const CVec x = random_psi(5, rng, 0.0, 2.0);
            CHECK(s.f(x) >= c.sp.objective(x) - 1e-10 * std::abs(c.sp.objective(a)));
            CHECK(s.g_full(x, c.P_A) >= c.sp.lambda_form(x) - 1e-10 * c.sp.lambda_form(a));
        }
    }
}

TEST_CASE("constraint value is non-increasing in the price") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        const PsiCase c = make_case(rng, 6, 0.5);
        const PsiSurrogate s = majorize_psi(c.sp, c.init.psi(), c.P_A);
        const auto order = sweep_order(6, false, 0);
        const double scale = s.lambda_delta / s.lambda_lambda;
        double prev = s.g(aso_sweep(c.init, s, 0.0, PsiMode::Joint, order).psi());
        for (int i = 1; i <= 20; ++i) {
            const double g = s.g(aso_sweep(c.init, s, scale * std::pow(10.0, 0.3 * i - 3), PsiMode::Joint, order).psi());
            CHECK(g <= prev + 1e-12 * std::abs(prev));
            prev = g;
        }
    }
}

TEST_CASE("price is zero when the budget is slack and tight otherwise") {
    std::mt19937_64 rng(4);
    const PsiCase loose = make_case(rng, 4, 1e6);
    const PsiSurrogate sl = majorize_psi(loose.sp, loose.init.psi(), loose.P_A);
    CHECK(find_price(sl) == 0.0);

    for (int t = 0; t < 10; ++t) {
        const PsiCase c = make_case(rng, 4, 0.3);
        const CVec anchor = c.init.psi() * std::sqrt(0.3);  // feasible anchor
        const PsiSurrogate s = majorize_psi(c.sp, anchor, c.P_A);
        const double eta = find_price(s);
        const ReflectionCoefficients r =
            aso_sweep(ReflectionCoefficients::from_psi(anchor), s, eta, PsiMode::Joint, sweep_order(4, false, 0));
        const double g = s.g(r.psi());
        CHECK(g <= s.P_A_tilde + 1e-9 * c.P_A);
        // complementary slackness
        CHECK(eta * std::abs(g - s.P_A_tilde) <= 1e-6 * c.P_A * std::max(1.0, eta));
    }
}

TEST_CASE("solver trace is monotone and feasible") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const PsiCase c = make_case(rng, 8, t % 2 ? 0.5 : 3.0);
        const PsiSolveResult r = optimize_psi(c.sp, c.init, c.P_A);
        for (std::size_t i = 1; i < r.trace.size(); ++i)
            CHECK(r.trace[i] <= r.trace[i - 1] + 1e-12 * std::abs(r.trace[i - 1]));
        CHECK(psi_feasible(c.sp, r.psi, c.P_A, 1e-6));
    }
}

TEST_CASE("single element converges within two sweeps") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 10; ++t) {
        const PsiCase c = make_case(rng, 1, 0.5);
        const PsiSolveResult r = optimize_psi(c.sp, c.init, c.P_A);
        CHECK(r.iterations <= 2);
    }
}

TEST_CASE("two elements come within 1% of an exhaustive grid") {
    std::mt19937_64 rng(7);
    PsiSolveOptions opt;
    opt.max_iters = 2000;
    opt.tol = 1e-12;
    for (int t = 0; t < 3; ++t) {
        const PsiCase c = make_case(rng, 2, 0.5);
        const PsiSolveResult r = optimize_psi(c.sp, c.init, c.P_A, opt);
        const double amax0 = std::sqrt(c.P_A / c.sp.Lambda(0)), amax1 = std::sqrt(c.P_A / c.sp.Lambda(1));
        double grid = std::numeric_limits<double>::infinity();
        const int np = 64, na = 32;
        CVec x(2);
        for (int i0 = 0; i0 < np; ++i0)
            for (int j0 = 0; j0 <= na; ++j0)
                for (int i1 = 0; i1 < np; ++i1)
                    for (int j1 = 0; j1 <= na; ++j1) {
                        x(0) = std::polar(amax0 * j0 / na, 2.0 * kPi * i0 / np);
                        x(1) = std::polar(amax1 * j1 / na, 2.0 * kPi * i1 / np);
                        if (c.sp.lambda_form(x) > c.P_A) continue;
                        grid = std::min(grid, c.sp.objective(x));
                    }
        // objectives are negated rates, so "within 1%" is measured on -objective
        CHECK(-c.sp.objective(r.psi) >= 0.99 * -grid);
    }
}

TEST_CASE("phase-only mode keeps amplitudes") {
    std::mt19937_64 rng(8);
    const PsiCase c = make_case(rng, 5, 1.0);
    PsiSolveOptions opt;
    opt.mode = PsiMode::PhaseOnly;
    ReflectionCoefficients unit = c.init;
    unit.a.setOnes();
    const PsiSolveResult r = optimize_psi(c.sp, unit, std::numeric_limits<double>::infinity(), opt);
    CHECK((r.coeffs.a - RVec::Ones(5)).norm() == 0.0);
    CHECK(r.trace.back() <= r.trace.front());
}

TEST_CASE("amplitude-only mode keeps phases") {
    std::mt19937_64 rng(9);
    const PsiCase c = make_case(rng, 5, 0.7);
    PsiSolveOptions opt;
    opt.mode = PsiMode::AmplitudeOnly;
    const PsiSolveResult r = optimize_psi(c.sp, c.init, c.P_A, opt);
    CHECK((r.coeffs.phi - c.init.phi).norm() == 0.0);
    CHECK(psi_feasible(c.sp, r.psi, c.P_A, 1e-6));
    CHECK(r.trace.back() <= r.trace.front());
}
