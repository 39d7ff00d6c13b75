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

#ifndef ARISBF_NUMERICS_HPP
#define ARISBF_NUMERICS_HPP

#include "arisbf/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace arisbf {

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.
struct HermitianEig {
    RVec eigenvalues;
    CMat eigenvectors;  // columns, unitary

    double max() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }
};

inline constexpr double kPsdRejectTol = 1e-8;
inline constexpr double kRankTol = 1e-12;

/// Eigen-decomposes `h` after symmetrizing. With `assert_psd`, eigenvalues
/// below -1e-8*||h|| are rejected and the remaining small negatives are
/// clamped to zero.
inline HermitianEig hermitian_eig(const CMat& h, bool assert_psd = false) {
    if (h.rows() != h.cols()) throw InvalidInput("hermitian_eig: matrix is not square");
    if (!all_finite(h)) throw InvalidInput("hermitian_eig: non-finite entries");
    HermitianEig out;
    const Eigen::Index n = h.rows();
    if (n == 0) {
        out.eigenvalues.resize(0);
        out.eigenvectors.resize(0, 0);
        return out;
    }
    const CMat sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(sym);
    if (es.info() != Eigen::Success) throw InvalidInput("hermitian_eig: eigensolver failed");
    // Eigen returns ascending order
    out.eigenvalues = es.eigenvalues().reverse();
    out.eigenvectors = es.eigenvectors().rowwise().reverse();
    if (assert_psd) {
        const double scale = sym.norm();
        if (out.eigenvalues(n - 1) < -kPsdRejectTol * scale)
            throw InvalidInput("hermitian_eig: matrix asserted PSD has a negative eigenvalue");
        out.eigenvalues = out.eigenvalues.cwiseMax(0.0);
    }
    return out;
}

inline double max_eigenvalue(const CMat& h) {
    if (h.rows() == 0) return 0.0;
    return std::max(0.0, hermitian_eig(h, true).max());
}

/// Applies (H + shift*I)^+ repeatedly for different shifts using one cached
/// decomposition of H.
class ShiftedPsdSolver {
  public:
    ShiftedPsdSolver() = default;
    explicit ShiftedPsdSolver(const CMat& h) : eig_(hermitian_eig(h, true)) {}
    explicit ShiftedPsdSolver(HermitianEig eig) : eig_(std::move(eig)) {}

    const HermitianEig& eig() const { return eig_; }
    Eigen::Index size() const { return eig_.eigenvalues.size(); }

    /// Coordinates of `b` in the eigenbasis (Q^H b).
    CVec to_eigenbasis(const CVec& b) const { return eig_.eigenvectors.adjoint() * b; }
    CVec from_eigenbasis(const CVec& c) const { return eig_.eigenvectors * c; }

    /// Inverse weights 1/(lambda_i + shift), zero on the numerical null space.
    RVec inverse_weights(double shift) const {
        const Eigen::Index n = size();
        RVec inv(n);
        const double top = (n ? eig_.eigenvalues(0) : 0.0) + shift;
        const double cutoff = kRankTol * top;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double l = eig_.eigenvalues(i) + shift;
            inv(i) = (l > cutoff && l > 0.0) ? 1.0 / l : 0.0;
        }
        return inv;
    }

    CVec solve(const CVec& b, double shift) const {
        if (shift < 0.0) throw InvalidInput("psd_solve: negative shift");
        return from_eigenbasis(inverse_weights(shift).cwiseProduct(to_eigenbasis(b)));
    }

  private:
    HermitianEig eig_;
};

/// (H + shift*I)^+ b through the eigen-decomposition of H.
inline CVec psd_solve(const CMat& h, const CVec& b, double shift) {
    if (h.rows() != b.size()) throw InvalidInput("psd_solve: dimension mismatch");
    if (!all_finite(b)) throw InvalidInput("psd_solve: non-finite right-hand side");
    return ShiftedPsdSolver(h).solve(b, shift);
}

// ---- bisection -------------------------------------------------------------

struct BisectOptions {
    double x_tol = 1e-8;       // absolute bracket width
    double rel_tol = 0.0;      // bracket width relative to hi
    int max_iter = 200;
    int max_expand = 60;       // hi <- 2*hi doublings allowed
};

struct BisectResult {
    double lo = 0.0;
    double hi = 0.0;
    int iterations = 0;
    int expansions = 0;

    double x() const { return 0.5 * (lo + hi); }
};

/// Root search on a non-increasing f for f(x) = target. Keeps
/// f(lo) >= target >= f(hi) at every step; `hi` always lies on the
/// f <= target side.
inline BisectResult bisect_bracket(const std::function<double(double)>& f, double target, double lo,
                                   double hi, const BisectOptions& opt = {}) {
    if (!(hi > lo)) throw InvalidInput("bisect: empty interval");
    BisectResult r;
    r.lo = lo;
    r.hi = hi;
    if (!(f(lo) >= target)) throw BracketFailure("bisect: f(lo) below target");
    double fhi = f(hi);
    while (!(fhi <= target)) {
        if (r.expansions >= opt.max_expand) throw BracketFailure("bisect: no bracket after expansion");
        r.lo = r.hi;  // f(old hi) > target keeps the lower invariant
        r.hi *= 2.0;
        ++r.expansions;
        fhi = f(r.hi);
    }
    while (r.iterations < opt.max_iter) {
        const double width = r.hi - r.lo;
        if (width <= opt.x_tol || width <= opt.rel_tol * std::abs(r.hi)) break;
        const double mid = 0.5 * (r.lo + r.hi);
        if (mid <= r.lo || mid >= r.hi) break;  // floating-point resolution reached
        if (f(mid) >= target)
            r.lo = mid;
        else
            r.hi = mid;
        ++r.iterations;
    }
    return r;
}

/// Multiplier searches run on a dimensionless multiplier (the raw value
/// divided by a problem-specific scale), so a relative bracket width is used.
struct BisectionSettings {
    double rel_tol = 1e-13;
    int max_iter = 300;
    int max_expand = 60;

    BisectOptions options() const {
        BisectOptions o;
        o.x_tol = 0.0;
        o.rel_tol = rel_tol;
        o.max_iter = max_iter;
        o.max_expand = max_expand;
        return o;
    }
};

inline double bisect(const std::function<double(double)>& f, double target, double lo, double hi,
                     double tol) {
    BisectOptions opt;
    opt.x_tol = tol;
    return bisect_bracket(f, target, lo, hi, opt).x();
}

}  // namespace arisbf

#endif
