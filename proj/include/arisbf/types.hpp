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

#ifndef ARISBF_TYPES_HPP
#define ARISBF_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace arisbf {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cd kJ{0.0, 1.0};

// ---- error hierarchy -------------------------------------------------------

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed argument: non-finite entries, bad shapes, out-of-range parameters.
class InvalidInput : public Error {
  public:
    using Error::Error;
};

/// A monotone root search could not establish f(lo) >= target >= f(hi).
class BracketFailure : public Error {
  public:
    using Error::Error;
};

/// The rate model produced a value its construction rules out (e.g. a
/// non-positive SINR denominator). Always indicates a bug or corrupted input.
class InvalidModel : public Error {
  public:
    using Error::Error;
};

/// The reflection vector spends the whole amplification budget on amplified
/// RIS noise, leaving no room for the beamformer.
class InfeasibleReflection : public Error {
  public:
    using Error::Error;
};

/// The outer alternating loop decreased the sum rate beyond tolerance.
class NonMonotoneObjective : public Error {
  public:
    using Error::Error;
};

// ---- small helpers ---------------------------------------------------------

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double dbw_to_watt(double dbw) { return std::pow(10.0, dbw / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Diagonal matrix holding the diagonal of `m` (the "diag-tilde" operator).
inline CMat diag_of(const CMat& m) {
    CMat out = CMat::Zero(m.rows(), m.cols());
    out.diagonal() = m.diagonal();
    return out;
}

inline bool all_finite(const CMat& m) { return m.allFinite(); }

/// SplitMix64 finalizer; used to derive independent RNG seeds from (seed, stream).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace arisbf

#endif
