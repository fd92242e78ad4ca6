// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The beamselect authors
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

#ifndef BEAMSELECT_TYPES_HPP
#define BEAMSELECT_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamselect {

using Index = Eigen::Index;
using IndexList = std::vector<Index>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using CRowVector = Eigen::Matrix<std::complex<Real>, 1, Eigen::Dynamic>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Numerical rank cut-off: a selection is degenerate when sigma_min / sigma_max
// falls below rank_tolerance.
template <typename Real>
struct Tolerances {
    static constexpr Real rank = Real(1e-10);
};

template <>
struct Tolerances<float> {
    static constexpr float rank = 1e-5f;
};

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

// A user/beam subset whose channel submatrix is numerically rank deficient.
class DegenerateSelection : public Error {
public:
    using Error::Error;
};

// Every candidate of a greedy iteration was skipped.
class SelectionInfeasible : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace beamselect

#endif // BEAMSELECT_TYPES_HPP
