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

#ifndef BEAMSELECT_TESTS_HELPERS_HPP
#define BEAMSELECT_TESTS_HELPERS_HPP

#include "beamselect/rng.hpp"
#include "beamselect/types.hpp"

#include <complex>

namespace beamselect::test {

// Entries CN(0, 1) from a dedicated stream.
inline CMatrix<double> random_matrix(Index rows, Index cols, std::uint64_t key)
{
    Stream rng(key);
    CMatrix<double> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            m(i, j) = std::complex<double>(re, im) / std::sqrt(2.0);
        }
    return m;
}

} // namespace beamselect::test

#endif
