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

#include "beamselect/projection.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace beamselect;
using cd = std::complex<double>;

TEST_SUITE("projection") {

TEST_CASE("null projector of a coordinate row")
{
    CMatrix<double> rows(1, 2);
    rows << 1, 0;
    const auto p = null_projector(rows);
    CHECK(std::abs(p(0, 0)) < 1e-15);
    CHECK(std::abs(p(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(p(0, 1)) < 1e-15);
}

TEST_CASE("random projector is idempotent, Hermitian and annihilates its rows")
{
    const auto rows = test::random_matrix(3, 8, 42);
    const auto p = null_projector(rows);
    CHECK((p * p - p).norm() < 1e-10);
    CHECK((p - p.adjoint()).norm() < 1e-10);
    for (Index i = 0; i < 3; ++i)
        CHECK((rows.row(i) * p).norm() < 1e-10 * rows.row(i).norm());
}

TEST_CASE("projection power")
{
    CMatrix<double> basis(1, 3);
    basis << 1, 0, 0;
    const auto p = null_projector(basis);

    CRowVector<double> orth(3);
    orth << 0, cd(2, 1), 0;
    CHECK(projection_power(orth, p) == doctest::Approx(orth.squaredNorm()).epsilon(1e-15));

    CRowVector<double> inside(3);
    inside << cd(3, -1), 0, 0;
    CHECK(std::abs(projection_power(inside, p)) < 1e-10);

    CRowVector<double> mixed(3);
    mixed << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0;
    CHECK(projection_power(mixed, p) == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(projection_power(CRowVector<double>(2), p), InvalidDimension);
}

TEST_CASE("factored context agrees with the explicit projector")
{
    const auto basis = test::random_matrix(4, 10, 7);
    const ProjectorContext<double> ctx(basis);
    const auto p = ctx.projector();
    for (std::uint64_t k = 0; k < 5; ++k) {
        const CRowVector<double> x = test::random_matrix(1, 10, 100 + k);
        CHECK(ctx.projected_power(x) == doctest::Approx(projection_power(x, p)).epsilon(1e-10));
    }
    // Caller-supplied Gram matrix.
    const ProjectorContext<double> ctx2(basis, basis * basis.adjoint());
    CHECK((ctx2.projector() - p).norm() < 1e-10);
}

TEST_CASE("empty basis and degenerate bases")
{
    const ProjectorContext<double> empty(CMatrix<double>(0, 4));
    const CRowVector<double> x = test::random_matrix(1, 4, 3);
    CHECK(empty.projected_power(x) == doctest::Approx(x.squaredNorm()));

    CMatrix<double> dup(2, 4);
    dup.row(0) = x;
    dup.row(1) = x;
    CHECK_THROWS_AS(ProjectorContext<double>{dup}, DegenerateSelection);
    CHECK_THROWS_AS(ProjectorContext<double>{test::random_matrix(5, 4, 1)}, DegenerateSelection);
}

}
