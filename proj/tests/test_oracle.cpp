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

#include "beamselect/oracle.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace beamselect;
using cd = std::complex<double>;

namespace {

ChannelConfig small_channel(int k, int n)
{
    ChannelConfig c;
    c.users = k;
    c.antennas = n;
    return c;
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("exhaustive cost")
{
    CHECK(exhaustive_cost(3, 6, 2) == 3 * 2 * 15);
    CHECK(exhaustive_cost(4, 8, 2) == 6 * 2 * 28);
    CHECK(exhaustive_cost(2, 2, 2) == 2);
    CHECK(exhaustive_cost(40, 256, 16) == UINT64_MAX);
}

TEST_CASE("exhaustive search of the single feasible pair")
{
    // K = M = N: only the encoding order and nothing else varies.
    const auto h = test::random_matrix(2, 2, 3);
    const auto r = exhaustive_select(h, 2, 10.0);
    CHECK(r.evaluated == 2);
    IndexList beams = r.selection.beams;
    std::sort(beams.begin(), beams.end());
    CHECK(beams == IndexList{0, 1});
    const double a = dpc_sum_rate(h, {0, 1}, {0, 1}, 10.0).sum_rate;
    const double b = dpc_sum_rate(h, {1, 0}, {0, 1}, 10.0).sum_rate;
    CHECK(r.rate.sum_rate == doctest::Approx(std::max(a, b)).epsilon(1e-14));
}

TEST_CASE("exhaustive search finds the diagonal of an orthogonal instance")
{
    const auto inst = orthogonal_instance(3, 8, 1, 0);
    const auto r = exhaustive_select(inst.h, 3, 50.0);
    IndexList beams = r.selection.beams;
    IndexList want = inst.grid_beams;
    std::sort(beams.begin(), beams.end());
    std::sort(want.begin(), want.end());
    CHECK(beams == want);
    // All orders tie; the lexicographically smallest one is kept.
    CHECK(r.selection.users == IndexList{0, 1, 2});
}

TEST_CASE("exhaustive search refuses to exceed the budget")
{
    const auto h = test::random_matrix(10, 20, 1);
    CHECK_THROWS_AS(exhaustive_select(h, 5, 1.0, RateVariant::squared_gain, 1000), BudgetExceeded);
    CHECK_THROWS_AS(exhaustive_select(h, 0, 1.0), InvalidInput);
}

TEST_CASE("orthogonal instance rows have a single beam")
{
    const auto inst = orthogonal_instance(5, 16, 3, 2);
    for (Index k = 0; k < 5; ++k)
        for (Index b = 0; b < 16; ++b) {
            const bool on = b == inst.grid_beams[static_cast<std::size_t>(k)];
            if (on)
                CHECK(std::abs(inst.h(k, b)) > 0.4);
            else
                CHECK(std::abs(inst.h(k, b)) < 1e-12);
        }
    CHECK(mean_cross_correlation(inst.h) < 1e-12);
}

TEST_CASE("cross-correlation closed forms")
{
    CMatrix<double> same(2, 3);
    same.row(0) << 1, cd(0, 1), 2;
    same.row(1) = same.row(0) * cd(0, 3);
    CHECK(mean_cross_correlation(same) == doctest::Approx(1.0));
    CHECK(mean_cross_correlation(CMatrix<double>(CMatrix<double>::Identity(3, 3))) == 0.0);
}

TEST_CASE("user monotonicity closed form")
{
    // Orthogonal equal-gain users at P = 10: two users beat one.
    for (double g : {1.0, 2.0, 5.0}) {
        CMatrix<double> h = CMatrix<double>::Zero(2, 2);
        h(0, 0) = std::sqrt(g);
        h(1, 1) = std::sqrt(g);
        const double s1 = dpc_sum_rate(h, {0}, {0, 1}, 10.0).sum_rate;
        const double s2 = dpc_sum_rate(h, {0, 1}, {0, 1}, 10.0).sum_rate;
        CHECK(s1 == doctest::Approx(std::log2(1 + 10 * g)));
        CHECK(s2 == doctest::Approx(2 * std::log2(1 + 5 * g)));
        CHECK(s2 > s1);
    }
    // A duplicated user is rejected by the rank filter.
    CMatrix<double> dup(2, 3);
    dup.row(0) << 1, 2, 3;
    dup.row(1) = dup.row(0);
    CHECK_THROWS_AS(dpc_sum_rate(dup, {0, 1}, {0, 1, 2}, 10.0), DegenerateSelection);
}

TEST_CASE("beam additions and the Gram determinant")
{
    const auto g = test::random_matrix(3, 5, 8);
    const double base = gram_determinant(g);
    CMatrix<double> zero(3, 6);
    zero << g, CVector<double>::Zero(3);
    CHECK(gram_determinant(zero) == doctest::Approx(base).epsilon(1e-12));
    CMatrix<double> more(3, 6);
    more << g, test::random_matrix(3, 1, 9);
    CHECK(gram_determinant(more) >= base * (1 - 1e-12));
}

TEST_CASE("verifiers pass on small runs and are deterministic")
{
    auto a = verify_qr_det_identity(100, 5);
    CHECK(a.pass_fraction == 1.0);
    CHECK(a.instances == 100);
    const auto b = verify_qr_det_identity(100, 5);
    CHECK(a.worst_violation == b.worst_violation);

    const auto ch = small_channel(10, 32);
    CHECK(verify_beam_monotonicity(50, ch, 4, 1000.0, 3).pass_fraction == 1.0);
    CHECK(verify_user_monotonicity(50, ch, 6, 1000.0, 3).pass_fraction == 1.0);

    const auto one = verify_shared_beam_probability(ch, 1, 20, 0.15, 3);
    CHECK(one.metrics.at("collision_frequency") == 0.0);

    const auto orth = verify_orthogonal_optimality(20, 3, 8, 100.0, 4);
    CHECK(orth.pass_fraction == 1.0);
    CHECK(orth.metrics.at("exhaustive_checked") == 1.0);

    const auto cmp = compare_with_oracle(small_channel(3, 6), 2, 100.0, 50, 6);
    CHECK(cmp.pass_fraction == 1.0);
    CHECK_THROWS_AS(compare_with_oracle(small_channel(20, 64), 8, 100.0, 1, 6), BudgetExceeded);
}

TEST_CASE("results do not depend on the worker count")
{
    const auto ch = small_channel(8, 16);
    setenv("BEAMSELECT_THREADS", "1", 1);
    const auto one = compare_with_oracle(ch, 2, 100.0, 30, 2);
    setenv("BEAMSELECT_THREADS", "4", 1);
    const auto four = compare_with_oracle(ch, 2, 100.0, 30, 2);
    unsetenv("BEAMSELECT_THREADS");
    CHECK(one.metrics == four.metrics);
    CHECK(one.passes == four.passes);
}

}
