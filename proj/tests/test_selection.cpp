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

#include "beamselect/channel.hpp"
#include "beamselect/oracle.hpp"
#include "beamselect/selection.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <numbers>

using namespace beamselect;
using cd = std::complex<double>;

namespace {

CMatrix<double> desk_channel(Index k, Index n, std::uint64_t trial)
{
    ChannelConfig cfg;
    cfg.users = static_cast<int>(k);
    cfg.antennas = static_cast<int>(n);
    return to_beamspace(generate_channel<double>(cfg, 99, trial)).data;
}

bool distinct(IndexList v)
{
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

} // namespace

TEST_SUITE("selection") {

TEST_CASE("threshold values")
{
    CHECK(m_bar(30, 256) == 26);
    CHECK(m_bar(35, 256) == 30);
    CHECK(m_bar(40, 256) == 34);
    CHECK(m_bar(20, 64) == 15);
    CHECK(m_bar(1, 1) == 0);
    static_assert(m_bar(40, 256) == 34);
    CHECK_THROWS_AS(m_bar(0, 4), InvalidInput);
}

TEST_CASE("strongest beam")
{
    CMatrix<double> h(1, 3);
    h << 0, 3, 1;
    CHECK(strongest_beam(h, 0) == 1);
    CMatrix<double> flat(1, 4);
    flat << 1, cd(0, 1), -1, cd(0, -1);
    CHECK(strongest_beam(flat, 0) == 0);

    // Single path on the grid: peak at p.
    const Index n = 64;
    for (Index p : {0, 17, 63}) {
        CMatrix<double> row =
            steering_vector(2 * std::numbers::pi * static_cast<double>(p) / n, n).entries.transpose();
        CHECK(strongest_beam(to_beamspace(row, dft_matrix<double>(n)), 0) == p);
    }
    CHECK_THROWS_AS(strongest_beam(h, 1), InvalidInput);
}

TEST_CASE("neighbour beam sets")
{
    auto s = neighbor_beam_set({3}, 0, -1, 256);
    CHECK(s.beams == IndexList{3, 255});
    CHECK(s.added_beam == 255);
    CHECK_FALSE(s.duplicate);

    s = neighbor_beam_set({3}, 3, 0, 256);
    CHECK(s.beams == IndexList{3});
    CHECK(s.duplicate);

    s = neighbor_beam_set({}, 10, +1, 256);
    CHECK(s.beams == IndexList{11});
    CHECK(neighbor_beam_set({}, 255, +1, 256).added_beam == 0);

    CHECK(probe_offsets(1) == std::vector<int>{0});
    CHECK(probe_offsets(2) == std::vector<int>{0, 1});
    CHECK(probe_offsets(3) == std::vector<int>{0, 1, -1});
    CHECK_THROWS_AS(probe_offsets(4), InvalidInput);
}

TEST_CASE("sir score")
{
    CRowVector<double> x(2);
    x << 1, 0;
    CMatrix<double> inter(1, 2);
    inter << 1, 0;
    CHECK(sir_score<double>(x, inter).value == doctest::Approx(1.0));

    x << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    CHECK(sir_score<double>(x, inter).value == doctest::Approx(2.0));

    x << 0, 1;
    const auto s = sir_score<double>(x, inter);
    CHECK(s.infinite);
    CHECK(std::isinf(s.metric()));
}

TEST_CASE("infinite scores rank by signal power")
{
    detail::Score a{0, 2.0, true};
    detail::Score b{0, 1.0, true};
    detail::Score c{1e9, 5.0, false};
    CHECK(detail::better(a, b));
    CHECK_FALSE(detail::better(b, a));
    CHECK(detail::better(b, c));
    CHECK_FALSE(detail::better(c, b));
}

TEST_CASE("single user, single RF chain")
{
    const auto h = desk_channel(1, 16, 0);
    for (Algorithm a : {Algorithm::alg1, Algorithm::alg2, Algorithm::alg3}) {
        const auto s = select(a, h, 1);
        CHECK(s.users == IndexList{0});
        CHECK(s.beams == IndexList{strongest_beam(h, 0)});
    }
    // Bound: single-user capacity on all beams; one beam never exceeds it.
    const double p = 10;
    CHECK(upper_bound(h, 1, p) == doctest::Approx(std::log2(1 + p * h.row(0).squaredNorm())));
    const auto s = algorithm1(h, 1);
    CHECK(dpc_sum_rate(h, s.users, s.beams, p).sum_rate <= upper_bound(h, 1, p) + 1e-12);
}

TEST_CASE("selections have the requested size without repeats")
{
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto h = desk_channel(20, 64, t);
        for (Algorithm a : {Algorithm::alg1, Algorithm::alg2, Algorithm::alg3}) {
            for (Index m : {1, 5, 8, 15}) {
                const auto s = select(a, h, m);
                CHECK(static_cast<Index>(s.users.size()) == m);
                CHECK(static_cast<Index>(s.beams.size()) == m);
                CHECK(distinct(s.users));
                CHECK(distinct(s.beams));
            }
        }
    }
}

TEST_CASE("first pick of the simultaneous algorithms is the global maximum")
{
    const auto h = desk_channel(12, 32, 4);
    Index bu = 0, bb = 0;
    for (Index u = 0; u < h.rows(); ++u)
        for (Index b = 0; b < h.cols(); ++b)
            if (std::norm(h(u, b)) > std::norm(h(bu, bb))) {
                bu = u;
                bb = b;
            }
    for (Algorithm a : {Algorithm::alg2, Algorithm::alg3}) {
        const auto s = select(a, h, 4);
        CHECK(s.users[0] == bu);
        CHECK(s.beams[0] == bb);
    }
}

TEST_CASE("case one picks each user's strongest beam")
{
    const auto h = desk_channel(20, 64, 2);
    const auto s = algorithm2(h, 8);
    for (std::size_t i = 0; i < s.users.size(); ++i)
        CHECK(s.beams[i] == strongest_beam(h, s.users[i]));
    for (const auto& e : s.trace)
        CHECK(e.stage != "case2");
}

TEST_CASE("case two probes neighbour offsets")
{
    const auto h = desk_channel(20, 64, 3);
    SelectionOptions o;
    o.mbar_override = 1;
    const auto s = algorithm2(h, 8, o);
    bool saw_offset = false;
    for (const auto& e : s.trace)
        for (const auto& c : e.candidates)
            saw_offset = saw_offset || c.offset != 0;
    CHECK(saw_offset);
    // Every chosen beam is within one of the chosen user's strongest beam.
    for (std::size_t i = 1; i < s.users.size(); ++i) {
        const Index d = (s.beams[i] - strongest_beam(h, s.users[i]) + 64) % 64;
        CHECK((d == 0 || d == 1 || d == 63));
    }
}

TEST_CASE("algorithm 2 projection score matches the explicit projector")
{
    // Recompute the score of the chosen candidate at each step from scratch.
    const auto h = desk_channel(10, 32, 8);
    SelectionOptions o;
    o.mbar_override = 2;
    const auto s = algorithm2(h, 6, o);
    for (std::size_t it = 1; it < s.users.size(); ++it) {
        const IndexList users(s.users.begin(), s.users.begin() + static_cast<long>(it));
        IndexList beams(s.beams.begin(), s.beams.begin() + static_cast<long>(it));
        beams.push_back(s.beams[it]);
        const CMatrix<double> basis = h(users, beams);
        const CRowVector<double> x = h(IndexList{s.users[it]}, beams);
        const double want = projection_power(x, null_projector(basis));
        CHECK(s.trace[it].metric == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("duplicate candidates are skipped and traced")
{
    // Users 1 and 2 share user 0's strongest beam.
    CMatrix<double> h = CMatrix<double>::Zero(3, 4);
    h(0, 0) = 3;
    h(1, 0) = 2;
    h(1, 1) = 0.5;
    h(2, 0) = 1.5;
    h(2, 3) = 0.4;
    const auto s = algorithm2(h, 3);
    CHECK(s.users.size() == 3);
    CHECK(distinct(s.beams));
    bool skipped = false;
    for (const auto& e : s.trace)
        for (const auto& c : e.candidates)
            skipped = skipped || c.skipped;
    CHECK(skipped);
}

TEST_CASE("every candidate skipped is infeasible")
{
    // Both users only see beam 0 and its neighbours are taken.
    CMatrix<double> h = CMatrix<double>::Zero(2, 3);
    h(0, 0) = 2;
    h(1, 0) = 1;
    SelectionOptions o;
    o.offset_count = 1;
    CHECK_THROWS_AS(algorithm2(h, 2, o), SelectionInfeasible);
    CHECK_THROWS_AS(algorithm3(h, 2, o), SelectionInfeasible);
    CHECK_THROWS_AS(algorithm1(h, 2), SelectionInfeasible);
    CHECK_THROWS_AS(algorithm2(CMatrix<double>(CMatrix<double>::Zero(2, 3)), 1), SelectionInfeasible);
}

TEST_CASE("invalid requests")
{
    const auto h = desk_channel(4, 8, 0);
    CHECK_THROWS_AS(algorithm1(h, 0), InvalidInput);
    CHECK_THROWS_AS(algorithm2(h, 5), InvalidInput);
    SelectionOptions o;
    o.offset_count = 0;
    CHECK_THROWS_AS(algorithm2(h, 2, o), InvalidInput);
    CHECK(parse_algorithm("alg3") == Algorithm::alg3);
    CHECK_THROWS_AS(parse_algorithm("alg4"), InvalidConfig);
}

TEST_CASE("orthogonal instances are solved exactly")
{
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto inst = orthogonal_instance(6, 32, 5, t);
        IndexList want = inst.grid_beams;
        std::sort(want.begin(), want.end());
        const auto s1 = algorithm1(inst.h, 6);
        const double bound = upper_bound(inst.h, 6, 100.0);
        for (Algorithm a : {Algorithm::alg1, Algorithm::alg2, Algorithm::alg3}) {
            const auto s = select(a, inst.h, 6);
            IndexList got = s.beams;
            std::sort(got.begin(), got.end());
            CHECK(got == want);
            IndexList users = s.users;
            std::sort(users.begin(), users.end());
            CHECK(users == IndexList{0, 1, 2, 3, 4, 5});
            CHECK(dpc_sum_rate(inst.h, s.users, s.beams, 100.0).sum_rate == doctest::Approx(bound).epsilon(1e-12));
        }
        CHECK(algorithm2(inst.h, 6).beams == algorithm3(inst.h, 6).beams);
        (void)s1;
    }
}

TEST_CASE("benchmark dominates every algorithm on random draws")
{
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto h = desk_channel(8, 32, t);
        const double bound = upper_bound(h, 4, 100.0);
        for (Algorithm a : {Algorithm::alg1, Algorithm::alg2, Algorithm::alg3}) {
            const auto s = select(a, h, 4);
            CHECK(dpc_sum_rate(h, s.users, s.beams, 100.0).sum_rate <= bound + 1e-9);
        }
    }
}

TEST_CASE("near-optimality against the exhaustive search")
{
    // N = 8, K = 4, M = 2: never above the optimum, within 90% of it in at
    // least 95% of draws.
    std::size_t close[3] = {0, 0, 0};
    const std::size_t trials = 1000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto h = desk_channel(4, 8, t);
        const double opt = exhaustive_select(h, 2, 100.0).rate.sum_rate;
        int i = 0;
        for (Algorithm a : {Algorithm::alg1, Algorithm::alg2, Algorithm::alg3}) {
            const auto s = select(a, h, 2, {std::nullopt, 3, false});
            const double r = dpc_sum_rate(h, s.users, s.beams, 100.0).sum_rate;
            CHECK(r <= opt + 1e-9);
            close[i++] += r >= 0.9 * opt;
        }
    }
    for (std::size_t c : close)
        CHECK(static_cast<double>(c) >= 0.95 * trials);
}

TEST_CASE("float instantiation")
{
    ChannelConfig cfg;
    cfg.users = 8;
    cfg.antennas = 32;
    const CMatrix<float> h = to_beamspace(generate_channel<float>(cfg, 1)).data;
    const auto s = algorithm2(h, 4);
    CHECK(s.users.size() == 4);
    CHECK(dpc_sum_rate(h, s.users, s.beams, 10.0f).sum_rate > 0.0f);
}

}
