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

#include "beamselect/dpc_rate.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace beamselect;
using cd = std::complex<double>;

namespace {

IndexList range(Index n)
{
    IndexList v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), Index{0});
    return v;
}

} // namespace

TEST_SUITE("dpc_rate") {

TEST_CASE("qr of trivial matrices")
{
    const auto f = qr_positive_diag(CMatrix<double>::Identity(3, 3));
    CHECK((f.q - CMatrix<double>::Identity(3, 3)).norm() < 1e-15);
    CHECK((f.r - CMatrix<double>::Identity(3, 3)).norm() < 1e-15);

    CMatrix<double> a(1, 1);
    a << 2;
    const auto g = qr_positive_diag(a);
    CHECK(std::abs(g.q(0, 0) - cd(1, 0)) < 1e-15);
    CHECK(std::abs(g.r(0, 0) - cd(2, 0)) < 1e-15);
}

TEST_CASE("qr reconstruction on random matrices")
{
    for (std::uint64_t k = 0; k < 20; ++k) {
        const auto a = test::random_matrix(8, 4, k);
        const auto f = qr_positive_diag(a);
        CHECK((f.q * f.r - a).norm() / a.norm() < 1e-12);
        CHECK((f.q.adjoint() * f.q - CMatrix<double>::Identity(4, 4)).norm() < 1e-12);
        CHECK(f.diagonal().minCoeff() > 0);
        CHECK(f.r.imag().diagonal().cwiseAbs().maxCoeff() == 0.0);
        CHECK(f.r.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm() == 0.0);
    }
}

TEST_CASE("qr rejects wide and rank-deficient matrices")
{
    CHECK_THROWS_AS(qr_positive_diag(test::random_matrix(2, 3, 1)), DegenerateSelection);
    CMatrix<double> a = test::random_matrix(5, 3, 2);
    a.col(2) = a.col(0) * cd(0.5, 2);
    CHECK_THROWS_AS(qr_positive_diag(a), DegenerateSelection);
    CHECK_THROWS_AS(qr_positive_diag(CMatrix<double>(0, 0)), InvalidInput);
}

TEST_CASE("product of the diagonal is the square root of the Gram determinant")
{
    CHECK(gram_determinant(CMatrix<double>(CMatrix<double>::Identity(3, 3))) == doctest::Approx(1.0));
    CMatrix<double> d = CMatrix<double>::Zero(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 3;
    CHECK(qr_positive_diag(CMatrix<double>(d.adjoint())).diagonal().prod() == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(std::sqrt(gram_determinant(d)) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("dpc precoder diagonalizes the selected channel")
{
    // Orthogonal rows with norms 2 and 3.
    CMatrix<double> h = CMatrix<double>::Zero(2, 4);
    h(0, 1) = cd(0, 2);
    h(1, 3) = cd(-3, 0);
    auto f = qr_positive_diag(CMatrix<double>(h.adjoint()));
    CMatrix<double> eff = h * dpc_precoder(f);
    CHECK(std::abs(eff(0, 0) - cd(2, 0)) < 1e-14);
    CHECK(std::abs(eff(1, 1) - cd(3, 0)) < 1e-14);
    CHECK(std::abs(eff(0, 1)) < 1e-14);
    CHECK(std::abs(eff(1, 0)) < 1e-14);

    const CMatrix<double> eye = CMatrix<double>::Identity(3, 3);
    CHECK((dpc_precoder(qr_positive_diag(eye)) - eye).norm() < 1e-15);

    // 8 users on 16 beams: H P = diag(r).
    const auto g = test::random_matrix(8, 16, 9);
    f = qr_positive_diag(CMatrix<double>(g.adjoint()));
    eff = g * dpc_precoder(f);
    const double top = eff.diagonal().cwiseAbs().maxCoeff();
    CMatrix<double> off = eff;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() < 1e-9 * top);
    CHECK((eff.diagonal().real() - f.diagonal()).norm() < 1e-10 * top);
}

TEST_CASE("water filling")
{
    RVector<double> g(2);
    g << 1, 1;
    auto w = water_fill(g, 2.0);
    CHECK(w.lambdas(0) == doctest::Approx(1.0));
    CHECK(w.lambdas(1) == doctest::Approx(1.0));
    CHECK(w.beta == doctest::Approx(2.0));

    // The joint level (0.5 + 1/4 + 100) / 2 would leave the weak user
    // negative, so it is dropped: beta = 0.75.
    g << 4, 0.01;
    w = water_fill(g, 0.5);
    CHECK(w.lambdas(0) == doctest::Approx(0.5));
    CHECK(w.lambdas(1) == 0.0);
    CHECK(w.beta == doctest::Approx(0.75));
    CHECK(w.active_set == IndexList{0});

    RVector<double> eq = RVector<double>::Constant(5, 2.5);
    for (double p : {0.1, 1.0, 37.0}) {
        w = water_fill(eq, p);
        for (Index u = 0; u < 5; ++u)
            CHECK(w.lambdas(u) == doctest::Approx(p / 5));
    }

    // KKT on a random instance: active users share the level, inactive ones sit above it.
    Stream rng(77);
    RVector<double> r(12);
    for (Index i = 0; i < 12; ++i)
        r(i) = std::pow(10.0, rng.uniform(-3, 1));
    w = water_fill(r, 3.0);
    CHECK(w.lambdas.sum() == doctest::Approx(3.0).epsilon(1e-12));
    for (Index i = 0; i < 12; ++i) {
        if (w.lambdas(i) > 0)
            CHECK(w.lambdas(i) + 1 / r(i) == doctest::Approx(w.beta).epsilon(1e-12));
        else
            CHECK(1 / r(i) >= w.beta - 1e-12);
    }

    CHECK_THROWS_AS(water_fill(RVector<double>(0), 1.0), InvalidInput);
    CHECK_THROWS_AS(water_fill(eq, 0.0), InvalidInput);
    eq(2) = 0;
    CHECK_THROWS_AS(water_fill(eq, 1.0), InvalidInput);
}

TEST_CASE("sum rate closed forms")
{
    CMatrix<double> h(1, 1);
    h << cd(1.5, -0.5);
    const double g = std::norm(h(0, 0));
    CHECK(dpc_sum_rate(h, {0}, {0}, 7.0).sum_rate == doctest::Approx(std::log2(1 + g * 7.0)));

    // Two orthogonal users with equal gain g.
    CMatrix<double> h2 = CMatrix<double>::Zero(2, 3);
    h2(0, 0) = std::sqrt(2.0);
    h2(1, 2) = cd(0, std::sqrt(2.0));
    for (double p : {0.5, 10.0, 1000.0})
        CHECK(dpc_sum_rate(h2, {0, 1}, {0, 1, 2}, p).sum_rate == doctest::Approx(2 * std::log2(1 + 2.0 * p / 2)));

    // Gain r versus r^2.
    CMatrix<double> h3(1, 1);
    h3 << 2.0;
    CHECK(dpc_sum_rate(h3, {0}, {0}, 1.0, RateVariant::linear_gain).sum_rate == doctest::Approx(std::log2(3.0)));
    CHECK(dpc_sum_rate(h3, {0}, {0}, 1.0, RateVariant::squared_gain).sum_rate == doctest::Approx(std::log2(5.0)));
}

TEST_CASE("beam order is irrelevant, user order is not")
{
    const auto h = test::random_matrix(4, 8, 5);
    const double a = dpc_sum_rate(h, {0, 1, 2}, {1, 3, 5, 7}, 50.0).sum_rate;
    const double b = dpc_sum_rate(h, {0, 1, 2}, {7, 1, 5, 3}, 50.0).sum_rate;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    const auto r1 = dpc_sum_rate(h, {0, 1, 2}, {1, 3, 5, 7}, 50.0).gains;
    const auto r2 = dpc_sum_rate(h, {2, 1, 0}, {1, 3, 5, 7}, 50.0).gains;
    CHECK((r1 - r2).norm() > 1e-6);
    // The product of the gains is order invariant.
    CHECK(r1.prod() == doctest::Approx(r2.prod()).epsilon(1e-10));
}

TEST_CASE("selection checks")
{
    const auto h = test::random_matrix(3, 4, 1);
    CHECK_THROWS_AS(dpc_sum_rate(h, {}, {0}, 1.0), InvalidInput);
    CHECK_THROWS_AS(dpc_sum_rate(h, {0, 1}, {0}, 1.0), DegenerateSelection);
    CHECK_THROWS_AS(dpc_sum_rate(h, {3}, {0}, 1.0), InvalidInput);
    CHECK_THROWS_AS(dpc_sum_rate(h, {0}, {4}, 1.0), InvalidInput);
}

TEST_CASE("determinant rate")
{
    CHECK(det_sum_rate(CMatrix<double>(CMatrix<double>::Zero(2, 3)), CMatrix<double>(CMatrix<double>::Identity(3, 3) / 3.0), 5.0) ==
          doctest::Approx(0.0));
    CHECK(det_sum_rate(CMatrix<double>(CMatrix<double>::Identity(2, 2)),
                       CMatrix<double>(CMatrix<double>::Identity(2, 2) / 2.0), 2.0) == doctest::Approx(2.0));

    // Eigenvalue form: sum log2(1 + rho nu_i), nu eigenvalues of H Rxx H^H.
    const auto h = test::random_matrix(3, 5, 12);
    const auto b = test::random_matrix(5, 5, 13);
    CMatrix<double> rxx = b * b.adjoint();
    rxx /= rxx.trace().real();
    const double rho = 4.0;
    const CMatrix<double> m = h * rxx * h.adjoint();
    const auto nu = Eigen::SelfAdjointEigenSolver<CMatrix<double>>(m).eigenvalues();
    double want = 0;
    for (Index i = 0; i < nu.size(); ++i)
        want += std::log2(1 + rho * nu(i));
    CHECK(det_sum_rate(h, rxx, rho) == doctest::Approx(want).epsilon(1e-12));

    CHECK_THROWS_AS(det_sum_rate(h, CMatrix<double>(CMatrix<double>::Identity(5, 5)), 1.0), InvalidInput);
    CMatrix<double> skew = rxx;
    skew(0, 1) += cd(0.1, 0);
    CHECK_THROWS_AS(det_sum_rate(h, skew, 1.0), InvalidInput);
    CHECK_THROWS_AS(det_sum_rate(h, CMatrix<double>(CMatrix<double>::Identity(3, 3)), 1.0), InvalidDimension);
}

TEST_CASE("uniform-power dpc lies below water filling and the cooperative determinant rate")
{
    // With precoder Q and uniform power P/U the rate is sum log2(1 + r_u^2 P/U);
    // the same transmit covariance Q Q^H / U with cooperating receivers gives
    // log2 det(I + P/U R^H R), which is never smaller.
    for (std::uint64_t k = 0; k < 200; ++k) {
        const Index u = 4;
        const Index b = k % 2 ? 4 : 7;
        const auto h = test::random_matrix(u, b, 1000 + k);
        const auto f = qr_positive_diag(CMatrix<double>(h.adjoint()));
        for (double p : {1.0, 10.0, 1000.0}) {
            double uniform = 0;
            for (Index i = 0; i < u; ++i)
                uniform += std::log2(1 + f.diagonal()(i) * f.diagonal()(i) * p / static_cast<double>(u));
            const double wf = dpc_sum_rate(h, range(u), range(b), p).sum_rate;
            const CMatrix<double> rxx = f.q * f.q.adjoint() / static_cast<double>(u);
            const double coop = det_sum_rate(h, rxx, p);
            CHECK(uniform <= wf + 1e-9);
            CHECK(uniform <= coop + 1e-9);
        }
    }
}

TEST_CASE("rate variant names")
{
    CHECK(parse_rate_variant("linear_gain") == RateVariant::linear_gain);
    CHECK(to_string(RateVariant::squared_gain) == "squared_gain");
    CHECK_THROWS_AS(parse_rate_variant("zf"), InvalidConfig);
}

}
