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

#ifndef BEAMSELECT_DPC_RATE_HPP
#define BEAMSELECT_DPC_RATE_HPP

#include "beamselect/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace beamselect {

// Which per-user gain enters the water-filling and the rate.
//   squared_gain: g_u = r_u^2, rate log2(1 + r_u^2 lambda_u)
//   linear_gain:  g_u = r_u,   rate log2(1 + r_u lambda_u) = [log2(beta r_u)]_+
enum class RateVariant {
    squared_gain,
    linear_gain,
};

std::string to_string(RateVariant v);
RateVariant parse_rate_variant(const std::string& s);

template <typename Real>
struct QrFactors {
    CMatrix<Real> q; // rows x U, orthonormal columns
    CMatrix<Real> r; // U x U upper triangular, real positive diagonal

    RVector<Real> diagonal() const { return r.diagonal().real(); }
};

// Thin QR A = Q R with diag(R) real and strictly positive. Column phases of the
// Householder Q are rotated so that each R(u, u) lands on the positive real
// axis. Throws DegenerateSelection when A is numerically rank deficient.
template <typename Derived>
QrFactors<typename Eigen::NumTraits<typename Derived::Scalar>::Real>
qr_positive_diag(const Eigen::MatrixBase<Derived>& a)
{
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    using Matrix = CMatrix<Real>;
    const Index rows = a.rows();
    const Index cols = a.cols();
    if (rows == 0 || cols == 0)
        throw InvalidInput("qr_positive_diag: empty matrix");
    if (rows < cols)
        throw DegenerateSelection("qr_positive_diag: " + std::to_string(rows) + "x" +
                                  std::to_string(cols) + " matrix cannot have full column rank");

    Eigen::HouseholderQR<Matrix> qr(a.template cast<std::complex<Real>>());
    QrFactors<Real> f;
    f.q = qr.householderQ() * Matrix::Identity(rows, cols);
    f.r = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();

    // Singular values of A equal those of R.
    const RVector<Real> sv = Eigen::JacobiSVD<Matrix>(f.r).singularValues();
    if (!(sv(0) > Real(0)) || sv(cols - 1) < Tolerances<Real>::rank * sv(0))
        throw DegenerateSelection("qr_positive_diag: selection is rank deficient");

    for (Index u = 0; u < cols; ++u) {
        const std::complex<Real> d = f.r(u, u);
        const std::complex<Real> phase = d / std::abs(d);
        f.r.row(u) *= std::conj(phase);
        f.q.col(u) *= phase;
        f.r(u, u) = std::abs(d);
    }
    return f;
}

// P = Q (R^H)^{-1} D with D = diag(r_u). The effective channel A^H P is then
// diag(r_u).
template <typename Real>
CMatrix<Real> dpc_precoder(const QrFactors<Real>& f)
{
    const RVector<Real> d = f.diagonal();
    if (d.size() == 0 || !(d.minCoeff() > Real(0)))
        throw DegenerateSelection("dpc_precoder: R has a non-positive diagonal entry");
    const CMatrix<Real> dm = d.template cast<std::complex<Real>>().asDiagonal();
    return f.q * f.r.adjoint().template triangularView<Eigen::Lower>().solve(dm);
}

template <typename Real>
struct PowerAllocation {
    RVector<Real> lambdas;
    Real beta = 0;
    IndexList active_set;
};

// Water-filling maximizing sum_u log2(1 + g_u lambda_u) subject to
// sum_u lambda_u = P, lambda_u >= 0. Exact sort-and-drop: users are sorted
// by decreasing gain and the weakest is dropped while its level would be
// negative.
template <typename Derived>
PowerAllocation<typename Derived::Scalar> water_fill(const Eigen::MatrixBase<Derived>& gains,
                                                     typename Derived::Scalar total_power)
{
    using Real = typename Derived::Scalar;
    const Index n = gains.size();
    if (n == 0)
        throw InvalidInput("water_fill: no gains");
    if (!(total_power > Real(0)) || !std::isfinite(total_power))
        throw InvalidInput("water_fill: total power must be positive and finite");
    for (Index i = 0; i < n; ++i)
        if (!(gains(i) > Real(0)) || !std::isfinite(gains(i)))
            throw InvalidInput("water_fill: gains must be positive and finite");

    IndexList order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index x, Index y) { return gains(x) > gains(y); });

    Real inverse_sum = 0;
    for (Index i : order)
        inverse_sum += Real(1) / gains(i);

    Index active = n;
    Real beta = (total_power + inverse_sum) / static_cast<Real>(active);
    while (active > 1 && !(beta > Real(1) / gains(order[active - 1]))) {
        inverse_sum -= Real(1) / gains(order[active - 1]);
        --active;
        beta = (total_power + inverse_sum) / static_cast<Real>(active);
    }

    PowerAllocation<Real> out;
    out.beta = beta;
    out.lambdas = RVector<Real>::Zero(n);
    for (Index k = 0; k < active; ++k)
        out.lambdas(order[k]) = beta - Real(1) / gains(order[k]);
    out.active_set.assign(order.begin(), order.begin() + active);
    std::sort(out.active_set.begin(), out.active_set.end());
    return out;
}

template <typename Real>
struct RateReport {
    Real sum_rate = 0; // bits/s/Hz
    RVector<Real> per_user_rates;
    RVector<Real> gains;
    PowerAllocation<Real> allocation;

    bool all_active() const { return allocation.active_set.size() == static_cast<std::size_t>(gains.size()); }
};

// Rate of a precomputed set of DPC diagonal entries r_u (noise power 1).
template <typename Real>
RateReport<Real> rate_from_diagonal(const RVector<Real>& r, Real power,
                                    RateVariant variant = RateVariant::squared_gain)
{
    RateReport<Real> rep;
    rep.gains = variant == RateVariant::squared_gain ? RVector<Real>(r.array().square()) : r;
    rep.allocation = water_fill(rep.gains, power);
    rep.per_user_rates =
        (Real(1) + rep.gains.array() * rep.allocation.lambdas.array()).log() / std::log(Real(2));
    rep.sum_rate = rep.per_user_rates.sum();
    return rep;
}

template <typename Real>
void check_selection(const CMatrix<Real>& h, const IndexList& users, const IndexList& beams)
{
    if (users.empty() || beams.empty())
        throw InvalidInput("dpc_sum_rate: empty user or beam selection");
    if (users.size() > beams.size())
        throw DegenerateSelection("dpc_sum_rate: more users than beams");
    for (Index u : users)
        if (u < 0 || u >= h.rows())
            throw InvalidInput("dpc_sum_rate: user index " + std::to_string(u) + " out of range");
    for (Index b : beams)
        if (b < 0 || b >= h.cols())
            throw InvalidInput("dpc_sum_rate: beam index " + std::to_string(b) + " out of range");
}

// DPC sum rate of users (in encoding order) served on beams, at transmit
// power P with unit noise power, so P is the SNR.
template <typename Real>
RateReport<Real> dpc_sum_rate(const CMatrix<Real>& h, const IndexList& users, const IndexList& beams,
                              Real power, RateVariant variant = RateVariant::squared_gain)
{
    check_selection(h, users, beams);
    const CMatrix<Real> a = h(users, beams).adjoint();
    return rate_from_diagonal(qr_positive_diag(a).diagonal(), power, variant);
}

// log2 det(I + rho H Rxx H^H); the rate of Gaussian signalling with input
// covariance Rxx when the receivers cooperate.
template <typename Real>
Real det_sum_rate(const CMatrix<Real>& h, const CMatrix<Real>& rxx, Real rho)
{
    if (rxx.rows() != rxx.cols() || rxx.rows() != h.cols())
        throw InvalidDimension("det_sum_rate: Rxx must be B x B");
    const Real scale = std::max(Real(1), rxx.cwiseAbs().maxCoeff());
    if (!(rxx - rxx.adjoint()).isZero(Real(1e-12) * scale))
        throw InvalidInput("det_sum_rate: Rxx is not Hermitian");
    const RVector<Real> eig = Eigen::SelfAdjointEigenSolver<CMatrix<Real>>(rxx, Eigen::EigenvaluesOnly).eigenvalues();
    if (eig.size() > 0 && eig.minCoeff() < -Real(1e-12) * scale)
        throw InvalidInput("det_sum_rate: Rxx is not positive semidefinite");
    if (rxx.trace().real() > Real(1) + Real(1e-12))
        throw InvalidInput("det_sum_rate: trace(Rxx) exceeds 1");

    const Index u = h.rows();
    const CMatrix<Real> m = CMatrix<Real>::Identity(u, u) + rho * h * rxx * h.adjoint();
    Eigen::LLT<CMatrix<Real>> llt(m);
    if (llt.info() != Eigen::Success)
        throw InvalidInput("det_sum_rate: I + rho H Rxx H^H is not positive definite");
    const CMatrix<Real>& l = llt.matrixLLT();
    Real logdet = 0;
    for (Index i = 0; i < u; ++i)
        logdet += std::log(l(i, i).real());
    return Real(2) * logdet / std::log(Real(2));
}

// det(G G^H) for a U x B matrix G.
template <typename Real>
Real gram_determinant(const CMatrix<Real>& g)
{
    return (g * g.adjoint()).partialPivLu().determinant().real();
}

} // namespace beamselect

#endif // BEAMSELECT_DPC_RATE_HPP
