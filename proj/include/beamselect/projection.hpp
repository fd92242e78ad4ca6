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

#ifndef BEAMSELECT_PROJECTION_HPP
#define BEAMSELECT_PROJECTION_HPP

#include "beamselect/types.hpp"

#include <Eigen/Cholesky>

#include <algorithm>

namespace beamselect {

// Null-space projector of a set of basis rows B (m x d), kept in factored
// form: N = I - B^H (B B^H)^{-1} B. The Gram matrix is factored once with a
// Cholesky decomposition; projected powers are evaluated without forming N.
template <typename Real>
class ProjectorContext {
public:
    using Matrix = CMatrix<Real>;

    ProjectorContext() = default;

    explicit ProjectorContext(Matrix basis_rows) : basis_(std::move(basis_rows))
    {
        factor(basis_ * basis_.adjoint());
    }

    // Gram matrix supplied by the caller, e.g. after a rank-one update.
    ProjectorContext(Matrix basis_rows, const Matrix& gram) : basis_(std::move(basis_rows))
    {
        factor(gram);
    }

    Index dimension() const { return basis_.cols(); }
    Index rank() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }

    Matrix gram_inverse() const
    {
        return llt_.solve(Matrix::Identity(rank(), rank()));
    }

    // ||x N||^2 = ||x||^2 - (x B^H) G^{-1} (B x^H), clamped at zero.
    template <typename Derived>
    Real projected_power(const Eigen::MatrixBase<Derived>& x) const
    {
        const Real total = x.squaredNorm();
        if (rank() == 0)
            return total;
        const CVector<Real> c = basis_ * x.adjoint();
        return std::max(Real(0), total - c.dot(llt_.solve(c)).real());
    }

    // The explicit d x d projector.
    Matrix projector() const
    {
        Matrix n = Matrix::Identity(dimension(), dimension());
        if (rank() > 0)
            n -= basis_.adjoint() * llt_.solve(basis_);
        return n;
    }

private:
    void factor(const Matrix& gram)
    {
        if (basis_.rows() > basis_.cols())
            throw DegenerateSelection("projector: more basis rows than dimensions");
        if (basis_.rows() == 0)
            return;
        llt_.compute(gram);
        if (llt_.info() != Eigen::Success)
            throw DegenerateSelection("projector: Gram matrix is not positive definite");
        // diag(L) are the diagonal entries of the R factor of B^H.
        const auto d = llt_.matrixLLT().diagonal().real();
        if (!(d.minCoeff() > Tolerances<Real>::rank * d.maxCoeff()))
            throw DegenerateSelection("projector: basis rows are rank deficient");
    }

    Matrix basis_;
    Eigen::LLT<Matrix> llt_;
};

// I - B^H (B B^H)^{-1} B for basis rows B.
template <typename Derived>
CMatrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real>
null_projector(const Eigen::MatrixBase<Derived>& rows)
{
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    return ProjectorContext<Real>(rows).projector();
}

// Quadratic form x N x^H, i.e. the squared norm of x projected by N.
template <typename DerivedX, typename DerivedN>
typename Eigen::NumTraits<typename DerivedX::Scalar>::Real
projection_power(const Eigen::MatrixBase<DerivedX>& candidate,
                 const Eigen::MatrixBase<DerivedN>& projector)
{
    using Real = typename Eigen::NumTraits<typename DerivedX::Scalar>::Real;
    if (candidate.size() != projector.rows() || projector.rows() != projector.cols())
        throw InvalidDimension("projection_power: dimension mismatch");
    const CRowVector<Real> x = candidate.reshaped().transpose();
    return std::max(Real(0), (x * projector * x.adjoint())(0, 0).real());
}

} // namespace beamselect

#endif // BEAMSELECT_PROJECTION_HPP
