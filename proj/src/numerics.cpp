// SPDX-License-Identifier: Apache-2.0
//
// ssvsp - precoding library for radar/cellular spectrum coexistence
// Copyright (C) 2026 The ssvsp authors
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

#include "ssvsp/numerics.hpp"

#include "ssvsp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssvsp {

double default_rank_tol(const RealVector& S, Eigen::Index rows, Eigen::Index cols)
{
    if (S.size() == 0)
        return 0.0;
    return 1e-10 * S(0) * static_cast<double>(std::max(rows, cols));
}

bool all_finite(const ComplexMatrix& A)
{
    return A.allFinite();
}

double hermitian_defect(const ComplexMatrix& A)
{
    return (A - A.adjoint()).norm();
}

SvdResult svd(const ComplexMatrix& A, double rank_tol)
{
    if (!all_finite(A))
        throw NumericalError("svd: input contains NaN or Inf");

    SvdResult out;
    const Eigen::Index n = A.cols();
    if (A.rows() == 0 || n == 0) {
        out.U = ComplexMatrix::Identity(A.rows(), A.rows());
        out.S = RealVector::Zero(0);
        out.V = ComplexMatrix::Identity(n, n);
        return out;
    }

    // Two-sided Jacobi: slow for large matrices but accurate to working
    // precision on the small blocks this library sees.
    Eigen::JacobiSVD<ComplexMatrix> dec(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.info() != Eigen::Success)
        throw NumericalError("svd: Jacobi iteration did not converge");

    out.U = dec.matrixU();
    out.S = dec.singularValues();
    out.V = dec.matrixV();

    const double tol = rank_tol < 0.0 ? default_rank_tol(out.S, A.rows(), A.cols()) : rank_tol;
    out.q = static_cast<int>((out.S.array() > tol).count());

    const Eigen::Index p = out.S.size();
    const ComplexMatrix recon = out.U.leftCols(p) * out.S.cast<cdouble>().asDiagonal() * out.V.leftCols(p).adjoint();
    const double err = (A - recon).norm();
    if (err > 1e-10 * std::max(1.0, A.norm())) {
        std::ostringstream os;
        os << "svd: reconstruction error " << err << " exceeds contract";
        throw NumericalError(os.str());
    }
    return out;
}

ComplexMatrix solve_hermitian(const ComplexMatrix& A, const ComplexMatrix& B, double epsilon)
{
    if (A.rows() != A.cols() || A.rows() != B.rows())
        throw NumericalError("solve_hermitian: dimension mismatch");
    if (!all_finite(A) || !all_finite(B))
        throw NumericalError("solve_hermitian: non-finite input");
    if (A.rows() == 0)
        return ComplexMatrix::Zero(0, B.cols());
    if (hermitian_defect(A) > 1e-10 * std::max(1.0, A.norm()))
        throw NumericalError("solve_hermitian: matrix is not Hermitian");

    ComplexMatrix sys = 0.5 * (A + A.adjoint());
    sys.diagonal().array() += epsilon;

    Eigen::LLT<ComplexMatrix> llt(sys);
    if (llt.info() == Eigen::Success) {
        ComplexMatrix X = llt.solve(B);
        // One refinement step keeps the residual contract on mildly
        // ill-conditioned systems.
        X += llt.solve(B - sys * X);
        if (X.allFinite())
            return X;
    }

    Eigen::LDLT<ComplexMatrix> ldlt(sys);
    const double min_pivot = ldlt.vectorD().real().minCoeff();
    std::ostringstream os;
    os << "solve_hermitian: system is numerically indefinite (smallest pivot " << min_pivot << ")";
    throw NumericalError(os.str());
}

double spectral_norm(const ComplexMatrix& A)
{
    if (A.size() == 0)
        return 0.0;
    if (!all_finite(A))
        throw NumericalError("spectral_norm: input contains NaN or Inf");
    Eigen::JacobiSVD<ComplexMatrix> dec(A);
    return dec.singularValues()(0);
}

} // namespace ssvsp
