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

#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace ssvsp {

using cdouble = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thin SVD bundle with a full right basis.
///
/// `V` is always cols(A) x cols(A): projector construction needs the
/// complement of the row space, not just the p = min(rows, cols) leading
/// right vectors. `S` has p entries in non-increasing order and `q` counts
/// the entries strictly above the rank tolerance.
struct SvdResult {
    ComplexMatrix U;
    RealVector S;
    ComplexMatrix V;
    int q = 0;
};

/// Default numerical-rank cutoff: 1e-10 * S[0] * max(rows, cols).
double default_rank_tol(const RealVector& S, Eigen::Index rows, Eigen::Index cols);

/// Full SVD. A negative `rank_tol` selects default_rank_tol(). Throws
/// NumericalError on non-finite input or if the decomposition cannot
/// meet the reconstruction contract.
SvdResult svd(const ComplexMatrix& A, double rank_tol = -1.0);

/// Solves (A + epsilon*I) X = B for Hermitian PSD-plus-regularizer A.
/// Throws NumericalError when A is not Hermitian (1e-10 relative) or the
/// regularized system is numerically indefinite; the message carries the
/// smallest pivot of the LDL^H factorization.
ComplexMatrix solve_hermitian(const ComplexMatrix& A, const ComplexMatrix& B, double epsilon = 0.0);

double spectral_norm(const ComplexMatrix& A);

/// Frobenius norm of A - A^H.
double hermitian_defect(const ComplexMatrix& A);

bool all_finite(const ComplexMatrix& A);

} // namespace ssvsp
