// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#pragma once

#include "risadmm/types.hpp"

namespace risadmm {

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending,
/// eigenvector columns unit-norm in matching order.
struct EigResult {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Hermitian Toeplitz matrix with u as its first column. The imaginary part
/// of u[0] is dropped so the diagonal is real and Tr{Toep(u)} = M * u[0].
ComplexMatrix toeplitz_hermitian(const ComplexVector& u);

/// Tr(A, m) = sum_n A(n + m, n): the sum of the m-th sub-diagonal.
/// m = 0 gives the ordinary trace.
Complex offset_trace(const ComplexMatrix& a, Index m);

/// Dense Hermitian eigensolver. With hermitize (the default) the input is
/// replaced by (A + A^H)/2 first, which absorbs round-off drift in matrices
/// that are Hermitian by construction.
EigResult hermitian_eig(const ComplexMatrix& a, bool hermitize = true);

/// Nearest positive semidefinite matrix in Frobenius norm: eigendecompose
/// the Hermitized input and clamp negative eigenvalues to zero.
ComplexMatrix project_psd(const ComplexMatrix& a);

/// (tau G^H G + 2 tau I)^{-1} via Cholesky of the Hermitian positive
/// definite matrix. The explicit inverse is returned because the solver
/// applies it every iteration.
ComplexMatrix regularized_gram_inverse(const ComplexMatrix& g, double tau);

}  // namespace risadmm
