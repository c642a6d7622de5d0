// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#include "risadmm/numerics.hpp"

#include <stdexcept>
#include <string>

#include "risadmm/errors.hpp"

namespace risadmm {

ComplexMatrix toeplitz_hermitian(const ComplexVector& u) {
  const Index m = u.size();
  if (m == 0) {
    throw DimensionError("toeplitz_hermitian: empty generator vector");
  }
  ComplexVector gen = u;
  gen[0] = Complex(gen[0].real(), 0.0);
  ComplexMatrix t(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j <= i; ++j) {
      t(i, j) = gen[i - j];
      t(j, i) = std::conj(gen[i - j]);
    }
  }
  return t;
}

Complex offset_trace(const ComplexMatrix& a, Index m) {
  if (a.rows() != a.cols()) {
    throw DimensionError("offset_trace: matrix must be square");
  }
  if (m < 0 || m >= a.rows()) {
    throw std::out_of_range("offset_trace: diagonal offset " +
                            std::to_string(m) + " out of range");
  }
  Complex sum{0.0, 0.0};
  for (Index n = 0; n + m < a.rows(); ++n) {
    sum += a(n + m, n);
  }
  return sum;
}

EigResult hermitian_eig(const ComplexMatrix& a, bool hermitize) {
  if (a.rows() != a.cols()) {
    throw DimensionError("hermitian_eig: matrix must be square");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver;
  if (hermitize) {
    solver.compute(ComplexMatrix(0.5 * (a + a.adjoint())));
  } else {
    solver.compute(a);
  }
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eig: QR iteration did not converge");
  }
  // Eigen sorts ascending; flip to descending.
  EigResult result;
  result.eigenvalues = solver.eigenvalues().reverse();
  result.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return result;
}

ComplexMatrix project_psd(const ComplexMatrix& a) {
  const EigResult eig = hermitian_eig(a, /*hermitize=*/true);
  const RealVector clamped = eig.eigenvalues.cwiseMax(0.0);
  return eig.eigenvectors * clamped.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix regularized_gram_inverse(const ComplexMatrix& g, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("regularized_gram_inverse: tau must be > 0");
  }
  const Index m = g.cols();
  ComplexMatrix gram = tau * (g.adjoint() * g);
  gram += 2.0 * tau * ComplexMatrix::Identity(m, m);
  const Eigen::LLT<ComplexMatrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("regularized_gram_inverse: Cholesky failed");
  }
  return llt.solve(ComplexMatrix::Identity(m, m));
}

}  // namespace risadmm
