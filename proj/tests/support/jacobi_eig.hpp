// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

// Test-only cyclic Jacobi eigensolver for Hermitian matrices. Kept separate
// from the library on purpose: oracle recomputations in the tests must not
// share the implementation path they are checking.

#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace risadmm::testing {

struct JacobiEig {
  Eigen::VectorXd eigenvalues;   // descending
  Eigen::MatrixXcd eigenvectors; // columns match the eigenvalue order
};

inline JacobiEig jacobi_hermitian_eig(Eigen::MatrixXcd a,
                                      int max_sweeps = 100,
                                      double tol = 1e-14) {
  using Complex = std::complex<double>;
  const Eigen::Index n = a.rows();
  a = 0.5 * (a + a.adjoint()).eval();
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
  const double scale = std::max(a.norm(), 1.0);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        off += std::norm(a(p, q));
      }
    }
    if (std::sqrt(off) <= tol * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex gamma = a(p, q);
        if (std::abs(gamma) == 0.0) continue;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double phi = std::arg(gamma);
        const double theta =
            0.5 * std::atan2(2.0 * std::abs(gamma), alpha - beta);
        const double c = std::cos(theta);
        const Complex s =
            std::sin(theta) * Complex(std::cos(phi), -std::sin(phi));

        // A <- J^H A J with J = I except J(p,p)=J(q,q)=c, J(q,p)=s,
        // J(p,q)=-conj(s).
        for (Eigen::Index i = 0; i < n; ++i) {
          const Complex aip = a(i, p);
          const Complex aiq = a(i, q);
          a(i, p) = aip * c + aiq * s;
          a(i, q) = -aip * std::conj(s) + aiq * c;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
          const Complex apj = a(p, j);
          const Complex aqj = a(q, j);
          a(p, j) = c * apj + std::conj(s) * aqj;
          a(q, j) = -s * apj + c * aqj;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const Complex vip = v(i, p);
          const Complex viq = v(i, q);
          v(i, p) = vip * c + viq * s;
          v(i, q) = -vip * std::conj(s) + viq * c;
        }
      }
    }
  }

  JacobiEig result;
  result.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    result.eigenvalues[i] = a(i, i).real();
  }
  result.eigenvectors = v;
  // Selection sort into descending order, swapping vector columns along.
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = i;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (result.eigenvalues[j] > result.eigenvalues[best]) best = j;
    }
    if (best != i) {
      std::swap(result.eigenvalues[i], result.eigenvalues[best]);
      result.eigenvectors.col(i).swap(result.eigenvectors.col(best));
    }
  }
  return result;
}

/// Independent PSD projection: Jacobi eigendecomposition plus eigenvalue
/// clamp.
inline Eigen::MatrixXcd jacobi_project_psd(const Eigen::MatrixXcd& a) {
  const JacobiEig eig = jacobi_hermitian_eig(a);
  Eigen::VectorXd clamped = eig.eigenvalues.cwiseMax(0.0);
  return eig.eigenvectors * clamped.asDiagonal() *
         eig.eigenvectors.adjoint();
}

}  // namespace risadmm::testing
