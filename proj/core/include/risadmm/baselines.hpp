// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#pragma once

#include <vector>

#include "risadmm/signal_model.hpp"
#include "risadmm/spectrum.hpp"
#include "risadmm/types.hpp"

namespace risadmm {

/// On-grid steering dictionary: column g is a(theta_g).
struct Dictionary {
  AngleGrid grid;
  ComplexMatrix atoms;  // M x grid.size()
};

Dictionary make_dictionary(const AngleGrid& grid,
                           const ArrayGeometry& geometry);

struct InterferenceRemoval {
  ComplexVector r_clean;
  Complex q_hat{0.0, 0.0};
};

/// Least-squares interference estimate q_hat = c^H r / ||c||^2 and the
/// residual r - c q_hat (the projection of r off span{c}).
InterferenceRemoval remove_interference_ls(const ComplexVector& r,
                                           const ComplexVector& c);

/// Matched-filter (spatial Fourier) spectrum |(G a(theta_g))^H r_clean|^2
/// after interference removal. Peaks are parabola-refined.
SpectrumResult fft_doa(const ComplexVector& r, const ComplexMatrix& g,
                       const ComplexVector& c, const Dictionary& dictionary,
                       int num_targets);

/// Orthogonal matching pursuit over the measured dictionary G a(theta_g)
/// after interference removal: K greedy selections with a least-squares
/// refit each round. Returns the selected grid angles (no refinement).
SpectrumResult omp_doa(const ComplexVector& r, const ComplexMatrix& g,
                       const ComplexVector& c, const Dictionary& dictionary,
                       int num_targets);

struct L1Options {
  double rho = 1.0;       // l1 weight
  int max_iters = 500;
  double stall_tol = 1e-10;  // relative objective decrease considered "done"
  // When set, receives the objective value before iterating and after every
  // iteration (max_iters + 1 entries).
  std::vector<double>* objective_trace = nullptr;
};

/// On-grid sparse fit min_{alpha, q} ||r - G D alpha - c q||^2 + rho
/// ||alpha||_1 by proximal gradient on alpha (step 1/L, L the largest
/// eigenvalue of the interference-projected Gram) with the exact
/// least-squares q eliminated. Spectrum is |alpha|; peaks stay on the grid.
SpectrumResult l1_doa(const ComplexVector& r, const ComplexMatrix& g,
                      const ComplexVector& c, const Dictionary& dictionary,
                      int num_targets, const L1Options& options);

}  // namespace risadmm
