// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#pragma once

#include <span>
#include <vector>

#include "risadmm/signal_model.hpp"
#include "risadmm/types.hpp"

namespace risadmm {

/// Uniform angle grid in degrees, endpoints inclusive.
struct AngleGrid {
  double start_deg = -90.0;
  double stop_deg = 90.0;
  double step_deg = 0.05;

  Index size() const;
  double angle(Index i) const { return start_deg + step_deg * i; }
};

/// A pseudospectrum over a grid plus the picked peak directions, ordered by
/// descending peak height. `flagged` is set when the method could not fully
/// deliver: fewer local maxima than requested, a degenerate (flat or empty)
/// spectrum, or solver-specific trouble noted by the producing method.
struct SpectrumResult {
  AngleGrid grid;
  RealVector values;
  std::vector<double> peaks_deg;
  bool flagged = false;
};

/// Peak picking shared by every spectrum producer: strict local maxima,
/// a minimum spacing of min_distance grid steps, ties broken by height then
/// by smaller angle. With refine, a parabola through the peak and its two
/// neighbours shifts the estimate off-grid (on the reciprocal of the values
/// when refine_reciprocal is set, which suits sharp subspace nulls).
struct PeakPickOptions {
  int max_peaks = 1;
  Index min_distance = 2;
  bool refine = true;
  bool refine_reciprocal = false;
};

std::vector<double> pick_peaks(const AngleGrid& grid, const RealVector& values,
                               const PeakPickOptions& options);

/// H(i, j) = x[i + j], with l rows and len(x) - l + 1 columns.
ComplexMatrix hankel_matrix(const ComplexVector& x, Index l);

/// Single-snapshot subspace DOA estimation: Hankel lift with
/// L = floor(M/2) + 1 rows, SVD, and the noise-subspace pseudospectrum
/// 1 / ||E_n^H a_L(theta)||^2 evaluated over the grid. Needs M >= 2K.
SpectrumResult music_doas(const ComplexVector& x, int num_targets,
                          const AngleGrid& grid,
                          const ArrayGeometry& geometry);

/// Minimum-cost one-to-one assignment between estimates and truth, cost
/// being the absolute angular error. Exhaustive permutation search up to
/// 6 targets, Hungarian algorithm beyond. entry j is the estimate index
/// matched to truth j, or -1 where a missing estimate was padded with the
/// worst-case 90-degree error.
std::vector<int> match_assignment(std::span<const double> estimates_deg,
                                  std::span<const double> truth_deg);

/// Sum of squared angular errors under match_assignment (padded slots
/// contribute 90 degrees each).
double match_squared_error_sum(std::span<const double> estimates_deg,
                               std::span<const double> truth_deg);

/// sqrt of the mean matched squared error over the truth list.
double match_rmse(std::span<const double> estimates_deg,
                  std::span<const double> truth_deg);

}  // namespace risadmm
