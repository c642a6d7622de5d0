// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#include "risadmm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/SVD>

#include "risadmm/errors.hpp"

namespace risadmm {

Index AngleGrid::size() const {
  if (!(start_deg < stop_deg) || !(step_deg > 0.0)) {
    throw std::invalid_argument("angle grid: need start < stop and step > 0");
  }
  const double span = (stop_deg - start_deg) / step_deg;
  return static_cast<Index>(std::floor(span * (1.0 + 1e-12))) + 1;
}

std::vector<double> pick_peaks(const AngleGrid& grid, const RealVector& values,
                               const PeakPickOptions& options) {
  if (values.size() != grid.size()) {
    throw DimensionError("pick_peaks: values do not match the grid");
  }
  if (options.max_peaks < 1) {
    throw std::invalid_argument("pick_peaks: max_peaks must be >= 1");
  }
  // Strict rise into the peak, non-strict fall out, so the left edge of a
  // flat-topped peak wins and a constant spectrum yields no peaks.
  std::vector<Index> candidates;
  for (Index i = 1; i + 1 < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) {
      candidates.push_back(i);
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](Index a, Index b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  std::vector<Index> kept;
  for (Index i : candidates) {
    if (static_cast<int>(kept.size()) == options.max_peaks) break;
    const bool clear = std::all_of(kept.begin(), kept.end(), [&](Index j) {
      return std::abs(i - j) >= options.min_distance;
    });
    if (clear) kept.push_back(i);
  }

  std::vector<double> peaks;
  peaks.reserve(kept.size());
  for (Index i : kept) {
    double theta = grid.angle(i);
    if (options.refine) {
      auto transform = [&](Index j) {
        const double v = values[j];
        if (!options.refine_reciprocal) return v;
        return 1.0 / std::max(v, std::numeric_limits<double>::min());
      };
      // Parabola through the three samples around the extremum.
      const double vm = transform(i - 1);
      const double v0 = transform(i);
      const double vp = transform(i + 1);
      const double curvature = vm - 2.0 * v0 + vp;
      // Maximum of values ~ minimum of the reciprocal; the vertex offset
      // formula is the same for both.
      if (curvature != 0.0) {
        const double delta =
            std::clamp(0.5 * (vm - vp) / curvature, -0.5, 0.5);
        theta += delta * grid.step_deg;
      }
    }
    peaks.push_back(theta);
  }
  return peaks;
}

ComplexMatrix hankel_matrix(const ComplexVector& x, Index l) {
  const Index m = x.size();
  if (l < 1 || l > m) {
    throw DimensionError("hankel_matrix: need 1 <= L <= len(x)");
  }
  ComplexMatrix h(l, m - l + 1);
  for (Index i = 0; i < l; ++i) {
    for (Index j = 0; j < h.cols(); ++j) {
      h(i, j) = x[i + j];
    }
  }
  return h;
}

SpectrumResult music_doas(const ComplexVector& x, int num_targets,
                          const AngleGrid& grid,
                          const ArrayGeometry& geometry) {
  if (num_targets < 1) {
    throw std::invalid_argument("music_doas: need at least one target");
  }
  const Index m = x.size();
  if (m != geometry.num_elements) {
    throw DimensionError("music_doas: x length does not match the geometry");
  }
  if (m < 2 * num_targets) {
    throw DimensionError(
        "music_doas: need M >= 2K for a nonempty noise subspace");
  }

  // The pseudospectrum only depends on the column space of the Hankel lift,
  // so normalize for scale invariance and conditioning.
  ComplexVector xn = x;
  const double norm = xn.norm();
  if (norm > 0.0) xn /= norm;

  const Index l = m / 2 + 1;
  const ComplexMatrix h = hankel_matrix(xn, l);
  Eigen::JacobiSVD<ComplexMatrix> svd(h, Eigen::ComputeFullU);
  const ComplexMatrix noise_basis = svd.matrixU().rightCols(l - num_targets);

  SpectrumResult result;
  result.grid = grid;
  const Index n_grid = grid.size();
  result.values.resize(n_grid);
  const ArrayGeometry sub_geometry{l, geometry.spacing};
  for (Index i = 0; i < n_grid; ++i) {
    const ComplexVector a = steering_vector(grid.angle(i), sub_geometry);
    const double denom = (noise_basis.adjoint() * a).squaredNorm();
    result.values[i] =
        1.0 / std::max(denom, std::numeric_limits<double>::min());
  }

  PeakPickOptions options;
  options.max_peaks = num_targets;
  options.min_distance = 2;
  options.refine = true;
  options.refine_reciprocal = true;
  result.peaks_deg = pick_peaks(grid, result.values, options);
  result.flagged = static_cast<int>(result.peaks_deg.size()) < num_targets;
  return result;
}

namespace {

/// Minimum-cost assignment (Hungarian algorithm with potentials, O(n^3)).
/// cost is square, row = estimate, col = truth slot.
std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = std::numeric_limits<double>::infinity();
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_of_col(n);
  for (int j = 1; j <= n; ++j) row_of_col[j - 1] = p[j] - 1;
  return row_of_col;
}

}  // namespace

std::vector<int> match_assignment(std::span<const double> estimates_deg,
                                  std::span<const double> truth_deg) {
  if (truth_deg.empty()) {
    throw std::invalid_argument("match: empty truth list");
  }
  const int k = static_cast<int>(truth_deg.size());
  const int n_est = static_cast<int>(estimates_deg.size());
  constexpr double kWorstCaseErr = 90.0;

  // Square cost matrix; missing estimates become worst-case rows.
  Eigen::MatrixXd cost(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      cost(i, j) = i < n_est ? std::abs(estimates_deg[i] - truth_deg[j])
                             : kWorstCaseErr;
    }
  }

  std::vector<int> match(k);
  if (k <= 6) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double total = 0.0;
      for (int j = 0; j < k; ++j) total += cost(perm[j], j);
      if (total < best) {
        best = total;
        match = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    match = hungarian(cost);
  }

  for (auto& idx : match) {
    if (idx >= n_est) idx = -1;  // padded slot
  }
  return match;
}

double match_squared_error_sum(std::span<const double> estimates_deg,
                               std::span<const double> truth_deg) {
  const std::vector<int> match = match_assignment(estimates_deg, truth_deg);
  constexpr double kWorstCaseErr = 90.0;
  double sum_sq = 0.0;
  for (std::size_t j = 0; j < truth_deg.size(); ++j) {
    const double err = match[j] >= 0
                           ? std::abs(estimates_deg[match[j]] - truth_deg[j])
                           : kWorstCaseErr;
    sum_sq += err * err;
  }
  return sum_sq;
}

double match_rmse(std::span<const double> estimates_deg,
                  std::span<const double> truth_deg) {
  return std::sqrt(match_squared_error_sum(estimates_deg, truth_deg) /
                   static_cast<double>(truth_deg.size()));
}

}  // namespace risadmm
