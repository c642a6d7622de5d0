// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#include "risadmm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>

#include "risadmm/errors.hpp"

namespace risadmm {

Dictionary make_dictionary(const AngleGrid& grid,
                           const ArrayGeometry& geometry) {
  Dictionary d;
  d.grid = grid;
  const Index n_grid = grid.size();
  d.atoms.resize(geometry.num_elements, n_grid);
  for (Index i = 0; i < n_grid; ++i) {
    d.atoms.col(i) = steering_vector(grid.angle(i), geometry);
  }
  return d;
}

InterferenceRemoval remove_interference_ls(const ComplexVector& r,
                                           const ComplexVector& c) {
  if (r.size() != c.size()) {
    throw DimensionError("remove_interference_ls: r and c lengths differ");
  }
  const double c_norm2 = c.squaredNorm();
  if (!(c_norm2 > 0.0)) {
    throw std::invalid_argument("remove_interference_ls: c is zero");
  }
  InterferenceRemoval out;
  out.q_hat = c.dot(r) / c_norm2;
  out.r_clean = r - c * out.q_hat;
  return out;
}

namespace {

void check_baseline_dims(const ComplexVector& r, const ComplexMatrix& g,
                         const ComplexVector& c, const Dictionary& dict) {
  if (g.rows() != r.size() || g.rows() != c.size()) {
    throw DimensionError("baseline: r, G, c dimensions disagree");
  }
  if (dict.atoms.rows() != g.cols()) {
    throw DimensionError("baseline: dictionary does not match G");
  }
}

}  // namespace

SpectrumResult fft_doa(const ComplexVector& r, const ComplexMatrix& g,
                       const ComplexVector& c, const Dictionary& dictionary,
                       int num_targets) {
  check_baseline_dims(r, g, c, dictionary);
  const InterferenceRemoval removed = remove_interference_ls(r, c);

  SpectrumResult result;
  result.grid = dictionary.grid;
  // Next to nothing left after projection: report a flat spectrum rather
  // than peaks of numerical dust.
  if (removed.r_clean.norm() <= 1e-12 * r.norm()) {
    result.values = RealVector::Zero(dictionary.grid.size());
    result.flagged = true;
    return result;
  }
  const ComplexVector correlations =
      (g * dictionary.atoms).adjoint() * removed.r_clean;
  result.values = correlations.cwiseAbs2();

  PeakPickOptions options;
  options.max_peaks = num_targets;
  options.min_distance = 2;
  options.refine = true;
  result.peaks_deg = pick_peaks(dictionary.grid, result.values, options);
  result.flagged = static_cast<int>(result.peaks_deg.size()) < num_targets;
  return result;
}

SpectrumResult omp_doa(const ComplexVector& r, const ComplexMatrix& g,
                       const ComplexVector& c, const Dictionary& dictionary,
                       int num_targets) {
  check_baseline_dims(r, g, c, dictionary);
  const Index n_grid = dictionary.grid.size();
  if (num_targets < 1 || num_targets > static_cast<int>(n_grid)) {
    throw std::invalid_argument("omp_doa: bad target count");
  }
  const InterferenceRemoval removed = remove_interference_ls(r, c);

  SpectrumResult result;
  result.grid = dictionary.grid;
  result.values = RealVector::Zero(n_grid);
  if (removed.r_clean.norm() <= 1e-12 * r.norm()) {
    result.flagged = true;
    return result;
  }

  const ComplexMatrix measured = g * dictionary.atoms;  // N x n_grid
  const RealVector atom_norms =
      measured.colwise().norm().transpose().cwiseMax(
          std::numeric_limits<double>::min());

  std::vector<Index> selected;
  std::vector<char> excluded(static_cast<std::size_t>(n_grid), 0);
  ComplexVector residual = removed.r_clean;
  ComplexVector coeffs;
  while (static_cast<int>(selected.size()) < num_targets) {
    // Normalized correlation pick over atoms not yet used or excluded.
    Index best = -1;
    double best_score = -1.0;
    const ComplexVector corr = measured.adjoint() * residual;
    for (Index i = 0; i < n_grid; ++i) {
      if (excluded[static_cast<std::size_t>(i)]) continue;
      const double score = std::abs(corr[i]) / atom_norms[i];
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    if (best < 0) break;  // dictionary exhausted

    std::vector<Index> trial = selected;
    trial.push_back(best);
    ComplexMatrix sub(measured.rows(), static_cast<Index>(trial.size()));
    for (std::size_t k = 0; k < trial.size(); ++k) {
      sub.col(static_cast<Index>(k)) = measured.col(trial[k]);
    }
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr;
    qr.setThreshold(1e-10);
    qr.compute(sub);
    if (qr.rank() < sub.cols()) {
      // The new atom is (numerically) dependent on the selected set, e.g.
      // the duplicate endpoint atoms at +/-90 degrees. Drop it and flag.
      excluded[static_cast<std::size_t>(best)] = 1;
      result.flagged = true;
      continue;
    }
    selected = std::move(trial);
    excluded[static_cast<std::size_t>(best)] = 1;
    coeffs = qr.solve(removed.r_clean);
    residual = removed.r_clean - sub * coeffs;
  }

  std::vector<std::pair<double, Index>> by_weight;
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const double weight = std::abs(coeffs[static_cast<Index>(k)]);
    result.values[selected[k]] = weight;
    by_weight.emplace_back(weight, selected[k]);
  }
  std::sort(by_weight.begin(), by_weight.end(), [](auto& a, auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (auto& [weight, idx] : by_weight) {
    result.peaks_deg.push_back(dictionary.grid.angle(idx));
  }
  result.flagged |= static_cast<int>(result.peaks_deg.size()) < num_targets;
  return result;
}

SpectrumResult l1_doa(const ComplexVector& r, const ComplexMatrix& g,
                      const ComplexVector& c, const Dictionary& dictionary,
                      int num_targets, const L1Options& options) {
  check_baseline_dims(r, g, c, dictionary);
  if (options.max_iters < 1) {
    throw std::invalid_argument("l1_doa: need at least one iteration");
  }
  if (!(options.rho >= 0.0)) {
    throw std::invalid_argument("l1_doa: rho must be >= 0");
  }
  const double c_norm2 = c.squaredNorm();
  if (!(c_norm2 > 0.0)) {
    throw std::invalid_argument("l1_doa: c is zero");
  }

  const ComplexMatrix measured = g * dictionary.atoms;  // N x n_grid
  // Eliminating the exact least-squares q projects both data and atoms off
  // span{c}; the smooth part becomes ||P(r - B alpha)||^2.
  const ComplexVector c_unit = c / std::sqrt(c_norm2);
  const ComplexMatrix projected =
      measured - c_unit * (c_unit.adjoint() * measured);
  const ComplexVector target = r - c_unit * c_unit.dot(r);

  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> gram_eig(
      ComplexMatrix(projected.adjoint() * projected),
      Eigen::EigenvaluesOnly);
  const double lipschitz =
      std::max(gram_eig.eigenvalues().maxCoeff(),
               std::numeric_limits<double>::min());
  const double threshold = 0.5 * options.rho / lipschitz;

  const Index n_grid = dictionary.grid.size();
  ComplexVector alpha = ComplexVector::Zero(n_grid);
  ComplexVector fitted = ComplexVector::Zero(target.size());

  auto objective = [&](const ComplexVector& a) {
    const Complex q_ls = c.dot(r - measured * a) / c_norm2;
    return (r - measured * a - c * q_ls).squaredNorm() +
           options.rho * a.cwiseAbs().sum();
  };

  double previous = objective(alpha);
  if (options.objective_trace) {
    options.objective_trace->clear();
    options.objective_trace->push_back(previous);
  }
  double last_decrease = 0.0;
  for (int iter = 0; iter < options.max_iters; ++iter) {
    const ComplexVector gradient = projected.adjoint() * (fitted - target);
    ComplexVector v = alpha - gradient / lipschitz;
    for (Index i = 0; i < n_grid; ++i) {
      const double mag = std::abs(v[i]);
      v[i] = mag > threshold ? v[i] * (1.0 - threshold / mag) : Complex{0, 0};
    }
    alpha = std::move(v);
    fitted = projected * alpha;
    const double current = objective(alpha);
    last_decrease = previous - current;
    previous = current;
    if (options.objective_trace) options.objective_trace->push_back(current);
  }
  const bool converged =
      last_decrease <= options.stall_tol * std::max(1.0, previous);

  SpectrumResult result;
  result.grid = dictionary.grid;
  result.values = alpha.cwiseAbs();

  PeakPickOptions pick;
  pick.max_peaks = num_targets;
  pick.min_distance = 2;
  pick.refine = false;  // grid method: estimates stay on the grid
  result.peaks_deg = pick_peaks(dictionary.grid, result.values, pick);
  result.flagged = !converged ||
                   static_cast<int>(result.peaks_deg.size()) < num_targets;
  return result;
}

}  // namespace risadmm
