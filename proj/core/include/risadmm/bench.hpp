// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risadmm/admm.hpp"
#include "risadmm/baselines.hpp"
#include "risadmm/signal_model.hpp"
#include "risadmm/spectrum.hpp"

namespace risadmm {

enum class Method { kRisAdmm, kFft, kOmp, kL1 };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

enum class SweepAxis { kIters, kElements, kMeasurements, kSnrDb };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

/// Everything one experiment needs: scene statistics, system shape, solver
/// settings, the sweep, and the Monte Carlo budget.
struct ExperimentConfig {
  // Scene.
  int num_targets = 3;
  double theta_min_deg = -60.0;
  double theta_max_deg = 60.0;
  double min_separation_sin = 0.0;  // 0: default 4/M
  std::optional<std::vector<double>> fixed_thetas_deg;  // debug mode
  bool interference_enabled = true;
  double psi_deg = 15.0;
  double isr_db = 10.0;
  double snr_db = 20.0;

  // System.
  Index num_elements = 64;      // M
  Index num_measurements = 32;  // N
  double spacing = 0.5;         // d
  std::uint64_t seed = 1234;

  // Solver. admm.rho is ignored when auto_rho is set (the default); rho is
  // then calibrated per trial from the noise level.
  AdmmConfig admm{};
  bool auto_rho = true;
  double rho_floor = 1e-3;

  // Baselines.
  double baseline_grid_step_deg = 1.0;
  int l1_iters = 500;
  double l1_rho_scale = 1.0;  // multiplies the solver rho

  // Spectrum.
  AngleGrid music_grid{};

  // Sweep and Monte Carlo budget.
  SweepAxis sweep_axis = SweepAxis::kIters;
  std::vector<double> sweep_values{100.0};
  int n_mc = 200;
  std::vector<Method> methods{Method::kRisAdmm};
  int threads = 0;  // 0: hardware concurrency
};

/// Resolved state for one sweep point, shared across its trials: the
/// measurement system and the baseline dictionary are drawn once per point.
struct TrialContext {
  ExperimentConfig config;  // with the sweep value applied
  double sweep_value = 0.0;
  MeasurementSystem system;
  Dictionary dictionary;
  double min_separation_sin = 0.0;
};

TrialContext make_trial_context(const ExperimentConfig& config,
                                double sweep_value);

struct TrialOutcome {
  Method method = Method::kRisAdmm;
  std::vector<double> estimates_deg;
  double runtime_s = 0.0;
  bool flagged = false;
};

struct TrialResult {
  std::vector<double> truth_deg;
  std::vector<TrialOutcome> outcomes;  // one per enabled method
};

/// Draws a scene from the trial seed, simulates the snapshot, and runs every
/// enabled method. Deterministic in (context, trial_seed); runtimes are
/// wall-clock around the estimator call only.
TrialResult run_trial(const TrialContext& context, std::uint64_t trial_seed);

/// Convenience overload building the context on the fly.
TrialResult run_trial(const ExperimentConfig& config, double sweep_value,
                      std::uint64_t trial_seed);

struct BenchRecord {
  double sweep_value = 0.0;
  Method method = Method::kRisAdmm;
  double rmse_deg = 0.0;
  double mean_runtime_s = 0.0;
  int trials_used = 0;
};

/// One matched estimate/truth pair from one trial, for the raw dump.
struct TrialDumpRow {
  double sweep_value = 0.0;
  int trial_index = 0;
  Method method = Method::kRisAdmm;
  int target_index = 0;
  double theta_true_deg = 0.0;
  // NaN when the estimator returned fewer peaks than targets.
  double theta_est_deg = 0.0;
  double abs_err_deg = 0.0;
};

struct SweepOutput {
  std::vector<BenchRecord> records;
  std::vector<TrialDumpRow> dump;
};

/// Runs n_mc trials per sweep value on a small thread pool. Trial seeds are
/// derived from (seed, sweep index, trial index), and results are merged by
/// index, so the output is independent of the thread count.
SweepOutput run_sweep(const ExperimentConfig& config);

struct TimingRecord {
  Index num_elements = 0;
  Method method = Method::kRisAdmm;
  double mean_solve_s = 0.0;
  double mean_per_iter_s = 0.0;
  int trials = 0;
};

/// Wall-clock per-solve and per-iteration cost for each aperture size in
/// m_list (run serially so the numbers are not polluted by contention).
std::vector<TimingRecord> run_timing(const ExperimentConfig& config,
                                     const std::vector<Index>& m_list,
                                     int trials_per_point = 3);

/// Matched errors of one trial outcome against the truth.
std::vector<TrialDumpRow> match_trial(const TrialContext& context,
                                      const TrialResult& result,
                                      int trial_index);

}  // namespace risadmm
