// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#include "risadmm/bench.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "risadmm/rng.hpp"

namespace risadmm {

namespace {

constexpr std::uint64_t kNoiseStream = 0xA11CE;
constexpr std::uint64_t kSystemStream = 0x6E0;
constexpr std::uint64_t kSweepStream = 0x57EE9;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

/// Runs fn(0..n-1) on a small pool; iteration order is unspecified but each
/// index runs exactly once, so index-addressed output stays deterministic.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        if (failed.load(std::memory_order_relaxed)) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::kRisAdmm:
      return "ris-admm";
    case Method::kFft:
      return "fft";
    case Method::kOmp:
      return "omp";
    case Method::kL1:
      return "l1";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  if (name == "ris-admm") return Method::kRisAdmm;
  if (name == "fft") return Method::kFft;
  if (name == "omp") return Method::kOmp;
  if (name == "l1") return Method::kL1;
  throw std::invalid_argument("unknown method \"" + name + "\"");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kIters:
      return "iters";
    case SweepAxis::kElements:
      return "M";
    case SweepAxis::kMeasurements:
      return "N";
    case SweepAxis::kSnrDb:
      return "snr_db";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "iters") return SweepAxis::kIters;
  if (name == "M") return SweepAxis::kElements;
  if (name == "N") return SweepAxis::kMeasurements;
  if (name == "snr_db") return SweepAxis::kSnrDb;
  throw std::invalid_argument("unknown sweep axis \"" + name + "\"");
}

TrialContext make_trial_context(const ExperimentConfig& config,
                                double sweep_value) {
  TrialContext context;
  context.config = config;
  context.sweep_value = sweep_value;
  switch (config.sweep_axis) {
    case SweepAxis::kIters:
      context.config.admm.max_iters = static_cast<int>(sweep_value);
      break;
    case SweepAxis::kElements:
      context.config.num_elements = static_cast<Index>(sweep_value);
      break;
    case SweepAxis::kMeasurements:
      context.config.num_measurements = static_cast<Index>(sweep_value);
      break;
    case SweepAxis::kSnrDb:
      context.config.snr_db = sweep_value;
      break;
  }
  const auto& cfg = context.config;
  if (cfg.num_elements < 2 || cfg.num_measurements < 1) {
    throw std::invalid_argument("experiment: need M >= 2 and N >= 1");
  }
  if (cfg.n_mc < 1) {
    throw std::invalid_argument("experiment: need n_mc >= 1");
  }
  if (cfg.admm.max_iters < 1) {
    throw std::invalid_argument("experiment: need at least one iteration");
  }

  const ArrayGeometry geometry{cfg.num_elements, cfg.spacing};
  const std::uint64_t system_seed = derive_seed(
      derive_seed(cfg.seed, kSystemStream), std::bit_cast<std::uint64_t>(
                                                sweep_value));
  context.system = make_measurement_system(
      generate_ris_matrix(cfg.num_measurements, geometry, system_seed),
      geometry, cfg.psi_deg);
  const AngleGrid baseline_grid{-90.0, 90.0, cfg.baseline_grid_step_deg};
  context.dictionary = make_dictionary(baseline_grid, geometry);
  context.min_separation_sin =
      cfg.min_separation_sin > 0.0
          ? cfg.min_separation_sin
          : 4.0 / static_cast<double>(cfg.num_elements);
  return context;
}

namespace {

Scene draw_scene(const TrialContext& context, Rng& rng) {
  const auto& cfg = context.config;
  Scene scene;
  if (cfg.fixed_thetas_deg) {
    scene.thetas_deg = *cfg.fixed_thetas_deg;
  } else {
    std::vector<double> avoid;
    if (cfg.interference_enabled) avoid.push_back(cfg.psi_deg);
    scene.thetas_deg =
        draw_target_angles(rng, cfg.num_targets, cfg.theta_min_deg,
                           cfg.theta_max_deg, context.min_separation_sin,
                           avoid);
  }
  const int k = static_cast<int>(scene.thetas_deg.size());
  scene.amplitudes.resize(k);
  for (int i = 0; i < k; ++i) {
    scene.amplitudes[i] = rng.unit_phase();
  }
  scene.psi_deg = cfg.psi_deg;
  if (cfg.interference_enabled) {
    const ComplexMatrix a =
        steering_matrix(scene.thetas_deg, context.system.geometry);
    const double signal_power =
        (context.system.g * (a * scene.amplitudes)).squaredNorm();
    const double magnitude =
        std::sqrt(std::pow(10.0, cfg.isr_db / 10.0) * signal_power /
                  context.system.c.squaredNorm());
    scene.interference = magnitude * rng.unit_phase();
  }
  scene.noise_std = calibrate_noise(cfg.snr_db, scene, context.system);
  return scene;
}

}  // namespace

TrialResult run_trial(const TrialContext& context, std::uint64_t trial_seed) {
  const auto& cfg = context.config;
  Rng rng(trial_seed);
  const Scene scene = draw_scene(context, rng);
  const ComplexVector r = simulate_received(
      scene, context.system, derive_seed(trial_seed, kNoiseStream));

  const double rho =
      cfg.auto_rho
          ? default_rho(scene.noise_std, cfg.num_elements, cfg.rho_floor)
          : cfg.admm.rho;

  TrialResult result;
  result.truth_deg = scene.thetas_deg;
  result.outcomes.reserve(cfg.methods.size());
  for (Method method : cfg.methods) {
    TrialOutcome outcome;
    outcome.method = method;
    const double t0 = now_seconds();
    switch (method) {
      case Method::kRisAdmm: {
        AdmmConfig admm = cfg.admm;
        admm.rho = rho;
        const SolveResult solved =
            solve(r, context.system.g, context.system.c, admm);
        const SpectrumResult spectrum =
            music_doas(solved.x, cfg.num_targets, cfg.music_grid,
                       context.system.geometry);
        outcome.estimates_deg = spectrum.peaks_deg;
        outcome.flagged = spectrum.flagged;
        break;
      }
      case Method::kFft: {
        const SpectrumResult spectrum =
            fft_doa(r, context.system.g, context.system.c,
                    context.dictionary, cfg.num_targets);
        outcome.estimates_deg = spectrum.peaks_deg;
        outcome.flagged = spectrum.flagged;
        break;
      }
      case Method::kOmp: {
        const SpectrumResult spectrum =
            omp_doa(r, context.system.g, context.system.c,
                    context.dictionary, cfg.num_targets);
        outcome.estimates_deg = spectrum.peaks_deg;
        outcome.flagged = spectrum.flagged;
        break;
      }
      case Method::kL1: {
        L1Options options;
        options.rho = cfg.l1_rho_scale * rho;
        options.max_iters = cfg.l1_iters;
        const SpectrumResult spectrum =
            l1_doa(r, context.system.g, context.system.c, context.dictionary,
                   cfg.num_targets, options);
        outcome.estimates_deg = spectrum.peaks_deg;
        outcome.flagged = spectrum.flagged;
        break;
      }
    }
    outcome.runtime_s = now_seconds() - t0;
    result.outcomes.push_back(std::move(outcome));
  }
  return result;
}

TrialResult run_trial(const ExperimentConfig& config, double sweep_value,
                      std::uint64_t trial_seed) {
  return run_trial(make_trial_context(config, sweep_value), trial_seed);
}

std::vector<TrialDumpRow> match_trial(const TrialContext& context,
                                      const TrialResult& result,
                                      int trial_index) {
  std::vector<TrialDumpRow> rows;
  const auto& truth = result.truth_deg;
  for (const TrialOutcome& outcome : result.outcomes) {
    const std::vector<int> match =
        match_assignment(outcome.estimates_deg, truth);
    for (std::size_t j = 0; j < truth.size(); ++j) {
      TrialDumpRow row;
      row.sweep_value = context.sweep_value;
      row.trial_index = trial_index;
      row.method = outcome.method;
      row.target_index = static_cast<int>(j);
      row.theta_true_deg = truth[j];
      if (match[j] >= 0) {
        row.theta_est_deg = outcome.estimates_deg[match[j]];
        row.abs_err_deg = std::abs(row.theta_est_deg - row.theta_true_deg);
      } else {
        row.theta_est_deg = std::numeric_limits<double>::quiet_NaN();
        row.abs_err_deg = 90.0;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

SweepOutput run_sweep(const ExperimentConfig& config) {
  if (config.sweep_values.empty()) {
    throw std::invalid_argument("run_sweep: empty sweep value list");
  }
  if (config.methods.empty()) {
    throw std::invalid_argument("run_sweep: no methods enabled");
  }
  SweepOutput output;
  for (std::size_t si = 0; si < config.sweep_values.size(); ++si) {
    const TrialContext context =
        make_trial_context(config, config.sweep_values[si]);
    const std::uint64_t point_seed =
        derive_seed(derive_seed(config.seed, kSweepStream), si);

    std::vector<TrialResult> results(config.n_mc);
    parallel_for(config.n_mc, config.threads, [&](int ti) {
      results[ti] = run_trial(context, derive_seed(point_seed, ti));
    });

    // Deterministic merge in trial order.
    const int k = config.num_targets;
    std::vector<double> sum_sq(config.methods.size(), 0.0);
    std::vector<double> sum_time(config.methods.size(), 0.0);
    for (int ti = 0; ti < config.n_mc; ++ti) {
      for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        const TrialOutcome& outcome = results[ti].outcomes[mi];
        sum_sq[mi] += match_squared_error_sum(outcome.estimates_deg,
                                              results[ti].truth_deg);
        sum_time[mi] += outcome.runtime_s;
      }
      auto rows = match_trial(context, results[ti], ti);
      output.dump.insert(output.dump.end(), rows.begin(), rows.end());
    }
    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
      BenchRecord record;
      record.sweep_value = context.sweep_value;
      record.method = config.methods[mi];
      record.rmse_deg =
          std::sqrt(sum_sq[mi] / (static_cast<double>(k) * config.n_mc));
      record.mean_runtime_s = sum_time[mi] / config.n_mc;
      record.trials_used = config.n_mc;
      output.records.push_back(record);
    }
  }
  return output;
}

std::vector<TimingRecord> run_timing(const ExperimentConfig& config,
                                     const std::vector<Index>& m_list,
                                     int trials_per_point) {
  if (m_list.empty()) {
    throw std::invalid_argument("run_timing: empty M list");
  }
  for (std::size_t i = 0; i + 1 < m_list.size(); ++i) {
    if (m_list[i] >= m_list[i + 1]) {
      throw std::invalid_argument("run_timing: M list must be ascending");
    }
  }
  std::vector<TimingRecord> records;
  ExperimentConfig sized = config;
  sized.sweep_axis = SweepAxis::kElements;
  for (Index m : m_list) {
    const TrialContext context =
        make_trial_context(sized, static_cast<double>(m));
    const std::uint64_t point_seed =
        derive_seed(derive_seed(config.seed, kSweepStream), 0x71u + m);

    std::vector<TimingRecord> point(config.methods.size());
    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
      point[mi].num_elements = m;
      point[mi].method = config.methods[mi];
      point[mi].trials = trials_per_point;
    }
    for (int trial = 0; trial < trials_per_point; ++trial) {
      const std::uint64_t trial_seed = derive_seed(point_seed, trial);
      Rng rng(trial_seed);
      const Scene scene = draw_scene(context, rng);
      const ComplexVector r = simulate_received(
          scene, context.system, derive_seed(trial_seed, kNoiseStream));
      const double rho = context.config.auto_rho
                             ? default_rho(scene.noise_std, m,
                                           context.config.rho_floor)
                             : context.config.admm.rho;
      for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        double elapsed = 0.0;
        int iters = 1;
        switch (config.methods[mi]) {
          case Method::kRisAdmm: {
            AdmmConfig admm = context.config.admm;
            admm.rho = rho;
            const double t0 = now_seconds();
            (void)solve(r, context.system.g, context.system.c, admm);
            elapsed = now_seconds() - t0;
            iters = admm.max_iters;
            break;
          }
          case Method::kL1: {
            L1Options options;
            options.rho = context.config.l1_rho_scale * rho;
            options.max_iters = context.config.l1_iters;
            const double t0 = now_seconds();
            (void)l1_doa(r, context.system.g, context.system.c,
                         context.dictionary, context.config.num_targets,
                         options);
            elapsed = now_seconds() - t0;
            iters = options.max_iters;
            break;
          }
          case Method::kFft: {
            const double t0 = now_seconds();
            (void)fft_doa(r, context.system.g, context.system.c,
                          context.dictionary, context.config.num_targets);
            elapsed = now_seconds() - t0;
            break;
          }
          case Method::kOmp: {
            const double t0 = now_seconds();
            (void)omp_doa(r, context.system.g, context.system.c,
                          context.dictionary, context.config.num_targets);
            elapsed = now_seconds() - t0;
            break;
          }
        }
        point[mi].mean_solve_s += elapsed;
        point[mi].mean_per_iter_s += elapsed / iters;
      }
    }
    for (auto& record : point) {
      record.mean_solve_s /= trials_per_point;
      record.mean_per_iter_s /= trials_per_point;
      records.push_back(record);
    }
  }
  return records;
}

}  // namespace risadmm
