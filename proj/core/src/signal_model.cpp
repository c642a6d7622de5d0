// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#include "risadmm/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "risadmm/errors.hpp"

namespace risadmm {

namespace {

void check_geometry(const ArrayGeometry& geometry) {
  if (geometry.num_elements < 1) {
    throw DimensionError("array geometry: need at least one element");
  }
  if (!(geometry.spacing > 0.0)) {
    throw std::invalid_argument("array geometry: spacing must be > 0");
  }
}

}  // namespace

ComplexVector steering_vector(double theta_deg,
                              const ArrayGeometry& geometry) {
  check_geometry(geometry);
  if (!(theta_deg >= -90.0 && theta_deg <= 90.0)) {
    throw std::invalid_argument("steering_vector: angle " +
                                std::to_string(theta_deg) +
                                " outside [-90, 90] degrees");
  }
  const double phase_step =
      2.0 * kPi * geometry.spacing * std::sin(deg2rad(theta_deg));
  ComplexVector a(geometry.num_elements);
  for (Index m = 0; m < geometry.num_elements; ++m) {
    const double phi = phase_step * static_cast<double>(m);
    a[m] = Complex(std::cos(phi), std::sin(phi));
  }
  a[0] = Complex(1.0, 0.0);
  return a;
}

ComplexMatrix steering_matrix(std::span<const double> thetas_deg,
                              const ArrayGeometry& geometry) {
  if (thetas_deg.empty()) {
    throw DimensionError("steering_matrix: empty angle list");
  }
  ComplexMatrix a(geometry.num_elements, static_cast<Index>(thetas_deg.size()));
  for (std::size_t k = 0; k < thetas_deg.size(); ++k) {
    a.col(static_cast<Index>(k)) = steering_vector(thetas_deg[k], geometry);
  }
  return a;
}

ComplexMatrix generate_ris_matrix(Index num_measurements,
                                  const ArrayGeometry& geometry,
                                  std::uint64_t seed) {
  check_geometry(geometry);
  if (num_measurements < 1) {
    throw DimensionError("generate_ris_matrix: need at least one measurement");
  }
  Rng rng(seed);
  ComplexMatrix g(num_measurements, geometry.num_elements);
  for (Index n = 0; n < num_measurements; ++n) {
    for (Index m = 0; m < geometry.num_elements; ++m) {
      g(n, m) = rng.unit_phase();
    }
  }
  return g;
}

MeasurementSystem make_measurement_system(ComplexMatrix g,
                                          const ArrayGeometry& geometry,
                                          double psi_deg) {
  check_geometry(geometry);
  if (g.cols() != geometry.num_elements) {
    throw DimensionError("make_measurement_system: G has " +
                         std::to_string(g.cols()) +
                         " columns, geometry expects " +
                         std::to_string(geometry.num_elements));
  }
  MeasurementSystem system;
  system.c = g * steering_vector(psi_deg, geometry);
  system.g = std::move(g);
  system.geometry = geometry;
  return system;
}

namespace {

void check_scene_dims(const Scene& scene, const MeasurementSystem& system) {
  if (scene.thetas_deg.empty()) {
    throw DimensionError("scene: need at least one target");
  }
  if (static_cast<Index>(scene.thetas_deg.size()) !=
      scene.amplitudes.size()) {
    throw DimensionError("scene: angle and amplitude counts differ");
  }
  if (system.g.cols() != system.geometry.num_elements ||
      system.c.size() != system.g.rows()) {
    throw DimensionError("measurement system: inconsistent dimensions");
  }
}

}  // namespace

ComplexVector noiseless_received(const Scene& scene,
                                 const MeasurementSystem& system) {
  check_scene_dims(scene, system);
  const ComplexMatrix a = steering_matrix(scene.thetas_deg, system.geometry);
  ComplexVector r = system.g * (a * scene.amplitudes);
  r += system.c * scene.interference;
  return r;
}

ComplexVector simulate_received(const Scene& scene,
                                const MeasurementSystem& system,
                                std::uint64_t seed) {
  ComplexVector r = noiseless_received(scene, system);
  if (scene.noise_std > 0.0) {
    Rng rng(seed);
    for (Index n = 0; n < r.size(); ++n) {
      r[n] += rng.complex_normal(scene.noise_std);
    }
  }
  return r;
}

double calibrate_noise(double snr_db, const Scene& scene,
                       const MeasurementSystem& system) {
  if (std::isnan(snr_db)) {
    throw std::invalid_argument("calibrate_noise: snr_db is NaN");
  }
  if (snr_db == std::numeric_limits<double>::infinity()) {
    return 0.0;
  }
  check_scene_dims(scene, system);
  const ComplexMatrix a = steering_matrix(scene.thetas_deg, system.geometry);
  const ComplexVector signal = system.g * (a * scene.amplitudes);
  const double mean_power =
      signal.squaredNorm() / static_cast<double>(signal.size());
  if (!(mean_power > 0.0)) {
    throw std::invalid_argument("calibrate_noise: zero signal power");
  }
  return std::sqrt(mean_power / std::pow(10.0, snr_db / 10.0));
}

void validate_scene(const Scene& scene, double min_separation_sin) {
  if (scene.thetas_deg.empty()) {
    throw std::invalid_argument("scene: need at least one target");
  }
  if (scene.noise_std < 0.0) {
    throw std::invalid_argument("scene: negative noise level");
  }
  for (double theta : scene.thetas_deg) {
    if (!(theta >= -90.0 && theta <= 90.0)) {
      throw std::invalid_argument("scene: angle outside [-90, 90] degrees");
    }
  }
  for (std::size_t k = 0; k + 1 < scene.thetas_deg.size(); ++k) {
    if (scene.thetas_deg[k] > scene.thetas_deg[k + 1]) {
      throw std::invalid_argument("scene: angles not sorted ascending");
    }
    const double gap = std::sin(deg2rad(scene.thetas_deg[k + 1])) -
                       std::sin(deg2rad(scene.thetas_deg[k]));
    if (gap < min_separation_sin) {
      throw std::invalid_argument(
          "scene: targets closer than the minimum sine-domain separation");
    }
  }
}

std::vector<double> draw_target_angles(Rng& rng, int k, double lo_deg,
                                       double hi_deg,
                                       double min_separation_sin,
                                       std::span<const double> avoid_deg,
                                       int max_attempts) {
  if (k < 1) {
    throw std::invalid_argument("draw_target_angles: need k >= 1");
  }
  if (!(lo_deg < hi_deg) || lo_deg < -90.0 || hi_deg > 90.0) {
    throw std::invalid_argument("draw_target_angles: bad angle range");
  }
  std::vector<double> thetas(static_cast<std::size_t>(k));
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    for (auto& theta : thetas) {
      theta = rng.uniform(lo_deg, hi_deg);
    }
    std::sort(thetas.begin(), thetas.end());
    bool ok = true;
    for (int i = 0; ok && i + 1 < k; ++i) {
      ok = std::sin(deg2rad(thetas[i + 1])) - std::sin(deg2rad(thetas[i])) >=
           min_separation_sin;
    }
    for (double avoid : avoid_deg) {
      const double avoid_sin = std::sin(deg2rad(avoid));
      for (int i = 0; ok && i < k; ++i) {
        ok = std::abs(std::sin(deg2rad(thetas[i])) - avoid_sin) >=
             min_separation_sin;
      }
      if (!ok) break;
    }
    if (ok) {
      return thetas;
    }
  }
  throw std::invalid_argument(
      "draw_target_angles: separation constraint infeasible after " +
      std::to_string(max_attempts) + " attempts");
}

}  // namespace risadmm
