// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "risadmm/rng.hpp"
#include "risadmm/types.hpp"

namespace risadmm {

/// Uniform linear aperture: element count and spacing in wavelengths.
struct ArrayGeometry {
  Index num_elements = 0;
  double spacing = 0.5;
};

/// Ground truth for one simulated snapshot: target directions and complex
/// amplitudes, the direct-path interference direction/amplitude, and the
/// noise level.
struct Scene {
  std::vector<double> thetas_deg;  // sorted ascending, within [-90, 90]
  ComplexVector amplitudes;        // one per target
  double psi_deg = 0.0;            // interference direction
  Complex interference{0.0, 0.0};  // interference amplitude q
  double noise_std = 0.0;          // sigma_w
};

/// The measurement operator: phase-only mixing matrix G (N x M, unit-modulus
/// entries) plus the interference signature c = G a(psi).
struct MeasurementSystem {
  ComplexMatrix g;
  ArrayGeometry geometry;
  ComplexVector c;
};

/// a(theta): entry m is exp(j 2 pi m d sin(theta)). Throws outside
/// [-90, 90] degrees.
ComplexVector steering_vector(double theta_deg, const ArrayGeometry& geometry);

/// Column k is steering_vector(thetas[k]).
ComplexMatrix steering_matrix(std::span<const double> thetas_deg,
                              const ArrayGeometry& geometry);

/// N x M matrix of unit-modulus entries with phases i.i.d. uniform on
/// [0, 2 pi), deterministic in the seed.
ComplexMatrix generate_ris_matrix(Index num_measurements,
                                  const ArrayGeometry& geometry,
                                  std::uint64_t seed);

/// Bundles G with the interference signature for the given direction.
MeasurementSystem make_measurement_system(ComplexMatrix g,
                                          const ArrayGeometry& geometry,
                                          double psi_deg);

/// G A(theta) s + c q, no noise.
ComplexVector noiseless_received(const Scene& scene,
                                 const MeasurementSystem& system);

/// Received snapshot r = G A(theta) s + c q + w with w circularly-symmetric
/// complex Gaussian of total per-sample variance sigma_w^2. sigma_w = 0
/// adds no noise at all (bit-identical to noiseless_received).
ComplexVector simulate_received(const Scene& scene,
                                const MeasurementSystem& system,
                                std::uint64_t seed);

/// sigma_w such that (mean per-sample power of G A s) / sigma_w^2 equals
/// 10^(snr_db/10). snr_db = +inf returns 0 (noiseless switch).
double calibrate_noise(double snr_db, const Scene& scene,
                       const MeasurementSystem& system);

/// Checks angle range, ordering and pairwise sine-domain separation.
/// Throws std::invalid_argument on violation.
void validate_scene(const Scene& scene, double min_separation_sin);

/// Draws k target angles uniformly in [lo, hi] degrees, sorted, with
/// pairwise sine-domain separation >= min_separation_sin and the same
/// separation from every angle in avoid_deg. Rejection sampling; throws
/// after max_attempts failures.
std::vector<double> draw_target_angles(Rng& rng, int k, double lo_deg,
                                       double hi_deg,
                                       double min_separation_sin,
                                       std::span<const double> avoid_deg = {},
                                       int max_attempts = 1000);

}  // namespace risadmm
