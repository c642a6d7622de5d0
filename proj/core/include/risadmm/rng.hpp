// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace risadmm {

/// Deterministic random source: mt19937_64 with explicit double extraction
/// and Box-Muller normals. The std:: distributions are implementation
/// defined, so going through them would break the same-seed/same-bytes
/// reproducibility contract across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unit-modulus complex value, phase uniform on [0, 2*pi).
  std::complex<double> unit_phase() {
    const double phi = 2.0 * kPi * uniform();
    return {std::cos(phi), std::sin(phi)};
  }

  /// Standard normal. Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * kPi * u2);
  }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = sigma^2
  /// (variance sigma^2/2 in each of the real and imaginary parts).
  std::complex<double> complex_normal(double sigma) {
    const double s = sigma / std::sqrt(2.0);
    const double re = s * normal();
    const double im = s * normal();
    return {re, im};
  }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Mixes a stream id into a master seed (splitmix64 finalizer) to derive
/// independent substreams, e.g. one per Monte Carlo trial.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace risadmm
