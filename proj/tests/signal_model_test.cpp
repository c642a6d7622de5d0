// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#include "risadmm/signal_model.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "risadmm/errors.hpp"

using namespace risadmm;

TEST_CASE("steering_vector: broadside is all ones") {
  const ComplexVector a = steering_vector(0.0, {5, 0.5});
  for (Index m = 0; m < 5; ++m) {
    CHECK(a[m] == Complex(1, 0));
  }
}

TEST_CASE("steering_vector: endfire closed form") {
  const ComplexVector a = steering_vector(90.0, {2, 0.5});
  CHECK(a[0] == Complex(1, 0));
  CHECK(a[1].real() == doctest::Approx(-1.0));
  CHECK(std::abs(a[1].imag()) < 1e-12);
}

TEST_CASE("steering_vector: per-entry recomputation at 30 degrees") {
  const ComplexVector a = steering_vector(30.0, {4, 0.5});
  for (Index m = 0; m < 4; ++m) {
    const double phi = 2.0 * kPi * 0.5 * 0.5 * m;  // sin 30 deg = 1/2
    CHECK(std::abs(a[m] - Complex(std::cos(phi), std::sin(phi))) < 1e-12);
    CHECK(std::abs(std::abs(a[m]) - 1.0) < 1e-15);  // unit modulus
  }
  CHECK_THROWS_AS(steering_vector(90.5, {4, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(steering_vector(-91.0, {4, 0.5}), std::invalid_argument);
}

TEST_CASE("steering_matrix: columns match individual steering vectors") {
  const ArrayGeometry geometry{8, 0.5};
  const std::vector<double> thetas{-41.3, 7.9, 63.2};
  const ComplexMatrix a = steering_matrix(thetas, geometry);
  REQUIRE(a.cols() == 3);
  for (Index k = 0; k < 3; ++k) {
    CHECK((a.col(k) - steering_vector(thetas[k], geometry)).norm() == 0.0);
  }

  const std::vector<double> dup{0.0, 0.0};
  const ComplexMatrix two = steering_matrix(dup, geometry);
  CHECK((two.col(0) - two.col(1)).norm() == 0.0);

  CHECK_THROWS_AS(steering_matrix(std::vector<double>{}, geometry),
                  DimensionError);
}

TEST_CASE("generate_ris_matrix: unit modulus and seed determinism") {
  const ComplexMatrix single = generate_ris_matrix(1, {1, 0.5}, 3);
  CHECK(std::abs(std::abs(single(0, 0)) - 1.0) < 1e-15);

  const ComplexMatrix a = generate_ris_matrix(6, {9, 0.5}, 42);
  const ComplexMatrix b = generate_ris_matrix(6, {9, 0.5}, 42);
  CHECK((a - b).norm() == 0.0);  // bit identical
  CHECK((a - generate_ris_matrix(6, {9, 0.5}, 43)).norm() > 0.0);
  for (Index n = 0; n < a.rows(); ++n) {
    for (Index m = 0; m < a.cols(); ++m) {
      CHECK(std::abs(std::abs(a(n, m)) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("generate_ris_matrix: column means shrink like 1/sqrt(N)") {
  // Column mean ~ CN(0, 1/N), so E|mean| = sqrt(pi)/(2 sqrt(N)); averaging
  // over 1000 seeds concentrates well within 10 percent.
  const Index n = 32;
  double acc = 0.0;
  const int seeds = 1000;
  for (int seed = 0; seed < seeds; ++seed) {
    const ComplexMatrix g = generate_ris_matrix(n, {4, 0.5}, 7000 + seed);
    acc += std::abs(g.col(0).mean());
  }
  const double expected = std::sqrt(kPi) / (2.0 * std::sqrt(double(n)));
  CHECK(acc / seeds == doctest::Approx(expected).epsilon(0.10));
}

namespace {

Scene one_target_scene(double theta_deg, double psi_deg) {
  Scene scene;
  scene.thetas_deg = {theta_deg};
  scene.amplitudes = ComplexVector::Ones(1);
  scene.psi_deg = psi_deg;
  return scene;
}

}  // namespace

TEST_CASE("simulate_received: noiseless single source is exact") {
  const ArrayGeometry geometry{16, 0.5};
  const MeasurementSystem system = make_measurement_system(
      generate_ris_matrix(8, geometry, 5), geometry, 15.0);
  const Scene scene = one_target_scene(-23.0, 15.0);

  const ComplexVector r = simulate_received(scene, system, 99);
  const ComplexVector direct =
      system.g * steering_vector(-23.0, geometry);
  CHECK((r - direct).norm() == 0.0);
  // No hidden noise path: identical to the noiseless model output.
  CHECK((r - noiseless_received(scene, system)).norm() == 0.0);
}

TEST_CASE("simulate_received: interference-only gives c") {
  const ArrayGeometry geometry{12, 0.5};
  const MeasurementSystem system = make_measurement_system(
      generate_ris_matrix(6, geometry, 8), geometry, 40.0);
  Scene scene = one_target_scene(0.0, 40.0);
  scene.amplitudes[0] = Complex(0, 0);
  scene.interference = Complex(1, 0);
  const ComplexVector r = simulate_received(scene, system, 1);
  CHECK((r - system.c).norm() == 0.0);
}

TEST_CASE("simulate_received: full scene matches term-by-term oracle") {
  const ArrayGeometry geometry{64, 0.5};
  const MeasurementSystem system = make_measurement_system(
      generate_ris_matrix(32, geometry, 77), geometry, 15.0);
  Scene scene;
  scene.thetas_deg = {-30.0, 5.0, 42.0};
  Rng amp_rng(4);
  scene.amplitudes.resize(3);
  for (Index k = 0; k < 3; ++k) scene.amplitudes[k] = amp_rng.unit_phase();
  scene.psi_deg = 15.0;
  scene.interference = Complex(0.8, -0.6);
  scene.noise_std = 0.3;

  const std::uint64_t seed = 123;
  const ComplexVector r = simulate_received(scene, system, seed);

  // Oracle: per-entry three-term summation plus the identical noise stream.
  Rng noise_rng(seed);
  for (Index n = 0; n < 32; ++n) {
    Complex expected{0, 0};
    for (Index k = 0; k < 3; ++k) {
      const ComplexVector a =
          steering_vector(scene.thetas_deg[k], geometry);
      Complex gax{0, 0};
      for (Index m = 0; m < 64; ++m) gax += system.g(n, m) * a[m];
      expected += gax * scene.amplitudes[k];
    }
    expected += system.c[n] * scene.interference;
    // consume the same noise draw
    const Complex noise = noise_rng.complex_normal(scene.noise_std);
    CHECK(std::abs((r[n] - noise) - expected) < 1e-12 * (1.0 + std::abs(expected)));
  }

  // Seed determinism.
  CHECK((simulate_received(scene, system, seed) - r).norm() == 0.0);
}

TEST_CASE("calibrate_noise: definition, noiseless switch, power oracle") {
  const ArrayGeometry geometry{16, 0.5};
  const MeasurementSystem system = make_measurement_system(
      generate_ris_matrix(8, geometry, 21), geometry, 10.0);
  const Scene scene = one_target_scene(25.0, 10.0);

  const ComplexVector signal =
      system.g * steering_vector(25.0, geometry);
  const double mean_power = signal.squaredNorm() / 8.0;

  const double sigma0 = calibrate_noise(0.0, scene, system);
  CHECK(sigma0 * sigma0 == doctest::Approx(mean_power).epsilon(1e-12));

  CHECK(calibrate_noise(std::numeric_limits<double>::infinity(), scene,
                        system) == 0.0);

  const double sigma10 = calibrate_noise(10.0, scene, system);
  CHECK(sigma10 * sigma10 ==
        doctest::Approx(mean_power / 10.0).epsilon(1e-12));

  Scene silent = scene;
  silent.amplitudes[0] = Complex(0, 0);
  CHECK_THROWS_AS(calibrate_noise(0.0, silent, system),
                  std::invalid_argument);
}

TEST_CASE("validate_scene and draw_target_angles enforce separation") {
  Scene scene;
  scene.thetas_deg = {-10.0, -9.9};
  scene.amplitudes = ComplexVector::Ones(2);
  CHECK_THROWS_AS(validate_scene(scene, 4.0 / 64.0), std::invalid_argument);
  scene.thetas_deg = {-10.0, 30.0};
  CHECK_NOTHROW(validate_scene(scene, 4.0 / 64.0));
  scene.thetas_deg = {30.0, -10.0};
  CHECK_THROWS_AS(validate_scene(scene, 0.0), std::invalid_argument);

  Rng rng(3);
  const std::vector<double> avoid{15.0};
  CHECK_THROWS_AS(
      draw_target_angles(rng, 40, -5.0, 5.0, 0.05, avoid, 50),
      std::invalid_argument);  // infeasible packing
}
