// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#include "risadmm/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "risadmm/rng.hpp"
#include "support/test_rand.hpp"

using namespace risadmm;
using testing::random_matrix;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("format_double: round-trips exactly") {
  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const double value = rng.uniform(-1e6, 1e6) *
                         std::pow(10.0, rng.uniform(-12, 12));
    CHECK(std::stod(format_double(value)) == value);
  }
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("matrix text format: header plus re/im lines, exact round trip") {
  Rng rng(62);
  const ComplexMatrix m = random_matrix(rng, 5, 3, 7.5);
  const auto path = temp_file("risadmm_matrix.txt");
  save_matrix_text(path, m);

  std::ifstream in(path);
  Index rows = 0, cols = 0;
  in >> rows >> cols;
  CHECK(rows == 5);
  CHECK(cols == 3);

  const ComplexMatrix back = load_matrix_text(path);
  CHECK((back - m).norm() == 0.0);  // bitwise
  std::filesystem::remove(path);
}

TEST_CASE("vector text format: single column enforced") {
  Rng rng(63);
  const ComplexVector v = testing::random_vector(rng, 6);
  const auto path = temp_file("risadmm_vector.txt");
  save_vector_text(path, v);
  const ComplexVector back = load_vector_text(path);
  CHECK((back - v).norm() == 0.0);

  save_matrix_text(path, random_matrix(rng, 2, 2));
  CHECK_THROWS_AS(load_vector_text(path), std::runtime_error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_matrix_text(path), std::runtime_error);
}

TEST_CASE("scene json: round trip") {
  Scene scene;
  scene.thetas_deg = {-41.25, 3.5, 60.0};
  scene.amplitudes.resize(3);
  scene.amplitudes << Complex(1, 0), Complex(-0.25, 0.75), Complex(0, -1);
  scene.psi_deg = 15.0;
  scene.interference = Complex(2.5, -1.5);
  scene.noise_std = 0.125;

  const auto path = temp_file("risadmm_scene.json");
  save_scene_json(path, scene);
  const Scene back = load_scene_json(path);
  CHECK(back.thetas_deg == scene.thetas_deg);
  CHECK((back.amplitudes - scene.amplitudes).norm() == 0.0);
  CHECK(back.psi_deg == scene.psi_deg);
  CHECK(back.interference == scene.interference);
  CHECK(back.noise_std == scene.noise_std);
  std::filesystem::remove(path);
}

TEST_CASE("experiment config json: round trip and overrides") {
  ExperimentConfig config;
  config.num_targets = 2;
  config.snr_db = 12.5;
  config.admm.tau = 2.0;
  config.admm.dual_step = DualStep::parse("2tau");
  config.auto_rho = false;
  config.admm.rho = 0.7;
  config.sweep_axis = SweepAxis::kSnrDb;
  config.sweep_values = {0.0, 10.0, 20.0};
  config.methods = {Method::kRisAdmm, Method::kL1};

  const std::string text = config_to_json_text(config);
  const ExperimentConfig back = config_from_json_text(text);
  CHECK(back.num_targets == 2);
  CHECK(back.snr_db == 12.5);
  CHECK(back.admm.tau == 2.0);
  CHECK(back.admm.dual_step.mode == DualStep::Mode::kTwoTau);
  CHECK_FALSE(back.auto_rho);
  CHECK(back.admm.rho == 0.7);
  CHECK(back.sweep_axis == SweepAxis::kSnrDb);
  CHECK(back.sweep_values == std::vector<double>{0.0, 10.0, 20.0});
  REQUIRE(back.methods.size() == 2);
  CHECK(back.methods[1] == Method::kL1);

  // Partial documents override only the mentioned keys.
  const ExperimentConfig patched =
      config_from_json_text(R"({"M": 48, "admm": {"rho": "auto"}})", back);
  CHECK(patched.num_elements == 48);
  CHECK(patched.auto_rho);
  CHECK(patched.snr_db == 12.5);  // untouched

  CHECK_THROWS(config_from_json_text(R"({"methods": ["sdp"]})"));
}

TEST_CASE("csv emitters: stable bytes") {
  ResidualTrace trace;
  trace.primal_z = {0.5, 0.25};
  trace.primal_y = {1.0, 0.5};
  trace.objective = {2.0, 1.5};
  const auto res_path = temp_file("risadmm_res.csv");
  write_residuals_csv(res_path, trace);
  CHECK(slurp(res_path) ==
        "iter,primal_z,primal_Y,objective\n"
        "1,0.5,1,2\n"
        "2,0.25,0.5,1.5\n");
  std::filesystem::remove(res_path);

  SpectrumResult spectrum;
  spectrum.grid = AngleGrid{-1, 1, 1.0};
  spectrum.values.resize(3);
  spectrum.values << 0.5, 2.0, 0.25;
  const auto spec_path = temp_file("risadmm_spec.csv");
  write_spectrum_csv(spec_path, spectrum);
  CHECK(slurp(spec_path) ==
        "theta_deg,pseudospectrum\n"
        "-1,0.5\n"
        "0,2\n"
        "1,0.25\n");
  std::filesystem::remove(spec_path);

  std::vector<BenchRecord> records(1);
  records[0].sweep_value = 100.0;
  records[0].method = Method::kRisAdmm;
  records[0].rmse_deg = 0.125;
  records[0].mean_runtime_s = 0.5;
  records[0].trials_used = 7;
  const auto sum_path = temp_file("risadmm_summary.csv");
  write_bench_summary_csv(sum_path, records);
  CHECK(slurp(sum_path) ==
        "sweep_value,method,rmse_deg,mean_runtime_s,trials_used\n"
        "100,ris-admm,0.125,0.5,7\n");
  std::filesystem::remove(sum_path);
}
