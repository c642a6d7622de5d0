// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#include "risadmm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace risadmm {

using nlohmann::json;

std::string format_double(double value) {
  char buf[40];
  // %.17g round-trips every finite double.
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return in;
}

}  // namespace

void save_matrix_text(const std::filesystem::path& path,
                      const ComplexMatrix& matrix) {
  auto out = open_out(path);
  out << matrix.rows() << ' ' << matrix.cols() << '\n';
  for (Index i = 0; i < matrix.rows(); ++i) {
    for (Index j = 0; j < matrix.cols(); ++j) {
      out << format_double(matrix(i, j).real()) << ' '
          << format_double(matrix(i, j).imag()) << '\n';
    }
  }
}

ComplexMatrix load_matrix_text(const std::filesystem::path& path) {
  auto in = open_in(path);
  Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1) {
    throw std::runtime_error(path.string() + ": bad matrix header");
  }
  ComplexMatrix matrix(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im)) {
        throw std::runtime_error(path.string() + ": truncated matrix data");
      }
      matrix(i, j) = Complex(re, im);
    }
  }
  return matrix;
}

void save_vector_text(const std::filesystem::path& path,
                      const ComplexVector& vec) {
  save_matrix_text(path, ComplexMatrix(vec));
}

ComplexVector load_vector_text(const std::filesystem::path& path) {
  const ComplexMatrix m = load_matrix_text(path);
  if (m.cols() != 1) {
    throw std::runtime_error(path.string() + ": expected a single column");
  }
  return m.col(0);
}

namespace {

json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::runtime_error("expected [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

void save_scene_json(const std::filesystem::path& path, const Scene& scene) {
  json doc;
  doc["thetas_deg"] = scene.thetas_deg;
  json amps = json::array();
  for (Index i = 0; i < scene.amplitudes.size(); ++i) {
    amps.push_back(complex_to_json(scene.amplitudes[i]));
  }
  doc["s"] = amps;
  doc["psi_deg"] = scene.psi_deg;
  doc["q"] = complex_to_json(scene.interference);
  doc["sigma_w"] = scene.noise_std;
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

Scene load_scene_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  json doc = json::parse(in);
  Scene scene;
  scene.thetas_deg = doc.at("thetas_deg").get<std::vector<double>>();
  const json& amps = doc.at("s");
  scene.amplitudes.resize(static_cast<Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    scene.amplitudes[static_cast<Index>(i)] = complex_from_json(amps[i]);
  }
  scene.psi_deg = doc.at("psi_deg").get<double>();
  if (doc.contains("q")) scene.interference = complex_from_json(doc["q"]);
  if (doc.contains("sigma_w")) scene.noise_std = doc["sigma_w"].get<double>();
  if (scene.thetas_deg.empty() ||
      scene.thetas_deg.size() !=
          static_cast<std::size_t>(scene.amplitudes.size())) {
    throw std::runtime_error(path.string() + ": inconsistent scene");
  }
  return scene;
}

namespace {

void apply_admm_json(const json& j, AdmmConfig& admm, bool& auto_rho) {
  if (j.contains("rho")) {
    if (j["rho"].is_string()) {
      if (j["rho"].get<std::string>() != "auto") {
        throw std::runtime_error("admm.rho: expected a number or \"auto\"");
      }
      auto_rho = true;
    } else {
      admm.rho = j["rho"].get<double>();
      auto_rho = false;
    }
  }
  if (j.contains("tau")) admm.tau = j["tau"].get<double>();
  if (j.contains("dual_step")) {
    if (j["dual_step"].is_number()) {
      admm.dual_step = DualStep{DualStep::Mode::kFixed,
                                j["dual_step"].get<double>()};
    } else {
      admm.dual_step = DualStep::parse(j["dual_step"].get<std::string>());
    }
  }
  if (j.contains("max_iters")) admm.max_iters = j["max_iters"].get<int>();
  if (j.contains("estimate_interference")) {
    admm.estimate_interference = j["estimate_interference"].get<bool>();
  }
  if (j.contains("stop_tol")) admm.stop_tol = j["stop_tol"].get<double>();
  if (j.contains("record_residuals")) {
    admm.record_residuals = j["record_residuals"].get<bool>();
  }
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text,
                                       ExperimentConfig base) {
  const json doc = json::parse(text);
  ExperimentConfig c = std::move(base);
  if (doc.contains("K")) c.num_targets = doc["K"].get<int>();
  if (doc.contains("theta_range_deg")) {
    const auto range = doc["theta_range_deg"].get<std::vector<double>>();
    if (range.size() != 2) {
      throw std::runtime_error("theta_range_deg: expected [lo, hi]");
    }
    c.theta_min_deg = range[0];
    c.theta_max_deg = range[1];
  }
  if (doc.contains("min_separation_sin")) {
    c.min_separation_sin = doc["min_separation_sin"].get<double>();
  }
  if (doc.contains("fixed_thetas_deg")) {
    c.fixed_thetas_deg = doc["fixed_thetas_deg"].get<std::vector<double>>();
  }
  if (doc.contains("interference")) {
    const json& j = doc["interference"];
    if (j.contains("enabled")) c.interference_enabled = j["enabled"];
    if (j.contains("psi_deg")) c.psi_deg = j["psi_deg"];
    if (j.contains("isr_db")) c.isr_db = j["isr_db"];
  }
  if (doc.contains("snr_db")) c.snr_db = doc["snr_db"].get<double>();
  if (doc.contains("M")) c.num_elements = doc["M"].get<Index>();
  if (doc.contains("N")) c.num_measurements = doc["N"].get<Index>();
  if (doc.contains("d")) c.spacing = doc["d"].get<double>();
  if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("admm")) apply_admm_json(doc["admm"], c.admm, c.auto_rho);
  if (doc.contains("rho_floor")) c.rho_floor = doc["rho_floor"].get<double>();
  if (doc.contains("baseline_grid_step_deg")) {
    c.baseline_grid_step_deg = doc["baseline_grid_step_deg"].get<double>();
  }
  if (doc.contains("l1_iters")) c.l1_iters = doc["l1_iters"].get<int>();
  if (doc.contains("l1_rho_scale")) {
    c.l1_rho_scale = doc["l1_rho_scale"].get<double>();
  }
  if (doc.contains("music_grid")) {
    const json& j = doc["music_grid"];
    if (j.contains("start_deg")) c.music_grid.start_deg = j["start_deg"];
    if (j.contains("stop_deg")) c.music_grid.stop_deg = j["stop_deg"];
    if (j.contains("step_deg")) c.music_grid.step_deg = j["step_deg"];
  }
  if (doc.contains("sweep")) {
    const json& j = doc["sweep"];
    if (j.contains("axis")) {
      c.sweep_axis = sweep_axis_from_string(j["axis"].get<std::string>());
    }
    if (j.contains("values")) {
      c.sweep_values = j["values"].get<std::vector<double>>();
    }
  }
  if (doc.contains("n_mc")) c.n_mc = doc["n_mc"].get<int>();
  if (doc.contains("methods")) {
    c.methods.clear();
    for (const auto& name : doc["methods"]) {
      c.methods.push_back(method_from_string(name.get<std::string>()));
    }
  }
  if (doc.contains("threads")) c.threads = doc["threads"].get<int>();
  return c;
}

ExperimentConfig config_from_json_file(const std::filesystem::path& path,
                                       ExperimentConfig base) {
  auto in = open_in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str(), std::move(base));
}

std::string config_to_json_text(const ExperimentConfig& c) {
  json doc;
  doc["K"] = c.num_targets;
  doc["theta_range_deg"] = {c.theta_min_deg, c.theta_max_deg};
  if (c.min_separation_sin > 0.0) {
    doc["min_separation_sin"] = c.min_separation_sin;
  }
  if (c.fixed_thetas_deg) doc["fixed_thetas_deg"] = *c.fixed_thetas_deg;
  doc["interference"] = {{"enabled", c.interference_enabled},
                         {"psi_deg", c.psi_deg},
                         {"isr_db", c.isr_db}};
  doc["snr_db"] = c.snr_db;
  doc["M"] = c.num_elements;
  doc["N"] = c.num_measurements;
  doc["d"] = c.spacing;
  doc["seed"] = c.seed;
  json admm;
  if (c.auto_rho) {
    admm["rho"] = "auto";
  } else {
    admm["rho"] = c.admm.rho;
  }
  admm["tau"] = c.admm.tau;
  admm["dual_step"] = c.admm.dual_step.str();
  admm["max_iters"] = c.admm.max_iters;
  admm["estimate_interference"] = c.admm.estimate_interference;
  doc["admm"] = admm;
  doc["rho_floor"] = c.rho_floor;
  doc["baseline_grid_step_deg"] = c.baseline_grid_step_deg;
  doc["l1_iters"] = c.l1_iters;
  doc["l1_rho_scale"] = c.l1_rho_scale;
  doc["music_grid"] = {{"start_deg", c.music_grid.start_deg},
                       {"stop_deg", c.music_grid.stop_deg},
                       {"step_deg", c.music_grid.step_deg}};
  doc["sweep"] = {{"axis", to_string(c.sweep_axis)},
                  {"values", c.sweep_values}};
  doc["n_mc"] = c.n_mc;
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(to_string(m));
  doc["methods"] = methods;
  doc["threads"] = c.threads;
  return doc.dump(2);
}

void write_residuals_csv(const std::filesystem::path& path,
                         const ResidualTrace& trace) {
  auto out = open_out(path);
  out << "iter,primal_z,primal_Y,objective\n";
  for (std::size_t i = 0; i < trace.primal_z.size(); ++i) {
    out << (i + 1) << ',' << format_double(trace.primal_z[i]) << ','
        << format_double(trace.primal_y[i]) << ','
        << format_double(trace.objective[i]) << '\n';
  }
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const SpectrumResult& spectrum) {
  auto out = open_out(path);
  out << "theta_deg,pseudospectrum\n";
  for (Index i = 0; i < spectrum.values.size(); ++i) {
    out << format_double(spectrum.grid.angle(i)) << ','
        << format_double(spectrum.values[i]) << '\n';
  }
}

void write_bench_summary_csv(const std::filesystem::path& path,
                             const std::vector<BenchRecord>& records) {
  auto out = open_out(path);
  out << "sweep_value,method,rmse_deg,mean_runtime_s,trials_used\n";
  for (const auto& r : records) {
    out << format_double(r.sweep_value) << ',' << to_string(r.method) << ','
        << format_double(r.rmse_deg) << ',' << format_double(r.mean_runtime_s)
        << ',' << r.trials_used << '\n';
  }
}

void write_bench_summary_json(const std::filesystem::path& path,
                              const std::vector<BenchRecord>& records) {
  json doc = json::array();
  for (const auto& r : records) {
    doc.push_back({{"sweep_value", r.sweep_value},
                   {"method", to_string(r.method)},
                   {"rmse_deg", r.rmse_deg},
                   {"mean_runtime_s", r.mean_runtime_s},
                   {"trials_used", r.trials_used}});
  }
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_trial_dump_csv(const std::filesystem::path& path,
                          const std::vector<TrialDumpRow>& rows) {
  auto out = open_out(path);
  out << "sweep_value,trial,method,target,theta_true_deg,theta_est_deg,"
         "abs_err_deg\n";
  for (const auto& r : rows) {
    out << format_double(r.sweep_value) << ',' << r.trial_index << ','
        << to_string(r.method) << ',' << r.target_index << ','
        << format_double(r.theta_true_deg) << ',';
    if (std::isnan(r.theta_est_deg)) {
      out << "";  // padded slot: estimator returned fewer peaks
    } else {
      out << format_double(r.theta_est_deg);
    }
    out << ',' << format_double(r.abs_err_deg) << '\n';
  }
}

void write_timing_csv(const std::filesystem::path& path,
                      const std::vector<TimingRecord>& records) {
  auto out = open_out(path);
  out << "M,method,mean_solve_s,mean_per_iter_s,trials\n";
  for (const auto& r : records) {
    out << r.num_elements << ',' << to_string(r.method) << ','
        << format_double(r.mean_solve_s) << ','
        << format_double(r.mean_per_iter_s) << ',' << r.trials << '\n';
  }
}

std::vector<BenchRecord> aggregate_dump_csv(
    const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(path.string() + ": empty dump");
  }
  struct Bucket {
    double sum_sq = 0.0;
    int rows = 0;
    int max_target = 0;
    std::map<int, int> trials;
  };
  std::map<std::pair<double, std::string>, Bucket> buckets;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 7) {
      throw std::runtime_error(path.string() + ": malformed dump row");
    }
    const double sweep_value = std::stod(fields[0]);
    const int trial = std::stoi(fields[1]);
    const std::string& method = fields[2];
    const int target = std::stoi(fields[3]);
    const double err = std::stod(fields[6]);
    auto& b = buckets[{sweep_value, method}];
    b.sum_sq += err * err;
    b.rows += 1;
    b.max_target = std::max(b.max_target, target);
    b.trials[trial] += 1;
  }
  std::vector<BenchRecord> records;
  for (const auto& [key, b] : buckets) {
    BenchRecord r;
    r.sweep_value = key.first;
    r.method = method_from_string(key.second);
    r.rmse_deg = std::sqrt(b.sum_sq / b.rows);
    r.trials_used = static_cast<int>(b.trials.size());
    r.mean_runtime_s = 0.0;  // the dump intentionally carries no runtimes
    records.push_back(r);
  }
  return records;
}

}  // namespace risadmm
