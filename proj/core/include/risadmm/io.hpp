// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risadmm contributors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "risadmm/admm.hpp"
#include "risadmm/bench.hpp"
#include "risadmm/signal_model.hpp"
#include "risadmm/spectrum.hpp"
#include "risadmm/types.hpp"

namespace risadmm {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double value);

// Textual matrix format: header line "rows cols", then rows*cols lines
// "re im" in row-major order. Vectors are stored as single-column matrices.
void save_matrix_text(const std::filesystem::path& path,
                      const ComplexMatrix& matrix);
ComplexMatrix load_matrix_text(const std::filesystem::path& path);
void save_vector_text(const std::filesystem::path& path,
                      const ComplexVector& vec);
ComplexVector load_vector_text(const std::filesystem::path& path);

// Scene files: flat JSON with keys thetas_deg, s (list of [re, im]),
// psi_deg, q ([re, im]), sigma_w.
void save_scene_json(const std::filesystem::path& path, const Scene& scene);
Scene load_scene_json(const std::filesystem::path& path);

// Experiment configuration as JSON; fields mirror ExperimentConfig and the
// CLI flags. Keys absent from the document keep the values passed in.
ExperimentConfig config_from_json_file(const std::filesystem::path& path,
                                       ExperimentConfig base = {});
ExperimentConfig config_from_json_text(const std::string& text,
                                       ExperimentConfig base = {});
std::string config_to_json_text(const ExperimentConfig& config);

// CSV emitters. All use full-precision round-trip number formatting.
void write_residuals_csv(const std::filesystem::path& path,
                         const ResidualTrace& trace);
void write_spectrum_csv(const std::filesystem::path& path,
                        const SpectrumResult& spectrum);
void write_bench_summary_csv(const std::filesystem::path& path,
                             const std::vector<BenchRecord>& records);
void write_bench_summary_json(const std::filesystem::path& path,
                              const std::vector<BenchRecord>& records);
void write_trial_dump_csv(const std::filesystem::path& path,
                          const std::vector<TrialDumpRow>& rows);
void write_timing_csv(const std::filesystem::path& path,
                      const std::vector<TimingRecord>& records);

/// Recomputes per-method RMSE from a trial dump written by
/// write_trial_dump_csv, for re-aggregation without re-running.
std::vector<BenchRecord> aggregate_dump_csv(
    const std::filesystem::path& path);

}  // namespace risadmm
