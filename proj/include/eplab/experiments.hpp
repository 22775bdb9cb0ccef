// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "eplab/config.hpp"

namespace eplab {

/// Dispatch on cfg.experiment; writes artifacts under cfg.output_dir and
/// returns the manifest. Throws ConfigError / Divergence for the failure
/// classes the CLI maps to exit codes.
nlohmann::json run_experiment(const RunConfig& cfg);

nlohmann::json simulate_experiment(const RunConfig& cfg);
nlohmann::json inequalities_experiment(const RunConfig& cfg);
nlohmann::json kappa_sweep_experiment(const RunConfig& cfg);
nlohmann::json uniqueness_experiment_run(const RunConfig& cfg);
nlohmann::json convergence_study_experiment(const RunConfig& cfg);

/// Per-m table (uniform-bound norm, delta norm, ratio) + verdict.
std::string report_summary_text(const IterationTrace& trace);
nlohmann::json report_summary_json(const IterationTrace& trace);

/// Persist a state trajectory: one file per field per snapshot plus an
/// index JSON (times, field names, file pattern).
void write_series_snapshots(const std::filesystem::path& dir, const StateSeries& s,
                            int stride = 1);
StateSeries read_series_snapshots(const std::filesystem::path& dir);

/// Same layout for a single-field snapshot series.
void write_time_series(const std::filesystem::path& dir, const TimeSeries& ts,
                       const std::string& name, int stride = 1);
TimeSeries read_time_series(const std::filesystem::path& dir);

/// Contraction ratio aggregate used by sweeps: geometric mean of
/// delta_{m+1}/delta_m over the window m in [2, min(6, m_last-1)].
double measured_contraction_ratio(const IterationTrace& trace);

}  // namespace eplab
