// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>

#include <json.hpp>

#include "eplab/initial_data.hpp"
#include "eplab/picard.hpp"

namespace eplab {

enum class Experiment { simulate, inequalities, convergence_study, kappa_sweep, uniqueness };

Experiment experiment_from_string(const std::string& s);
std::string to_string(Experiment e);

/// Named numeric tolerances with defaults; unknown names are rejected.
class Tolerances {
public:
    Tolerances();
    double get(const std::string& name) const;
    void set(const std::string& name, double value);
    const std::map<std::string, double>& all() const { return values_; }

private:
    std::map<std::string, double> values_;
};

struct RunConfig {
    Grid grid{2, 128, kTwoPi};
    PhysicalParams params;
    bool kappa_auto = true;  // kappa from kappa_tilde >= (1+T)/T when not given
    TimeStepper stepper;
    InitialDataFamily data;
    Experiment experiment = Experiment::simulate;
    std::filesystem::path output_dir = "out";
    Tolerances tolerances;
    int max_iterations = 10;
    double delta_tol = 1e-11;
    int ensemble_size = 50;
    int retained_iterates = 12;
    int threads = 1;
    std::vector<double> perturbation_sizes{1e-3, 1e-4};
    std::vector<double> kappa_factors{1.0, 4.0, 16.0};

    /// Effective kappa after the auto rule.
    double effective_kappa() const;
    nlohmann::json to_json() const;
};

/// Strict schema: unknown keys anywhere are rejected with ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace eplab
