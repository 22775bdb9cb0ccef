// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/config.hpp"

#include <fstream>

namespace eplab {

Experiment experiment_from_string(const std::string& s) {
    if (s == "simulate") return Experiment::simulate;
    if (s == "inequalities") return Experiment::inequalities;
    if (s == "convergence_study") return Experiment::convergence_study;
    if (s == "kappa_sweep") return Experiment::kappa_sweep;
    if (s == "uniqueness") return Experiment::uniqueness;
    throw ConfigError("unknown experiment: " + s);
}

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::simulate: return "simulate";
        case Experiment::inequalities: return "inequalities";
        case Experiment::convergence_study: return "convergence_study";
        case Experiment::kappa_sweep: return "kappa_sweep";
        case Experiment::uniqueness: return "uniqueness";
    }
    return "?";
}

Tolerances::Tolerances() {
    values_ = {
        {"hermitian", 1e-12},
        {"neutrality_mean", 1e-10},
        {"cfl_safety", 0.5},
        {"constraint_eps", 1e-30},
        {"kappa_monotonicity_slack", 0.02},
        {"residual_refinement_slack", 0.1},
    };
}

double Tolerances::get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw ConfigError("unknown tolerance: " + name);
    return it->second;
}

void Tolerances::set(const std::string& name, double value) {
    if (!values_.count(name)) throw ConfigError("unknown tolerance: " + name);
    values_[name] = value;
}

namespace {

void reject_unknown(const nlohmann::json& j, const std::vector<std::string>& known,
                    const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": object expected");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : known)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

template <typename T>
T get_or(const nlohmann::json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

}  // namespace

double RunConfig::effective_kappa() const {
    if (!kappa_auto) return params.kappa;
    const double kt = (1.0 + stepper.t_end) / stepper.t_end;
    return kt * params.n_bar / (params.gamma - 1.0);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["grid"] = {{"dim", grid.dim()},
                 {"points_per_axis", grid.points_per_axis()},
                 {"box_length", grid.box_length()}};
    j["params"] = {{"gamma", params.gamma},
                   {"kappa", effective_kappa()},
                   {"n_bar", params.n_bar},
                   {"T_L", params.T_L}};
    j["stepper"] = {{"dt", stepper.dt},
                    {"t_end", stepper.t_end},
                    {"snapshot_stride", stepper.snapshot_stride},
                    {"scheme", stepper.scheme == Scheme::rk4_explicit ? "rk4_explicit"
                                                                      : "exponential_rk4"}};
    j["data"] = {{"family", to_string(data.name)},
                 {"amplitude", data.amplitude},
                 {"seed", data.seed}};
    j["experiment"] = to_string(experiment);
    j["output_dir"] = output_dir.string();
    j["max_iterations"] = max_iterations;
    j["delta_tol"] = delta_tol;
    j["ensemble_size"] = ensemble_size;
    j["retained_iterates"] = retained_iterates;
    j["threads"] = threads;
    j["perturbation_sizes"] = perturbation_sizes;
    j["kappa_factors"] = kappa_factors;
    j["tolerances"] = tolerances.all();
    return j;
}

RunConfig parse_config(const nlohmann::json& j) {
    reject_unknown(j, {"grid", "params", "stepper", "data", "experiment", "output_dir",
                       "max_iterations", "delta_tol", "ensemble_size", "retained_iterates",
                       "threads", "perturbation_sizes", "kappa_factors", "tolerances"},
                   "config");
    RunConfig cfg;
    try {
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            reject_unknown(g, {"dim", "points_per_axis", "box_length"}, "grid");
            cfg.grid = Grid(get_or(g, "dim", 2), get_or(g, "points_per_axis", 128),
                            get_or(g, "box_length", kTwoPi));
        }
        if (j.contains("stepper")) {
            const auto& s = j.at("stepper");
            reject_unknown(s, {"dt", "t_end", "snapshot_stride", "scheme"}, "stepper");
            cfg.stepper.dt = get_or(s, "dt", cfg.stepper.dt);
            cfg.stepper.t_end = get_or(s, "t_end", cfg.stepper.t_end);
            cfg.stepper.snapshot_stride = get_or(s, "snapshot_stride", 1);
            const std::string scheme = get_or<std::string>(s, "scheme", "rk4_explicit");
            if (scheme == "rk4_explicit")
                cfg.stepper.scheme = Scheme::rk4_explicit;
            else if (scheme == "exponential_rk4")
                cfg.stepper.scheme = Scheme::exponential_rk4;
            else
                throw ConfigError("unknown scheme: " + scheme);
            cfg.stepper.validate();
        }
        if (j.contains("params")) {
            const auto& p = j.at("params");
            reject_unknown(p, {"gamma", "kappa", "n_bar", "T_L"}, "params");
            cfg.params.gamma = get_or(p, "gamma", cfg.params.gamma);
            cfg.params.n_bar = get_or(p, "n_bar", cfg.params.n_bar);
            cfg.params.T_L = get_or(p, "T_L", cfg.params.T_L);
            if (p.contains("kappa")) {
                if (p.at("kappa").is_string()) {
                    if (p.at("kappa").get<std::string>() != "auto")
                        throw ConfigError("params.kappa: number or \"auto\"");
                    cfg.kappa_auto = true;
                } else {
                    cfg.params.kappa = p.at("kappa").get<double>();
                    cfg.kappa_auto = false;
                }
            }
        }
        cfg.params.kappa = cfg.effective_kappa();
        cfg.kappa_auto = false;
        cfg.params.validate();
        if (j.contains("data")) {
            const auto& d = j.at("data");
            reject_unknown(d, {"family", "amplitude", "seed"}, "data");
            cfg.data.name = data_family_from_string(get_or<std::string>(d, "family", "gaussian_bump"));
            cfg.data.amplitude = get_or(d, "amplitude", 0.01);
            cfg.data.seed = get_or<std::uint64_t>(d, "seed", 1);
        }
        if (j.contains("experiment"))
            cfg.experiment = experiment_from_string(j.at("experiment").get<std::string>());
        if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
        cfg.max_iterations = get_or(j, "max_iterations", cfg.max_iterations);
        cfg.delta_tol = get_or(j, "delta_tol", cfg.delta_tol);
        cfg.ensemble_size = get_or(j, "ensemble_size", cfg.ensemble_size);
        cfg.retained_iterates = get_or(j, "retained_iterates", cfg.retained_iterates);
        cfg.threads = get_or(j, "threads", cfg.threads);
        cfg.perturbation_sizes =
            get_or<std::vector<double>>(j, "perturbation_sizes", cfg.perturbation_sizes);
        cfg.kappa_factors = get_or<std::vector<double>>(j, "kappa_factors", cfg.kappa_factors);
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            if (!t.is_object()) throw ConfigError("tolerances: object expected");
            for (auto it = t.begin(); it != t.end(); ++it)
                cfg.tolerances.set(it.key(), it.value().get<double>());
        }
        if (cfg.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
        if (cfg.ensemble_size < 1) throw ConfigError("ensemble_size must be >= 1");
        if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace eplab
