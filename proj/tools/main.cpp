// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "eplab/acceptance.hpp"
#include "eplab/experiments.hpp"

namespace {

int thread_override(int cli_threads) {
    if (const char* env = std::getenv("EPLAB_THREADS")) {
        const int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return cli_threads;
}

// The `simulate` subcommand is the general runner: it executes whatever
// experiment the config names (simulate by default, convergence_study when
// asked). The other subcommands force their experiment.
int run_from_config(const std::string& config_path, std::optional<eplab::Experiment> experiment,
                    const std::string& output_override, long long seed_override,
                    int threads_override) {
    eplab::RunConfig cfg = eplab::load_config(config_path);
    if (experiment) cfg.experiment = *experiment;
    if (!output_override.empty()) cfg.output_dir = output_override;
    if (seed_override >= 0) cfg.data.seed = static_cast<std::uint64_t>(seed_override);
    if (threads_override >= 1) cfg.threads = threads_override;
    cfg.threads = thread_override(cfg.threads);
    nlohmann::json manifest = eplab::run_experiment(cfg);
    std::cout << "wrote " << (cfg.output_dir / "manifest.json").string() << "\n";
    if (manifest.contains("summary"))
        std::cout << "verdict: " << manifest["summary"]["verdict"].get<std::string>() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral laboratory for a heat-conducting Euler-Poisson system"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    long long seed = -1;
    int threads = 0;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "JSON run configuration");
        if (config_required) opt->required();
        sub->add_option("--output", output_dir, "output directory override");
        sub->add_option("--seed", seed, "seed override");
        sub->add_option("--threads", threads, "worker threads (EPLAB_THREADS overrides)");
    };

    auto* sim = app.add_subcommand("simulate", "run the iteration solver");
    auto* ineq = app.add_subcommand("inequalities", "run the inequality ensembles");
    auto* sweep = app.add_subcommand("sweep", "heat-conductivity sweep");
    auto* uniq = app.add_subcommand("uniqueness", "perturbation-decay experiment");
    auto* check = app.add_subcommand("check", "run the acceptance suite");
    bool no_smoke = false;
    check->add_flag("--no-3d", no_smoke, "skip the 3-D smoke block");
    for (auto* sub : {sim, ineq, sweep, uniq}) add_common(sub, true);
    add_common(check, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            eplab::AcceptanceOptions opts;
            opts.threads = thread_override(threads >= 1 ? threads : 2);
            if (seed >= 0) opts.seed = static_cast<std::uint64_t>(seed);
            opts.with_3d_smoke = !no_smoke;
            auto results = eplab::run_acceptance(opts, std::cout);
            return eplab::all_passed(results) ? 0 : 4;
        }
        std::optional<eplab::Experiment> exp;  // simulate: honor the config
        if (ineq->parsed()) exp = eplab::Experiment::inequalities;
        if (sweep->parsed()) exp = eplab::Experiment::kappa_sweep;
        if (uniq->parsed()) exp = eplab::Experiment::uniqueness;
        return run_from_config(config_path, exp, output_dir, seed, threads);
    } catch (const eplab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const eplab::Divergence& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return 3;
    } catch (const eplab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
