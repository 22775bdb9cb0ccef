// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "eplab/field_io.hpp"
#include "eplab/parallel.hpp"
#include "eplab/random_fields.hpp"

namespace eplab {

namespace {

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
}

nlohmann::json base_manifest(const RunConfig& cfg) {
    nlohmann::json m;
    m["experiment"] = to_string(cfg.experiment);
    m["config"] = cfg.to_json();
    m["sigma"] = sigma_index(cfg.grid);
    m["timestamp"] = timestamp_now();
    return m;
}

PhysicalParams effective_params(const RunConfig& cfg) {
    PhysicalParams pp = cfg.params;
    pp.kappa = cfg.effective_kappa();
    return pp;
}

}  // namespace

std::string report_summary_text(const IterationTrace& trace) {
    std::ostringstream os;
    os << "  m   uniform-bound        delta               ratio\n";
    for (std::size_t i = 0; i < trace.delta_history.size(); ++i) {
        char line[128];
        if (i == 0)
            std::snprintf(line, sizeof line, "%3zu   %-18.12g   %-18.12g   -\n", i + 1,
                          trace.uniform_bound_history[i], trace.delta_history[i]);
        else
            std::snprintf(line, sizeof line, "%3zu   %-18.12g   %-18.12g   %.6f\n", i + 1,
                          trace.uniform_bound_history[i], trace.delta_history[i],
                          trace.delta_history[i] / std::max(trace.delta_history[i - 1], 1e-300));
        os << line;
    }
    os << "verdict: " << trace.verdict;
    if (trace.verdict == "nonconvergent")
        os << " (suggest halving t_end below " << trace.final_T << ")";
    os << "\n";
    if (!trace.constraint_residuals.empty()) {
        double worst = 0.0;
        for (double r : trace.constraint_residuals) worst = std::max(worst, r);
        os << "constraint residual: max " << worst << " over " << trace.constraint_residuals.size()
           << " snapshots\n";
    }
    return os.str();
}

nlohmann::json report_summary_json(const IterationTrace& trace) {
    nlohmann::json per_m = nlohmann::json::array();
    for (std::size_t i = 0; i < trace.delta_history.size(); ++i) {
        nlohmann::json row{{"m", i + 1},
                           {"uniform_bound", trace.uniform_bound_history[i]},
                           {"delta", trace.delta_history[i]}};
        if (i > 0)
            row["ratio"] = trace.delta_history[i] / std::max(trace.delta_history[i - 1], 1e-300);
        per_m.push_back(row);
    }
    return nlohmann::json{{"per_m", per_m},
                          {"verdict", trace.verdict},
                          {"converged", trace.converged},
                          {"attempts", trace.attempts},
                          {"final_T", trace.final_T},
                          {"constraint_residuals", trace.constraint_residuals}};
}

void write_series_snapshots(const std::filesystem::path& dir, const StateSeries& s, int stride) {
    std::filesystem::create_directories(dir);
    nlohmann::json index;
    index["fields"] = {"rho", "u", "theta", "E"};
    index["pattern"] = "<field>_<index>.fld";
    nlohmann::json times = nlohmann::json::array();
    int written = 0;
    for (std::size_t j = 0; j < s.states.size(); ++j) {
        if (j % stride != 0 && j + 1 != s.states.size()) continue;
        const EPState& st = s.states[j];
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "_%05d.fld", written);
        write_field_snapshot(dir / ("rho" + std::string(suffix)), st.rho, "rho", s.times[j]);
        write_field_snapshot(dir / ("u" + std::string(suffix)), st.u, "u", s.times[j]);
        write_field_snapshot(dir / ("theta" + std::string(suffix)), st.theta, "theta", s.times[j]);
        write_field_snapshot(dir / ("E" + std::string(suffix)), st.E, "E", s.times[j]);
        times.push_back(s.times[j]);
        ++written;
    }
    index["times"] = times;
    write_json(dir / "index.json", index);
}

StateSeries read_series_snapshots(const std::filesystem::path& dir) {
    std::ifstream in(dir / "index.json");
    if (!in) throw Error("missing series index: " + (dir / "index.json").string());
    nlohmann::json index;
    in >> index;
    StateSeries s;
    const auto times = index.at("times").get<std::vector<double>>();
    for (std::size_t j = 0; j < times.size(); ++j) {
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "_%05zu.fld", j);
        EPState st{read_field_snapshot(dir / ("rho" + std::string(suffix))).field,
                   read_field_snapshot(dir / ("u" + std::string(suffix))).field,
                   read_field_snapshot(dir / ("theta" + std::string(suffix))).field,
                   read_field_snapshot(dir / ("E" + std::string(suffix))).field, times[j]};
        s.times.push_back(times[j]);
        s.states.push_back(std::move(st));
    }
    return s;
}

void write_time_series(const std::filesystem::path& dir, const TimeSeries& ts,
                       const std::string& name, int stride) {
    std::filesystem::create_directories(dir);
    nlohmann::json index;
    index["fields"] = {name};
    index["pattern"] = "<field>_<index>.fld";
    nlohmann::json times = nlohmann::json::array();
    int written = 0;
    for (std::size_t j = 0; j < ts.fields.size(); ++j) {
        if (j % stride != 0 && j + 1 != ts.fields.size()) continue;
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "_%05d.fld", written);
        write_field_snapshot(dir / (name + suffix), ts.fields[j], name, ts.times[j]);
        times.push_back(ts.times[j]);
        ++written;
    }
    index["times"] = times;
    write_json(dir / "index.json", index);
}

TimeSeries read_time_series(const std::filesystem::path& dir) {
    std::ifstream in(dir / "index.json");
    if (!in) throw Error("missing series index: " + (dir / "index.json").string());
    nlohmann::json index;
    in >> index;
    const std::string name = index.at("fields").at(0).get<std::string>();
    const auto times = index.at("times").get<std::vector<double>>();
    TimeSeries ts;
    for (std::size_t j = 0; j < times.size(); ++j) {
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "_%05zu.fld", j);
        ts.times.push_back(times[j]);
        ts.fields.push_back(read_field_snapshot(dir / (name + suffix)).field);
    }
    return ts;
}

double measured_contraction_ratio(const IterationTrace& trace) {
    const auto& d = trace.delta_history;
    if (d.size() < 3) return std::numeric_limits<double>::quiet_NaN();
    double log_sum = 0.0;
    int count = 0;
    const std::size_t hi = std::min<std::size_t>(d.size() - 1, 6);
    for (std::size_t m = 2; m <= hi; ++m) {
        log_sum += std::log(d[m] / std::max(d[m - 1], 1e-300));
        ++count;
    }
    return std::exp(log_sum / std::max(count, 1));
}

nlohmann::json simulate_experiment(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    const PhysicalParams pp = effective_params(cfg);
    DyadicPartition P(cfg.grid);
    bool clamped = false;
    EPState data0 = generate_initial_data(cfg.data, cfg.grid, pp, P, &clamped);
    PicardOptions opts;
    opts.retain_cap = cfg.retained_iterates;
    IterationTrace trace =
        run_iteration(data0, pp, cfg.stepper, cfg.max_iterations, cfg.delta_tol, P, opts);

    nlohmann::json manifest = base_manifest(cfg);
    manifest["kappa_tilde"] = pp.kappa_tilde();
    manifest["amplitude_clamped"] = clamped;
    manifest["summary"] = report_summary_json(trace);
    if (trace.verdict != "nonconvergent") {
        manifest["mass_history"] = mass_history(trace.final_series(), pp);
        write_series_snapshots(cfg.output_dir / "snapshots", trace.final_series(),
                               cfg.stepper.snapshot_stride);
    }
    write_json(cfg.output_dir / "manifest.json", manifest);
    std::ofstream(cfg.output_dir / "summary.txt") << report_summary_text(trace);
    if (trace.verdict == "nonconvergent")
        throw Divergence("simulate: iteration nonconvergent after " +
                             std::to_string(trace.attempts) + " attempts",
                         trace.m_last, trace.final_T);
    return manifest;
}

namespace {

struct EnsemblePair {
    RealField f;
    RealField g;
};

EnsemblePair ensemble_pair(const Grid& grid, std::uint64_t seed, int member) {
    return {random_bandlimited_field(grid, ensemble_slope(member), seed + 2 * member),
            random_bandlimited_field(grid, ensemble_slope(member + 1), seed + 2 * member + 1)};
}

}  // namespace

nlohmann::json inequalities_experiment(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    const PhysicalParams pp = effective_params(cfg);
    DyadicPartition P(cfg.grid);
    const int n = cfg.ensemble_size;
    const double sigma = sigma_index(cfg.grid);

    // 1. Derivative-vs-scale block ratios.
    InequalityReport bernstein;
    bernstein.name = "bernstein";
    {
        std::vector<BernsteinReport> reps(n);
        parallel_for(n, cfg.threads, [&](std::size_t i) {
            RealField f = random_bandlimited_field(cfg.grid, ensemble_slope(i), cfg.data.seed + i);
            reps[i] = check_bernstein(f, 1, P);
        });
        double inf = std::numeric_limits<double>::infinity();
        for (const auto& r : reps) {
            bernstein.add_ratio(r.sup_ratio);
            inf = std::min(inf, r.inf_ratio);
        }
        bernstein.extras["inf_ratio"] = inf;
    }

    // 2. Classical product bound.
    InequalityReport moser_c;
    moser_c.name = "moser_classical";
    {
        std::vector<double> ratios(n);
        parallel_for(n, cfg.threads, [&](std::size_t i) {
            auto [f, g] = ensemble_pair(cfg.grid, cfg.data.seed + 1000, i);
            ratios[i] = moser_check_classical(f, g, {sigma, 2.0, 1.0}, P).sup_ratio;
        });
        for (double r : ratios) moser_c.add_ratio(r);
    }

    // 3. Generalized product bound, exercised on the solver's own use case:
    //    f = h1(rho), g = lap(theta), exponents (inf, 2, 2, inf) at s = sigma-2.
    InequalityReport moser_g;
    moser_g.name = "moser_generalized";
    {
        std::vector<InequalityReport> reps(n);
        parallel_for(n, cfg.threads, [&](std::size_t i) {
            auto [a, b] = ensemble_pair(cfg.grid, cfg.data.seed + 2000, i);
            a *= 0.3 / std::max(a.max_abs(), 1e-300);
            RealField f = compose_h1(a, pp.gamma, pp.kappa, pp.n_bar);
            RealField g = laplacian(b);
            reps[i] = moser_check_generalized(f, g, sigma - 2.0, 2.0, kInf, 2.0, 2.0, kInf, 1.0, P);
        });
        for (auto& r : reps) {
            moser_g.add_ratio(r.sup_ratio);
            for (const auto& [k, v] : r.extras) {
                auto it = moser_g.extras.find(k);
                moser_g.extras[k] = it == moser_g.extras.end() ? v : std::max(it->second, v);
            }
        }
    }

    // 4. Commutator block bounds, all three index cases (grad on case 0/2,
    //    div on case 1 to cover both operators).
    InequalityReport comm;
    comm.name = "commutator";
    {
        std::vector<std::array<InequalityReport, 3>> reps(n);
        parallel_for(n, cfg.threads, [&](std::size_t i) {
            RealField fv =
                random_bandlimited_field(cfg.grid, ensemble_slope(i), cfg.data.seed + 3000 + i,
                                         cfg.grid.dim());
            RealField gs = random_bandlimited_field(cfg.grid, ensemble_slope(i + 1),
                                                    cfg.data.seed + 4000 + i);
            RealField fs = random_bandlimited_field(cfg.grid, ensemble_slope(i),
                                                    cfg.data.seed + 5000 + i);
            RealField gv = random_bandlimited_field(cfg.grid, ensemble_slope(i + 1),
                                                    cfg.data.seed + 6000 + i, cfg.grid.dim());
            reps[i][0] = commutator_check(fv, gs, CommutatorOp::gradient, {0}, P);
            reps[i][1] = commutator_check(fs, gv, CommutatorOp::divergence, {1}, P);
            reps[i][2] = commutator_check(fv, gs, CommutatorOp::gradient, {2}, P);
        });
        double sup1 = 0.0, sup2 = 0.0;
        for (auto& r : reps) {
            comm.add_ratio(r[0].sup_ratio);
            comm.absorb_cq(r[0].per_q_cq);
            sup1 = std::max(sup1, r[1].sup_ratio);
            sup2 = std::max(sup2, r[2].sup_ratio);
        }
        comm.extras["case1_sup"] = sup1;
        comm.extras["case2_sup"] = sup2;
    }

    // 5. Composition bound for the density nonlinearity.
    InequalityReport comp;
    comp.name = "composition";
    {
        std::vector<double> ratios(n);
        parallel_for(n, cfg.threads, [&](std::size_t i) {
            RealField rho =
                random_bandlimited_field(cfg.grid, ensemble_slope(i), cfg.data.seed + 7000 + i);
            rho *= 0.5 / std::max(rho.max_abs(), 1e-300);
            ratios[i] = composition_check(rho, pp.n_bar, {sigma, 2.0, 1.0}, P).sup_ratio;
        });
        for (double r : ratios) comp.add_ratio(r);
    }

    nlohmann::json manifest = base_manifest(cfg);
    for (const InequalityReport* r : {&bernstein, &moser_c, &moser_g, &comm, &comp}) {
        write_json(cfg.output_dir / (r->name + ".json"), r->to_json());
        manifest["sup_ratios"][r->name] = r->sup_ratio;
    }
    write_json(cfg.output_dir / "manifest.json", manifest);
    return manifest;
}

nlohmann::json kappa_sweep_experiment(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    DyadicPartition P(cfg.grid);
    nlohmann::json points = nlohmann::json::array();
    for (double factor : cfg.kappa_factors) {
        PhysicalParams pp = effective_params(cfg);
        pp.kappa *= factor;
        EPState data0 = generate_initial_data(cfg.data, cfg.grid, pp, P);
        PicardOptions opts;
        opts.retain_cap = std::max(2, std::min(cfg.retained_iterates, 3));
        IterationTrace trace =
            run_iteration(data0, pp, cfg.stepper, cfg.max_iterations, cfg.delta_tol, P, opts);
        points.push_back({{"kappa_factor", factor},
                          {"kappa_tilde", pp.kappa_tilde()},
                          {"contraction_ratio", measured_contraction_ratio(trace)},
                          {"verdict", trace.verdict}});
    }
    nlohmann::json manifest = base_manifest(cfg);
    manifest["sweep"] = points;
    write_json(cfg.output_dir / "manifest.json", manifest);
    return manifest;
}

nlohmann::json uniqueness_experiment_run(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    const PhysicalParams pp = effective_params(cfg);
    DyadicPartition P(cfg.grid);
    EPState data0 = generate_initial_data(cfg.data, cfg.grid, pp, P);
    PicardOptions opts;
    opts.retain_cap = std::max(2, std::min(cfg.retained_iterates, 3));
    nlohmann::json rows = nlohmann::json::array();
    for (double eps : cfg.perturbation_sizes) {
        UniquenessReport rep = uniqueness_experiment(data0, eps, pp, cfg.stepper, P, opts,
                                                     cfg.max_iterations, cfg.delta_tol);
        rows.push_back({{"perturbation", eps},
                        {"error_metric", rep.error_metric},
                        {"final_time_error", rep.final_time_error}});
    }
    nlohmann::json manifest = base_manifest(cfg);
    manifest["uniqueness"] = rows;
    if (cfg.perturbation_sizes.size() >= 2) {
        const double e0 = rows[0]["error_metric"].get<double>();
        const double e1 = rows[1]["error_metric"].get<double>();
        manifest["error_ratio"] = e0 / std::max(e1, 1e-300);
    }
    write_json(cfg.output_dir / "manifest.json", manifest);
    return manifest;
}

nlohmann::json convergence_study_experiment(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    const PhysicalParams pp = effective_params(cfg);
    DyadicPartition P(cfg.grid);
    EPState data0 = generate_initial_data(cfg.data, cfg.grid, pp, P);
    PicardOptions opts;
    opts.retain_cap = 2;

    nlohmann::json rows = nlohmann::json::array();
    double residual_coarse = 0.0;
    for (int level = 0; level < 2; ++level) {
        TimeStepper ts = cfg.stepper;
        ts.dt = cfg.stepper.dt / (level == 0 ? 1.0 : 2.0);
        IterationTrace trace =
            run_iteration(data0, pp, ts, cfg.max_iterations, cfg.delta_tol, P, opts);
        EquationResiduals res = residual_check(trace.final_series(), pp);
        const double worst = res.max_transformed();
        if (level == 0) residual_coarse = worst;
        rows.push_back({{"dt", ts.effective_dt()},
                        {"max_residual", worst},
                        {"verdict", trace.verdict}});
    }
    nlohmann::json manifest = base_manifest(cfg);
    manifest["refinement"] = rows;
    manifest["residual_factor"] =
        residual_coarse / std::max(rows[1]["max_residual"].get<double>(), 1e-300);
    write_json(cfg.output_dir / "manifest.json", manifest);
    return manifest;
}

nlohmann::json run_experiment(const RunConfig& cfg) {
    switch (cfg.experiment) {
        case Experiment::simulate: return simulate_experiment(cfg);
        case Experiment::inequalities: return inequalities_experiment(cfg);
        case Experiment::kappa_sweep: return kappa_sweep_experiment(cfg);
        case Experiment::uniqueness: return uniqueness_experiment_run(cfg);
        case Experiment::convergence_study: return convergence_study_experiment(cfg);
    }
    throw ConfigError("unknown experiment");
}

}  // namespace eplab
