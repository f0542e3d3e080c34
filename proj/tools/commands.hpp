/*
 * Copyright 2026 The nltiso Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#ifndef NLTISO_TOOLS_COMMANDS_HPP
#define NLTISO_TOOLS_COMMANDS_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nltiso/nltiso.hpp>

namespace nltiso::cli
{

/// Effective settings shared by every subcommand. Unset optionals take the
/// defaults of the experiment being run.
struct RunConfig
{
    std::string method = "nltiso";
    std::optional<double> lambda;
    std::optional<double> gamma;
    std::optional<double> kernel_var;
    std::size_t window = 2000;
    std::size_t order = 2;
    StepRule step_rule = StepRule::normalized;
    std::size_t threads = 1;
    std::string out_dir = ".";
    std::size_t snapshot_every = 100;
    std::uint64_t seed = 0;
    std::size_t burn_in = 500;

    std::optional<std::size_t> nodes;
    std::optional<std::size_t> length;
    std::optional<double> edge_prob;
    std::optional<double> noise_var;
    std::optional<bool> tv_sparse;
};

/// Estimation defaults per experiment kind.
struct MethodDefaults
{
    double lambda;
    double gamma;
    double kernel_var;
};

inline MethodDefaults defaults_for(const std::string& kind)
{
    if (kind == "timevarying")
        return {1e-6, 10.0, 0.02};
    return {0.1, 10.0, 0.1};
}

inline Hyperparams resolve_hyperparams(const RunConfig& rc, const MethodDefaults& d)
{
    Hyperparams h;
    h.lambda = rc.lambda.value_or(d.lambda);
    h.gamma = rc.gamma.value_or(d.gamma);
    h.order = rc.order;
    h.window = rc.window == 0 ? unbounded_window : rc.window;
    h.step_rule = rc.step_rule;
    h.validate();
    return h;
}

inline KernelSpec resolve_kernel(const RunConfig& rc, const MethodDefaults& d)
{
    KernelSpec k{KernelKind::gaussian, rc.kernel_var.value_or(d.kernel_var)};
    k.validate();
    return k;
}

inline GenConfig resolve_gen_config(const RunConfig& rc)
{
    GenConfig c;
    c.num_nodes = rc.nodes.value_or(c.num_nodes);
    c.num_times = rc.length.value_or(c.num_times);
    c.order = rc.order;
    c.edge_prob = rc.edge_prob.value_or(c.edge_prob);
    c.noise_var = rc.noise_var.value_or(c.noise_var);
    c.tv_sparse = rc.tv_sparse.value_or(c.tv_sparse);
    c.seed = rc.seed;
    c.validate();
    return c;
}

inline std::string out_path(const RunConfig& rc, const std::string& name)
{
    return (std::filesystem::path(rc.out_dir) / name).string();
}

inline void ensure_out_dir(const RunConfig& rc)
{
    std::error_code ec;
    std::filesystem::create_directories(rc.out_dir, ec);
    if (ec || !std::filesystem::is_directory(rc.out_dir))
        throw InputError("cannot create output directory '" + rc.out_dir + "'");
}

/// Sample variance (1 / (L - 1)) of every row.
inline std::vector<double> row_variances(const SeriesMatrix& s)
{
    std::vector<double> out;
    for (std::size_t n = 0; n < s.num_nodes(); ++n) {
        const auto row = s.row(n);
        double mean = 0.0;
        for (double v : row)
            mean += v;
        mean /= static_cast<double>(row.size());
        double ss = 0.0;
        for (double v : row)
            ss += (v - mean) * (v - mean);
        out.push_back(row.size() > 1 ? ss / static_cast<double>(row.size() - 1) : 0.0);
    }
    return out;
}

/// Everything one estimator run produces.
struct MethodRun
{
    Tensor3 final_adjacency;
    TrajectoryRecorder recorder;
};

inline MethodRun run_method(const std::string& method, const SeriesMatrix& series, const Hyperparams& h,
                            const KernelSpec& k, std::size_t snapshot_every, std::size_t threads,
                            std::size_t average_from = std::numeric_limits<std::size_t>::max())
{
    MethodRun run{Tensor3{}, TrajectoryRecorder(series.num_nodes(), snapshot_every, average_from)};
    const RunOptions opts{threads};
    if (method == "nltiso") {
        const auto states = run_online(series, k, h, run.recorder, opts);
        run.final_adjacency = adjacency_from_state(states).values;
    } else if (method == "tirso") {
        const auto states = run_tirso(series, h, run.recorder, opts);
        run.final_adjacency = adjacency_from_state(states).values;
    } else {
        throw ConfigError("unknown method '" + method + "' (expected nltiso or tirso)");
    }
    return run;
}

inline json method_config(const std::string& method, const Hyperparams& h, const KernelSpec& k)
{
    json j{{"method", method}, {"hyperparams", to_json(h)}};
    if (method == "nltiso")
        j["kernel"] = to_json(k);
    return j;
}

/// Writes the per-method artifacts and returns the file names.
inline std::vector<std::string> write_method_artifacts(const RunConfig& rc, const std::string& method,
                                                       const MethodRun& run, const std::vector<std::string>& ids,
                                                       const std::vector<std::string>& preamble)
{
    std::vector<std::string> files;
    auto emit = [&](const std::string& name) {
        files.push_back(name);
        return out_path(rc, name);
    };
    write_adjacency_csv(emit("adjacency_" + method + ".csv"), run.final_adjacency, ids, preamble);
    write_adjacency_csv(emit("adjacency_" + method + "_normalized.csv"),
                        normalize_adjacency(AdjacencyEstimate{run.final_adjacency, 0}).values, ids, preamble);
    write_ise_csv(emit("ise_" + method + ".csv"), run.recorder.ise_trace(), ids, preamble);
    write_prediction_csv(emit("trace_" + method + ".csv"), run.recorder, ids, preamble);
    if (rc.snapshot_every > 0)
        write_snapshots_csv(emit("snapshots_" + method + ".csv"), run.recorder.snapshots(), ids, preamble);
    return files;
}

inline json ise_summary(const MethodRun& run, std::size_t burn_in)
{
    const auto avg = time_averaged_ise(run.recorder.ise_trace(), burn_in);
    double mean = 0.0;
    for (double v : avg)
        mean += v;
    return json{{"burn_in", burn_in}, {"per_node", avg}, {"mean", mean / static_cast<double>(avg.size())}};
}

inline json wrap_truth(const GenConfig& cfg, const std::string& kind, const TrueGraph& g)
{
    return json{{"kind", kind}, {"config", to_json(cfg)}, {"graph", to_json(g)}};
}

inline TrueGraph read_truth(const std::string& path)
{
    const json j = read_json(path);
    return true_graph_from_json(j.contains("graph") ? j.at("graph") : j);
}

/// `generate <stationary|timevarying>`: series.csv plus truth.json.
inline int cmd_generate(const RunConfig& rc, const std::string& kind)
{
    const GenConfig cfg = resolve_gen_config(rc);
    ensure_out_dir(rc);
    const json config{{"command", "generate"}, {"kind", kind}, {"generator", to_json(cfg)}};
    const auto preamble = config_preamble(config);
    if (kind == "stationary") {
        const auto g = gen_stationary(cfg);
        write_csv(table_from_series(g.series), out_path(rc, "series.csv"), false, preamble);
        write_json(out_path(rc, "truth.json"), wrap_truth(cfg, kind, g.truth));
        Tensor3 magnitude = g.truth.weights;
        for (double& v : magnitude.flat())
            v = std::abs(v);
        write_adjacency_csv(out_path(rc, "adjacency_true.csv"), magnitude, g.series.node_ids(), preamble);
    } else if (kind == "timevarying") {
        const auto g = gen_timevarying(cfg);
        write_csv(table_from_series(g.series), out_path(rc, "series.csv"), false, preamble);
        write_json(out_path(rc, "truth.json"), wrap_truth(cfg, kind, g.truth));
        std::vector<AdjacencyEstimate> snaps;
        for (std::size_t t = 0; t < g.trajectory.size(); ++t)
            if ((rc.snapshot_every > 0 && t % rc.snapshot_every == 0) || t + 1 == g.trajectory.size())
                snaps.push_back(AdjacencyEstimate{g.trajectory[t], t});
        write_snapshots_csv(out_path(rc, "adjacency_true_trajectory.csv"), snaps, g.series.node_ids(), preamble);
    } else {
        throw ConfigError("unknown generator '" + kind + "' (expected stationary or timevarying)");
    }
    return 0;
}

struct EstimateArgs
{
    std::string input;
    bool time_column = false;
    std::optional<double> resample_period;
    bool standardize = true;
    std::size_t average_last = 720;
};

/// The in-memory part of `estimate`, shared with tests.
struct EstimateResult
{
    Standardized prepared;
    MethodRun run;
    Hyperparams hyperparams;
    KernelSpec kernel;
};

inline EstimateResult estimate_series(const RunConfig& rc, const SeriesMatrix& raw, bool do_standardize,
                                      std::size_t average_last)
{
    const MethodDefaults d = defaults_for("stationary");
    const Hyperparams h = resolve_hyperparams(rc, d);
    const KernelSpec k = resolve_kernel(rc, d);
    Standardized prepared;
    if (do_standardize) {
        prepared = standardize(raw);
    } else {
        prepared.series = raw;
        prepared.means.assign(raw.num_nodes(), 0.0);
        prepared.scales.assign(raw.num_nodes(), 1.0);
    }
    const std::size_t T = prepared.series.num_times();
    const std::size_t average_from = average_last == 0 ? std::numeric_limits<std::size_t>::max()
                                                       : T - std::min(average_last, T - h.order);
    auto run = run_method(rc.method, prepared.series, h, k, rc.snapshot_every, rc.threads, average_from);
    return EstimateResult{std::move(prepared), std::move(run), h, k};
}

inline int cmd_estimate(const RunConfig& rc, const EstimateArgs& args)
{
    RawTable table = load_csv(args.input, CsvOptions{args.time_column, ',', 1.0});
    if (args.resample_period)
        table = resample_uniform(table, *args.resample_period);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> ids;
    for (const auto& col : table.columns) {
        rows.push_back(col.values);
        ids.push_back(col.label);
    }
    const SeriesMatrix raw(std::move(rows), ids);
    auto result = estimate_series(rc, raw, args.standardize, args.average_last);
    ensure_out_dir(rc);

    const json config{{"command", "estimate"},
                      {"input", args.input},
                      {"time_column", args.time_column},
                      {"resample_period", args.resample_period ? json(*args.resample_period) : json(nullptr)},
                      {"standardize", args.standardize},
                      {"average_last", args.average_last},
                      {"snapshot_every", rc.snapshot_every},
                      {"seed", rc.seed},
                      {"estimator", method_config(rc.method, result.hyperparams, result.kernel)}};
    const auto preamble = config_preamble(config);
    auto files = write_method_artifacts(rc, rc.method, result.run, ids, preamble);
    if (auto avg = result.run.recorder.averaged_adjacency()) {
        write_adjacency_csv(out_path(rc, "adjacency_" + rc.method + "_average.csv"), *avg, ids, preamble);
        files.push_back("adjacency_" + rc.method + "_average.csv");
    }
    const std::size_t burn_in = std::min(rc.burn_in, result.run.recorder.length() - 1);
    json summary{{"config", config},
                 {"nodes", ids},
                 {"means", result.prepared.means},
                 {"scales", result.prepared.scales},
                 {"ise", ise_summary(result.run, burn_in)},
                 {"artifacts", files}};
    write_json(out_path(rc, "summary.json"), summary);
    return 0;
}

struct EvaluateArgs
{
    std::string estimate;
    std::string truth;
    double threshold = 0.0;
    std::optional<std::size_t> k;
    std::optional<std::string> ise;
};

/// Truth from a generator truth.json, or from an adjacency CSV whose
/// entries above `threshold` count as edges.
inline TrueGraph load_truth_any(const std::string& path, double threshold)
{
    if (std::filesystem::path(path).extension() == ".csv") {
        const auto f = read_adjacency_csv(path);
        TrueGraph g;
        g.weights = f.values;
        g.mask.assign(g.weights.size(), 0);
        const auto v = g.weights.flat();
        for (std::size_t i = 0; i < v.size(); ++i)
            g.mask[i] = v[i] > threshold ? 1 : 0;
        return g;
    }
    return read_truth(path);
}

inline json evaluate_files(const RunConfig& rc, const EvaluateArgs& args)
{
    const auto est = read_adjacency_csv(args.estimate);
    const TrueGraph truth = load_truth_any(args.truth, args.threshold);
    if (!est.values.same_shape(truth.weights))
        throw DimensionError("estimate '" + args.estimate + "' has N=" + std::to_string(est.values.num_nodes()) +
                             ", P=" + std::to_string(est.values.order()) + " but truth '" + args.truth +
                             "' has N=" + std::to_string(truth.num_nodes()) + ", P=" + std::to_string(truth.order()));
    const std::size_t k = args.k.value_or(truth.count_cross_edges());
    json report{{"config",
                 {{"command", "evaluate"},
                  {"estimate", args.estimate},
                  {"truth", args.truth},
                  {"threshold", args.threshold},
                  {"k", k}}},
                {"support", to_json(support_metrics(est.values, truth, k))}};
    if (args.ise) {
        const IseTrace trace = read_ise_csv(*args.ise);
        const auto avg = time_averaged_ise(trace, rc.burn_in);
        report["config"]["ise"] = *args.ise;
        report["config"]["burn_in"] = rc.burn_in;
        report["time_averaged_ise"] = avg;
    }
    return report;
}

inline int cmd_evaluate(const RunConfig& rc, const EvaluateArgs& args)
{
    const json report = evaluate_files(rc, args);
    ensure_out_dir(rc);
    write_json(out_path(rc, "metrics.json"), report);
    std::cout << report.dump(2) << '\n';
    return 0;
}

/// `experiment <stationary|timevarying>`: generate with the defaults of that
/// experiment, run both estimators, write every artifact and summary.json.
inline int cmd_experiment(const RunConfig& rc, const std::string& kind)
{
    if (kind != "stationary" && kind != "timevarying")
        throw ConfigError("unknown experiment '" + kind + "' (expected stationary or timevarying)");
    const GenConfig cfg = resolve_gen_config(rc);
    const MethodDefaults d = defaults_for(kind);
    const Hyperparams h = resolve_hyperparams(rc, d);
    const KernelSpec k = resolve_kernel(rc, d);
    ensure_out_dir(rc);

    SeriesMatrix series;
    TrueGraph truth;
    std::vector<Tensor3> trajectory;
    if (kind == "stationary") {
        auto g = gen_stationary(cfg);
        series = std::move(g.series);
        truth = std::move(g.truth);
    } else {
        auto g = gen_timevarying(cfg);
        series = std::move(g.series);
        truth = std::move(g.truth);
        trajectory = std::move(g.trajectory);
    }

    // short runs keep at least one averaged step
    const std::size_t burn_in = std::min(rc.burn_in, series.num_times() - h.order - 1);
    const json config{{"command", "experiment"},
                      {"kind", kind},
                      {"seed", rc.seed},
                      {"generator", to_json(cfg)},
                      {"methods", {method_config("nltiso", h, k), method_config("tirso", h, k)}},
                      {"burn_in", burn_in},
                      {"snapshot_every", rc.snapshot_every}};
    const auto preamble = config_preamble(config);
    const auto& ids = series.node_ids();

    std::vector<std::string> files{"series.csv", "truth.json", "adjacency_true.csv"};
    write_csv(table_from_series(series), out_path(rc, "series.csv"), false, preamble);
    write_json(out_path(rc, "truth.json"), wrap_truth(cfg, kind, truth));
    const Tensor3 shown_truth = kind == "stationary" ? truth.weights : trajectory.back();
    Tensor3 magnitude = shown_truth;
    for (double& v : magnitude.flat())
        v = std::abs(v);
    write_adjacency_csv(out_path(rc, "adjacency_true.csv"), magnitude, ids, preamble);
    write_adjacency_csv(out_path(rc, "adjacency_true_normalized.csv"),
                        normalize_adjacency(AdjacencyEstimate{magnitude, 0}).values, ids, preamble);
    files.push_back("adjacency_true_normalized.csv");
    if (!trajectory.empty() && rc.snapshot_every > 0) {
        std::vector<AdjacencyEstimate> snaps;
        for (std::size_t t = 0; t < trajectory.size(); t += rc.snapshot_every)
            snaps.push_back(AdjacencyEstimate{trajectory[t], t});
        write_snapshots_csv(out_path(rc, "adjacency_true_trajectory.csv"), snaps, ids, preamble);
        files.push_back("adjacency_true_trajectory.csv");
    }

    json results = json::object();
    const std::size_t k_edges = truth.count_cross_edges();
    for (const std::string method : {"nltiso", "tirso"}) {
        const MethodRun run = run_method(method, series, h, k, rc.snapshot_every, rc.threads);
        const auto written = write_method_artifacts(rc, method, run, ids, preamble);
        files.insert(files.end(), written.begin(), written.end());
        results[method] = json{{"support", to_json(support_metrics(run.final_adjacency, truth, k_edges))},
                               {"ise", ise_summary(run, burn_in)}};
    }
    files.push_back("summary.json");
    const json summary{{"config", config},
                       {"series_variance", row_variances(series)},
                       {"results", results},
                       {"artifacts", files}};
    write_json(out_path(rc, "summary.json"), summary);
    return 0;
}

} // namespace nltiso::cli

#endif
