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

#ifndef NLTISO_ARTIFACTS_HPP
#define NLTISO_ARTIFACTS_HPP

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "adjacency.hpp"
#include "error.hpp"
#include "estimator.hpp"
#include "graph.hpp"
#include "ingest.hpp"
#include "kernel.hpp"
#include "metrics.hpp"
#include "synthgen.hpp"
#include "trajectory.hpp"

// Plot-ready artifact files. Every CSV starts with '#' comment lines that
// echo the effective configuration; load_csv and the readers here skip
// them. Doubles are printed with 17 significant digits.

namespace nltiso
{

using json = nlohmann::ordered_json;

inline json to_json(const Hyperparams& h)
{
    return json{{"lambda", h.lambda},
                {"gamma", h.gamma},
                {"order", h.order},
                {"window", h.window == unbounded_window ? json(nullptr) : json(h.window)},
                {"step_rule", to_string(h.step_rule)}};
}

inline json to_json(const KernelSpec& k)
{
    return json{{"kind", "gaussian"}, {"variance", k.variance}};
}

inline json to_json(const GenConfig& c)
{
    return json{{"num_nodes", c.num_nodes},         {"num_times", c.num_times},
                {"order", c.order},                 {"edge_prob", c.edge_prob},
                {"adjacency_mean", c.adjacency_mean}, {"adjacency_var", c.adjacency_var},
                {"beta_var", c.beta_var},           {"gen_kernel_var", c.gen_kernel_var},
                {"num_centers", c.num_centers},     {"noise_var", c.noise_var},
                {"init_var", c.init_var},           {"drift_amplitude", c.drift_amplitude},
                {"drift_frequency", c.drift_frequency}, {"tv_init_mean", c.tv_init_mean},
                {"tv_init_var", c.tv_init_var},     {"tv_sparse", c.tv_sparse},
                {"seed", c.seed}};
}

inline GenConfig gen_config_from_json(const json& j)
{
    GenConfig c;
    c.num_nodes = j.at("num_nodes").get<std::size_t>();
    c.num_times = j.at("num_times").get<std::size_t>();
    c.order = j.at("order").get<std::size_t>();
    c.edge_prob = j.at("edge_prob").get<double>();
    c.adjacency_mean = j.at("adjacency_mean").get<double>();
    c.adjacency_var = j.at("adjacency_var").get<double>();
    c.beta_var = j.at("beta_var").get<double>();
    c.gen_kernel_var = j.at("gen_kernel_var").get<double>();
    c.num_centers = j.at("num_centers").get<std::size_t>();
    c.noise_var = j.at("noise_var").get<double>();
    c.init_var = j.at("init_var").get<double>();
    c.drift_amplitude = j.at("drift_amplitude").get<double>();
    c.drift_frequency = j.at("drift_frequency").get<double>();
    c.tv_init_mean = j.at("tv_init_mean").get<double>();
    c.tv_init_var = j.at("tv_init_var").get<double>();
    c.tv_sparse = j.at("tv_sparse").get<bool>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

/// NaN and infinities become null.
inline json finite_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

inline json to_json(const SupportMetrics& m)
{
    return json{{"k", m.k},
                {"true_edges", m.true_edges},
                {"hits", m.hits},
                {"precision", m.precision},
                {"recall", m.recall},
                {"edge_mean", m.edge_mean},
                {"non_edge_mean", m.non_edge_mean},
                {"ratio", finite_or_null(m.ratio)}};
}

inline json to_json(const TrueGraph& g)
{
    return json{{"num_nodes", g.num_nodes()},
                {"order", g.order()},
                {"seed", g.seed},
                {"layout", "row (lag-1)*N + target, column source"},
                {"weights", std::vector<double>(g.weights.flat().begin(), g.weights.flat().end())},
                {"mask", g.mask},
                {"num_centers", g.num_centers},
                {"centers", g.centers},
                {"betas", g.betas}};
}

inline TrueGraph true_graph_from_json(const json& j)
{
    TrueGraph g;
    const auto n = j.at("num_nodes").get<std::size_t>();
    const auto p = j.at("order").get<std::size_t>();
    g.weights = Tensor3(n, p);
    const auto w = j.at("weights").get<std::vector<double>>();
    g.mask = j.at("mask").get<std::vector<std::uint8_t>>();
    if (w.size() != g.weights.size() || g.mask.size() != g.weights.size())
        throw DimensionError("truth file weights/mask do not match N=" + std::to_string(n) +
                             ", P=" + std::to_string(p));
    std::copy(w.begin(), w.end(), g.weights.flat().begin());
    g.seed = j.value("seed", std::uint64_t{0});
    g.num_centers = j.value("num_centers", std::size_t{0});
    g.centers = j.value("centers", std::vector<double>{});
    g.betas = j.value("betas", std::vector<double>{});
    return g;
}

inline json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_json(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out)
        throw InputError("failed writing '" + path + "'");
}

inline std::vector<std::string> config_preamble(const json& config)
{
    return {"config " + config.dump()};
}

namespace detail
{

inline std::ofstream open_artifact(const std::string& path, const std::vector<std::string>& preamble)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    for (const auto& line : preamble)
        out << "# " << line << '\n';
    return out;
}

inline void close_artifact(std::ofstream& out, const std::string& path)
{
    out.flush();
    if (!out)
        throw InputError("failed writing '" + path + "'");
}

inline std::vector<std::vector<std::string>> read_rows(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto view = trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        std::vector<std::string> cells;
        for (auto c : split(line, ','))
            cells.emplace_back(c);
        rows.push_back(std::move(cells));
    }
    return rows;
}

inline double cell_number(const std::string& path, std::size_t row, const std::string& cell)
{
    double v = 0.0;
    if (!parse_double(cell, v))
        throw ParseError(path + ": data row " + std::to_string(row) + ": not a number: '" + cell + "'");
    return v;
}

} // namespace detail

/// P stacked N x N blocks: header `lag,target,<source ids>`, one row per
/// (lag, target).
inline void write_adjacency_csv(const std::string& path, const Tensor3& a, const std::vector<std::string>& ids,
                                const std::vector<std::string>& preamble = {})
{
    if (ids.size() != a.num_nodes())
        throw DimensionError("adjacency has " + std::to_string(a.num_nodes()) + " nodes but " +
                             std::to_string(ids.size()) + " ids were given");
    auto out = detail::open_artifact(path, preamble);
    out << "lag,target";
    for (const auto& id : ids)
        out << ',' << id;
    out << '\n';
    for (std::size_t lag = 1; lag <= a.order(); ++lag) {
        for (std::size_t n = 0; n < a.num_nodes(); ++n) {
            out << lag << ',' << ids[n];
            for (std::size_t m = 0; m < a.num_nodes(); ++m)
                out << ',' << detail::format_double(a(n, m, lag));
            out << '\n';
        }
    }
    detail::close_artifact(out, path);
}

struct AdjacencyFile
{
    Tensor3 values;
    std::vector<std::string> ids;
};

inline AdjacencyFile read_adjacency_csv(const std::string& path)
{
    const auto rows = detail::read_rows(path);
    if (rows.empty() || rows.front().size() < 3 || rows.front()[0] != "lag" || rows.front()[1] != "target")
        throw ParseError(path + ": not an adjacency file (expected header 'lag,target,...')");
    AdjacencyFile f;
    f.ids.assign(rows.front().begin() + 2, rows.front().end());
    const std::size_t n = f.ids.size();
    if ((rows.size() - 1) % n != 0 || rows.size() == 1)
        throw DimensionError(path + ": " + std::to_string(rows.size() - 1) + " rows is not a multiple of N=" +
                             std::to_string(n));
    const std::size_t order = (rows.size() - 1) / n;
    f.values = Tensor3(n, order);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != n + 2)
            throw ParseError(path + ": data row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                             " fields, expected " + std::to_string(n + 2));
        const std::size_t lag = (r - 1) / n + 1;
        const std::size_t target = (r - 1) % n;
        for (std::size_t m = 0; m < n; ++m)
            f.values(target, m, lag) = detail::cell_number(path, r, rows[r][m + 2]);
    }
    return f;
}

/// `time,<ids...>` with one row of per-node ISE per step.
inline void write_ise_csv(const std::string& path, const IseTrace& trace, const std::vector<std::string>& ids,
                          const std::vector<std::string>& preamble = {})
{
    auto out = detail::open_artifact(path, preamble);
    out << "time";
    for (const auto& id : ids)
        out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < trace.length(); ++i) {
        out << trace.first_time + i;
        for (const auto& row : trace.per_node)
            out << ',' << detail::format_double(row[i]);
        out << '\n';
    }
    detail::close_artifact(out, path);
}

inline IseTrace read_ise_csv(const std::string& path)
{
    const auto rows = detail::read_rows(path);
    if (rows.size() < 2 || rows.front().empty() || rows.front()[0] != "time")
        throw ParseError(path + ": not an ISE trace (expected header 'time,...')");
    IseTrace trace;
    const std::size_t n = rows.front().size() - 1;
    trace.per_node.assign(n, {});
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != n + 1)
            throw ParseError(path + ": data row " + std::to_string(r) + " has the wrong field count");
        if (r == 1)
            trace.first_time = static_cast<std::size_t>(detail::cell_number(path, r, rows[r][0]));
        for (std::size_t c = 0; c < n; ++c)
            trace.per_node[c].push_back(detail::cell_number(path, r, rows[r][c + 1]));
    }
    return trace;
}

/// `time,<id>,<id>_pred,...`: observed targets next to one-step-ahead
/// predictions.
inline void write_prediction_csv(const std::string& path, const TrajectoryRecorder& rec,
                                 const std::vector<std::string>& ids, const std::vector<std::string>& preamble = {})
{
    auto out = detail::open_artifact(path, preamble);
    out << "time";
    for (const auto& id : ids)
        out << ',' << id << ',' << id << "_pred";
    out << '\n';
    for (std::size_t i = 0; i < rec.length(); ++i) {
        out << rec.first_time() + i;
        for (std::size_t n = 0; n < ids.size(); ++n)
            out << ',' << detail::format_double(rec.targets()[n][i]) << ','
                << detail::format_double(rec.predictions()[n][i]);
        out << '\n';
    }
    detail::close_artifact(out, path);
}

/// Long-format adjacency snapshots: `time,lag,target,<source ids>`.
inline void write_snapshots_csv(const std::string& path, const std::vector<AdjacencyEstimate>& snaps,
                                const std::vector<std::string>& ids, const std::vector<std::string>& preamble = {})
{
    auto out = detail::open_artifact(path, preamble);
    out << "time,lag,target";
    for (const auto& id : ids)
        out << ',' << id;
    out << '\n';
    for (const auto& s : snaps) {
        const Tensor3& a = s.values;
        for (std::size_t lag = 1; lag <= a.order(); ++lag) {
            for (std::size_t n = 0; n < a.num_nodes(); ++n) {
                out << s.time << ',' << lag << ',' << ids[n];
                for (std::size_t m = 0; m < a.num_nodes(); ++m)
                    out << ',' << detail::format_double(a(n, m, lag));
                out << '\n';
            }
        }
    }
    detail::close_artifact(out, path);
}

} // namespace nltiso

#endif
