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

#ifndef NLTISO_METRICS_HPP
#define NLTISO_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "adjacency.hpp"
#include "error.hpp"
#include "graph.hpp"

namespace nltiso
{

/// Instantaneous squared error.
inline double ise(double y, double prediction) noexcept
{
    const double d = y - prediction;
    return d * d;
}

/// b[n][n'][p] = l2 norm of coefficient group (n, n', p) of every node.
template <class State>
AdjacencyEstimate adjacency_from_state(std::span<const State> states, std::size_t time = 0)
{
    return AdjacencyEstimate{group_norm_tensor<State>(states), time};
}

template <class State>
AdjacencyEstimate adjacency_from_state(const std::vector<State>& states, std::size_t time = 0)
{
    return adjacency_from_state(std::span<const State>(states), time);
}

/// Divides by the largest entry; an all-zero estimate is returned unchanged.
inline AdjacencyEstimate normalize_adjacency(AdjacencyEstimate b)
{
    const double top = b.values.max();
    if (top > 0.0) {
        for (double& v : b.values.flat())
            v /= top;
    }
    return b;
}

struct SupportMetrics
{
    std::size_t k = 0;
    std::size_t true_edges = 0;
    std::size_t hits = 0;
    double precision = 0.0;
    double recall = 0.0;
    double edge_mean = 0.0;
    double non_edge_mean = 0.0;
    /// edge_mean / non_edge_mean; NaN when either class is empty.
    double ratio = std::numeric_limits<double>::quiet_NaN();
};

/// Scores the top-k cross-node entries of `estimate` against the true edge
/// mask. Self entries (target == source) are never scored. Ties in the
/// ranking go to the lower flat index.
inline SupportMetrics support_metrics(const Tensor3& estimate, const TrueGraph& truth, std::size_t k)
{
    if (!estimate.same_shape(truth.weights))
        throw DimensionError("estimate is " + std::to_string(estimate.num_nodes()) + "x" +
                             std::to_string(estimate.num_nodes()) + "x" + std::to_string(estimate.order()) +
                             " but truth is " + std::to_string(truth.num_nodes()) + "x" +
                             std::to_string(truth.num_nodes()) + "x" + std::to_string(truth.order()));
    std::vector<std::size_t> cross;
    const std::size_t num_nodes = estimate.num_nodes();
    for (std::size_t lag = 1; lag <= estimate.order(); ++lag)
        for (std::size_t n = 0; n < num_nodes; ++n)
            for (std::size_t m = 0; m < num_nodes; ++m)
                if (n != m)
                    cross.push_back(estimate.index(n, m, lag));
    if (k > cross.size())
        throw RangeError("k=" + std::to_string(k) + " exceeds the " + std::to_string(cross.size()) +
                         " cross-node entries");

    const auto values = estimate.flat();
    SupportMetrics out;
    out.k = k;
    double edge_sum = 0.0;
    double non_edge_sum = 0.0;
    std::size_t non_edges = 0;
    for (std::size_t i : cross) {
        if (truth.mask[i]) {
            ++out.true_edges;
            edge_sum += values[i];
        } else {
            ++non_edges;
            non_edge_sum += values[i];
        }
    }

    std::vector<std::size_t> ranked = cross;
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    for (std::size_t r = 0; r < k; ++r)
        out.hits += truth.mask[ranked[r]] ? 1 : 0;
    out.precision = k > 0 ? static_cast<double>(out.hits) / static_cast<double>(k) : 0.0;
    out.recall = out.true_edges > 0 ? static_cast<double>(out.hits) / static_cast<double>(out.true_edges) : 0.0;

    if (out.true_edges > 0 && non_edges > 0) {
        out.edge_mean = edge_sum / static_cast<double>(out.true_edges);
        out.non_edge_mean = non_edge_sum / static_cast<double>(non_edges);
        if (out.non_edge_mean > 0.0)
            out.ratio = out.edge_mean / out.non_edge_mean;
        else
            out.ratio = out.edge_mean > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    return out;
}

/// Per-node ISE series; entry i of a node's row belongs to time
/// first_time + i.
struct IseTrace
{
    std::size_t first_time = 0;
    std::vector<std::vector<double>> per_node;

    std::size_t length() const noexcept { return per_node.empty() ? 0 : per_node.front().size(); }
};

/// Mean ISE of every node over the trace entries after the first `burn_in`.
inline std::vector<double> time_averaged_ise(const IseTrace& trace, std::size_t burn_in)
{
    if (burn_in >= trace.length())
        throw RangeError("burn-in " + std::to_string(burn_in) + " leaves nothing of a trace of length " +
                         std::to_string(trace.length()));
    std::vector<double> out;
    out.reserve(trace.per_node.size());
    for (const auto& row : trace.per_node) {
        const double sum = std::accumulate(row.begin() + static_cast<std::ptrdiff_t>(burn_in), row.end(), 0.0);
        out.push_back(sum / static_cast<double>(row.size() - burn_in));
    }
    return out;
}

} // namespace nltiso

#endif
