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

#ifndef NLTISO_ADJACENCY_HPP
#define NLTISO_ADJACENCY_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace nltiso
{

/// N x N x P real tensor indexed (target, source, lag) with lag in 1..P.
///
/// Storage follows the display layout: P blocks of N x N stacked vertically,
/// so row (lag - 1) * N + target, column source.
class Tensor3
{
public:
    Tensor3() = default;
    Tensor3(std::size_t num_nodes, std::size_t order, double fill = 0.0)
        : num_nodes_(num_nodes), order_(order), data_(num_nodes * num_nodes * order, fill)
    {
    }

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t order() const noexcept { return order_; }
    std::size_t size() const noexcept { return data_.size(); }
    std::size_t rows() const noexcept { return order_ * num_nodes_; }
    std::size_t cols() const noexcept { return num_nodes_; }

    std::size_t index(std::size_t target, std::size_t source, std::size_t lag) const noexcept
    {
        return ((lag - 1) * num_nodes_ + target) * num_nodes_ + source;
    }

    double& operator()(std::size_t target, std::size_t source, std::size_t lag) noexcept
    {
        return data_[index(target, source, lag)];
    }
    double operator()(std::size_t target, std::size_t source, std::size_t lag) const noexcept
    {
        return data_[index(target, source, lag)];
    }

    std::span<double> flat() noexcept { return data_; }
    std::span<const double> flat() const noexcept { return data_; }

    double max() const noexcept
    {
        return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
    }

    bool same_shape(const Tensor3& other) const noexcept
    {
        return num_nodes_ == other.num_nodes_ && order_ == other.order_;
    }

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    std::size_t num_nodes_ = 0;
    std::size_t order_ = 0;
    std::vector<double> data_;
};

/// Estimated causal strengths b[target][source][lag] at a given time.
struct AdjacencyEstimate
{
    Tensor3 values;
    std::size_t time = 0;
};

/// Collects group norms from any per-node state exposing node(),
/// num_nodes(), order() and group_norm(source, lag).
template <class State>
Tensor3 group_norm_tensor(std::span<const State> states)
{
    if (states.empty())
        return {};
    const std::size_t num_nodes = states.front().num_nodes();
    const std::size_t order = states.front().order();
    if (states.size() != num_nodes)
        throw DimensionError("expected one state per node (" + std::to_string(num_nodes) +
                             "), got " + std::to_string(states.size()));
    Tensor3 out(num_nodes, order);
    for (const State& s : states) {
        if (s.num_nodes() != num_nodes || s.order() != order)
            throw DimensionError("node states disagree on N or P");
        for (std::size_t lag = 1; lag <= order; ++lag)
            for (std::size_t source = 0; source < num_nodes; ++source)
                out(s.node(), source, lag) = s.group_norm(source, lag);
    }
    return out;
}

} // namespace nltiso

#endif
