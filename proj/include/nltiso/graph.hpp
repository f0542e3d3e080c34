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

#ifndef NLTISO_GRAPH_HPP
#define NLTISO_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "adjacency.hpp"

namespace nltiso
{

/// Generator-side ground truth: adjacency weights a[target][source][lag],
/// the active-edge mask, and for kernel-expansion graphs the fixed centers
/// and coefficients of every edge function.
struct TrueGraph
{
    Tensor3 weights;
    std::vector<std::uint8_t> mask;
    std::size_t num_centers = 0;
    std::vector<double> centers;
    std::vector<double> betas;
    std::uint64_t seed = 0;

    std::size_t num_nodes() const noexcept { return weights.num_nodes(); }
    std::size_t order() const noexcept { return weights.order(); }

    bool is_edge(std::size_t target, std::size_t source, std::size_t lag) const noexcept
    {
        return mask[weights.index(target, source, lag)] != 0;
    }

    std::size_t count_cross_edges() const noexcept
    {
        std::size_t count = 0;
        for (std::size_t lag = 1; lag <= order(); ++lag)
            for (std::size_t n = 0; n < num_nodes(); ++n)
                for (std::size_t m = 0; m < num_nodes(); ++m)
                    count += (n != m && is_edge(n, m, lag)) ? 1 : 0;
        return count;
    }
};

} // namespace nltiso

#endif
