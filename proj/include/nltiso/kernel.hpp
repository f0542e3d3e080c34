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

#ifndef NLTISO_KERNEL_HPP
#define NLTISO_KERNEL_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "series.hpp"

namespace nltiso
{

enum class KernelKind
{
    gaussian,
};

/// Scalar kernel shared by every (source, lag) pair.
///
/// The Gaussian kernel is exp(-(x - x')^2 / (2 * variance)). Callers who
/// think of the bandwidth as exp(-(x - x')^2 / variance) should pass half
/// their value.
struct KernelSpec
{
    KernelKind kind = KernelKind::gaussian;
    double variance = 0.1;

    void validate() const
    {
        if (!(variance > 0.0) || !std::isfinite(variance))
            throw ConfigError("kernel variance must be positive and finite, got " +
                              std::to_string(variance));
    }
};

inline double kernel_eval(const KernelSpec& spec, double x, double y) noexcept
{
    const double d = x - y;
    return std::exp(-(d * d) / (2.0 * spec.variance));
}

/// Similarities between the current lagged samples and every retained
/// center, flattened lexicographically in (lag, source, retained time):
///
///     index = ((lag - 1) * N + source) * W + rank
///
/// where `rank` is the position of the center time in the window.
class KernelVector
{
public:
    KernelVector() = default;

    KernelVector(std::size_t order, std::size_t num_nodes, std::vector<std::size_t> times)
        : order_(order), num_nodes_(num_nodes), times_(std::move(times)),
          entries_(order * num_nodes * times_.size(), 0.0)
    {
    }

    std::size_t order() const noexcept { return order_; }
    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t width() const noexcept { return times_.size(); }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<std::size_t>& times() const noexcept { return times_; }

    std::size_t index(std::size_t lag, std::size_t source, std::size_t rank) const noexcept
    {
        return ((lag - 1) * num_nodes_ + source) * width() + rank;
    }

    double operator[](std::size_t i) const noexcept { return entries_[i]; }
    double& operator[](std::size_t i) noexcept { return entries_[i]; }

    std::span<const double> entries() const noexcept { return entries_; }
    std::span<double> entries() noexcept { return entries_; }

    std::span<const double> group(std::size_t source, std::size_t lag) const noexcept
    {
        return {entries_.data() + index(lag, source, 0), width()};
    }

    double squared_norm() const noexcept
    {
        double s = 0.0;
        for (double v : entries_)
            s += v * v;
        return s;
    }

private:
    std::size_t order_ = 0;
    std::size_t num_nodes_ = 0;
    std::vector<std::size_t> times_;
    std::vector<double> entries_;
};

/// Builds kappa_tau for all (lag, source, center) combinations. A center at
/// retained time t for lag p sits at y_source[t - p].
inline KernelVector build_kernel_vector(const SeriesMatrix& series, std::size_t tau,
                                        const WindowIndex& window, const KernelSpec& spec,
                                        std::size_t order)
{
    const LagView current(series, tau, order);
    for (std::size_t t : window.times()) {
        if (t < order || t >= series.num_times())
            throw DimensionError("retained time " + std::to_string(t) + " has no lag-" +
                                 std::to_string(order) + " center in a series of length " +
                                 std::to_string(series.num_times()));
    }
    const std::size_t num_nodes = series.num_nodes();
    KernelVector kv(order, num_nodes,
                    std::vector<std::size_t>(window.times().begin(), window.times().end()));
    const auto& times = kv.times();
    std::size_t i = 0;
    for (std::size_t lag = 1; lag <= order; ++lag) {
        for (std::size_t source = 0; source < num_nodes; ++source) {
            const double x = current(source, lag);
            const auto row = series.row(source);
            for (std::size_t t : times)
                kv[i++] = kernel_eval(spec, x, row[t - lag]);
        }
    }
    return kv;
}

} // namespace nltiso

#endif
