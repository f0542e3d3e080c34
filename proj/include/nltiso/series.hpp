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

#ifndef NLTISO_SERIES_HPP
#define NLTISO_SERIES_HPP

#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace nltiso
{

/// Immutable N x T record of samples y_n[t]; row n holds node n, time is
/// 0-based. Storage is row-major so that a node's history is contiguous.
class SeriesMatrix
{
public:
    SeriesMatrix() = default;

    SeriesMatrix(std::vector<std::vector<double>> rows, std::vector<std::string> node_ids = {})
        : node_ids_(std::move(node_ids))
    {
        if (rows.empty())
            throw InputError("series must have at least one node");
        num_nodes_ = rows.size();
        num_times_ = rows.front().size();
        if (num_times_ == 0)
            throw InputError("series must have at least one sample");
        values_.reserve(num_nodes_ * num_times_);
        for (std::size_t n = 0; n < num_nodes_; ++n) {
            if (rows[n].size() != num_times_)
                throw DimensionError("series row " + std::to_string(n) + " has " +
                                     std::to_string(rows[n].size()) + " samples, expected " +
                                     std::to_string(num_times_));
            for (double v : rows[n]) {
                if (!std::isfinite(v))
                    throw InputError("series row " + std::to_string(n) + " contains a non-finite value");
                values_.push_back(v);
            }
        }
        if (node_ids_.empty()) {
            for (std::size_t n = 0; n < num_nodes_; ++n)
                node_ids_.push_back("y" + std::to_string(n));
        }
        if (node_ids_.size() != num_nodes_)
            throw DimensionError("expected " + std::to_string(num_nodes_) + " node ids, got " +
                                 std::to_string(node_ids_.size()));
    }

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_times() const noexcept { return num_times_; }
    bool empty() const noexcept { return values_.empty(); }

    double operator()(std::size_t node, std::size_t t) const noexcept
    {
        return values_[node * num_times_ + t];
    }

    double at(std::size_t node, std::size_t t) const
    {
        if (node >= num_nodes_ || t >= num_times_)
            throw IndexError("sample (" + std::to_string(node) + ", " + std::to_string(t) +
                             ") outside " + std::to_string(num_nodes_) + " x " +
                             std::to_string(num_times_) + " series");
        return (*this)(node, t);
    }

    std::span<const double> row(std::size_t node) const noexcept
    {
        return {values_.data() + node * num_times_, num_times_};
    }

    const std::vector<std::string>& node_ids() const noexcept { return node_ids_; }

    /// Row-major samples, node by node.
    std::span<const double> values() const noexcept { return values_; }

    /// Leading `count` samples of every node.
    SeriesMatrix head(std::size_t count) const
    {
        if (count == 0 || count > num_times_)
            throw IndexError("cannot take " + std::to_string(count) + " of " +
                             std::to_string(num_times_) + " samples");
        std::vector<std::vector<double>> rows(num_nodes_);
        for (std::size_t n = 0; n < num_nodes_; ++n)
            rows[n].assign(row(n).begin(), row(n).begin() + static_cast<std::ptrdiff_t>(count));
        return SeriesMatrix(std::move(rows), node_ids_);
    }

    friend bool operator==(const SeriesMatrix&, const SeriesMatrix&) = default;

private:
    std::size_t num_nodes_ = 0;
    std::size_t num_times_ = 0;
    std::vector<double> values_;
    std::vector<std::string> node_ids_;
};

/// The P lagged samples of every node seen from time `tau`.
class LagView
{
public:
    LagView(const SeriesMatrix& series, std::size_t tau, std::size_t order)
        : series_(&series), tau_(tau), order_(order)
    {
        if (order == 0 || tau < order || tau >= series.num_times())
            throw IndexError("lag view needs P <= tau < T, got tau=" + std::to_string(tau) +
                             ", P=" + std::to_string(order) +
                             ", T=" + std::to_string(series.num_times()));
    }

    /// y_{source}[tau - lag], lag in 1..P.
    double operator()(std::size_t source, std::size_t lag) const noexcept
    {
        return (*series_)(source, tau_ - lag);
    }

    double at(std::size_t source, std::size_t lag) const
    {
        if (lag == 0 || lag > order_ || source >= series_->num_nodes())
            throw IndexError("lag lookup (" + std::to_string(source) + ", " + std::to_string(lag) +
                             ") outside N=" + std::to_string(series_->num_nodes()) +
                             ", P=" + std::to_string(order_));
        return (*this)(source, lag);
    }

    std::size_t tau() const noexcept { return tau_; }
    std::size_t order() const noexcept { return order_; }
    std::size_t num_nodes() const noexcept { return series_->num_nodes(); }

private:
    const SeriesMatrix* series_;
    std::size_t tau_;
    std::size_t order_;
};

inline LagView lag_view(const SeriesMatrix& series, std::size_t tau, std::size_t order)
{
    return LagView(series, tau, order);
}

inline constexpr std::size_t unbounded_window = std::numeric_limits<std::size_t>::max();

/// FIFO of the most recent sample times whose kernel centers are retained.
class WindowIndex
{
public:
    explicit WindowIndex(std::size_t capacity = unbounded_window) : capacity_(capacity)
    {
        if (capacity == 0)
            throw ConfigError("window capacity must be at least 1");
    }

    /// Appends `t`; returns the evicted time when the window was full.
    std::optional<std::size_t> push(std::size_t t)
    {
        if (!times_.empty() && t <= times_.back())
            throw OrderingError("time " + std::to_string(t) + " pushed after " +
                                std::to_string(times_.back()));
        times_.push_back(t);
        if (times_.size() > capacity_) {
            std::size_t evicted = times_.front();
            times_.pop_front();
            return evicted;
        }
        return std::nullopt;
    }

    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }
    std::size_t capacity() const noexcept { return capacity_; }
    const std::deque<std::size_t>& times() const noexcept { return times_; }

    friend bool operator==(const WindowIndex&, const WindowIndex&) = default;

private:
    std::size_t capacity_;
    std::deque<std::size_t> times_;
};

} // namespace nltiso

#endif
