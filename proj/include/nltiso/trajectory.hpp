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

#ifndef NLTISO_TRAJECTORY_HPP
#define NLTISO_TRAJECTORY_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "adjacency.hpp"
#include "metrics.hpp"
#include "online.hpp"

namespace nltiso
{

/// Sink that keeps per-node targets, predictions and ISE, adjacency
/// snapshots every `snapshot_every` steps (0 disables them) and the mean
/// adjacency over all steps t >= average_from.
class TrajectoryRecorder
{
public:
    explicit TrajectoryRecorder(std::size_t num_nodes, std::size_t snapshot_every = 0,
                                std::size_t average_from = std::numeric_limits<std::size_t>::max())
        : snapshot_every_(snapshot_every), average_from_(average_from), targets_(num_nodes),
          predictions_(num_nodes), ise_(num_nodes)
    {
    }

    void on_step(const StepRecord& r)
    {
        if (!first_time_)
            first_time_ = r.time;
        targets_[r.node].push_back(r.target);
        predictions_[r.node].push_back(r.prediction);
        ise_[r.node].push_back(r.ise);
    }

    bool wants_snapshot(std::size_t t) const noexcept
    {
        return is_cadence(t) || t >= average_from_;
    }

    void on_snapshot(const AdjacencyEstimate& a)
    {
        if (is_cadence(a.time))
            snapshots_.push_back(a);
        if (a.time >= average_from_) {
            if (averaged_count_ == 0)
                averaged_sum_ = Tensor3(a.values.num_nodes(), a.values.order());
            auto sum = averaged_sum_.flat();
            const auto v = a.values.flat();
            for (std::size_t i = 0; i < sum.size(); ++i)
                sum[i] += v[i];
            ++averaged_count_;
        }
    }

    std::size_t first_time() const noexcept { return first_time_.value_or(0); }
    std::size_t length() const noexcept { return ise_.empty() ? 0 : ise_.front().size(); }
    const std::vector<std::vector<double>>& targets() const noexcept { return targets_; }
    const std::vector<std::vector<double>>& predictions() const noexcept { return predictions_; }
    const std::vector<AdjacencyEstimate>& snapshots() const noexcept { return snapshots_; }

    IseTrace ise_trace() const { return IseTrace{first_time(), ise_}; }

    /// Mean of the snapshots taken at t >= average_from, if any.
    std::optional<Tensor3> averaged_adjacency() const
    {
        if (averaged_count_ == 0)
            return std::nullopt;
        Tensor3 out = averaged_sum_;
        for (double& v : out.flat())
            v /= static_cast<double>(averaged_count_);
        return out;
    }

private:
    bool is_cadence(std::size_t t) const noexcept { return snapshot_every_ > 0 && t % snapshot_every_ == 0; }

    std::size_t snapshot_every_;
    std::size_t average_from_;
    std::optional<std::size_t> first_time_;
    std::vector<std::vector<double>> targets_;
    std::vector<std::vector<double>> predictions_;
    std::vector<std::vector<double>> ise_;
    std::vector<AdjacencyEstimate> snapshots_;
    Tensor3 averaged_sum_;
    std::size_t averaged_count_ = 0;
};

} // namespace nltiso

#endif
