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

#ifndef NLTISO_ESTIMATOR_HPP
#define NLTISO_ESTIMATOR_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adjacency.hpp"
#include "error.hpp"
#include "kernel.hpp"
#include "online.hpp"
#include "series.hpp"
#include "shrinkage.hpp"

namespace nltiso
{

/// How the per-step size gamma_t is derived from the configured gamma.
enum class StepRule
{
    /// gamma_t = gamma.
    constant,
    /// gamma_t = gamma / (1 + gamma * ||features||^2), the implicit-update
    /// step for squared loss. Stable for any gamma > 0.
    normalized,
};

inline const char* to_string(StepRule rule) noexcept
{
    return rule == StepRule::constant ? "constant" : "normalized";
}

struct Hyperparams
{
    double lambda = 0.1;
    double gamma = 10.0;
    std::size_t order = 2;
    std::size_t window = 2000;
    StepRule step_rule = StepRule::normalized;

    void validate() const
    {
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw ConfigError("lambda must be finite and >= 0, got " + std::to_string(lambda));
        if (!(gamma > 0.0) || !std::isfinite(gamma))
            throw ConfigError("gamma must be finite and > 0, got " + std::to_string(gamma));
        if (order < 1)
            throw ConfigError("lag order must be >= 1");
        if (window < 1)
            throw ConfigError("window capacity must be >= 1");
    }
};

inline double effective_step(const Hyperparams& h, double feature_squared_norm) noexcept
{
    if (h.step_rule == StepRule::constant)
        return h.gamma;
    return h.gamma / (1.0 + h.gamma * feature_squared_norm);
}

/// Coefficients alpha_n of one target node, laid out exactly like
/// KernelVector: groups (lag, source), each holding one weight per retained
/// center time.
class NodeState
{
public:
    NodeState(std::size_t node, std::size_t num_nodes, std::size_t order,
              std::size_t window_capacity = unbounded_window)
        : node_(node), num_nodes_(num_nodes), order_(order), window_(window_capacity)
    {
        if (num_nodes == 0 || order == 0)
            throw ConfigError("node state needs N >= 1 and P >= 1");
        if (node >= num_nodes)
            throw IndexError("node " + std::to_string(node) + " outside N=" + std::to_string(num_nodes));
    }

    std::size_t node() const noexcept { return node_; }
    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t order() const noexcept { return order_; }
    std::size_t num_groups() const noexcept { return num_nodes_ * order_; }
    std::size_t width() const noexcept { return window_.size(); }
    const WindowIndex& window() const noexcept { return window_; }

    /// Admits center time `t`: evicts the oldest weight of every group when
    /// the window is full, then appends a zero weight to every group.
    std::optional<std::size_t> advance(std::size_t t)
    {
        const std::size_t old_width = width();
        const auto evicted = window_.push(t);
        const std::size_t drop = evicted ? 1 : 0;
        const std::size_t new_width = width();
        scratch_.assign(num_groups() * new_width, 0.0);
        for (std::size_t g = 0; g < num_groups(); ++g) {
            const double* src = coeffs_.data() + g * old_width + drop;
            double* dst = scratch_.data() + g * new_width;
            for (std::size_t r = 0; r + drop < old_width; ++r)
                dst[r] = src[r];
        }
        coeffs_.swap(scratch_);
        return evicted;
    }

    std::span<double> group(std::size_t source, std::size_t lag) noexcept
    {
        return {coeffs_.data() + group_offset(source, lag), width()};
    }
    std::span<const double> group(std::size_t source, std::size_t lag) const noexcept
    {
        return {coeffs_.data() + group_offset(source, lag), width()};
    }

    double group_norm(std::size_t source, std::size_t lag) const noexcept
    {
        return l2_norm(group(source, lag));
    }

    std::span<double> coefficients() noexcept { return coeffs_; }
    std::span<const double> coefficients() const noexcept { return coeffs_; }

    void check_aligned(const KernelVector& kv) const
    {
        const auto& t = window_.times();
        const bool same_times = kv.width() == t.size() &&
                                (t.empty() || (kv.times().front() == t.front() && kv.times().back() == t.back()));
        if (kv.order() != order_ || kv.num_nodes() != num_nodes_ || !same_times)
            throw AlignmentError("node " + std::to_string(node_) + " state (N=" + std::to_string(num_nodes_) +
                                 ", P=" + std::to_string(order_) + ", W=" + std::to_string(width()) +
                                 ") does not match kernel vector (N=" + std::to_string(kv.num_nodes()) +
                                 ", P=" + std::to_string(kv.order()) + ", W=" + std::to_string(kv.width()) + ")");
    }

private:
    std::size_t group_offset(std::size_t source, std::size_t lag) const noexcept
    {
        return ((lag - 1) * num_nodes_ + source) * width();
    }

    std::size_t node_;
    std::size_t num_nodes_;
    std::size_t order_;
    WindowIndex window_;
    std::vector<double> coeffs_;
    std::vector<double> scratch_;
};

/// Gradient of the instantaneous loss, aligned with KernelVector.
struct GradientVector
{
    std::vector<double> entries;
};

inline double predict(const NodeState& state, const KernelVector& kv)
{
    state.check_aligned(kv);
    const auto a = state.coefficients();
    const auto k = kv.entries();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * k[i];
    return s;
}

inline double instantaneous_loss(const NodeState& state, const KernelVector& kv, double y)
{
    const double r = y - predict(state, kv);
    return 0.5 * r * r;
}

inline GradientVector gradient(const NodeState& state, const KernelVector& kv, double y)
{
    const double err = predict(state, kv) - y;
    GradientVector g;
    g.entries.reserve(kv.size());
    for (double k : kv.entries())
        g.entries.push_back(k * err);
    return g;
}

/// One composite-objective step with an explicit step size: every group
/// takes the gradient step, then groups with source != target are
/// group-shrunk by step * lambda. Returns the prediction made before the
/// update.
inline double comid_update(NodeState& state, const KernelVector& kv, double y, double lambda, double step)
{
    const double prediction = predict(state, kv);
    const double err = prediction - y;
    const std::size_t width = state.width();
    const double threshold = step * lambda;
    for (std::size_t lag = 1; lag <= state.order(); ++lag) {
        for (std::size_t source = 0; source < state.num_nodes(); ++source) {
            auto alpha = state.group(source, lag);
            const auto k = kv.group(source, lag);
            for (std::size_t r = 0; r < width; ++r)
                alpha[r] -= step * err * k[r];
            if (source != state.node())
                group_shrink_in_place(alpha, threshold);
        }
    }
    return prediction;
}

inline NodeState comid_step(NodeState state, const KernelVector& kv, double y, const Hyperparams& h)
{
    comid_update(state, kv, y, h.lambda, effective_step(h, kv.squared_norm()));
    return state;
}

/// Online model adapter for the driver: one kernel vector per step, shared by
/// all node updates.
class KernelModel
{
public:
    KernelModel(const SeriesMatrix& series, const KernelSpec& spec, const Hyperparams& h)
        : series_(&series), spec_(spec), h_(h), window_(h.window)
    {
        spec.validate();
        h.validate();
        states_.reserve(series.num_nodes());
        for (std::size_t n = 0; n < series.num_nodes(); ++n)
            states_.emplace_back(n, series.num_nodes(), h.order, h.window);
    }

    std::size_t order() const noexcept { return h_.order; }

    void begin_step(std::size_t t)
    {
        time_ = t;
        window_.push(t);
        kv_ = build_kernel_vector(*series_, t, window_, spec_, h_.order);
        step_ = effective_step(h_, kv_.squared_norm());
    }

    double update_node(std::size_t n, double y)
    {
        states_[n].advance(time_);
        return comid_update(states_[n], kv_, y, h_.lambda, step_);
    }

    Tensor3 adjacency() const { return group_norm_tensor<NodeState>(states_); }

    const std::vector<NodeState>& states() const noexcept { return states_; }
    std::vector<NodeState> release_states() { return std::move(states_); }

private:
    const SeriesMatrix* series_;
    KernelSpec spec_;
    Hyperparams h_;
    WindowIndex window_;
    std::vector<NodeState> states_;
    KernelVector kv_;
    double step_ = 0.0;
    std::size_t time_ = 0;
};

/// Streams the series through the kernel estimator: for t = P..T-1 every
/// node predicts y_n[t] from the state fitted through t-1, then updates.
template <class Sink>
std::vector<NodeState> run_online(const SeriesMatrix& series, const KernelSpec& spec, const Hyperparams& h,
                                  Sink& sink, const RunOptions& options = {})
{
    KernelModel model(series, spec, h);
    drive_online(series, model, sink, options);
    return model.release_states();
}

} // namespace nltiso

#endif
