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

#ifndef NLTISO_BASELINES_HPP
#define NLTISO_BASELINES_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "adjacency.hpp"
#include "error.hpp"
#include "estimator.hpp"
#include "online.hpp"
#include "series.hpp"
#include "shrinkage.hpp"

namespace nltiso
{

/// Lagged samples y_source[tau - lag] ordered (lag, source).
inline std::vector<double> linear_feature_vector(const SeriesMatrix& series, std::size_t tau, std::size_t order)
{
    const LagView view(series, tau, order);
    std::vector<double> x;
    x.reserve(order * series.num_nodes());
    for (std::size_t lag = 1; lag <= order; ++lag)
        for (std::size_t source = 0; source < series.num_nodes(); ++source)
            x.push_back(view(source, lag));
    return x;
}

/// Linear VAR coefficients of one target node, one scalar per (lag, source)
/// in the same order as linear_feature_vector. The sparsity groups are the
/// P lag weights of each source.
class LinearNodeState
{
public:
    LinearNodeState(std::size_t node, std::size_t num_nodes, std::size_t order)
        : node_(node), num_nodes_(num_nodes), order_(order), weights_(num_nodes * order, 0.0)
    {
        if (num_nodes == 0 || order == 0)
            throw ConfigError("linear state needs N >= 1 and P >= 1");
        if (node >= num_nodes)
            throw IndexError("node " + std::to_string(node) + " outside N=" + std::to_string(num_nodes));
    }

    std::size_t node() const noexcept { return node_; }
    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t order() const noexcept { return order_; }

    double& weight(std::size_t source, std::size_t lag) noexcept { return weights_[(lag - 1) * num_nodes_ + source]; }
    double weight(std::size_t source, std::size_t lag) const noexcept
    {
        return weights_[(lag - 1) * num_nodes_ + source];
    }

    std::span<double> weights() noexcept { return weights_; }
    std::span<const double> weights() const noexcept { return weights_; }

    double group_norm(std::size_t source, std::size_t lag) const noexcept { return std::abs(weight(source, lag)); }

    /// Norm of all lag weights from `source`, the unit that is sparsified.
    double link_norm(std::size_t source) const noexcept
    {
        double s = 0.0;
        for (std::size_t lag = 1; lag <= order_; ++lag)
            s += weight(source, lag) * weight(source, lag);
        return std::sqrt(s);
    }

private:
    std::size_t node_;
    std::size_t num_nodes_;
    std::size_t order_;
    std::vector<double> weights_;
};

inline double linear_predict(const LinearNodeState& state, std::span<const double> features)
{
    if (features.size() != state.weights().size())
        throw AlignmentError("linear state has " + std::to_string(state.weights().size()) + " weights but " +
                             std::to_string(features.size()) + " features were given");
    double s = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i)
        s += state.weights()[i] * features[i];
    return s;
}

/// Gradient step on the squared error followed by per-source group
/// shrinkage with threshold step * lambda; self links are not shrunk.
/// Returns the prediction made before the update.
inline double tirso_update(LinearNodeState& state, std::span<const double> features, double y, double lambda,
                           double step)
{
    const double prediction = linear_predict(state, features);
    const double err = prediction - y;
    const std::size_t order = state.order();
    std::vector<double> u(order);
    for (std::size_t source = 0; source < state.num_nodes(); ++source) {
        for (std::size_t lag = 1; lag <= order; ++lag)
            u[lag - 1] = state.weight(source, lag) - step * err * features[(lag - 1) * state.num_nodes() + source];
        if (source != state.node())
            group_shrink_in_place(u, step * lambda);
        for (std::size_t lag = 1; lag <= order; ++lag)
            state.weight(source, lag) = u[lag - 1];
    }
    return prediction;
}

inline double squared_norm(std::span<const double> x) noexcept
{
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return s;
}

inline LinearNodeState tirso_step(LinearNodeState state, std::span<const double> features, double y,
                                  const Hyperparams& h)
{
    tirso_update(state, features, y, h.lambda, effective_step(h, squared_norm(features)));
    return state;
}

class LinearModel
{
public:
    LinearModel(const SeriesMatrix& series, const Hyperparams& h) : series_(&series), h_(h)
    {
        h.validate();
        states_.reserve(series.num_nodes());
        for (std::size_t n = 0; n < series.num_nodes(); ++n)
            states_.emplace_back(n, series.num_nodes(), h.order);
    }

    std::size_t order() const noexcept { return h_.order; }

    void begin_step(std::size_t t)
    {
        features_ = linear_feature_vector(*series_, t, h_.order);
        step_ = effective_step(h_, squared_norm(features_));
    }

    double update_node(std::size_t n, double y) { return tirso_update(states_[n], features_, y, h_.lambda, step_); }

    Tensor3 adjacency() const { return group_norm_tensor<LinearNodeState>(states_); }

    std::vector<LinearNodeState> release_states() { return std::move(states_); }

private:
    const SeriesMatrix* series_;
    Hyperparams h_;
    std::vector<LinearNodeState> states_;
    std::vector<double> features_;
    double step_ = 0.0;
};

/// Linear counterpart of run_online with the same record stream.
template <class Sink>
std::vector<LinearNodeState> run_tirso(const SeriesMatrix& series, const Hyperparams& h, Sink& sink,
                                       const RunOptions& options = {})
{
    LinearModel model(series, h);
    drive_online(series, model, sink, options);
    return model.release_states();
}

} // namespace nltiso

#endif
