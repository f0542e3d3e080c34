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

#ifndef NLTISO_SYNTHGEN_HPP
#define NLTISO_SYNTHGEN_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "adjacency.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "series.hpp"

namespace nltiso
{

/// Parameters of both synthetic generators. Variances, not standard
/// deviations, throughout.
struct GenConfig
{
    std::size_t num_nodes = 5;
    std::size_t num_times = 3000;
    std::size_t order = 2;

    double edge_prob = 0.1;
    double adjacency_mean = 8.0;
    double adjacency_var = 3.0;

    // kernel-expansion edge functions
    double beta_var = 0.03;
    double gen_kernel_var = 0.03;
    std::size_t num_centers = 10;

    double noise_var = 0.01;
    double init_var = 0.1;

    // time-varying mode
    double drift_amplitude = 0.01;
    double drift_frequency = 0.03;
    double tv_init_mean = 0.0;
    double tv_init_var = 1.0;
    bool tv_sparse = false;

    std::uint64_t seed = 0;

    void validate() const
    {
        if (num_nodes < 1 || order < 1)
            throw ConfigError("generator needs N >= 1 and P >= 1");
        if (num_times <= order)
            throw ConfigError("generator needs T > P, got T=" + std::to_string(num_times) +
                              ", P=" + std::to_string(order));
        if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
            throw ConfigError("edge probability must lie in [0, 1], got " + std::to_string(edge_prob));
        const double positive[] = {adjacency_var, beta_var, gen_kernel_var, noise_var, init_var, tv_init_var};
        for (double v : positive)
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError("generator variances must be positive and finite");
        if (num_centers < 1)
            throw ConfigError("kernel edge functions need at least one center");
        if (!std::isfinite(drift_amplitude) || !std::isfinite(drift_frequency) || !std::isfinite(adjacency_mean) ||
            !std::isfinite(tv_init_mean))
            throw ConfigError("generator parameters must be finite");
    }
};

struct GeneratedSeries
{
    SeriesMatrix series;
    TrueGraph truth;
};

struct GeneratedTimeVarying
{
    SeriesMatrix series;
    /// Mask and initial adjacency.
    TrueGraph truth;
    /// trajectory[t] is the adjacency that produced y[t].
    std::vector<Tensor3> trajectory;
};

/// 0.4 sin(pi x^2) + 0.3 sin(2 pi x) + 0.3 sin(3 pi x)
inline double sine_nonlinearity(double x) noexcept
{
    constexpr double pi = std::numbers::pi;
    return 0.4 * std::sin(pi * x * x) + 0.3 * std::sin(2.0 * pi * x) + 0.3 * std::sin(3.0 * pi * x);
}

/// Adds amplitude * sin(frequency * t) to every entry selected by `mask`.
inline Tensor3 drift_adjacency(Tensor3 a, std::span<const std::uint8_t> mask, std::size_t t, double amplitude,
                               double frequency)
{
    if (mask.size() != a.size())
        throw DimensionError("mask has " + std::to_string(mask.size()) + " entries, adjacency has " +
                             std::to_string(a.size()));
    const double increment = amplitude * std::sin(frequency * static_cast<double>(t));
    auto v = a.flat();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (mask[i])
            v[i] += increment;
    return a;
}

/// Kernel-expansion edge function of a stationary graph:
/// sum_m beta_m exp(-(x - c_m)^2 / (2 * kernel_var)).
inline double kernel_edge_function(const TrueGraph& truth, double kernel_var, std::size_t target, std::size_t source,
                                   std::size_t lag, double x) noexcept
{
    const std::size_t base = truth.weights.index(target, source, lag) * truth.num_centers;
    double s = 0.0;
    for (std::size_t m = 0; m < truth.num_centers; ++m) {
        const double d = x - truth.centers[base + m];
        s += truth.betas[base + m] * std::exp(-(d * d) / (2.0 * kernel_var));
    }
    return s;
}

namespace detail
{

inline std::vector<std::vector<double>> initial_rows(const GenConfig& cfg, std::mt19937_64& rng)
{
    std::normal_distribution<double> init(0.0, std::sqrt(cfg.init_var));
    std::vector<std::vector<double>> rows(cfg.num_nodes, std::vector<double>(cfg.num_times, 0.0));
    for (std::size_t t = 0; t < cfg.order; ++t)
        for (std::size_t n = 0; n < cfg.num_nodes; ++n)
            rows[n][t] = init(rng);
    return rows;
}

} // namespace detail

/// Stationary non-linear VAR whose edge functions are fixed Gaussian-kernel
/// expansions. Random draws happen in a fixed order (mask and weight per
/// entry, then centers and betas per edge, then initial samples, then one
/// noise draw per (t, n)), so output is a pure function of the config.
inline GeneratedSeries gen_stationary(const GenConfig& cfg)
{
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::bernoulli_distribution edge(cfg.edge_prob);
    std::normal_distribution<double> weight(cfg.adjacency_mean, std::sqrt(cfg.adjacency_var));
    std::normal_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> beta(0.0, std::sqrt(cfg.beta_var));
    std::normal_distribution<double> noise(0.0, std::sqrt(cfg.noise_var));

    TrueGraph truth;
    truth.seed = cfg.seed;
    truth.weights = Tensor3(cfg.num_nodes, cfg.order);
    truth.mask.assign(truth.weights.size(), 0);
    truth.num_centers = cfg.num_centers;
    truth.centers.assign(truth.weights.size() * cfg.num_centers, 0.0);
    truth.betas.assign(truth.weights.size() * cfg.num_centers, 0.0);

    auto a = truth.weights.flat();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (edge(rng)) {
            truth.mask[i] = 1;
            a[i] = weight(rng);
        }
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!truth.mask[i])
            continue;
        for (std::size_t m = 0; m < cfg.num_centers; ++m) {
            truth.centers[i * cfg.num_centers + m] = unit(rng);
            truth.betas[i * cfg.num_centers + m] = beta(rng);
        }
    }

    auto rows = detail::initial_rows(cfg, rng);
    for (std::size_t t = cfg.order; t < cfg.num_times; ++t) {
        for (std::size_t n = 0; n < cfg.num_nodes; ++n) {
            double s = 0.0;
            for (std::size_t lag = 1; lag <= cfg.order; ++lag)
                for (std::size_t source = 0; source < cfg.num_nodes; ++source)
                    if (truth.is_edge(n, source, lag))
                        s += truth.weights(n, source, lag) *
                             kernel_edge_function(truth, cfg.gen_kernel_var, n, source, lag, rows[source][t - lag]);
            rows[n][t] = s + noise(rng);
        }
    }
    return GeneratedSeries{SeriesMatrix(std::move(rows)), std::move(truth)};
}

/// Non-linear VAR with the sine edge function on every active entry and an
/// adjacency that drifts as a[t+1] = a[t] + amplitude * sin(frequency * t),
/// t counted in absolute samples from a[P] = initial draw.
inline GeneratedTimeVarying gen_timevarying(const GenConfig& cfg)
{
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::bernoulli_distribution edge(cfg.edge_prob);
    std::normal_distribution<double> weight(cfg.tv_init_mean, std::sqrt(cfg.tv_init_var));
    std::normal_distribution<double> noise(0.0, std::sqrt(cfg.noise_var));

    TrueGraph truth;
    truth.seed = cfg.seed;
    truth.weights = Tensor3(cfg.num_nodes, cfg.order);
    truth.mask.assign(truth.weights.size(), 0);
    auto a0 = truth.weights.flat();
    for (std::size_t i = 0; i < a0.size(); ++i) {
        if (!cfg.tv_sparse || edge(rng)) {
            truth.mask[i] = 1;
            a0[i] = weight(rng);
        }
    }

    auto rows = detail::initial_rows(cfg, rng);
    std::vector<Tensor3> trajectory(cfg.num_times, truth.weights);
    Tensor3 a = truth.weights;
    for (std::size_t t = cfg.order; t < cfg.num_times; ++t) {
        trajectory[t] = a;
        for (std::size_t n = 0; n < cfg.num_nodes; ++n) {
            double s = 0.0;
            for (std::size_t lag = 1; lag <= cfg.order; ++lag)
                for (std::size_t source = 0; source < cfg.num_nodes; ++source)
                    if (truth.is_edge(n, source, lag))
                        s += a(n, source, lag) * sine_nonlinearity(rows[source][t - lag]);
            rows[n][t] = s + noise(rng);
        }
        a = drift_adjacency(std::move(a), truth.mask, t, cfg.drift_amplitude, cfg.drift_frequency);
    }
    return GeneratedTimeVarying{SeriesMatrix(std::move(rows)), std::move(truth), std::move(trajectory)};
}

} // namespace nltiso

#endif
