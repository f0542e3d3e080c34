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

#ifndef NLTISO_ONLINE_HPP
#define NLTISO_ONLINE_HPP

#include <algorithm>
#include <barrier>
#include <concepts>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "adjacency.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "series.hpp"

namespace nltiso
{

/// One prequential evaluation: the prediction of y_node[time] made before
/// the model saw it.
struct StepRecord
{
    std::size_t time = 0;
    std::size_t node = 0;
    double target = 0.0;
    double prediction = 0.0;
    double ise = 0.0;
};

template <class S>
concept TrajectorySink = requires(S& s, const StepRecord& r, const AdjacencyEstimate& a, std::size_t t) {
    s.on_step(r);
    { s.wants_snapshot(t) } -> std::convertible_to<bool>;
    s.on_snapshot(a);
};

struct NullSink
{
    void on_step(const StepRecord&) {}
    bool wants_snapshot(std::size_t) { return false; }
    void on_snapshot(const AdjacencyEstimate&) {}
};

struct RunOptions
{
    /// Worker threads for node updates within a step. Results do not
    /// depend on this value.
    std::size_t threads = 1;
};

template <class M>
concept OnlineModel = requires(M& m, std::size_t t, double y) {
    { m.order() } -> std::convertible_to<std::size_t>;
    m.begin_step(t);
    { m.update_node(t, y) } -> std::convertible_to<double>;
    { m.adjacency() } -> std::convertible_to<Tensor3>;
};

/// Runs `model` over t = P..T-1. Each step is prepared serially
/// (begin_step), node updates are spread over the worker threads, and the
/// sink sees the records of a step in node order after all updates finish.
template <OnlineModel Model, TrajectorySink Sink>
void drive_online(const SeriesMatrix& series, Model& model, Sink& sink, const RunOptions& options = {})
{
    const std::size_t num_nodes = series.num_nodes();
    const std::size_t num_times = series.num_times();
    const std::size_t order = model.order();
    if (series.empty())
        throw InputError("cannot run on an empty series");
    if (num_times <= order)
        throw InputError("series of length " + std::to_string(num_times) + " is too short for lag order " +
                         std::to_string(order));

    std::vector<double> predictions(num_nodes, 0.0);
    auto process = [&](std::size_t t, std::size_t first, std::size_t stride) {
        for (std::size_t n = first; n < num_nodes; n += stride)
            predictions[n] = model.update_node(n, series(n, t));
    };
    auto finish = [&](std::size_t t) {
        for (std::size_t n = 0; n < num_nodes; ++n) {
            const double y = series(n, t);
            sink.on_step(StepRecord{t, n, y, predictions[n], ise(y, predictions[n])});
        }
        if (sink.wants_snapshot(t))
            sink.on_snapshot(AdjacencyEstimate{model.adjacency(), t});
    };

    const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, num_nodes);
    if (threads == 1) {
        for (std::size_t t = order; t < num_times; ++t) {
            model.begin_step(t);
            process(t, 0, 1);
            finish(t);
        }
        return;
    }

    std::size_t t = order;
    bool done = false;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    model.begin_step(t);

    auto completion = [&]() noexcept {
        if (failure) {
            done = true;
            return;
        }
        try {
            finish(t);
            if (++t == num_times)
                done = true;
            else
                model.begin_step(t);
        } catch (...) {
            failure = std::current_exception();
            done = true;
        }
    };
    std::barrier sync(static_cast<std::ptrdiff_t>(threads), completion);
    auto worker = [&](std::size_t id) {
        while (!done) {
            try {
                process(t, id, threads);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
            sync.arrive_and_wait();
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t id = 1; id < threads; ++id)
            pool.emplace_back(worker, id);
        worker(0);
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace nltiso

#endif
