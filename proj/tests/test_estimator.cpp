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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <nltiso/estimator.hpp>
#include <nltiso/synthgen.hpp>
#include <nltiso/trajectory.hpp>

#include "oracles.hpp"

using namespace nltiso;
using Rows = std::vector<std::vector<double>>;

namespace
{

std::vector<std::size_t> consecutive_times(std::size_t first, std::size_t count)
{
    std::vector<std::size_t> t(count);
    std::iota(t.begin(), t.end(), first);
    return t;
}

/// State for `node` with W retained centers (times P..P+W-1) and random
/// coefficients, the newest one per group left at zero as after advance().
NodeState random_state(std::size_t node, std::size_t n, std::size_t p, std::size_t w, std::mt19937& rng,
                       double scale = 1.0)
{
    NodeState s(node, n, p);
    for (std::size_t t : consecutive_times(p, w))
        s.advance(t);
    std::normal_distribution<double> d(0.0, scale);
    for (std::size_t lag = 1; lag <= p; ++lag)
        for (std::size_t src = 0; src < n; ++src) {
            auto g = s.group(src, lag);
            for (std::size_t r = 0; r + 1 < g.size(); ++r)
                g[r] = d(rng);
        }
    return s;
}

KernelVector random_kernel_vector(std::size_t n, std::size_t p, std::size_t w, std::mt19937& rng)
{
    KernelVector kv(p, n, consecutive_times(p, w));
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (double& v : kv.entries())
        v = u(rng);
    return kv;
}

std::vector<double> to_vector(std::span<const double> s)
{
    return {s.begin(), s.end()};
}

oracle::Groups groups_of(const NodeState& s)
{
    oracle::Groups g;
    for (std::size_t lag = 1; lag <= s.order(); ++lag)
        for (std::size_t src = 0; src < s.num_nodes(); ++src) {
            std::vector<std::size_t> idx;
            const std::size_t base = ((lag - 1) * s.num_nodes() + src) * s.width();
            for (std::size_t r = 0; r < s.width(); ++r)
                idx.push_back(base + r);
            g.members.push_back(idx);
            g.penalized.push_back(src != s.node());
        }
    return g;
}

struct CollectingSink
{
    std::vector<StepRecord> records;
    void on_step(const StepRecord& r) { records.push_back(r); }
    bool wants_snapshot(std::size_t) { return false; }
    void on_snapshot(const AdjacencyEstimate&) {}
};

} // namespace

TEST(Predict, ZeroStateIsZero)
{
    std::mt19937 rng(1);
    NodeState s(0, 3, 2);
    for (std::size_t t = 2; t < 8; ++t)
        s.advance(t);
    const auto kv = random_kernel_vector(3, 2, 6, rng);
    EXPECT_EQ(predict(s, kv), 0.0);
}

TEST(Predict, OneHot)
{
    NodeState s(1, 2, 1);
    s.advance(1);
    s.advance(2);
    KernelVector kv(1, 2, {1, 2});
    kv[3] = 0.25;
    s.coefficients()[3] = 2.0;
    EXPECT_DOUBLE_EQ(predict(s, kv), 0.5);
}

TEST(Predict, MatchesNaiveDot)
{
    std::mt19937 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_state(0, 3, 2, 40, rng);
        const auto kv = random_kernel_vector(3, 2, 40, rng);
        const double expected = oracle::dot(to_vector(s.coefficients()), to_vector(kv.entries()));
        EXPECT_NEAR(predict(s, kv), expected, 1e-12 * std::max(1.0, std::abs(expected)));
    }
}

TEST(Predict, RejectsMisalignedKernelVector)
{
    std::mt19937 rng(4);
    const auto s = random_state(0, 3, 2, 10, rng);
    EXPECT_THROW(predict(s, random_kernel_vector(3, 2, 9, rng)), AlignmentError);
    EXPECT_THROW(predict(s, random_kernel_vector(4, 2, 10, rng)), AlignmentError);
    KernelVector shifted(2, 3, consecutive_times(3, 10));
    EXPECT_THROW(predict(s, shifted), AlignmentError);
}

TEST(InstantaneousLoss, Values)
{
    std::mt19937 rng(5);
    NodeState zero(0, 2, 1);
    zero.advance(1);
    KernelVector kv(1, 2, {1});
    kv[0] = 0.5;
    kv[1] = 0.5;
    EXPECT_DOUBLE_EQ(instantaneous_loss(zero, kv, 2.0), 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_state(1, 3, 2, 12, rng);
        const auto k = random_kernel_vector(3, 2, 12, rng);
        const double yhat = predict(s, k);
        EXPECT_EQ(instantaneous_loss(s, k, yhat), 0.0);
        const double y = yhat + 0.7;
        EXPECT_DOUBLE_EQ(instantaneous_loss(s, k, y), 0.5 * (y - yhat) * (y - yhat));
    }
}

TEST(Gradient, ZeroStateAndZeroError)
{
    std::mt19937 rng(6);
    NodeState s(0, 3, 2);
    for (std::size_t t = 2; t < 7; ++t)
        s.advance(t);
    const auto kv = random_kernel_vector(3, 2, 5, rng);
    const auto g = gradient(s, kv, 1.5);
    for (std::size_t i = 0; i < kv.size(); ++i)
        EXPECT_EQ(g.entries[i], -1.5 * kv[i]);

    const auto r = random_state(2, 3, 2, 5, rng);
    const auto z = gradient(r, kv, predict(r, kv));
    for (double v : z.entries)
        EXPECT_EQ(v, 0.0);
}

TEST(Gradient, MatchesCentralDifferences)
{
    std::mt19937 rng(7);
    std::normal_distribution<double> d;
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_state(0, 3, 2, 10, rng);
        const auto kv = random_kernel_vector(3, 2, 10, rng);
        const double y = d(rng);
        const auto g = gradient(s, kv, y);
        const auto kappa = to_vector(kv.entries());
        const auto f = [&](const std::vector<double>& a) { return oracle::loss(a, kappa, y); };
        for (int c = 0; c < 20; ++c) {
            const std::size_t i = rng() % kv.size();
            const double fd = oracle::central_difference(f, to_vector(s.coefficients()), i, 1e-6);
            EXPECT_LT(std::abs(fd - g.entries[i]) / std::max(1.0, std::abs(g.entries[i])), 1e-6);
        }
    }
}

TEST(GroupShrink, ZeroVectorStaysZero)
{
    for (std::size_t len : {0u, 1u, 5u}) {
        const auto out = group_shrink(std::vector<double>(len, 0.0), 1.0);
        EXPECT_EQ(out, std::vector<double>(len, 0.0));
    }
    EXPECT_EQ(group_shrink(std::vector<double>(3, 0.0), 0.0), std::vector<double>(3, 0.0));
}

TEST(GroupShrink, HandValue)
{
    const auto out = group_shrink(std::vector<double>{3.0, 4.0}, 2.5);
    EXPECT_DOUBLE_EQ(out[0], 1.5);
    EXPECT_DOUBLE_EQ(out[1], 2.0);
}

TEST(GroupShrink, BoundaryIsZero)
{
    EXPECT_EQ(group_shrink(std::vector<double>{3.0, 4.0}, 5.0), (std::vector<double>{0.0, 0.0}));
    EXPECT_THROW(group_shrink(std::vector<double>{1.0}, -0.1), RangeError);
}

TEST(GroupShrink, NeverIncreasesNormAndKeepsDirection)
{
    std::mt19937 rng(8);
    std::normal_distribution<double> d;
    std::exponential_distribution<double> e(1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> u(1 + rng() % 6);
        for (double& v : u)
            v = d(rng);
        const double thr = e(rng);
        const auto out = group_shrink(u, thr);
        const double before = l2_norm(u), after = l2_norm(out);
        ASSERT_LE(after, before);
        ASSERT_NEAR(after, std::max(0.0, before - thr), 1e-12);
        for (std::size_t i = 0; i < u.size(); ++i)
            ASSERT_GE(out[i] * u[i], 0.0);
    }
}

TEST(ComidStep, ZeroLambdaIsPlainGradientStep)
{
    std::mt19937 rng(9);
    const Hyperparams h{0.0, 0.01, 2, 100, StepRule::constant};
    const auto s = random_state(1, 3, 2, 8, rng);
    const auto kv = random_kernel_vector(3, 2, 8, rng);
    const double y = 0.4;
    const double err = predict(s, kv) - y;
    const auto g = gradient(s, kv, y);
    const auto next = comid_step(s, kv, y, h);
    for (std::size_t i = 0; i < kv.size(); ++i) {
        EXPECT_EQ(next.coefficients()[i], s.coefficients()[i] - h.gamma * err * kv[i]);
        EXPECT_NEAR(next.coefficients()[i], s.coefficients()[i] - h.gamma * g.entries[i], 1e-15);
    }
}

TEST(ComidStep, LargeLambdaZeroesCrossGroupsOnly)
{
    std::mt19937 rng(10);
    for (StepRule rule : {StepRule::constant, StepRule::normalized}) {
        const Hyperparams h{1e6, 0.5, 2, 100, rule};
        const auto s = random_state(2, 4, 2, 6, rng);
        const auto kv = random_kernel_vector(4, 2, 6, rng);
        const double y = 1.3;
        const double step = effective_step(h, kv.squared_norm());
        const double err = predict(s, kv) - y;
        const auto next = comid_step(s, kv, y, h);
        for (std::size_t lag = 1; lag <= 2; ++lag)
            for (std::size_t src = 0; src < 4; ++src) {
                const auto after = next.group(src, lag);
                const auto before = s.group(src, lag);
                const std::size_t base = kv.index(lag, src, 0);
                for (std::size_t r = 0; r < after.size(); ++r) {
                    const double expected = src == 2 ? before[r] - step * err * kv[base + r] : 0.0;
                    EXPECT_EQ(after[r], expected);
                }
            }
    }
}

TEST(ComidStep, EqualsProxOracleMinimizer)
{
    std::mt19937 rng(11);
    std::normal_distribution<double> d;
    std::uniform_real_distribution<double> lam(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t node = trial % 3;
        const auto s = random_state(node, 3, 2, 5, rng, 0.5);
        const auto kv = random_kernel_vector(3, 2, 5, rng);
        const double y = d(rng);
        const Hyperparams h{lam(rng), 0.2, 2, 100, trial % 2 ? StepRule::constant : StepRule::normalized};
        const double step = effective_step(h, kv.squared_norm());
        const auto v = gradient(s, kv, y).entries;
        const auto a0 = to_vector(s.coefficients());
        const auto groups = groups_of(s);
        const auto expected = oracle::prox_gradient_minimizer(a0, v, step, h.lambda, groups);
        const auto next = comid_step(s, kv, y, h);
        const auto got = to_vector(next.coefficients());
        for (std::size_t i = 0; i < got.size(); ++i)
            ASSERT_NEAR(got[i], expected[i], 1e-6) << "trial " << trial << " coordinate " << i;
        EXPECT_LT(oracle::kkt_violation(got, a0, v, step, h.lambda, groups), 1e-8);
        EXPECT_LE(oracle::comid_objective(got, a0, v, step, h.lambda, groups),
                  oracle::comid_objective(a0, a0, v, step, h.lambda, groups) + 1e-12);
    }
}

TEST(ComidStep, GroupOrderDoesNotMatter)
{
    std::mt19937 rng(12);
    const Hyperparams h{0.3, 0.1, 3, 100, StepRule::constant};
    const auto s = random_state(1, 4, 3, 7, rng);
    const auto kv = random_kernel_vector(4, 3, 7, rng);
    const double y = -0.8;
    const double err = predict(s, kv) - y;
    const auto next = comid_step(s, kv, y, h);

    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t lag = 1; lag <= 3; ++lag)
        for (std::size_t src = 0; src < 4; ++src)
            order.emplace_back(src, lag);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<double> manual = to_vector(s.coefficients());
        for (auto [src, lag] : order) {
            const std::size_t base = kv.index(lag, src, 0);
            std::vector<double> u(s.width());
            for (std::size_t r = 0; r < u.size(); ++r)
                u[r] = manual[base + r] - h.gamma * err * kv[base + r];
            if (src != 1)
                u = group_shrink(u, h.gamma * h.lambda);
            std::copy(u.begin(), u.end(), manual.begin() + static_cast<std::ptrdiff_t>(base));
        }
        EXPECT_EQ(manual, to_vector(next.coefficients()));
    }
}

TEST(NodeState, AdvanceEvictsAndZeroExtends)
{
    NodeState s(0, 2, 1, 3);
    s.advance(1);
    s.advance(2);
    s.advance(3);
    std::iota(s.coefficients().begin(), s.coefficients().end(), 1.0);  // groups (1,2,3), (4,5,6)
    const auto evicted = s.advance(4);
    ASSERT_TRUE(evicted.has_value());
    EXPECT_EQ(*evicted, 1u);
    EXPECT_EQ(to_vector(s.coefficients()), (std::vector<double>{2, 3, 0, 5, 6, 0}));
    EXPECT_DOUBLE_EQ(s.group_norm(1, 1), std::sqrt(61.0));
}

TEST(NodeState, NewestCoefficientIsUpdateOfZero)
{
    std::mt19937 rng(13);
    const Hyperparams h{0.05, 1.0, 2, 100, StepRule::normalized};
    auto s = random_state(0, 3, 2, 6, rng);
    const auto kv = random_kernel_vector(3, 2, 6, rng);
    const double y = 2.0;
    const double step = effective_step(h, kv.squared_norm());
    const double err = predict(s, kv) - y;
    const auto before = s;
    comid_update(s, kv, y, h.lambda, step);
    for (std::size_t lag = 1; lag <= 2; ++lag)
        for (std::size_t src = 0; src < 3; ++src) {
            std::vector<double> u = to_vector(before.group(src, lag));
            for (std::size_t r = 0; r < u.size(); ++r)
                u[r] -= step * err * kv.group(src, lag)[r];
            if (src != 0)
                u = group_shrink(u, step * h.lambda);
            const double newest = s.group(src, lag).back();
            EXPECT_EQ(newest, u.back());
            if (src == 0) {
                EXPECT_EQ(newest, 0.0 - step * err * kv.group(src, lag).back());
            }
        }
}

TEST(Hyperparams, Validation)
{
    EXPECT_THROW((Hyperparams{-1.0, 1.0, 1, 1}).validate(), ConfigError);
    EXPECT_THROW((Hyperparams{0.0, 0.0, 1, 1}).validate(), ConfigError);
    EXPECT_THROW((Hyperparams{0.0, 1.0, 0, 1}).validate(), ConfigError);
    EXPECT_THROW((Hyperparams{0.0, 1.0, 1, 0}).validate(), ConfigError);
    EXPECT_NO_THROW((Hyperparams{0.0, 1.0, 1, 1}).validate());
}

TEST(EffectiveStep, Rules)
{
    EXPECT_EQ(effective_step(Hyperparams{0.1, 10.0, 2, 10, StepRule::constant}, 50.0), 10.0);
    EXPECT_DOUBLE_EQ(effective_step(Hyperparams{0.1, 10.0, 2, 10, StepRule::normalized}, 9.9), 10.0 / 100.0);
}

TEST(RunOnline, ConstantSeriesErrorShrinksMonotonically)
{
    const SeriesMatrix s(Rows{std::vector<double>(80, 1.0)});
    CollectingSink sink;
    run_online(s, KernelSpec{KernelKind::gaussian, 0.1}, Hyperparams{0.0, 1e-3, 1, 2000, StepRule::constant}, sink);
    ASSERT_EQ(sink.records.size(), 79u);
    for (std::size_t i = 1; i < 40; ++i)
        EXPECT_LT(std::abs(sink.records[i].target - sink.records[i].prediction),
                  std::abs(sink.records[i - 1].target - sink.records[i - 1].prediction));
}

TEST(RunOnline, WindowLargerThanSeriesMatchesUnbounded)
{
    GenConfig cfg;
    cfg.num_times = 400;
    cfg.seed = 3;
    const auto g = gen_stationary(cfg);
    const KernelSpec k{KernelKind::gaussian, 0.1};
    CollectingSink a, b;
    const auto sa = run_online(g.series, k, Hyperparams{0.1, 10.0, 2, 500}, a);
    const auto sb = run_online(g.series, k, Hyperparams{0.1, 10.0, 2, unbounded_window}, b);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i)
        ASSERT_EQ(a.records[i].prediction, b.records[i].prediction);
    for (std::size_t n = 0; n < sa.size(); ++n)
        EXPECT_EQ(to_vector(sa[n].coefficients()), to_vector(sb[n].coefficients()));
}

TEST(RunOnline, WindowCapsWidthAndAlignsWithKernelVector)
{
    GenConfig cfg;
    cfg.num_times = 300;
    const auto g = gen_stationary(cfg);
    CollectingSink sink;
    const auto states = run_online(g.series, KernelSpec{}, Hyperparams{0.1, 10.0, 2, 50}, sink);
    for (const auto& s : states) {
        EXPECT_EQ(s.width(), 50u);
        EXPECT_EQ(s.window().times().front(), 250u);
        EXPECT_EQ(s.window().times().back(), 299u);
    }
    EXPECT_EQ(sink.records.size(), (300u - 2u) * 5u);
    EXPECT_EQ(sink.records.front().time, 2u);
}

TEST(RunOnline, PrequentialPredictionUsesPreviousState)
{
    GenConfig cfg;
    cfg.num_times = 60;
    const auto g = gen_stationary(cfg);
    const KernelSpec k{KernelKind::gaussian, 0.1};
    const Hyperparams h{0.1, 10.0, 2, 2000};
    CollectingSink full;
    run_online(g.series, k, h, full);
    // replaying a prefix gives the state that must produce the next prediction
    CollectingSink prefix;
    auto states = run_online(g.series.head(40), k, h, prefix);
    WindowIndex w(h.window);
    for (std::size_t t = 2; t <= 40; ++t)
        w.push(t);
    const auto kv = build_kernel_vector(g.series, 40, w, k, 2);
    for (std::size_t n = 0; n < 5; ++n) {
        states[n].advance(40);
        const StepRecord& r = full.records[(40 - 2) * 5 + n];
        ASSERT_EQ(r.time, 40u);
        EXPECT_EQ(r.prediction, predict(states[n], kv));
        EXPECT_EQ(r.ise, (r.target - r.prediction) * (r.target - r.prediction));
    }
}

TEST(RunOnline, ThreadCountDoesNotChangeResults)
{
    GenConfig cfg;
    cfg.num_times = 250;
    cfg.seed = 8;
    const auto g = gen_stationary(cfg);
    const Hyperparams h{0.1, 10.0, 2, 100};
    CollectingSink one, three;
    const auto s1 = run_online(g.series, KernelSpec{}, h, one, RunOptions{1});
    const auto s3 = run_online(g.series, KernelSpec{}, h, three, RunOptions{3});
    ASSERT_EQ(one.records.size(), three.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        ASSERT_EQ(one.records[i].node, three.records[i].node);
        ASSERT_EQ(one.records[i].prediction, three.records[i].prediction);
    }
    for (std::size_t n = 0; n < s1.size(); ++n)
        EXPECT_EQ(to_vector(s1[n].coefficients()), to_vector(s3[n].coefficients()));
}

TEST(RunOnline, RejectsShortOrEmptySeries)
{
    CollectingSink sink;
    const SeriesMatrix s(Rows{{1.0, 2.0}});
    EXPECT_THROW(run_online(s, KernelSpec{}, Hyperparams{0.1, 1.0, 2, 10}, sink), InputError);
    EXPECT_THROW(run_online(SeriesMatrix{}, KernelSpec{}, Hyperparams{0.1, 1.0, 2, 10}, sink), InputError);
}

TEST(RunOnline, OneStepObjectiveNeverIncreases)
{
    GenConfig cfg;
    cfg.num_times = 120;
    cfg.seed = 2;
    const auto g = gen_stationary(cfg);
    const KernelSpec k{KernelKind::gaussian, 0.1};
    const Hyperparams h{0.1, 10.0, 2, 60};
    std::vector<NodeState> states;
    for (std::size_t n = 0; n < 5; ++n)
        states.emplace_back(n, 5, 2, h.window);
    WindowIndex w(h.window);
    for (std::size_t t = 2; t < g.series.num_times(); ++t) {
        w.push(t);
        const auto kv = build_kernel_vector(g.series, t, w, k, 2);
        const double step = effective_step(h, kv.squared_norm());
        for (auto& s : states) {
            s.advance(t);
            const auto a0 = to_vector(s.coefficients());
            const auto v = gradient(s, kv, g.series(s.node(), t)).entries;
            const auto groups = groups_of(s);
            comid_update(s, kv, g.series(s.node(), t), h.lambda, step);
            const auto a1 = to_vector(s.coefficients());
            ASSERT_LE(oracle::comid_objective(a1, a0, v, step, h.lambda, groups),
                      oracle::comid_objective(a0, a0, v, step, h.lambda, groups) + 1e-9);
        }
    }
}
