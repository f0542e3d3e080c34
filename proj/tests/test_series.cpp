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

#include <random>
#include <vector>

#include <nltiso/series.hpp>

using namespace nltiso;
using Rows = std::vector<std::vector<double>>;

namespace
{

SeriesMatrix random_series(std::size_t n, std::size_t t, unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> d;
    std::vector<std::vector<double>> rows(n, std::vector<double>(t));
    for (auto& r : rows)
        for (double& v : r)
            v = d(rng);
    return SeriesMatrix(rows);
}

} // namespace

TEST(SeriesMatrix, RejectsRaggedAndNonFinite)
{
    EXPECT_THROW(SeriesMatrix(Rows{{1.0, 2.0}, {1.0}}), DimensionError);
    EXPECT_THROW(SeriesMatrix(Rows{{1.0, std::nan("")}}), InputError);
    EXPECT_THROW(SeriesMatrix(std::vector<std::vector<double>>{}), InputError);
    EXPECT_THROW(SeriesMatrix(Rows{{}}), InputError);
}

TEST(SeriesMatrix, DefaultNodeIds)
{
    const SeriesMatrix s(Rows{{1.0}, {2.0}});
    ASSERT_EQ(s.node_ids().size(), 2u);
    EXPECT_EQ(s.node_ids()[1], "y1");
    EXPECT_THROW(SeriesMatrix(Rows{{1.0}}, {"a", "b"}), DimensionError);
}

TEST(LagView, ReadsLaggedSample)
{
    const SeriesMatrix s(Rows{{0.0, 1.0, 2.0, 3.0}});
    EXPECT_DOUBLE_EQ(lag_view(s, 3, 1)(0, 1), 2.0);
    EXPECT_DOUBLE_EQ(lag_view(s, 3, 3)(0, 3), 0.0);
}

TEST(LagView, RejectsTauBeforeOrder)
{
    const SeriesMatrix s(Rows{{0.0, 1.0, 2.0, 3.0}});
    EXPECT_THROW(lag_view(s, 1, 2), IndexError);
    EXPECT_THROW(lag_view(s, 4, 2), IndexError);
    try {
        lag_view(s, 1, 2);
    } catch (const IndexError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("tau=1"), std::string::npos);
        EXPECT_NE(msg.find("P=2"), std::string::npos);
        EXPECT_NE(msg.find("T=4"), std::string::npos);
    }
}

TEST(LagView, MatchesRawIndexingExhaustively)
{
    const std::size_t order = 4;
    const SeriesMatrix s = random_series(5, 3000, 11);
    for (std::size_t tau = order; tau < s.num_times(); ++tau) {
        const LagView v = lag_view(s, tau, order);
        for (std::size_t n = 0; n < s.num_nodes(); ++n)
            for (std::size_t p = 1; p <= order; ++p)
                ASSERT_EQ(v(n, p), s.row(n)[tau - p]);
    }
    EXPECT_THROW(lag_view(s, 10, order).at(0, 5), IndexError);
}

TEST(WindowIndex, EvictsOldestWhenFull)
{
    WindowIndex w(3);
    w.push(5);
    w.push(6);
    w.push(7);
    const auto evicted = w.push(8);
    ASSERT_TRUE(evicted.has_value());
    EXPECT_EQ(*evicted, 5u);
    EXPECT_EQ(std::vector<std::size_t>(w.times().begin(), w.times().end()), (std::vector<std::size_t>{6, 7, 8}));
}

TEST(WindowIndex, NoEvictionUnderCapacity)
{
    WindowIndex w(2000);
    for (std::size_t t = 0; t < 1500; ++t)
        EXPECT_FALSE(w.push(t).has_value());
    EXPECT_EQ(w.size(), 1500u);
}

TEST(WindowIndex, RejectsNonIncreasingTime)
{
    WindowIndex w(3);
    w.push(5);
    w.push(6);
    w.push(7);
    EXPECT_THROW(w.push(7), OrderingError);
    EXPECT_THROW(w.push(2), OrderingError);
    EXPECT_THROW(WindowIndex(0), ConfigError);
}

TEST(WindowIndex, LengthSaturatesAtCapacity)
{
    for (std::size_t cap : {1u, 2u, 7u, 50u}) {
        WindowIndex w(cap);
        for (std::size_t t = 0; t < 3 * cap + 5; ++t) {
            w.push(t);
            ASSERT_LE(w.size(), cap);
            if (t + 1 >= cap) {
                ASSERT_EQ(w.size(), cap);
            }
            ASSERT_EQ(w.times().back(), t);
            ASSERT_TRUE(std::is_sorted(w.times().begin(), w.times().end()));
        }
    }
}
