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

#ifndef NLTISO_SHRINKAGE_HPP
#define NLTISO_SHRINKAGE_HPP

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace nltiso
{

inline double l2_norm(std::span<const double> u) noexcept
{
    double s = 0.0;
    for (double v : u)
        s += v * v;
    return std::sqrt(s);
}

/// Multidimensional shrinkage-thresholding in place:
/// u <- u * max(0, 1 - threshold / ||u||). A group whose norm does not
/// exceed the threshold (including the zero group) becomes exactly zero.
inline void group_shrink_in_place(std::span<double> u, double threshold)
{
    if (!(threshold >= 0.0))
        throw RangeError("shrinkage threshold must be non-negative, got " + std::to_string(threshold));
    const double norm = l2_norm(u);
    if (norm <= threshold) {
        for (double& v : u)
            v = 0.0;
        return;
    }
    if (threshold == 0.0)
        return;
    const double factor = 1.0 - threshold / norm;
    for (double& v : u)
        v *= factor;
}

inline std::vector<double> group_shrink(std::span<const double> u, double threshold)
{
    std::vector<double> out(u.begin(), u.end());
    group_shrink_in_place(out, threshold);
    return out;
}

} // namespace nltiso

#endif
