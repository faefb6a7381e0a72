// Copyright 2026 The logcon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cmath>
#include <initializer_list>
#include <random>
#include <string>

#include "logcon/geometry.hpp"

namespace logcon::test {

inline Vec v(std::initializer_list<double> xs)
{
    Vec out(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) out[i++] = x;
    return out;
}

inline Vec v1(double x) { return Vec::Constant(1, x); }

/// Reference generator independent of the library's counter-based RNG.
struct Oracle {
    std::mt19937_64 engine;
    explicit Oracle(std::uint64_t seed) : engine(seed) {}
    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine); }
};

/// Composite Simpson rule on [lo, hi] with an even number of panels.
template <class F>
double simpson(F&& f, double lo, double hi, int panels)
{
    if (panels % 2) ++panels;
    const double h = (hi - lo) / panels;
    double s = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0;
}

inline std::string source_path(const std::string& relative) { return std::string(LOGCON_SOURCE_DIR) + "/" + relative; }

}  // namespace logcon::test
