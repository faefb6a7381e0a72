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


#include "logcon/rng.hpp"

#include <cmath>
#include <numbers>

namespace logcon {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t CounterRng::at(std::uint64_t counter) const noexcept
{
    const std::uint64_t key = mix64(seed_ ^ mix64(stream_ + 0x632be59bd9b4e019ULL));
    return mix64(key ^ mix64(counter * 0xd1b54a32d192ed03ULL + 1));
}

double CounterRng::uniform() noexcept
{
    // 53 random bits, shifted half an ulp so 0 is never produced
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() noexcept
{
    // Box-Muller, one variate per pair of uniforms so draws stay position-pure.
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::VectorXd CounterRng::normal_vector(Eigen::Index n)
{
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = normal();
    return z;
}

CounterRng CounterRng::split(std::uint64_t child) const noexcept
{
    return CounterRng(seed_, mix64(stream_ * 0x9e3779b97f4a7c15ULL + child + 1));
}

CounterRng CounterRng::at_position(std::uint64_t counter) const noexcept
{
    CounterRng r(seed_, stream_);
    r.counter_ = counter;
    return r;
}

}  // namespace logcon
