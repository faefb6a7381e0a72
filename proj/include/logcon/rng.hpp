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

#include <cstdint>

#include <Eigen/Dense>

namespace logcon {

/// Counter-based random stream.
///
/// Every draw is a pure function of (seed, stream, counter), so a block of
/// draws can be reproduced or partitioned across workers without sharing
/// state. `split` derives an independent child stream.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64() noexcept { return at(counter_++); }

    /// The value the stream produces at position `counter`, without advancing.
    std::uint64_t at(std::uint64_t counter) const noexcept;

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    double normal() noexcept;
    Eigen::VectorXd normal_vector(Eigen::Index n);

    CounterRng split(std::uint64_t child) const noexcept;
    /// Jump to an absolute counter position (used to partition work).
    CounterRng at_position(std::uint64_t counter) const noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace logcon
