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
#include <optional>
#include <string>
#include <vector>

#include "logcon/verify.hpp"

namespace logcon {

/// A report together with the verdict the suite expects from it. Known
/// counterexamples are expected to fail.
struct SuiteEntry {
    CheckReport report;
    bool expect_pass = true;
    double seconds = 0.0;
    bool ok() const noexcept { return report.passed() == expect_pass; }
};

struct SuiteResult {
    std::string suite;
    std::vector<SuiteEntry> entries;
    bool ok() const noexcept;
    Json to_json() const;
    std::string to_text() const;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    /// Overrides every per-check trial count when set.
    std::optional<std::size_t> trials;
};

/// concepts, channels, pl, markov, all
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

/// A seeded concept together with a bounded region to probe it on.
struct ConceptCase {
    Concept value;
    ConvexSet region;
};

/// Cycles through crisp balls and boxes, Gaussian fuzzifications of balls
/// and hulls, affine and exponential concepts, tensors and pointwise products.
std::vector<ConceptCase> seeded_concepts(std::uint64_t seed, int count);

ConceptCase tensor_case(const ConceptCase& a, const ConceptCase& b);

/// The channels whose log-concavity the channel suite checks, each with a
/// bounded domain region.
struct ChannelCase {
    Channel value;
    ConvexSet region;
};
std::vector<ChannelCase> reference_channels(std::uint64_t seed);

/// The states of the measure suite, each with a probe region.
struct StateCase {
    State value;
    ConvexSet region;
};
std::vector<StateCase> reference_states(std::uint64_t seed);

/// Composes seeded pairs of Gaussian noisy affine channels and compares the
/// closed-form mean and covariance at a random input against a Monte Carlo
/// estimate: mean within 4 stderr, covariance entries within 6 stderr.
CheckReport check_gauss_composition(std::uint64_t seed, int pairs, std::size_t samples);

/// Seeded one-dimensional Gaussian and indicator pairs (g, h) on a box.
struct PlCase {
    RawFunction g;
    RawFunction h;
    ConvexSet box;
    double p;
};
std::vector<PlCase> seeded_pl_cases(std::uint64_t seed, int count);

}  // namespace logcon
