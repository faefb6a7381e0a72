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
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "logcon/channels.hpp"
#include "logcon/concepts.hpp"
#include "logcon/measures.hpp"
#include "logcon/serialize.hpp"

namespace logcon {

/// An arbitrary non-negative function, for claims about functions outside the
/// Concept family.
struct RawFunction {
    int dim = 0;
    std::function<double(const Vec&)> fn;
    std::string description;
};

RawFunction raw(const Concept& c);

/// An arbitrary kernel x -> State.
struct RawChannel {
    Space dom;
    Space cod;
    std::function<State(const Vec&)> fn;
    std::string description;
};

RawChannel raw(const Channel& f, const EvalOptions& options = {});

enum class Verdict { pass, fail, premise_unmet };
std::string to_string(Verdict v);

struct Witness {
    std::vector<Vec> points;
    double p = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double violation = 0.0;
    std::string note;
};

struct CheckReport {
    std::string name;
    std::size_t trials = 0;
    double worst_violation = 0.0;
    double tolerance = 0.0;
    std::vector<Witness> witnesses;
    Verdict verdict = Verdict::pass;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
    std::map<std::string, double> values;

    bool passed() const noexcept { return verdict == Verdict::pass; }
    Json to_json() const;
    std::string to_text() const;
};

/// A fixed probe (x, y, p) evaluated before the random ones.
struct Triple {
    Vec x;
    Vec y;
    double p;
};

struct CheckOptions {
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    std::vector<Triple> probes;
};

/// f(x +_p y) >= f(x)^p f(y)^(1-p) on random points of a bounded region.
CheckReport check_log_concave(const RawFunction& f, const ConvexSet& region, const CheckOptions& options = {});
CheckReport check_log_concave(const Concept& c, const ConvexSet& region, const CheckOptions& options = {});

/// f(x +_p y) >= min(f(x), f(y)).
CheckReport check_quasi_concave(const RawFunction& f, const ConvexSet& region, const CheckOptions& options = {});
CheckReport check_quasi_concave(const Concept& c, const ConvexSet& region, const CheckOptions& options = {});

/// For t below min(f(x), f(y)), the mix stays in the t-cut.
CheckReport check_t_cut_convexity(const RawFunction& f, const ConvexSet& region, const CheckOptions& options = {});

struct RemarkValues {
    double v00;
    double v11;
    double vmid;
};

/// (C (x) D) at (0,0), (1,1) and (1/2,1/2) for C(x) = 1 - x/2, D(y) = (y^2+1)/2.
RemarkValues counterexample_remark();
RawFunction remark_c();
RawFunction remark_d();
RawFunction remark_tensor();

/// mu(A +_p B) >= mu(A)^p mu(B)^(1-p) over random balls, boxes and segments.
/// Set centres are drawn half from the state and half from `region`.
CheckReport check_measure_log_concave(const State& s, const ConvexSet& region, const CheckOptions& options = {},
                                      const Integrator& integrator = {});

/// f(x +_p y, A +_p B) >= f(x, A)^p f(y, B)^(1-p), with A and B placed near
/// draws from f(x) and f(y). Tolerance 3 stderr + options.tol.
CheckReport check_channel_log_concave(const RawChannel& f, const ConvexSet& dom_region, const CheckOptions& options = {},
                                      const Integrator& integrator = {});
CheckReport check_channel_log_concave(const Channel& f, const ConvexSet& dom_region, const CheckOptions& options = {},
                                      const EvalOptions& eval = {});

/// x -> delta(x^2) on [0,1]; deterministic but not affine.
RawChannel square_channel();

/// Builds the smallest grid function f with f(x +_p y) >= g(x)^p h(y)^(1-p)
/// over cell midpoints of `box` at spacing `step`, then compares
/// int f against (int g)^p (int h)^(1-p). The allowance is step times the
/// summed total variations of the three grid functions.
CheckReport check_prekopa_leindler(const RawFunction& g, const RawFunction& h, const ConvexSet& box, double p, double step);

/// Checks the three-measure premise on random convex sets of `region` and the
/// functional premise on random points, then the integral conclusion.
CheckReport check_extended_pl(const State& mu, const State& nu, const State& omega, const RawFunction& f,
                              const RawFunction& g, const RawFunction& h, double p, const ConvexSet& region,
                              const CheckOptions& options = {}, const Integrator& integrator = {});

/// Comonoid laws, crisp-map determinism and interchange, compared exactly on
/// point-mass probes in R^dim.
CheckReport check_markov_laws(int dim, std::size_t probes, std::uint64_t seed);

/// Draws a random ball, box or segment (kind 0, 1, 2) around `center`.
ConvexSet random_convex_set(int kind, const Vec& center, double scale, CounterRng& rng);

}  // namespace logcon
