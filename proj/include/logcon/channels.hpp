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
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "logcon/concepts.hpp"
#include "logcon/geometry.hpp"
#include "logcon/measures.hpp"

namespace logcon {

/// Numeric settings for channel evaluation. Monte Carlo pushes draw
/// `mc_samples` points; `integrator` is used for masses and pairings.
struct EvalOptions {
    std::size_t mc_samples = 10000;
    std::uint64_t seed = 0x5eed;
    Integrator integrator{};
};

/// A sub-probability kernel X ~> Y, kept as a lazy symbolic tree.
class Channel {
public:
    /// x -> delta(Mx + c) on `domain`, zero elsewhere.
    struct CrispAffine {
        Mat m;
        Vec c;
        ConvexSet domain;
    };
    /// x -> noise translated by Mx + c on `domain`, zero elsewhere.
    struct NoisyAffine {
        Mat m;
        Vec c;
        ConvexSet domain;
        std::shared_ptr<const State> noise;
    };
    /// x -> rho(x, y) dy on `support`.
    struct DensityKernel {
        std::function<double(const Vec&, const Vec&)> rho;
        ConvexSet support;
        std::string label;
    };
    /// x -> C(x) delta(x)
    struct Update {
        std::shared_ptr<const Concept> predicate;
    };
    struct Copy {};
    struct Discard {};
    struct Identity {};
    /// (u, v) -> (v, u) where u has `left_dim` coordinates.
    struct Swap {
        int left_dim;
    };
    /// second after first
    struct Compose {
        std::shared_ptr<const Channel> second;
        std::shared_ptr<const Channel> first;
    };
    struct Tensor {
        std::shared_ptr<const Channel> left;
        std::shared_ptr<const Channel> right;
    };
    struct StatePrep {
        std::shared_ptr<const State> state;
    };
    struct Effect {
        std::shared_ptr<const Concept> predicate;
    };
    using Body = std::variant<CrispAffine, NoisyAffine, DensityKernel, Update, Copy, Discard, Identity, Swap, Compose,
                              Tensor, StatePrep, Effect>;

    Channel(Space dom, Space cod, Body body) : dom_(std::move(dom)), cod_(std::move(cod)), body_(std::move(body)) {}

    const Space& dom() const noexcept { return dom_; }
    const Space& cod() const noexcept { return cod_; }
    const Body& body() const noexcept { return body_; }
    template <class T>
    const T* as() const noexcept { return std::get_if<T>(&body_); }

private:
    Space dom_;
    Space cod_;
    Body body_;
};

std::string describe(const Channel& f);

Channel identity(const Space& x);
Channel copy(const Space& x);
Channel discard(const Space& x);
Channel swap(const Space& x, const Space& y);
/// Partial affine map; `domain` defaults to the domain carrier.
Channel crisp_affine(const Space& dom, const Space& cod, const Mat& m, const Vec& c,
                     std::optional<ConvexSet> domain = std::nullopt);
Channel crisp_affine(const Mat& m, const Vec& c, std::optional<ConvexSet> domain = std::nullopt);
Channel noisy_affine(const Mat& m, const Vec& c, const State& noise, std::optional<ConvexSet> domain = std::nullopt);
/// Checks that the kernel integrates to at most 1 + 1e-6 at the probe points
/// (or at a few sampled points of the domain carrier when none are given).
Channel density_channel(const Space& dom, std::function<double(const Vec&, const Vec&)> rho, const ConvexSet& support,
                        std::string label = "density", const std::vector<Vec>& probes = {});
Channel update(const Concept& c);
Channel effect(const Concept& c);
Channel state_prep(const State& s);

/// g after f. Throws DimensionError unless cod(f) and dom(g) agree.
Channel compose(const Channel& g, const Channel& f);
/// f then g (diagrammatic order).
Channel then(const Channel& f, const Channel& g);
Channel tensor(const Channel& f, const Channel& g);

/// The channel x -> law of y1 + y2 with y1 ~ f(x), y2 ~ g(x) independent,
/// built from copy, tensor and addition. Codomains must be all of R^m.
Channel convolve(const Channel& f, const Channel& g);

/// Peephole rewriting: unit laws, affine/affine and Gaussian/Gaussian fusion,
/// update by the constant 1.
Channel simplify(const Channel& f);

/// Gaussian-affine form x -> N(Mx + c, sigma) when the whole tree has one.
struct GaussAffine {
    Mat m;
    Vec c;
    Mat sigma;
};
std::optional<GaussAffine> gauss_affine(const Channel& f);

State apply(const Channel& f, const Vec& x, const EvalOptions& options = {});
/// f(x, A)
Estimate kernel(const Channel& f, const Vec& x, const ConvexSet& a, const EvalOptions& options = {});
/// The state f . omega.
State push(const Channel& f, const State& omega, const EvalOptions& options = {});
State pushforward(const Channel& f, const State& omega, const EvalOptions& options = {});

/// x -> integral of C against f(x), evaluable pointwise.
class PulledEffect {
public:
    PulledEffect(Channel f, Concept c, EvalOptions options);
    Estimate operator()(const Vec& x) const;
    int dim() const noexcept { return f_.dom().dim; }
    const Channel& channel() const noexcept { return f_; }
    const Concept& predicate() const noexcept { return c_; }

private:
    Channel f_;
    Concept c_;
    EvalOptions options_;
};

PulledEffect pullback_effect(const Channel& f, const Concept& c, const EvalOptions& options = {});

/// Structural for affine/comonoid bodies; otherwise every probe output must be
/// zero or a point mass.
bool is_crisp(const Channel& f, const std::vector<Vec>& probes = {}, const EvalOptions& options = {});

}  // namespace logcon
