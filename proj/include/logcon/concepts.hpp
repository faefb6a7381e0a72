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

#include <memory>
#include <string>
#include <variant>

#include "logcon/geometry.hpp"

namespace logcon {

/// A fuzzy concept: a log-concave map from a space into [0,1].
///
/// Concepts are a closed symbolic family; each body is log-concave by
/// construction, so composite concepts inherit the property.
class Concept {
public:
    struct Crisp {
        ConvexSet region;
    };
    /// exp(-d(x, prototype)^2 / (2 sigma^2)); sigma == 0 never appears here
    /// (gauss_fuzz returns a Crisp body instead).
    struct GaussFuzz {
        ConvexSet prototype;
        double sigma;
    };
    struct Affine {
        Vec coefficients;
        double offset;
    };
    /// x -> lambda^(-x) on a one-dimensional space.
    struct Exponential {
        double lambda;
    };
    struct Tensor {
        std::shared_ptr<const Concept> left;
        std::shared_ptr<const Concept> right;
    };
    struct PointwiseProduct {
        std::shared_ptr<const Concept> left;
        std::shared_ptr<const Concept> right;
    };
    struct Scalar {
        double value;
    };
    using Body = std::variant<Crisp, GaussFuzz, Affine, Exponential, Tensor, PointwiseProduct, Scalar>;

    Concept(Space space, Body body) : space_(std::move(space)), body_(std::move(body)) {}

    const Space& space() const noexcept { return space_; }
    int dim() const noexcept { return space_.dim; }
    const Body& body() const noexcept { return body_; }
    template <class T>
    const T* as() const noexcept { return std::get_if<T>(&body_); }

private:
    Space space_;
    Body body_;
};

std::string describe(const Concept& c);

/// Indicator of a convex region; the space defaults to R^dim.
Concept crisp(const ConvexSet& region);
Concept crisp(const Space& space, const ConvexSet& region);

Concept gauss_fuzz(const ConvexSet& prototype, double sigma);
Concept gauss_fuzz(const Space& space, const ConvexSet& prototype, double sigma);

/// x -> <a, x> + b. Throws std::domain_error unless the range over the
/// carrier lies in [0,1]; the carrier must be bounded in every direction a
/// has weight.
Concept affine(const Space& space, const Vec& coefficients, double offset);

/// x -> lambda^(-x) on [0,1], lambda >= 1.
Concept exponential(double lambda);

Concept scalar_concept(const Space& space, double value);

Concept tensor(const Concept& c, const Concept& d);

/// Pointwise product on a shared space. Throws DimensionError on mismatch.
Concept multiply(const Concept& c, const Concept& d);

double evaluate(const Concept& c, const Vec& x);

struct Grade {
    double value;
    bool outside_carrier;
};
/// Evaluate and flag points outside the concept's carrier.
Grade grade(const Concept& c, const Vec& x);

/// C(x) >= t
bool t_cut_test(const Concept& c, double t, const Vec& x);

}  // namespace logcon
