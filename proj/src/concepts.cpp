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


#include "logcon/concepts.hpp"

#include <cmath>
#include <sstream>

namespace logcon {

namespace {

void check_dim(const Space& space, const ConvexSet& region, const char* what)
{
    if (space.dim != region.dim()) {
        std::ostringstream os;
        os << what << ": region has dimension " << region.dim() << " but space has " << space.dim;
        throw DimensionError(os.str());
    }
}

}  // namespace

std::string describe(const Concept& c)
{
    return std::visit(
        [](const auto& b) -> std::string {
            using T = std::decay_t<decltype(b)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<T, Concept::Crisp>) {
                os << "crisp(" << describe(b.region) << ')';
            } else if constexpr (std::is_same_v<T, Concept::GaussFuzz>) {
                os << "fuzz(" << describe(b.prototype) << ", " << b.sigma << ')';
            } else if constexpr (std::is_same_v<T, Concept::Affine>) {
                os << "affine(" << b.coefficients.transpose() << "; " << b.offset << ')';
            } else if constexpr (std::is_same_v<T, Concept::Exponential>) {
                os << "exponential(" << b.lambda << ')';
            } else if constexpr (std::is_same_v<T, Concept::Tensor>) {
                os << '(' << describe(*b.left) << " (x) " << describe(*b.right) << ')';
            } else if constexpr (std::is_same_v<T, Concept::PointwiseProduct>) {
                os << '(' << describe(*b.left) << " . " << describe(*b.right) << ')';
            } else {
                os << "scalar(" << b.value << ')';
            }
            return os.str();
        },
        c.body());
}

Concept crisp(const ConvexSet& region) { return crisp(Space::reals(region.dim()), region); }

Concept crisp(const Space& space, const ConvexSet& region)
{
    check_dim(space, region, "crisp");
    return Concept(space, Concept::Crisp{region});
}

Concept gauss_fuzz(const ConvexSet& prototype, double sigma)
{
    return gauss_fuzz(Space::reals(prototype.dim()), prototype, sigma);
}

Concept gauss_fuzz(const Space& space, const ConvexSet& prototype, double sigma)
{
    check_dim(space, prototype, "fuzz");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("fuzz: sigma must be finite and >= 0");
    if (sigma == 0.0) return crisp(space, prototype);
    return Concept(space, Concept::GaussFuzz{prototype, sigma});
}

Concept affine(const Space& space, const Vec& coefficients, double offset)
{
    if (coefficients.size() != space.dim) throw DimensionError("affine: coefficient count must equal the space dimension");
    if (!coefficients.allFinite() || !std::isfinite(offset)) throw std::invalid_argument("affine: non-finite coefficient");
    // An affine map attains its extremes at extreme points, i.e. via the support function.
    const double hi = support(space.carrier, coefficients) + offset;
    const double lo = -support(space.carrier, -coefficients) + offset;
    constexpr double slack = 1e-12;
    if (!(lo >= -slack && hi <= 1.0 + slack)) {
        std::ostringstream os;
        os << "affine: range [" << lo << ", " << hi << "] over the carrier leaves [0,1]";
        throw std::domain_error(os.str());
    }
    return Concept(space, Concept::Affine{coefficients, offset});
}

Concept exponential(double lambda)
{
    if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw std::invalid_argument("exponential: lambda must be >= 1");
    return Concept(Space::of(ConvexSet::unit_cube(1)), Concept::Exponential{lambda});
}

Concept scalar_concept(const Space& space, double value)
{
    if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("scalar: value must lie in [0,1]");
    return Concept(space, Concept::Scalar{value});
}

Concept tensor(const Concept& c, const Concept& d)
{
    if (c.space().is_unit()) return multiply(scalar_concept(d.space(), evaluate(c, Vec(0))), d);
    if (d.space().is_unit()) return multiply(c, scalar_concept(c.space(), evaluate(d, Vec(0))));
    return Concept(product_space(c.space(), d.space()),
                   Concept::Tensor{std::make_shared<const Concept>(c), std::make_shared<const Concept>(d)});
}

Concept multiply(const Concept& c, const Concept& d)
{
    if (c.dim() != d.dim()) {
        std::ostringstream os;
        os << "multiply: concepts live on spaces of dimension " << c.dim() << " and " << d.dim();
        throw DimensionError(os.str());
    }
    return Concept(c.space(),
                   Concept::PointwiseProduct{std::make_shared<const Concept>(c), std::make_shared<const Concept>(d)});
}

double evaluate(const Concept& c, const Vec& x)
{
    if (x.size() != c.dim()) {
        std::ostringstream os;
        os << "evaluate: point has dimension " << x.size() << " but concept expects " << c.dim();
        throw DimensionError(os.str());
    }
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Concept::Crisp>) {
                return contains(b.region, x) ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, Concept::GaussFuzz>) {
                const double d = distance(b.prototype, x);
                return std::exp(-d * d / (2.0 * b.sigma * b.sigma));
            } else if constexpr (std::is_same_v<T, Concept::Affine>) {
                return std::clamp(b.coefficients.dot(x) + b.offset, 0.0, 1.0);
            } else if constexpr (std::is_same_v<T, Concept::Exponential>) {
                return std::pow(b.lambda, -x[0]);
            } else if constexpr (std::is_same_v<T, Concept::Tensor>) {
                const auto k = b.left->dim();
                const double l = evaluate(*b.left, x.head(k));
                if (l == 0.0) return 0.0;
                return l * evaluate(*b.right, x.tail(x.size() - k));
            } else if constexpr (std::is_same_v<T, Concept::PointwiseProduct>) {
                const double l = evaluate(*b.left, x);
                if (l == 0.0) return 0.0;
                return l * evaluate(*b.right, x);
            } else {
                return b.value;
            }
        },
        c.body());
}

Grade grade(const Concept& c, const Vec& x)
{
    return {evaluate(c, x), !contains(c.space().carrier, x)};
}

bool t_cut_test(const Concept& c, double t, const Vec& x) { return evaluate(c, x) >= t; }

}  // namespace logcon
