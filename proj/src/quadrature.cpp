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


#include "logcon/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace logcon {

namespace {

struct Reference {
    std::vector<double> x;
    std::vector<double> w;
};

// P_n(z) and P_n'(z) by the three-term recurrence.
std::pair<double, double> legendre(int n, double z)
{
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if (n == 0) return {1.0, 0.0};
    return {p1, n * (z * p1 - p0) / (z * z - 1.0)};
}

// Nodes/weights on [-1, 1]; cached because Newton-refined zeros are not free.
const Reference& reference_rule(int n)
{
    static std::mutex guard;
    static std::map<int, Reference> cache;
    std::lock_guard lock(guard);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Reference r;
    for (int i = 1; i <= (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        if (n % 2 == 1 && i == (n + 1) / 2) z = 0.0;
        for (int iter = 0; iter < 100 && z != 0.0; ++iter) {
            const auto [p, dp] = legendre(n, z);
            const double step = p / dp;
            z -= step;
            if (std::abs(step) <= 1e-15) break;
        }
        const double dp = legendre(n, z).second;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x.push_back(z);
        r.w.push_back(w);
        if (z != 0.0) {
            r.x.push_back(-z);
            r.w.push_back(w);
        }
    }
    return cache.emplace(n, std::move(r)).first->second;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double lo, double hi)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    const auto& ref = reference_rule(n);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    QuadratureRule rule;
    rule.nodes.reserve(ref.x.size());
    for (std::size_t i = 0; i < ref.x.size(); ++i) {
        rule.nodes.push_back(Vec::Constant(1, mid + half * ref.x[i]));
        rule.weights.push_back(half * ref.w[i]);
    }
    return rule;
}

QuadratureRule tensor_rule(const QuadratureRule& a, const QuadratureRule& b)
{
    QuadratureRule out;
    out.nodes.reserve(a.nodes.size() * b.nodes.size());
    out.weights.reserve(a.nodes.size() * b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i)
        for (std::size_t j = 0; j < b.nodes.size(); ++j) {
            out.nodes.push_back(concat(a.nodes[i], b.nodes[j]));
            out.weights.push_back(a.weights[i] * b.weights[j]);
        }
    return out;
}

QuadratureRule box_rule(const Vec& lo, const Vec& hi, int nodes_per_axis)
{
    QuadratureRule rule{{Vec(0)}, {1.0}};
    for (Eigen::Index i = 0; i < lo.size(); ++i) rule = tensor_rule(rule, gauss_legendre(nodes_per_axis, lo[i], hi[i]));
    return rule;
}

std::optional<QuadratureRule> ball_rule(const Vec& center, double radius, int n)
{
    const auto d = center.size();
    QuadratureRule rule;
    if (d == 1) return box_rule(center.array() - radius, center.array() + radius, n);
    const auto radial = gauss_legendre(n, 0.0, radius);
    if (d == 2) {
        // trapezoid in angle is spectrally accurate for periodic integrands
        const int m = 2 * n;
        for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
            const double r = radial.nodes[i][0];
            for (int k = 0; k < m; ++k) {
                const double theta = 2.0 * std::numbers::pi * k / m;
                Vec x = center;
                x[0] += r * std::cos(theta);
                x[1] += r * std::sin(theta);
                rule.nodes.push_back(std::move(x));
                rule.weights.push_back(radial.weights[i] * r * 2.0 * std::numbers::pi / m);
            }
        }
        return rule;
    }
    if (d == 3) {
        const auto polar = gauss_legendre(n, -1.0, 1.0);
        const int m = 2 * n;
        for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
            const double r = radial.nodes[i][0];
            for (std::size_t j = 0; j < polar.nodes.size(); ++j) {
                const double c = polar.nodes[j][0];
                const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
                for (int k = 0; k < m; ++k) {
                    const double phi = 2.0 * std::numbers::pi * k / m;
                    Vec x = center;
                    x[0] += r * s * std::cos(phi);
                    x[1] += r * s * std::sin(phi);
                    x[2] += r * c;
                    rule.nodes.push_back(std::move(x));
                    rule.weights.push_back(radial.weights[i] * r * r * polar.weights[j] * 2.0 * std::numbers::pi / m);
                }
            }
        }
        return rule;
    }
    return std::nullopt;
}

std::optional<QuadratureRule> region_rule(const ConvexSet& region, int nodes_per_axis)
{
    if (region.dim() > 3) return std::nullopt;
    if (auto b = region.as<ConvexSet::Box>()) {
        if (!region.is_bounded()) return std::nullopt;
        return box_rule(b->lo, b->hi, nodes_per_axis);
    }
    if (auto b = region.as<ConvexSet::Ball>()) return ball_rule(b->center, b->radius, nodes_per_axis);
    if (region.dim() == 1) {
        const auto bounds = bounding_box(region);
        return box_rule(bounds.lo, bounds.hi, nodes_per_axis);
    }
    return std::nullopt;
}

}  // namespace logcon
