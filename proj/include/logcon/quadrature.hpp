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

#include <optional>
#include <vector>

#include "logcon/geometry.hpp"

namespace logcon {

/// Nodes and weights of a cubature rule over some region of R^dim.
struct QuadratureRule {
    std::vector<Vec> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

/// Tensor-product Gauss-Legendre rule over a bounded box.
QuadratureRule box_rule(const Vec& lo, const Vec& hi, int nodes_per_axis);

/// Polar/spherical rule over a ball in dimension 1..3 (nullopt above that).
std::optional<QuadratureRule> ball_rule(const Vec& center, double radius, int nodes_per_axis);

/// Rule whose weights integrate against the Lebesgue measure of `region`,
/// for bounded boxes and balls of dimension <= 3.
std::optional<QuadratureRule> region_rule(const ConvexSet& region, int nodes_per_axis);

/// Outer product of two rules over disjoint coordinate blocks.
QuadratureRule tensor_rule(const QuadratureRule& a, const QuadratureRule& b);

}  // namespace logcon
