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
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "logcon/rng.hpp"

namespace logcon {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A requested set operation has no representation in the closed set family.
class RepresentationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solver stopped before meeting its tolerance.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, Vec best_iterate = {})
        : std::runtime_error(what), best_(std::move(best_iterate)) {}
    const Vec& best_iterate() const noexcept { return best_; }

private:
    Vec best_;
};

/// A convex region of R^n in one of a few closed forms.
///
/// Values are immutable; Product keeps its factors behind shared pointers so
/// copies are cheap. Box bounds may be infinite, which is how the whole space
/// R^n is represented.
class ConvexSet {
public:
    struct Ball {
        Vec center;
        double radius;
    };
    struct Box {
        Vec lo;
        Vec hi;
    };
    struct Simplex {
        std::vector<Vec> vertices;
    };
    struct Hull {
        std::vector<Vec> vertices;
        bool approximate = false;
    };
    struct Product {
        std::shared_ptr<const ConvexSet> left;
        std::shared_ptr<const ConvexSet> right;
    };
    struct Point {
        Vec p;
    };
    using Body = std::variant<Ball, Box, Simplex, Hull, Product, Point>;

    static ConvexSet ball(Vec center, double radius);
    static ConvexSet box(Vec lo, Vec hi);
    static ConvexSet unit_cube(int n);
    /// R^n as an unbounded box.
    static ConvexSet whole(int n);
    static ConvexSet simplex(std::vector<Vec> vertices);
    /// {t in R^n | t_i >= 0, sum t_i = 1}
    static ConvexSet standard_simplex(int n);
    static ConvexSet hull(std::vector<Vec> vertices, bool approximate = false);
    static ConvexSet product(ConvexSet left, ConvexSet right);
    static ConvexSet point(Vec p);

    int dim() const noexcept { return dim_; }
    const Body& body() const noexcept { return body_; }
    template <class T>
    const T* as() const noexcept { return std::get_if<T>(&body_); }

    bool is_bounded() const;
    /// True when built from a sampled approximation (mixed-variant Minkowski mix).
    bool is_approximate() const;
    /// Every coordinate unbounded in both directions.
    bool is_whole_space() const;

private:
    ConvexSet(Body body, int dim) : body_(std::move(body)), dim_(dim) {}
    Body body_;
    int dim_;
};

std::string describe(const ConvexSet& s);

/// A convex space: R^dim restricted to a convex carrier.
///
/// The monoidal unit is the zero-dimensional space holding a single point.
struct Space {
    int dim = 0;
    ConvexSet carrier = ConvexSet::point(Vec(0));

    static Space unit();
    static Space reals(int n);
    static Space of(ConvexSet carrier);
    bool is_unit() const noexcept { return dim == 0; }
};

std::string describe(const Space& s);

// -- operations -------------------------------------------------------------

/// p*x + (1-p)*y
Vec mix(const Vec& x, const Vec& y, double p);

/// The set {a +_p b | a in A, b in B}.
///
/// Exact for matching variants; other pairs fall back to a hull over
/// `samples` boundary samples of each round factor and are flagged approximate.
/// Product pairs mix factor by factor; a Product against anything else throws
/// RepresentationError.
ConvexSet minkowski_mix(const ConvexSet& a, const ConvexSet& b, double p, int samples = 256);

bool contains(const ConvexSet& s, const Vec& x, double tol = 1e-9);

struct HullProjection {
    Vec point;
    Vec weights;
    int iterations = 0;
    bool converged = false;
};

/// Nearest point of conv(vertices) to x: projected gradient on the weight
/// simplex followed by an exact solve on the detected support.
HullProjection project_onto_hull(const std::vector<Vec>& vertices, const Vec& x,
                                 int max_iterations = 500, double tol = 1e-12);

/// argmin over a in S of |x - a|. Throws NumericError (with the best iterate)
/// if the hull solver fails to converge.
Vec project(const ConvexSet& s, const Vec& x);

/// Point-to-set distance inf_{a in S} |x - a|.
double distance(const ConvexSet& s, const Vec& x);

ConvexSet hull_of(const std::vector<Vec>& points);

Space product_space(const Space& x, const Space& y);

/// max over s in S of <d, s> (may be +inf for unbounded sets).
double support(const ConvexSet& s, const Vec& direction);

struct Bounds {
    Vec lo;
    Vec hi;
};
Bounds bounding_box(const ConvexSet& s);

/// Lebesgue volume in R^dim when it has a closed form; zero for flat sets.
std::optional<double> volume(const ConvexSet& s);
bool is_flat(const ConvexSet& s);

/// Extreme points for polytope-like sets (Box corners capped at 2^16).
std::optional<std::vector<Vec>> vertices_of(const ConvexSet& s);

/// A random point of S: uniform for Box/Ball/Simplex/Product/Point, Dirichlet
/// weights over the vertices for Hull.
Vec sample_point(const ConvexSet& s, CounterRng& rng);

/// A uniformly distributed point of S. Hull uses rejection from its bounding
/// box and throws NumericError after `rejection_cap` misses.
Vec sample_uniform(const ConvexSet& s, CounterRng& rng, int rejection_cap = 100000);

std::optional<ConvexSet> intersect_boxes(const ConvexSet& a, const ConvexSet& b);

enum class SliceKind { empty, set, unsupported };
struct Slice {
    SliceKind kind = SliceKind::unsupported;
    std::optional<ConvexSet> set;
};

/// {u | (u, v) in S} when `fixed_first` is false, {v | (u, v) in S} otherwise,
/// where the fixed block has value `fixed`.
Slice slice(const ConvexSet& s, const Vec& fixed, bool fixed_first);

/// Counter-clockwise vertices of a bounded two-dimensional Box, Simplex or
/// Hull; nullopt for other sets.
std::optional<std::vector<Vec>> polygon_of(const ConvexSet& s);

/// Signed area, positive for counter-clockwise vertex order.
double polygon_area(const std::vector<Vec>& polygon);

/// Intersection of a convex polygon with an axis-aligned box.
std::vector<Vec> clip_polygon(const std::vector<Vec>& polygon, const Vec& lo, const Vec& hi);

/// {t | origin + t dir in S} as [lo, hi] (lo > hi when empty); nullopt when
/// S has no exact line intersection (balls, boxes, points and 2-D polygons do).
std::optional<std::pair<double, double>> line_interval(const ConvexSet& s, const Vec& origin, const Vec& dir);

Vec concat(const Vec& a, const Vec& b);

/// {s + shift | s in S}
ConvexSet translate(const ConvexSet& s, const Vec& shift);

}  // namespace logcon
