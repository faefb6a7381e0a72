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


#include <doctest.h>

#include <cmath>
#include <limits>

#include "logcon/geometry.hpp"
#include "support.hpp"

using namespace logcon;
using logcon::test::v;
using logcon::test::v1;

namespace {

std::vector<ConvexSet> zoo()
{
    return {
        ConvexSet::ball(v({0.5, -0.2}), 0.7),
        ConvexSet::box(v({-1.0, 0.0, 0.5}), v({0.0, 2.0, 0.75})),
        ConvexSet::simplex({v({0, 0}), v({1, 0}), v({0, 1})}),
        ConvexSet::hull({v({0, 0, 0}), v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({0.2, 0.2, 0.2})}),
        ConvexSet::product(ConvexSet::ball(v1(0.0), 1.0), ConvexSet::standard_simplex(3)),
        ConvexSet::point(v({0.3, 0.4})),
        ConvexSet::hull({v({-1, 0}), v({1, 0.5})}),
    };
}

}  // namespace

TEST_CASE("mix is the componentwise convex combination")
{
    CHECK(mix(v1(0), v1(1), 0.5)[0] == 0.5);
    const Vec x = v({1, 2, 3});
    CHECK(mix(x, v({4, 5, 6}), 1.0) == x);
    CHECK(mix(v({0, 1, 0}), v({1, 1, 0}), 0.25) == v({0.75, 1, 0}));
    CHECK_THROWS_AS(mix(v1(0), v({0, 1}), 0.5), DimensionError);
}

TEST_CASE("minkowski_mix of matching variants")
{
    const ConvexSet pt = minkowski_mix(ConvexSet::point(v1(0)), ConvexSet::point(v1(1)), 0.5);
    REQUIRE(pt.as<ConvexSet::Point>());
    CHECK(pt.as<ConvexSet::Point>()->p[0] == doctest::Approx(0.5));

    const ConvexSet a = ConvexSet::box(v({0, 0}), v({1, 2}));
    for (double p : {0.0, 0.3, 1.0}) {
        const ConvexSet m = minkowski_mix(a, a, p);
        REQUIRE(m.as<ConvexSet::Box>());
        CHECK((m.as<ConvexSet::Box>()->lo - v({0, 0})).norm() < 1e-12);
        CHECK((m.as<ConvexSet::Box>()->hi - v({1, 2})).norm() < 1e-12);
    }
}

TEST_CASE("minkowski_mix of two balls against a brute-force oracle")
{
    const ConvexSet a = ConvexSet::ball(v1(0), 1.0), b = ConvexSet::ball(v1(4), 1.0);
    const ConvexSet m = minkowski_mix(a, b, 0.5);
    REQUIRE(m.as<ConvexSet::Ball>());
    CHECK(m.as<ConvexSet::Ball>()->center[0] == doctest::Approx(2.0));
    CHECK(m.as<ConvexSet::Ball>()->radius == doctest::Approx(1.0));

    logcon::test::Oracle rng(11);
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i < 10000; ++i) {
        const double x = rng.uniform(-1, 1), y = rng.uniform(3, 5);
        const double z = 0.5 * x + 0.5 * y;
        CHECK(contains(m, v1(z)));
        lo = std::min(lo, z);
        hi = std::max(hi, z);
    }
    // The sampled mixes fill the whole result interval [1, 3].
    CHECK(lo < 1.05);
    CHECK(hi > 2.95);
}

TEST_CASE("contains")
{
    CHECK(contains(ConvexSet::box(v({0, 0}), v({1, 1})), v({0.5, 0.5})));
    CHECK(contains(ConvexSet::hull({v({0, 0}), v({1, 0}), v({0, 1})}), v({0.3, 0.3})));
    CHECK_FALSE(contains(ConvexSet::hull({v({0, 0}), v({1, 0}), v({0, 1})}), v({0.6, 0.6})));
    CHECK_FALSE(contains(ConvexSet::ball(v({0, 1, 0}), 0.1), v({1, 1, 0})));
    CHECK(contains(ConvexSet::ball(v({0, 1, 0}), 0.1), v({0, 1, 0})));
    CHECK_THROWS_AS(contains(ConvexSet::unit_cube(2), v1(0)), DimensionError);
}

TEST_CASE("project and distance")
{
    CHECK((project(ConvexSet::ball(v({0, 0}), 1), v({2, 0})) - v({1, 0})).norm() < 1e-12);
    CHECK((project(ConvexSet::box(v({0, 0}), v({1, 1})), v({2, -1})) - v({1, 0})).norm() < 1e-12);
    CHECK(distance(ConvexSet::point(v1(0)), v1(1)) == doctest::Approx(1.0));
    CHECK(distance(ConvexSet::box(v({0, 0}), v({1, 1})), v({0.5, 0.5})) == 0.0);

    // Oracle: brute-force search over simplex weights at resolution 1e-3.
    const std::vector<Vec> tri{v({0, 0}), v({1, 0}), v({0, 1})};
    const Vec x = v({1, 1});
    double best = std::numeric_limits<double>::infinity();
    Vec arg;
    for (int i = 0; i <= 1000; ++i)
        for (int j = 0; i + j <= 1000; ++j) {
            const Vec q = (i * tri[1] + j * tri[2]) / 1000.0;
            if ((q - x).norm() < best) {
                best = (q - x).norm();
                arg = q;
            }
        }
    const ConvexSet hull = ConvexSet::hull(tri);
    CHECK((project(hull, x) - arg).norm() < 1e-3);
    CHECK((project(hull, x) - v({0.5, 0.5})).norm() < 1e-9);
    CHECK(distance(hull, x) == doctest::Approx(best).epsilon(1e-3));
    CHECK(distance(hull, x) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-9));
}

TEST_CASE("hull_of and products")
{
    const ConvexSet single = hull_of({v({1, 2})});
    CHECK(single.as<ConvexSet::Point>());
    CHECK(contains(hull_of({v1(0), v1(1)}), v1(0.5)));

    const Space c = Space::of(ConvexSet::unit_cube(3)), t = Space::of(ConvexSet::standard_simplex(4));
    CHECK(product_space(Space::of(ConvexSet::unit_cube(1)), Space::of(ConvexSet::unit_cube(1))).dim == 2);
    CHECK(product_space(c, t).dim == 7);

    const ConvexSet a = ConvexSet::box(v1(0), v1(1)), b = ConvexSet::ball(v({0, 0}), 1);
    const ConvexSet ab = ConvexSet::product(a, b);
    logcon::test::Oracle rng(3);
    for (int i = 0; i < 200; ++i) {
        const Vec x = v({rng.uniform(-1, 2), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)});
        CHECK(contains(ab, x) == (contains(a, x.head(1)) && contains(b, x.tail(2))));
    }
}

TEST_CASE("property: every variant is convex")
{
    CounterRng rng(42);
    for (const auto& s : zoo()) {
        for (int i = 0; i < 10000; ++i) {
            const Vec x = sample_point(s, rng), y = sample_point(s, rng);
            const double p = rng.uniform();
            REQUIRE(contains(s, x));
            REQUIRE(contains(s, mix(x, y, p)));
        }
    }
}

TEST_CASE("property: projection is optimal and distance vanishes exactly on the set")
{
    CounterRng rng(7);
    for (const auto& s : zoo()) {
        const Bounds b = bounding_box(s);
        for (int i = 0; i < 300; ++i) {
            Vec x(s.dim());
            for (int k = 0; k < s.dim(); ++k) x[k] = rng.uniform(b.lo[k] - 1.0, b.hi[k] + 1.0);
            const Vec px = project(s, x);
            const Vec a = sample_point(s, rng);
            CHECK((x - px).norm() <= (x - a).norm() + 1e-9);
            CHECK((distance(s, x) <= 1e-9) == contains(s, x, 1e-9));
            CHECK(distance(s, a) <= 1e-9);
        }
    }
}

TEST_CASE("property: minkowski mixes contain the mixes of members")
{
    CounterRng rng(9);
    const std::vector<std::pair<ConvexSet, ConvexSet>> pairs{
        {ConvexSet::ball(v({0, 0}), 1), ConvexSet::ball(v({3, 1}), 0.5)},
        {ConvexSet::box(v({0, 0}), v({1, 1})), ConvexSet::box(v({-2, 0}), v({-1, 3}))},
        {ConvexSet::hull({v({0, 0}), v({1, 0}), v({0, 1})}), ConvexSet::hull({v({2, 2}), v({3, 2})})},
        {ConvexSet::ball(v({0, 0}), 1), ConvexSet::box(v({2, 2}), v({3, 3}))},
        {ConvexSet::product(ConvexSet::unit_cube(1), ConvexSet::ball(v1(0), 1)),
         ConvexSet::product(ConvexSet::box(v1(2), v1(3)), ConvexSet::ball(v1(5), 2))},
    };
    for (const auto& [a, b] : pairs) {
        for (int i = 0; i < 500; ++i) {
            const double p = rng.uniform();
            const ConvexSet m = minkowski_mix(a, b, p);
            const Vec x = sample_point(a, rng), y = sample_point(b, rng);
            const double tol = m.is_approximate() ? 0.05 : 1e-9;
            CHECK(distance(m, mix(x, y, p)) <= tol);
        }
    }
}

TEST_CASE("polygons and line intersections")
{
    const ConvexSet sq = ConvexSet::hull({v({0, 0}), v({1, 1}), v({1, 0}), v({0, 1}), v({0.5, 0.5})});
    const auto poly = polygon_of(sq);
    REQUIRE(poly);
    CHECK(poly->size() == 4);
    CHECK(polygon_area(*poly) == doctest::Approx(1.0));
    CHECK(polygon_area(clip_polygon(*poly, v({0.5, -1}), v({2, 0.25}))) == doctest::Approx(0.125));

    auto iv = line_interval(sq, v({-1, 0.5}), v({1, 0}));
    REQUIRE(iv);
    CHECK(iv->first == doctest::Approx(1.0));
    CHECK(iv->second == doctest::Approx(2.0));
    iv = line_interval(ConvexSet::ball(v({0, 0}), 1), v({0, 0}), v({0, 2}));
    REQUIRE(iv);
    CHECK(iv->first == doctest::Approx(-0.5));
    CHECK(iv->second == doctest::Approx(0.5));
    iv = line_interval(ConvexSet::hull({v({0, 0}), v({1, 0})}), v({0.5, -1}), v({0, 1}));
    REQUIRE(iv);
    CHECK(iv->first == doctest::Approx(1.0));
    CHECK(iv->second == doctest::Approx(1.0));
    CHECK_FALSE(line_interval(ConvexSet::ball(v({0, 0, 0}), 1), v({0, 0, 0}), v({1, 0, 0})) == std::nullopt);

    // Oracle: membership along the line agrees with contains.
    CounterRng rng(5);
    const ConvexSet tri = ConvexSet::hull({v({0, 0}), v({2, 0.5}), v({0.5, 1.5})});
    for (int i = 0; i < 200; ++i) {
        const Vec o = v({rng.uniform(-1, 2), rng.uniform(-1, 2)}), d = rng.normal_vector(2);
        const auto cut = line_interval(tri, o, d);
        REQUIRE(cut);
        const double t = rng.uniform(-3, 3);
        const bool inside = t >= cut->first - 1e-9 && t <= cut->second + 1e-9;
        const bool strictly = t >= cut->first + 1e-7 && t <= cut->second - 1e-7;
        if (strictly) CHECK(contains(tri, o + t * d));
        if (!inside) CHECK_FALSE(contains(tri, o + t * d));
    }

    // Products intersect the factor intervals, including flat directions.
    const ConvexSet prod = ConvexSet::product(ConvexSet::box(v1(0), v1(1)), ConvexSet::ball(v({0, 0}), 1));
    for (int i = 0; i < 200; ++i) {
        const Vec o = v({rng.uniform(-1, 2), rng.uniform(-1, 1), rng.uniform(-1, 1)});
        Vec d = rng.normal_vector(3);
        if (i % 4 == 0) d[0] = 0.0;
        const auto cut = line_interval(prod, o, d);
        REQUIRE(cut);
        const double t = rng.uniform(-3, 3);
        const bool inside = t >= cut->first - 1e-9 && t <= cut->second + 1e-9;
        const bool strictly = t >= cut->first + 1e-7 && t <= cut->second - 1e-7;
        if (strictly) CHECK(contains(prod, o + t * d));
        if (!inside) CHECK_FALSE(contains(prod, o + t * d));
    }
}

TEST_CASE("constructor contracts")
{
    CHECK_THROWS(ConvexSet::ball(v({0, 0}), -1.0));
    CHECK_THROWS(ConvexSet::box(v({1, 0}), v({0, 1})));
    CHECK_THROWS(ConvexSet::hull({}));
    CHECK_THROWS_AS(ConvexSet::hull({v1(0), v({0, 1})}), DimensionError);
    CHECK(ConvexSet::whole(3).is_whole_space());
    CHECK_FALSE(ConvexSet::whole(3).is_bounded());
}
