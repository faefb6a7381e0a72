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

#include "logcon/concepts.hpp"
#include "logcon/foodspace.hpp"
#include "logcon/suites.hpp"
#include "logcon/verify.hpp"
#include "support.hpp"

using namespace logcon;
using logcon::test::v;
using logcon::test::v1;

TEST_CASE("crisp concepts are indicators")
{
    const Vec g = v({0, 1, 0});
    const Concept green = crisp(ConvexSet::ball(g, 0.1));
    CHECK(evaluate(green, g) == 1.0);
    CHECK(evaluate(green, v({1, 1, 0})) == 0.0);
    const CheckReport r = check_log_concave(green, ConvexSet::unit_cube(3), CheckOptions{});
    CHECK(r.passed());
}

TEST_CASE("gaussian fuzzification")
{
    const Concept c = gauss_fuzz(ConvexSet::point(v1(0)), 1.0);
    CHECK(evaluate(c, v1(0)) == 1.0);
    CHECK(evaluate(c, v1(1)) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(evaluate(c, v1(1)) == doctest::Approx(0.60653).epsilon(1e-5));

    const ConvexSet ball = ConvexSet::ball(v({0, 0}), 0.5);
    for (double sigma : {0.01, 0.3, 2.0}) CHECK(evaluate(gauss_fuzz(ball, sigma), v({0.2, 0.1})) == 1.0);

    const Concept sharp = gauss_fuzz(ball, 0.0);
    CHECK(sharp.as<Concept::Crisp>());
    CHECK(evaluate(sharp, v({0.6, 0})) == 0.0);
    CHECK_THROWS(gauss_fuzz(ball, -1.0));
}

TEST_CASE("tensor and the counterexample values")
{
    const Concept a = crisp(ConvexSet::box(v1(0), v1(1))), b = crisp(ConvexSet::ball(v({0, 0}), 1));
    const Concept ab = tensor(a, b), joint = crisp(ConvexSet::product(ConvexSet::box(v1(0), v1(1)), ConvexSet::ball(v({0, 0}), 1)));
    logcon::test::Oracle rng(1);
    for (int i = 0; i < 500; ++i) {
        const Vec x = v({rng.uniform(-0.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)});
        CHECK(evaluate(ab, x) == evaluate(joint, x));
    }
    const RemarkValues rv = counterexample_remark();
    CHECK(rv.v00 == 0.5);
    CHECK(rv.v11 == 0.5);
    CHECK(rv.vmid == 0.46875);
    CHECK(std::min(rv.v00, rv.v11) - rv.vmid == 0.03125);
    // Closed form of C(x) = 1 - x/2 and D(y) = (y^2 + 1)/2.
    auto cd = [](double x, double y) { return (1.0 - x / 2.0) * ((y * y + 1.0) / 2.0); };
    CHECK(remark_tensor().fn(v({0.5, 0.5})) == cd(0.5, 0.5));
    CHECK(remark_tensor().fn(v({0, 0})) == cd(0, 0));
    CHECK(remark_tensor().fn(v({1, 1})) == cd(1, 1));
}

TEST_CASE("pointwise product")
{
    const Concept c = gauss_fuzz(ConvexSet::ball(v({0, 0}), 0.3), 0.5);
    const Concept one = scalar_concept(c.space(), 1.0);
    const Concept a = crisp(ConvexSet::box(v({0, 0}), v({2, 2}))), b = crisp(ConvexSet::box(v({1, -1}), v({3, 1})));
    const Concept ab = multiply(a, b), both = crisp(ConvexSet::box(v({1, 0}), v({2, 1})));
    logcon::test::Oracle rng(2);
    for (int i = 0; i < 500; ++i) {
        const Vec x = v({rng.uniform(-1, 4), rng.uniform(-2, 3)});
        CHECK(evaluate(multiply(c, one), x) == evaluate(c, x));
        CHECK(evaluate(ab, x) == evaluate(both, x));
    }
    CHECK_THROWS_AS(multiply(c, crisp(ConvexSet::unit_cube(3))), DimensionError);

    const FoodSpace food = food_space();
    const FoodConcepts fc = food_concepts(food, Widths{0.15, 0.15, 0.15, 0.15, 0.15});
    const Concept gb = multiply(fc.green, fc.banana);
    for (int i = 0; i < 100; ++i) {
        Vec x(7);
        for (int k = 0; k < 7; ++k) x[k] = rng.uniform();
        CHECK(evaluate(gb, x) == doctest::Approx(evaluate(fc.green, x) * evaluate(fc.banana, x)).epsilon(1e-14));
    }
}

TEST_CASE("affine and exponential concepts")
{
    const Space unit = Space::of(ConvexSet::unit_cube(1));
    CHECK(evaluate(affine(unit, v1(-0.5), 1.0), v1(0)) == 1.0);
    CHECK(evaluate(affine(unit, v1(-0.5), 1.0), v1(1)) == 0.5);
    CHECK(evaluate(exponential(2.0), v1(1)) == 0.5);
    CHECK_THROWS(affine(unit, v1(2.0), 0.0));
    CHECK_THROWS(affine(Space::reals(1), v1(1.0), 0.0));
    CHECK_THROWS(exponential(0.5));
}

TEST_CASE("banana learning from exemplars")
{
    const FoodSpace food = food_space();
    const Concept banana = gauss_fuzz(food.food, food.banana, 0.2);
    CHECK(evaluate(banana, concat(food.yellow, food.sweet)) == 1.0);
    CHECK(evaluate(banana, concat(food.green, food.bitter)) == 1.0);
    CHECK(evaluate(banana, concat(mix(food.yellow, food.green, 0.3), mix(food.sweet, food.bitter, 0.3))) == doctest::Approx(1.0));
    CHECK(evaluate(banana, concat(food.green, food.sweet)) < 1.0);
}

TEST_CASE("t-cuts")
{
    const ConvexSet a = ConvexSet::ball(v({0, 0}), 1);
    logcon::test::Oracle rng(4);
    for (int i = 0; i < 200; ++i) {
        const Vec x = v({rng.uniform(-2, 2), rng.uniform(-2, 2)});
        CHECK(t_cut_test(crisp(a), 1.0, x) == contains(a, x));
    }
    // Oracle: exp(-x^2/2) >= exp(-1/2) exactly on [-1, 1], confirmed by a grid scan.
    const Concept c = gauss_fuzz(ConvexSet::point(v1(0)), 1.0);
    const double t = std::exp(-0.5);
    double lo = 1e9, hi = -1e9;
    for (int i = -3000; i <= 3000; ++i) {
        const double x = i * 1e-3;
        if (t_cut_test(c, t, v1(x))) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    CHECK(lo == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("property: seeded constructions are log-concave, hence quasi-concave, with convex t-cuts")
{
    CheckOptions o;
    o.trials = 2000;
    o.tol = 1e-9;
    for (const auto& c : seeded_concepts(77, 16)) {
        o.seed += 1;
        const CheckReport lc = check_log_concave(c.value, c.region, o);
        const CheckReport qc = check_quasi_concave(c.value, c.region, o);
        const CheckReport cut = check_t_cut_convexity(raw(c.value), c.region, o);
        CHECK_MESSAGE(lc.passed(), lc.to_text());
        if (lc.passed()) CHECK_MESSAGE(qc.passed(), qc.to_text());
        CHECK_MESSAGE(cut.passed(), cut.to_text());
    }
}

TEST_CASE("property: fuzzification crisps monotonically as sigma shrinks")
{
    const ConvexSet p = ConvexSet::hull({v({0, 0}), v({1, 0.5}), v({0.2, 1})});
    logcon::test::Oracle rng(8);
    for (int i = 0; i < 2000; ++i) {
        const Vec x = v({rng.uniform(-2, 3), rng.uniform(-2, 3)});
        const double s1 = rng.uniform(0.01, 1.0), s2 = s1 + rng.uniform(0.0, 1.0);
        CHECK(evaluate(gauss_fuzz(p, s1), x) <= evaluate(gauss_fuzz(p, s2), x));
    }
}

TEST_CASE("grade flags points outside the carrier")
{
    const Concept c = affine(Space::of(ConvexSet::unit_cube(1)), v1(1.0), 0.0);
    CHECK_FALSE(grade(c, v1(0.5)).outside_carrier);
    CHECK(grade(c, v1(2.0)).outside_carrier);
    CHECK_THROWS_AS(evaluate(c, v({0.5, 0.5})), DimensionError);
}
