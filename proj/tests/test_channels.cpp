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

#include "logcon/channels.hpp"
#include "logcon/foodspace.hpp"
#include "logcon/suites.hpp"
#include "logcon/verify.hpp"
#include "support.hpp"

using namespace logcon;
using logcon::test::v;
using logcon::test::v1;

namespace {

Mat mat2(double a, double b, double c, double d)
{
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

/// Compares f and g on random probes (x, A): exact for point masses,
/// within 3 combined standard errors plus `slack` otherwise.
void agree(const Channel& f, const Channel& g, const ConvexSet& probe_region, std::uint64_t seed, double slack = 1e-9)
{
    CounterRng rng(seed);
    const Bounds b = bounding_box(probe_region);
    for (int i = 0; i < 60; ++i) {
        const Vec x = sample_point(probe_region, rng);
        const int m = f.cod().dim;
        const ConvexSet a = random_convex_set(i % 3, rng.normal_vector(m), 1.0 + b.hi.size() * 0.0, rng);
        const Estimate ef = kernel(f, x, a), eg = kernel(g, x, a);
        CHECK_MESSAGE(std::abs(ef.value - eg.value) <= 3.0 * (ef.std_error + eg.std_error) + slack,
                      describe(f) << " vs " << describe(g) << " at " << x.transpose() << " on " << describe(a));
    }
}

}  // namespace

TEST_CASE("apply on the basic channels")
{
    const Vec x = v({0.3, -0.4});
    Vec where;
    CHECK(is_point_mass(apply(identity(Space::reals(2)), x), &where));
    CHECK(where == x);

    const Concept c = gauss_fuzz(ConvexSet::ball(v({0, 0}), 0.2), 0.5);
    CHECK(total_mass(apply(update(c), x)) == doctest::Approx(evaluate(c, x)));

    const double sigma2 = 0.09;
    const State out = apply(noisy_affine(Mat::Identity(1, 1), v1(0), gaussian(v1(0), Mat::Constant(1, 1, sigma2))), v1(0.7));
    const auto* g = out.as<State::Gaussian>();
    REQUIRE(g);
    CHECK(g->mean[0] == doctest::Approx(0.7));
    CHECK(g->cov(0, 0) == doctest::Approx(sigma2));
}

TEST_CASE("kernel values of wiring and partial maps")
{
    const Space r2 = Space::reals(2);
    CHECK(kernel(discard(r2), v({5, 5}), ConvexSet::point(Vec(0))).value == 1.0);

    const ConvexSet a = ConvexSet::box(v({0, 0}), v({1, 1})), b = ConvexSet::ball(v({0.8, 0.8}), 0.5);
    const ConvexSet ab = ConvexSet::product(a, b);
    CounterRng rng(3);
    for (int i = 0; i < 200; ++i) {
        const Vec x = v({rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5)});
        CHECK(kernel(copy(r2), x, ab).value == ((contains(a, x) && contains(b, x)) ? 1.0 : 0.0));
    }
    const Channel partial = crisp_affine(Mat::Identity(1, 1), v1(1.0), ConvexSet::box(v1(0), v1(1)));
    CHECK(kernel(partial, v1(0.5), ConvexSet::whole(1)).value == 1.0);
    CHECK(kernel(partial, v1(2.0), ConvexSet::whole(1)).value == 0.0);
}

TEST_CASE("composition")
{
    const Space r2 = Space::reals(2);
    const Channel f = noisy_affine(mat2(1, 0.5, 0, 1), v({0.1, 0}), gaussian(v({0, 0}), mat2(0.2, 0, 0, 0.1)));
    agree(compose(identity(r2), f), f, ConvexSet::unit_cube(2), 1);
    agree(compose(f, identity(r2)), f, ConvexSet::unit_cube(2), 2);

    const Mat m1 = mat2(1, 2, 0, 1), m2 = mat2(0.5, 0, 1, 1);
    const Vec c1 = v({1, 0}), c2 = v({0, -1});
    const Channel fused = simplify(then(crisp_affine(m1, c1), crisp_affine(m2, c2)));
    const Channel direct = crisp_affine(m2 * m1, m2 * c1 + c2);
    CounterRng rng(4);
    for (int i = 0; i < 50; ++i) {
        const Vec x = rng.normal_vector(2);
        Vec p, q;
        REQUIRE(is_point_mass(apply(fused, x), &p));
        REQUIRE(is_point_mass(apply(direct, x), &q));
        CHECK((p - q).norm() < 1e-12);
    }
    CHECK_THROWS_AS(compose(identity(Space::reals(3)), f), DimensionError);
}

TEST_CASE("gaussian closed-form composition against Monte Carlo")
{
    const CheckReport r = check_gauss_composition(2024, 4, 100000);
    CHECK_MESSAGE(r.passed(), r.to_text());

    // Direct oracle: sample x -> y1 -> y2 through both channels by hand.
    const Mat m1 = mat2(1.0, 0.3, -0.2, 0.8), m2 = mat2(0.5, 0.1, 0.0, 1.2);
    const Mat s1 = mat2(0.3, 0.05, 0.05, 0.2), s2 = mat2(0.1, 0.0, 0.0, 0.4);
    const Vec c1 = v({0.1, 0.2}), c2 = v({-0.3, 0.0});
    const Channel composite = then(noisy_affine(m1, c1, gaussian(Vec::Zero(2), s1)), noisy_affine(m2, c2, gaussian(Vec::Zero(2), s2)));
    const auto ga = gauss_affine(simplify(composite));
    REQUIRE(ga);
    const Vec x = v({0.4, -0.6});
    const Vec mean = ga->m * x + ga->c;
    const Eigen::LLT<Mat> l1(s1), l2(s2);
    logcon::test::Oracle rng(5);
    const int n = 100000;
    Vec sum = Vec::Zero(2);
    Mat outer = Mat::Zero(2, 2);
    for (int i = 0; i < n; ++i) {
        const Vec y1 = m1 * x + c1 + Mat(l1.matrixL()) * v({rng.normal(), rng.normal()});
        const Vec y2 = m2 * y1 + c2 + Mat(l2.matrixL()) * v({rng.normal(), rng.normal()});
        sum += y2;
        outer += y2 * y2.transpose();
    }
    const Vec emp_mean = sum / n;
    const Mat emp_cov = outer / n - emp_mean * emp_mean.transpose();
    for (int k = 0; k < 2; ++k) CHECK(std::abs(emp_mean[k] - mean[k]) < 3.0 * std::sqrt(ga->sigma(k, k) / n));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double se = std::sqrt((ga->sigma(a, a) * ga->sigma(b, b) + ga->sigma(a, b) * ga->sigma(a, b)) / n);
            CHECK(std::abs(emp_cov(a, b) - ga->sigma(a, b)) < 4.0 * se);
        }
}

TEST_CASE("tensor products")
{
    const Channel f = noisy_affine(Mat::Identity(1, 1), v1(0), gaussian(v1(0), Mat::Constant(1, 1, 0.3)));
    const Channel g = update(gauss_fuzz(ConvexSet::ball(v1(0), 0.1), 0.4));
    const Channel fg = tensor(f, g);
    CounterRng rng(6);
    for (int i = 0; i < 100; ++i) {
        const Vec x = v1(rng.uniform(-1, 1)), y = v1(rng.uniform(-1, 1));
        const ConvexSet a = ConvexSet::box(v1(rng.uniform(-2, 0)), v1(rng.uniform(0, 2)));
        const ConvexSet b = ConvexSet::box(v1(-1), v1(rng.uniform(-1, 1)));
        const double joint = kernel(fg, concat(x, y), ConvexSet::product(a, b)).value;
        CHECK(joint == doctest::Approx(kernel(f, x, a).value * kernel(g, y, b).value).epsilon(1e-12));
    }
    const Space r1 = Space::reals(1);
    agree(tensor(identity(r1), identity(r1)), identity(Space::reals(2)), ConvexSet::unit_cube(2), 7);
    agree(compose(tensor(discard(r1), identity(r1)), copy(r1)), identity(r1), ConvexSet::unit_cube(1), 8);
}

TEST_CASE("updates")
{
    const Space r2 = Space::reals(2);
    agree(update(scalar_concept(r2, 1.0)), identity(r2), ConvexSet::unit_cube(2), 9);
    const Concept c = gauss_fuzz(ConvexSet::ball(v({0, 0}), 0.3), 0.5);
    CounterRng rng(10);
    for (int i = 0; i < 50; ++i) {
        const Vec x = rng.normal_vector(2);
        CHECK(kernel(then(update(c), discard(r2)), x, ConvexSet::point(Vec(0))).value ==
              doctest::Approx(kernel(effect(c), x, ConvexSet::point(Vec(0))).value));
    }
    const Channel crisp_update = update(crisp(ConvexSet::unit_cube(2)));
    CHECK(total_mass(apply(crisp_update, v({2, 0.5}))) == 0.0);
    CHECK(total_mass(apply(crisp_update, v({0.2, 0.5}))) == 1.0);
}

TEST_CASE("convolution")
{
    const Channel f = crisp_affine(Mat::Identity(1, 1), v1(1.0)), g = crisp_affine(Mat::Constant(1, 1, 2.0), v1(0.0));
    Vec where;
    REQUIRE(is_point_mass(apply(convolve(f, g), v1(0.5)), &where));
    CHECK(where[0] == doctest::Approx(2.5));

    const Channel n1 = noisy_affine(Mat::Identity(1, 1), v1(0), gaussian(v1(0), Mat::Constant(1, 1, 0.2)));
    const Channel n2 = noisy_affine(Mat::Identity(1, 1), v1(0), gaussian(v1(0), Mat::Constant(1, 1, 0.5)));
    EvalOptions mc;
    mc.mc_samples = 100000;
    const auto draws = sample(apply(convolve(n1, n2), v1(0.0), mc), 100000, 12);
    double s = 0, s2 = 0;
    for (const auto& d : draws) {
        s += d[0];
        s2 += d[0] * d[0];
    }
    const double mean = s / 1e5, var = s2 / 1e5 - mean * mean;
    // Oracle: variances add for independent Gaussian noises.
    CHECK(std::abs(var - 0.7) < 3.0 * 0.7 * std::sqrt(2.0 / 1e5));

    const Concept c = gauss_fuzz(ConvexSet::ball(v1(0), 0.1), 0.3);
    const Channel scaled_f = then(update(c), f), scaled_g = then(update(c), g);
    const double mx = total_mass(apply(convolve(scaled_f, scaled_g), v1(0.4)));
    CHECK(mx == doctest::Approx(total_mass(apply(scaled_f, v1(0.4))) * total_mass(apply(scaled_g, v1(0.4)))));
}

TEST_CASE("pushforwards")
{
    const ConvexSet unit = ConvexSet::unit_cube(2);
    const State u = uniform(unit);
    CounterRng rng(13);
    for (int i = 0; i < 30; ++i) {
        const ConvexSet a = random_convex_set(i % 3, v({rng.uniform(), rng.uniform()}), 0.5, rng);
        CHECK(mass(push(identity(Space::reals(2)), u), a).value == doctest::Approx(mass(u, a).value));
    }
    const State scaled_u = scaled(0.6, u);
    const State s = push(discard(Space::reals(2)), scaled_u);
    CHECK(total_mass(s) == doctest::Approx(0.6));

    const Mat cov = mat2(1.0, 0.3, 0.3, 0.5), m = mat2(2, 1, 0, 1);
    const Vec mu = v({0.5, -0.5}), c = v({1, 1});
    const State img = push(crisp_affine(m, c), gaussian(mu, cov));
    const auto* g = img.as<State::Gaussian>();
    REQUIRE(g);
    CHECK((g->mean - (m * mu + c)).norm() < 1e-12);
    CHECK((g->cov - m * cov * m.transpose()).norm() < 1e-12);
    // Monte Carlo oracle on the mean.
    const auto draws = sample(gaussian(mu, cov), 100000, 31);
    Vec mean = Vec::Zero(2);
    for (const auto& d : draws) mean += m * d + c;
    mean /= 1e5;
    const Mat out_cov = m * cov * m.transpose();
    for (int k = 0; k < 2; ++k) CHECK(std::abs(mean[k] - g->mean[k]) < 4.0 * std::sqrt(out_cov(k, k) / 1e5));
}

TEST_CASE("pullbacks")
{
    const Concept c = gauss_fuzz(ConvexSet::ball(v({0, 0}), 0.3), 0.5);
    const PulledEffect along_id = pullback_effect(identity(Space::reals(2)), c);
    CounterRng rng(14);
    for (int i = 0; i < 30; ++i) {
        const Vec x = rng.normal_vector(2);
        CHECK(along_id(x).value == doctest::Approx(evaluate(c, x)));
    }
    const PulledEffect one = pullback_effect(discard(Space::reals(2)), scalar_concept(Space::unit(), 1.0));
    CHECK(one(v({3, 4})).value == 1.0);

    // Tasting yellow against an independent tensor Gauss-Legendre oracle over the colour cube.
    const FoodSpace food = food_space();
    const FoodConcepts fc = food_concepts(food, Widths{0.15, 0.15, 0.15, 0.15, 0.3});
    EvalOptions opts;
    opts.integrator.nodes = 16;
    const Channel tc = taste_colour_channel(food, fc.banana);
    const PulledEffect tasting = pullback_effect(tc, fc.yellow_colour, opts);
    const Vec t = mix(food.sweet, food.bitter, 0.4);
    double oracle = 0.0;
    const int n = 40;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Vec col = v({(i + 0.5) / n, (j + 0.5) / n, (k + 0.5) / n});
                oracle += evaluate(fc.yellow_colour, col) * evaluate(fc.banana, concat(col, t));
            }
    oracle /= n * n * n;
    CHECK(tasting(t).value == doctest::Approx(oracle).epsilon(0.02));
}

TEST_CASE("crisp channels are deterministic")
{
    CHECK(is_crisp(crisp_affine(mat2(1, 2, 3, 4), v({0, 1}))));
    CHECK_FALSE(is_crisp(noisy_affine(Mat::Identity(1, 1), v1(0), gaussian(v1(0), Mat::Constant(1, 1, 0.1)))));
    CHECK(is_crisp(update(crisp(ConvexSet::unit_cube(2))), {v({0.5, 0.5}), v({2, 2})}));

    const Space r2 = Space::reals(2);
    const Channel f = crisp_affine(mat2(1, 2, -1, 0.5), v({0.3, 0}));
    agree(then(f, copy(r2)), then(copy(r2), tensor(f, f)), ConvexSet::unit_cube(2), 15);
}

TEST_CASE("property: associativity and interchange on probes")
{
    const Channel f = noisy_affine(mat2(1, 0.5, 0, 1), v({0.1, 0}), gaussian(v({0, 0}), mat2(0.2, 0, 0, 0.1)));
    const Channel g = update(gauss_fuzz(ConvexSet::ball(v({0, 0}), 0.5), 0.7));
    const Channel h = crisp_affine(mat2(0.5, 0, 0.2, 1), v({0, 0.3}));
    agree(compose(h, compose(g, f)), compose(compose(h, g), f), ConvexSet::unit_cube(2), 16, 1e-6);

    const Channel f1 = noisy_affine(Mat::Identity(1, 1), v1(0.2), gaussian(v1(0), Mat::Constant(1, 1, 0.3)));
    const Channel g1 = crisp_affine(Mat::Constant(1, 1, 2.0), v1(-0.1));
    const Channel f2 = update(gauss_fuzz(ConvexSet::point(v1(0)), 0.5));
    const Channel g2 = noisy_affine(Mat::Constant(1, 1, 0.5), v1(0), gaussian(v1(0), Mat::Constant(1, 1, 0.1)));
    agree(compose(tensor(f1, g1), tensor(f2, g2)), tensor(compose(f1, f2), compose(g1, g2)), ConvexSet::unit_cube(2), 17, 1e-6);
}

TEST_CASE("property: comonoid laws hold exactly")
{
    for (int d = 1; d <= 3; ++d) {
        const CheckReport r = check_markov_laws(d, 50, 100 + d);
        CHECK_MESSAGE(r.passed(), r.to_text());
    }
}

TEST_CASE("property: reference channels are log-concave and the square map is not")
{
    CheckOptions o;
    o.trials = 200;
    EvalOptions eval;
    eval.mc_samples = 4000;
    for (const auto& c : reference_channels(3)) {
        o.seed += 1;
        const CheckReport r = check_channel_log_concave(c.value, c.region, o, eval);
        CHECK_MESSAGE(r.passed(), r.to_text());
    }
    o.trials = 1000;
    const CheckReport sq = check_channel_log_concave(square_channel(), ConvexSet::unit_cube(1), o);
    CHECK(sq.verdict == Verdict::fail);
    CHECK_FALSE(sq.witnesses.empty());
}
