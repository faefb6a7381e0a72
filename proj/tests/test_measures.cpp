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
#include <numbers>

#include "logcon/concepts.hpp"
#include "logcon/measures.hpp"
#include "logcon/quadrature.hpp"
#include "logcon/suites.hpp"
#include "logcon/verify.hpp"
#include "support.hpp"

using namespace logcon;
using logcon::test::v;
using logcon::test::v1;

namespace {

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

TEST_CASE("basic masses")
{
    const ConvexSet unit = ConvexSet::box(v1(0), v1(1));
    CHECK(total_mass(uniform(unit)) == doctest::Approx(1.0));
    CHECK(mass(uniform(unit), unit).value == doctest::Approx(1.0));
    CHECK(mass(uniform(unit), ConvexSet::box(v1(0), v1(0.5))).value == doctest::Approx(0.5));
    const Vec x = v({0.2, 0.3});
    CHECK(mass(dirac(x), ConvexSet::unit_cube(2)).value == 1.0);
    CHECK(mass(dirac(x), ConvexSet::ball(v({2, 2}), 1)).value == 0.0);
    CHECK(mass(scaled(0.3, dirac(x)), ConvexSet::unit_cube(2)).value == doctest::Approx(0.3));
    CHECK_THROWS(uniform(ConvexSet::hull({v({0, 0}), v({1, 1})})));
    CHECK_THROWS(scaled(1.5, dirac(x)));
}

TEST_CASE("gaussian density normalisation")
{
    for (int n = 1; n <= 4; ++n) {
        const double expected = std::pow(2.0 * std::numbers::pi, -0.5 * n);
        CHECK(*density(gaussian(Vec::Zero(n), Mat::Identity(n, n)), Vec::Zero(n)) == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("gaussian mass of the unit ball against a Simpson oracle")
{
    const double oracle = logcon::test::simpson(phi, -1.0, 1.0, 100000);
    CHECK(oracle == doctest::Approx(std::erf(1.0 / std::sqrt(2.0))).epsilon(1e-12));
    const Estimate e = mass(gaussian(v1(0), Mat::Identity(1, 1)), ConvexSet::ball(v1(0), 1.0));
    CHECK(e.value == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(e.value == doctest::Approx(0.6827).epsilon(1e-4));
}

TEST_CASE("one-dimensional densities against closed-form CDFs")
{
    // Laplace(m, b): F(x) = 1/2 exp((x-m)/b) below m, 1 - 1/2 exp(-(x-m)/b) above.
    auto laplace_cdf = [](double x, double m, double b) { return x < m ? 0.5 * std::exp((x - m) / b) : 1.0 - 0.5 * std::exp(-(x - m) / b); };
    auto logistic_cdf = [](double x, double m, double s) { return 1.0 / (1.0 + std::exp(-(x - m) / s)); };
    const ConvexSet iv = ConvexSet::box(v1(-0.3), v1(2.0));
    CHECK(mass(laplace(0.5, 1.2), iv).value == doctest::Approx(laplace_cdf(2.0, 0.5, 1.2) - laplace_cdf(-0.3, 0.5, 1.2)).epsilon(1e-12));
    CHECK(mass(logistic(-0.3, 0.7), iv).value ==
          doctest::Approx(logistic_cdf(2.0, -0.3, 0.7) - logistic_cdf(-0.3, -0.3, 0.7)).epsilon(1e-12));
}

TEST_CASE("property: normalisation over growing boxes")
{
    Mat cov(2, 2);
    cov << 1.0, 0.4, 0.4, 0.5;
    const std::vector<State> states{uniform(ConvexSet::box(v({0, 0}), v({1, 2}))), gaussian(v({0.3, -0.2}), cov), laplace(0.5, 1.2),
                                    logistic(-0.3, 0.7), dirac(v({0.1, 0.1}))};
    Integrator quad;
    quad.strategy = Strategy::automatic;
    for (const auto& s : states) {
        const int n = s.dim();
        const Estimate e = mass(s, ConvexSet::box(Vec::Constant(n, -40.0), Vec::Constant(n, 40.0)), quad);
        CHECK_MESSAGE(e.value == doctest::Approx(1.0).epsilon(1e-3), describe(s));
    }
}

TEST_CASE("pairing values")
{
    const Space unit = Space::of(ConvexSet::unit_cube(1));
    const Concept c = gauss_fuzz(ConvexSet::ball(v({0, 0}), 0.3), 0.5);
    CHECK(pair(dirac(v({0.4, 0.1})), c).value == evaluate(c, v({0.4, 0.1})));

    Integrator quad;
    quad.strategy = Strategy::quadrature;
    const Estimate half = pair(uniform(ConvexSet::unit_cube(1)), affine(unit, v1(1.0), 0.0), quad);
    CHECK(std::abs(half.value - 0.5) <= 1e-6);

    // Oracle: the product of two unit Gaussians integrates to 1/sqrt(2).
    auto product = [](double x) { return phi(x) * std::exp(-0.5 * x * x); };
    const double simpson = logcon::test::simpson(product, -12.0, 12.0, 20000);
    logcon::test::Oracle rng(1234);
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        const double f = std::exp(-0.5 * z * z);
        sum += f;
        sum2 += f * f;
    }
    const double mc = sum / n, se = std::sqrt((sum2 / n - mc * mc) / n);
    CHECK(std::abs(mc - 1.0 / std::sqrt(2.0)) < 4.0 * se);
    CHECK(simpson == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    const Estimate e = pair(gaussian(v1(0), Mat::Identity(1, 1)), gauss_fuzz(ConvexSet::point(v1(0)), 1.0));
    CHECK(std::abs(e.value - 0.70711) <= 1e-3);
    CHECK(std::abs(e.value - simpson) <= 1e-6);
    CHECK(std::abs(e.value - mc) <= 4.0 * se);
}

TEST_CASE("sampling")
{
    const Vec x = v({1, -2});
    for (const auto& s : sample(dirac(x), 3, 5)) CHECK(s == x);
    CHECK(sample(dirac(x), 3, 5).size() == 3);

    Mat cov(2, 2);
    cov << 2.0, 0.5, 0.5, 1.0;
    const Vec mu = v({0.5, -1.0});
    const std::size_t n = 100000;
    const auto draws = sample(gaussian(mu, cov), n, 99);
    Vec mean = Vec::Zero(2);
    for (const auto& d : draws) mean += d;
    mean /= static_cast<double>(n);
    for (int k = 0; k < 2; ++k) CHECK(std::abs(mean[k] - mu[k]) < 4.0 * std::sqrt(cov(k, k) / n));

    const auto us = sample(uniform(ConvexSet::unit_cube(1)), n, 17);
    std::size_t hits = 0;
    for (const auto& u : us) hits += u[0] <= 0.5;
    CHECK(std::abs(static_cast<double>(hits) / n - 0.5) < 3.0 * std::sqrt(0.25 / n));
    CHECK(sample(gaussian(mu, cov), 10, 3) == sample(gaussian(mu, cov), 10, 3));
}

TEST_CASE("polygon masses against Monte Carlo oracles")
{
    Mat cov(2, 2);
    cov << 1.7, 0.95, 0.95, 0.66;
    const Vec mu = v({0.2, -0.5});
    const ConvexSet tri = ConvexSet::hull({v({0, 0}), v({1, 0.3}), v({0.2, 1}), v({0.9, 1.1})});
    const ConvexSet box = ConvexSet::box(v({0, 0}), v({1, 2}));
    const Estimate g = mass(gaussian(mu, cov), tri);
    const Estimate u = mass(uniform(box), tri);

    const Eigen::LLT<Mat> llt(cov);
    const Mat l = llt.matrixL();
    logcon::test::Oracle rng(77);
    const int n = 400000;
    int gh = 0, uh = 0;
    for (int i = 0; i < n; ++i) {
        const Vec z = mu + l * v({rng.normal(), rng.normal()});
        gh += contains(tri, z);
        uh += contains(tri, v({rng.uniform(0, 1), rng.uniform(0, 2)}));
    }
    const double pg = static_cast<double>(gh) / n, pu = static_cast<double>(uh) / n;
    CHECK(std::abs(g.value - pg) < 4.0 * std::sqrt(pg * (1 - pg) / n) + 1e-9);
    CHECK(std::abs(u.value - pu) < 4.0 * std::sqrt(pu * (1 - pu) / n) + 1e-9);
    CHECK(u.strategy == Strategy::closed_form);
}

TEST_CASE("degenerate gaussians slice exactly along their support line")
{
    Mat cov(2, 2);
    cov << 0.3, 0.0, 0.0, 0.0;
    const State g = gaussian(v({0.27, 0.27}), cov);
    const double sd = std::sqrt(0.3);
    auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
    CHECK(mass(g, ConvexSet::box(v({0, 0}), v({1, 0.3}))).value == doctest::Approx(cdf((1 - 0.27) / sd) - cdf(-0.27 / sd)).epsilon(1e-12));
    CHECK(mass(g, ConvexSet::box(v({0, 0.3}), v({1, 1}))).value == 0.0);
}

TEST_CASE("property: pairing is monotone and pairs the unit scalar to the total mass")
{
    Mat cov(2, 2);
    cov << 0.5, 0.1, 0.1, 0.3;
    const State s = gaussian(v({0.1, 0.2}), cov);
    const ConvexSet proto = ConvexSet::ball(v({0, 0}), 0.2);
    double last = 0.0;
    for (double sigma : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        const double value = pair(s, gauss_fuzz(proto, sigma)).value;
        CHECK(value >= last - 1e-6);
        last = value;
    }
    const State w = scaled(0.4, uniform(ConvexSet::unit_cube(2)));
    CHECK(pair(w, scalar_concept(Space::reals(2), 1.0)).value == doctest::Approx(0.4));
    CHECK(pair(s, scalar_concept(Space::reals(2), 1.0)).value == doctest::Approx(mass(s, ConvexSet::whole(2)).value));
}

TEST_CASE("property: reference states are log-concave measures")
{
    CheckOptions o;
    o.trials = 300;
    for (const auto& s : reference_states(5)) {
        o.seed += 1;
        const CheckReport r = check_measure_log_concave(s.value, s.region, o);
        CHECK_MESSAGE(r.passed(), r.to_text());
    }
}

TEST_CASE("affine images of gaussians")
{
    Mat cov(2, 2);
    cov << 1.0, 0.2, 0.2, 0.5;
    Mat m(1, 2);
    m << 2.0, -1.0;
    const auto img = affine_image(gaussian(v({1, 1}), cov), m, v1(0.5));
    REQUIRE(img);
    const auto* g = img->as<State::Gaussian>();
    REQUIRE(g);
    CHECK(g->mean[0] == doctest::Approx(1.5));
    CHECK(g->cov(0, 0) == doctest::Approx((m * cov * m.transpose())(0, 0)));
}

TEST_CASE("gauss-legendre rules")
{
    // Tabulated five-point rule.
    const QuadratureRule five = gauss_legendre(5, -1.0, 1.0);
    REQUIRE(five.nodes.size() == 5);
    const std::vector<std::pair<double, double>> table{{0.0, 128.0 / 225.0},
                                                       {0.5384693101056831, 0.4786286704993665},
                                                       {0.9061798459386640, 0.2369268850561891}};
    for (const auto& [x, w] : table) {
        bool found = false;
        for (std::size_t i = 0; i < five.nodes.size(); ++i)
            if (std::abs(std::abs(five.nodes[i][0]) - x) < 1e-15) {
                found = true;
                CHECK(five.weights[i] == doctest::Approx(w).epsilon(1e-14));
            }
        CHECK(found);
    }
    // Exact on polynomials up to degree 2n - 1 over [a, b].
    for (int n : {1, 2, 7, 16, 33, 64}) {
        const QuadratureRule r = gauss_legendre(n, -0.5, 2.0);
        CHECK(r.nodes.size() == static_cast<std::size_t>(n));
        for (int k : {0, 1, 2 * n - 1}) {
            double sum = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * std::pow(r.nodes[i][0], k);
            const double exact = (std::pow(2.0, k + 1) - std::pow(-0.5, k + 1)) / (k + 1);
            CHECK(sum == doctest::Approx(exact).epsilon(1e-12));
        }
    }
    CHECK_THROWS(gauss_legendre(0, 0.0, 1.0));
}
