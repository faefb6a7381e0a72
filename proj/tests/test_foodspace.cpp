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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "logcon/foodspace.hpp"
#include "support.hpp"

using namespace logcon;
using logcon::test::v;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

DemoConfig small_config(const std::string& dir)
{
    DemoConfig c;
    c.grid = 12;
    c.output_dir = dir;
    c.quadrature_nodes = 6;
    return c;
}

}  // namespace

TEST_CASE("food space landmarks")
{
    const FoodSpace f = food_space();
    CHECK(f.colour.dim == 3);
    CHECK(f.taste.dim == 4);
    CHECK(f.food.dim == 7);
    CHECK(f.green == v({0, 1, 0}));
    CHECK(f.yellow == v({1, 1, 0}));
    CHECK(contains(f.banana, concat(f.yellow, f.sweet)));
    CHECK(contains(f.banana, concat(f.green, f.bitter)));
    CHECK_FALSE(contains(f.banana, concat(f.green, f.sweet)));
}

TEST_CASE("concept grids: values in [0,1], full membership at exemplars")
{
    const FoodSpace f = food_space();
    const FoodConcepts c = food_concepts(f, Widths{0.15, 0.15, 0.15, 0.15, 0.15});
    for (const auto& [name, concept_value] : demo_concepts(c)) {
        const Mat g = concept_grid(concept_value, f, 16);
        CHECK_MESSAGE(g.minCoeff() >= 0.0, name);
        CHECK_MESSAGE(g.maxCoeff() <= 1.0, name);
    }
    CHECK(evaluate(c.banana, concat(f.yellow, f.sweet)) == 1.0);
    CHECK(evaluate(c.banana, concat(f.green, f.bitter)) == 1.0);
    CHECK(evaluate(c.green, square_point(f, 1.0, 0.5)) == 1.0);
    CHECK(evaluate(c.yellow, square_point(f, 0.0, 0.5)) == 1.0);
    CHECK(evaluate(c.sweet, square_point(f, 0.5, 0.0)) == 1.0);

    for (double sigma : {0.05, 0.3}) {
        const Mat ill = illustration_grid(sigma, 32);
        CHECK(ill.maxCoeff() == 1.0);
        CHECK(ill.minCoeff() >= 0.0);
    }
}

TEST_CASE("property: memberships grow with the width")
{
    const FoodSpace f = food_space();
    DemoConfig config;
    const std::vector<double> sigmas{0.0, 0.05, 0.15, 0.3, 0.6};
    std::vector<std::vector<std::pair<std::string, Mat>>> grids;
    for (double s : sigmas) {
        std::vector<std::pair<std::string, Mat>> row;
        for (const auto& [name, c] : demo_concepts(food_concepts(f, widths_at(config, s)))) row.emplace_back(name, concept_grid(c, f, 16));
        grids.push_back(std::move(row));
    }
    for (std::size_t k = 1; k < grids.size(); ++k)
        for (std::size_t i = 0; i < grids[k].size(); ++i)
            CHECK_MESSAGE((grids[k][i].second.array() >= grids[k - 1][i].second.array() - 1e-15).all(), grids[k][i].first);

    // Width zero gives crisp indicators.
    for (const auto& [name, g] : grids.front())
        CHECK_MESSAGE((g.array() * (1.0 - g.array())).abs().maxCoeff() == 0.0, name);
}

TEST_CASE("tasting grid lies in [0,1] and prefers sweet over bitter for yellow")
{
    const FoodSpace f = food_space();
    const FoodConcepts c = food_concepts(f, Widths{0.15, 0.15, 0.15, 0.15, 0.15});
    EvalOptions o;
    o.integrator.strategy = Strategy::quadrature;
    o.integrator.nodes = 8;
    const Mat g = tasting_grid(taste_colour_channel(f, c.banana), c.yellow_colour, f, 6, o);
    CHECK(g.minCoeff() >= 0.0);
    CHECK(g.maxCoeff() <= 1.0);
    // Row 0 is the top of the picture (v = 1, bitter side), the last row the sweet side.
    CHECK(g(g.rows() - 1, 0) > g(0, 0));
}

TEST_CASE("demo output is byte-identical across runs")
{
    const auto root = std::filesystem::temp_directory_path() / "logcon_demo_test";
    std::filesystem::remove_all(root);
    const DemoResult a = run_demo(small_config((root / "a").string()));
    const DemoResult b = run_demo(small_config((root / "b").string()));
    REQUIRE(a.files.size() == b.files.size());
    REQUIRE_FALSE(a.files.empty());
    for (std::size_t i = 0; i < a.files.size(); ++i) {
        CHECK(std::filesystem::path(a.files[i]).filename() == std::filesystem::path(b.files[i]).filename());
        CHECK(slurp(a.files[i]) == slurp(b.files[i]));
    }
    for (const auto& [name, by_sigma] : a.grids)
        for (const auto& [sigma, grid] : by_sigma) {
            CHECK_MESSAGE(grid.minCoeff() >= 0.0, name);
            CHECK_MESSAGE(grid.maxCoeff() <= 1.0, name);
        }
    std::filesystem::remove_all(root);
}

TEST_CASE("demo configuration parsing and validation")
{
    std::istringstream in("# widths\nsigma_G = 0.2\nsigmas = 0.1, 0.2\ngrid = 32\ntasting = false\nseed=9\n");
    const DemoConfig c = parse_demo_config(in);
    CHECK(*c.sigma_G == 0.2);
    CHECK(c.sigmas == std::vector<double>{0.1, 0.2});
    CHECK(c.grid == 32);
    CHECK_FALSE(c.tasting);
    CHECK(c.seed == 9);
    CHECK(widths_at(c, 0.5).green == 0.2);
    CHECK(widths_at(c, 0.5).banana == 0.5);
    CHECK_NOTHROW(validate(c));

    auto bad = [](const std::string& text) {
        std::istringstream is(text);
        return parse_demo_config(is);
    };
    CHECK_THROWS_AS(bad("grid 32"), std::invalid_argument);
    CHECK_THROWS_AS(bad("colour = red"), std::invalid_argument);
    CHECK_THROWS_AS(bad("grid = many"), std::invalid_argument);
    CHECK_THROWS_AS(bad("tasting = maybe"), std::invalid_argument);

    DemoConfig v1;
    v1.grid = 1;
    CHECK_THROWS(validate(v1));
    DemoConfig v2;
    v2.sigmas.clear();
    CHECK_THROWS(validate(v2));
    DemoConfig v3;
    v3.sigma_Ba = -0.1;
    CHECK_THROWS(validate(v3));
    DemoConfig v4;
    v4.epsilon = 0.0;
    CHECK_THROWS(validate(v4));
}
