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


#include "logcon/foodspace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <istream>
#include <stdexcept>

#include "logcon/grid_io.hpp"
#include "logcon/measures.hpp"

namespace logcon {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw std::invalid_argument(key + ": '" + text + "' is not a number");
    return v;
}

long long parse_integer(const std::string& key, const std::string& text)
{
    const double v = parse_double(key, text);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) throw std::invalid_argument(key + ": '" + text + "' is not an integer");
    return static_cast<long long>(v);
}

Vec basis(int n, int i)
{
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    return e;
}

Vec rgb(double r, double g, double b)
{
    Vec v(3);
    v << r, g, b;
    return v;
}

double axis(int k, int resolution) { return static_cast<double>(k) / static_cast<double>(resolution - 1); }

template <class F>
Mat grid_of(int resolution, F&& value)
{
    Mat m(resolution, resolution);
    for (int i = 0; i < resolution; ++i) {
        const double v = 1.0 - axis(i, resolution);
        for (int j = 0; j < resolution; ++j) m(i, j) = std::clamp(value(axis(j, resolution), v), 0.0, 1.0);
    }
    return m;
}

std::string sigma_tag(double sigma)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", sigma);
    return buf;
}

}  // namespace

void apply_setting(DemoConfig& c, const std::string& raw_key, const std::string& value)
{
    const std::string key = trim(raw_key);
    if (key == "sigma_G") c.sigma_G = parse_double(key, value);
    else if (key == "sigma_Y") c.sigma_Y = parse_double(key, value);
    else if (key == "sigma_Bi") c.sigma_Bi = parse_double(key, value);
    else if (key == "sigma_S") c.sigma_S = parse_double(key, value);
    else if (key == "sigma_Ba") c.sigma_Ba = parse_double(key, value);
    else if (key == "sigmas") {
        std::vector<double> list;
        std::size_t start = 0;
        for (;;) {
            const auto comma = value.find(',', start);
            list.push_back(parse_double(key, value.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        c.sigmas = std::move(list);
    } else if (key == "grid") c.grid = static_cast<int>(parse_integer(key, value));
    else if (key == "output_dir") c.output_dir = trim(value);
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    else if (key == "epsilon") c.epsilon = parse_double(key, value);
    else if (key == "quadrature_nodes") c.quadrature_nodes = static_cast<int>(parse_integer(key, value));
    else if (key == "tasting") {
        const std::string v = trim(value);
        if (v == "true" || v == "1") c.tasting = true;
        else if (v == "false" || v == "0") c.tasting = false;
        else throw std::invalid_argument("tasting: expected true or false, got '" + value + "'");
    } else {
        throw std::invalid_argument("unknown setting '" + key + "'");
    }
}

DemoConfig parse_demo_config(std::istream& is)
{
    DemoConfig c;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value");
        try {
            apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return c;
}

void validate(const DemoConfig& c)
{
    auto width = [](const char* name, std::optional<double> v) {
        if (v && !(*v >= 0.0 && std::isfinite(*v))) throw std::invalid_argument(std::string(name) + " must be a finite width >= 0");
    };
    width("sigma_G", c.sigma_G);
    width("sigma_Y", c.sigma_Y);
    width("sigma_Bi", c.sigma_Bi);
    width("sigma_S", c.sigma_S);
    width("sigma_Ba", c.sigma_Ba);
    if (c.sigmas.empty()) throw std::invalid_argument("sigmas must list at least one width");
    for (double s : c.sigmas) width("sigmas", s);
    if (c.grid < 2) throw std::invalid_argument("grid must be at least 2");
    if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (c.quadrature_nodes < 2) throw std::invalid_argument("quadrature_nodes must be at least 2");
}

FoodSpace food_space(double epsilon)
{
    FoodSpace f;
    f.colour = Space::of(ConvexSet::unit_cube(3));
    f.taste = Space::of(ConvexSet::standard_simplex(4));
    f.food = product_space(f.colour, f.taste);
    f.green = rgb(0, 1, 0);
    f.yellow = rgb(1, 1, 0);
    f.sweet = basis(4, 0);
    f.bitter = basis(4, 1);
    f.salt = basis(4, 2);
    f.sour = basis(4, 3);
    f.epsilon = epsilon;
    f.banana = hull_of({concat(f.yellow, f.sweet), concat(f.green, f.bitter)});
    return f;
}

Widths widths_at(const DemoConfig& c, double sigma)
{
    return Widths{c.sigma_G.value_or(sigma), c.sigma_Y.value_or(sigma), c.sigma_Bi.value_or(sigma), c.sigma_S.value_or(sigma),
                  c.sigma_Ba.value_or(sigma)};
}

FoodConcepts food_concepts(const FoodSpace& f, const Widths& w)
{
    const Concept any_colour = scalar_concept(f.colour, 1.0);
    const Concept any_taste = scalar_concept(f.taste, 1.0);
    auto colour = [&](const Vec& centre, double sigma) { return gauss_fuzz(f.colour, ConvexSet::ball(centre, f.epsilon), sigma); };
    auto taste = [&](const Vec& vertex, double sigma) { return gauss_fuzz(f.taste, ConvexSet::ball(vertex, f.epsilon), sigma); };
    const Concept yellow_colour = colour(f.yellow, w.yellow);
    return FoodConcepts{tensor(colour(f.green, w.green), any_taste),
                        tensor(yellow_colour, any_taste),
                        tensor(any_colour, taste(f.sweet, w.sweet)),
                        tensor(any_colour, taste(f.bitter, w.bitter)),
                        gauss_fuzz(f.food, f.banana, w.banana),
                        yellow_colour};
}

std::vector<std::pair<std::string, Concept>> demo_concepts(const FoodConcepts& c)
{
    return {{"banana", c.banana},
            {"green", c.green},
            {"yellow", c.yellow},
            {"sweet", c.sweet},
            {"bitter", c.bitter},
            {"green_banana", multiply(c.green, c.banana)},
            {"yellow_banana", multiply(c.yellow, c.banana)},
            {"sweet_banana", multiply(c.sweet, c.banana)},
            {"bitter_banana", multiply(c.bitter, c.banana)}};
}

Vec square_point(const FoodSpace& f, double u, double v)
{
    return concat(mix(f.yellow, f.green, 1.0 - u), mix(f.sweet, f.bitter, 1.0 - v));
}

Vec taste_point(const FoodSpace& f, double u, double v)
{
    return (1 - u) * (1 - v) * f.sweet + u * (1 - v) * f.salt + (1 - u) * v * f.bitter + u * v * f.sour;
}

Mat concept_grid(const Concept& c, const FoodSpace& f, int resolution)
{
    return grid_of(resolution, [&](double u, double v) { return evaluate(c, square_point(f, u, v)); });
}

Channel taste_colour_channel(const FoodSpace& f, const Concept& banana)
{
    const Channel prepare = tensor(state_prep(uniform(f.colour.carrier)), identity(f.taste));
    const Channel forget = tensor(identity(f.colour), discard(f.taste));
    return then(then(prepare, update(banana)), forget);
}

Mat tasting_grid(const Channel& taste_colour, const Concept& yellow_colour, const FoodSpace& f, int resolution,
                 const EvalOptions& options)
{
    const PulledEffect tasting = pullback_effect(taste_colour, yellow_colour, options);
    return grid_of(resolution, [&](double u, double v) { return tasting(taste_point(f, u, v)).value; });
}

std::vector<Vec> illustration_exemplars()
{
    auto p = [](double x, double y) {
        Vec v(2);
        v << x, y;
        return v;
    };
    return {p(0.25, 0.30), p(0.45, 0.80), p(0.80, 0.60), p(0.65, 0.20)};
}

Mat illustration_grid(double sigma, int resolution)
{
    const Space square = Space::of(ConvexSet::unit_cube(2));
    const Concept c = gauss_fuzz(square, hull_of(illustration_exemplars()), sigma);
    return grid_of(resolution, [&](double u, double v) {
        Vec x(2);
        x << u, v;
        return evaluate(c, x);
    });
}

DemoResult run_demo(const DemoConfig& config, bool write_files)
{
    validate(config);
    if (write_files) {
        std::error_code ec;
        std::filesystem::create_directories(config.output_dir, ec);
        if (ec || !std::filesystem::is_directory(config.output_dir))
            throw std::runtime_error("cannot create output directory " + config.output_dir);
    }
    const FoodSpace f = food_space(config.epsilon);
    EvalOptions options;
    options.seed = config.seed;
    options.integrator.strategy = Strategy::quadrature;
    options.integrator.nodes = config.quadrature_nodes;
    options.integrator.seed = config.seed;

    DemoResult out;
    auto emit = [&](const std::string& name, double sigma, Mat grid) {
        if (write_files) {
            const std::string stem = (std::filesystem::path(config.output_dir) / (name + "_sigma" + sigma_tag(sigma))).string();
            write_csv_file(stem + ".csv", grid);
            write_pgm_file(stem + ".pgm", grid);
            out.files.push_back(stem + ".csv");
            out.files.push_back(stem + ".pgm");
        }
        out.grids[name][sigma] = std::move(grid);
    };

    std::vector<double> sigmas = config.sigmas;
    std::sort(sigmas.begin(), sigmas.end());
    sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());
    for (double sigma : sigmas) {
        const FoodConcepts c = food_concepts(f, widths_at(config, sigma));
        for (const auto& [name, concept_value] : demo_concepts(c)) emit(name, sigma, concept_grid(concept_value, f, config.grid));
        if (config.tasting)
            emit("tasting_yellow", sigma, tasting_grid(taste_colour_channel(f, c.banana), c.yellow_colour, f, config.grid, options));
        emit("illustration", sigma, illustration_grid(sigma, config.grid));
    }
    return out;
}

}  // namespace logcon
