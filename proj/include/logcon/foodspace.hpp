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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logcon/channels.hpp"
#include "logcon/concepts.hpp"
#include "logcon/geometry.hpp"

namespace logcon {

/// Settings for the food-space demo. Each width in `sigmas` produces one set
/// of grids; a per-concept width, when given, holds that concept fixed
/// across the sweep.
struct DemoConfig {
    std::optional<double> sigma_G;
    std::optional<double> sigma_Y;
    std::optional<double> sigma_Bi;
    std::optional<double> sigma_S;
    std::optional<double> sigma_Ba;
    std::vector<double> sigmas{0.05, 0.15, 0.30};
    int grid = 64;
    std::string output_dir = "foodspace_out";
    std::uint64_t seed = 1;
    double epsilon = 0.1;
    int quadrature_nodes = 12;
    bool tasting = true;
};

/// Applies one key=value setting; throws std::invalid_argument on bad input.
void apply_setting(DemoConfig& config, const std::string& key, const std::string& value);
/// Flat key=value lines; `#` starts a comment.
DemoConfig parse_demo_config(std::istream& is);
void validate(const DemoConfig& config);

/// F = C (x) T with C = [0,1]^3 (RGB) and T the simplex spanned by the basis
/// vectors sweet, bitter, salt, sour of R^4.
struct FoodSpace {
    Space colour;
    Space taste;
    Space food;
    Vec green;
    Vec yellow;
    Vec sweet;
    Vec bitter;
    Vec salt;
    Vec sour;
    double epsilon;
    /// Convex closure of the yellow-sweet and green-bitter exemplars in F.
    ConvexSet banana = ConvexSet::point(Vec(0));
};

FoodSpace food_space(double epsilon = 0.1);

struct Widths {
    double green;
    double yellow;
    double bitter;
    double sweet;
    double banana;
};

Widths widths_at(const DemoConfig& config, double sigma);

/// Fuzzified concepts on F. `yellow_colour` is the colour-only factor.
struct FoodConcepts {
    Concept green;
    Concept yellow;
    Concept sweet;
    Concept bitter;
    Concept banana;
    Concept yellow_colour;
};

FoodConcepts food_concepts(const FoodSpace& f, const Widths& w);

/// The named composites plotted by the demo, in output order.
std::vector<std::pair<std::string, Concept>> demo_concepts(const FoodConcepts& c);

/// The point of F at (u, v) on the square [yellow, green] x [sweet, bitter].
Vec square_point(const FoodSpace& f, double u, double v);

/// Bilinear sheet through the four taste vertices: (0,0) sweet, (1,0) salt,
/// (0,1) bitter, (1,1) sour.
Vec taste_point(const FoodSpace& f, double u, double v);

/// resolution x resolution values; row 0 is v = 1, column 0 is u = 0.
Mat concept_grid(const Concept& c, const FoodSpace& f, int resolution);

/// T ~> C: t -> banana-updated uniform colour measure at t, tastes discarded.
Channel taste_colour_channel(const FoodSpace& f, const Concept& banana);

/// t -> (1/vol C) integral over C of yellow(c) banana(c, t), on the taste sheet.
Mat tasting_grid(const Channel& taste_colour, const Concept& yellow_colour, const FoodSpace& f, int resolution,
                 const EvalOptions& options);

/// A two-dimensional exemplar set for the illustration grid.
std::vector<Vec> illustration_exemplars();
Mat illustration_grid(double sigma, int resolution);

struct DemoResult {
    /// grids[name][sigma]
    std::map<std::string, std::map<double, Mat>> grids;
    std::vector<std::string> files;
};

/// Builds every grid; writes CSV and PGM files when `write_files` is set.
DemoResult run_demo(const DemoConfig& config, bool write_files = true);

}  // namespace logcon
