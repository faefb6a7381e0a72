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


#include "logcon/serialize.hpp"

#include <cmath>
#include <limits>

namespace logcon {

namespace {

// JSON has no infinities, so unbounded box sides travel as strings.
Json number(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

double to_number(const Json& j)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::nan("");
    }
    throw SerializationError("expected a number, got " + j.dump());
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw SerializationError(std::string("missing field '") + key + "' in " + j.dump());
    return j.at(key);
}

std::string tag_of(const Json& j) { return field(j, "type").get<std::string>(); }

Json points_json(const std::vector<Vec>& pts)
{
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(to_json(p));
    return a;
}

std::vector<Vec> points_from(const Json& j)
{
    std::vector<Vec> out;
    for (const auto& p : j) out.push_back(vec_from_json(p));
    return out;
}

}  // namespace

Json to_json(const Vec& v)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
    return a;
}

Json to_json(const Mat& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vec(m.row(i).transpose())));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

Vec vec_from_json(const Json& j)
{
    if (!j.is_array()) throw SerializationError("expected an array, got " + j.dump());
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = to_number(j[i]);
    return v;
}

Mat mat_from_json(const Json& j)
{
    const auto rows = field(j, "rows").get<Eigen::Index>();
    const auto cols = field(j, "cols").get<Eigen::Index>();
    const Json& data = field(j, "data");
    if (static_cast<Eigen::Index>(data.size()) != rows) throw SerializationError("matrix row count mismatch");
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Vec r = vec_from_json(data[static_cast<std::size_t>(i)]);
        if (r.size() != cols) throw SerializationError("matrix column count mismatch");
        m.row(i) = r.transpose();
    }
    return m;
}

Json to_json(const ConvexSet& s)
{
    return std::visit(
        [](const auto& b) -> Json {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ConvexSet::Ball>) {
                return {{"type", "ball"}, {"center", to_json(b.center)}, {"radius", b.radius}};
            } else if constexpr (std::is_same_v<T, ConvexSet::Box>) {
                return {{"type", "box"}, {"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}};
            } else if constexpr (std::is_same_v<T, ConvexSet::Simplex>) {
                return {{"type", "simplex"}, {"vertices", points_json(b.vertices)}};
            } else if constexpr (std::is_same_v<T, ConvexSet::Hull>) {
                return {{"type", "hull"}, {"vertices", points_json(b.vertices)}, {"approximate", b.approximate}};
            } else if constexpr (std::is_same_v<T, ConvexSet::Product>) {
                return {{"type", "product"}, {"left", to_json(*b.left)}, {"right", to_json(*b.right)}};
            } else {
                return {{"type", "point"}, {"p", to_json(b.p)}};
            }
        },
        s.body());
}

ConvexSet convex_set_from_json(const Json& j)
{
    try {
        const auto t = tag_of(j);
        if (t == "ball") return ConvexSet::ball(vec_from_json(field(j, "center")), to_number(field(j, "radius")));
        if (t == "box") return ConvexSet::box(vec_from_json(field(j, "lo")), vec_from_json(field(j, "hi")));
        if (t == "simplex") return ConvexSet::simplex(points_from(field(j, "vertices")));
        if (t == "hull") return ConvexSet::hull(points_from(field(j, "vertices")), j.value("approximate", false));
        if (t == "product") return ConvexSet::product(convex_set_from_json(field(j, "left")), convex_set_from_json(field(j, "right")));
        if (t == "point") return ConvexSet::point(vec_from_json(field(j, "p")));
        throw SerializationError("unknown convex set type '" + t + "'");
    } catch (const Json::exception& e) {
        throw SerializationError(e.what());
    }
}

Json to_json(const Space& s) { return {{"dim", s.dim}, {"carrier", to_json(s.carrier)}}; }

Space space_from_json(const Json& j)
{
    const int dim = field(j, "dim").get<int>();
    if (dim == 0) return Space::unit();
    Space s = Space::of(convex_set_from_json(field(j, "carrier")));
    if (s.dim != dim) throw SerializationError("space dimension does not match its carrier");
    return s;
}

Json to_json(const Concept& c)
{
    Json body = std::visit(
        [](const auto& b) -> Json {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Concept::Crisp>) {
                return {{"type", "crisp"}, {"region", to_json(b.region)}};
            } else if constexpr (std::is_same_v<T, Concept::GaussFuzz>) {
                return {{"type", "fuzz"}, {"prototype", to_json(b.prototype)}, {"sigma", b.sigma}};
            } else if constexpr (std::is_same_v<T, Concept::Affine>) {
                return {{"type", "affine"}, {"a", to_json(b.coefficients)}, {"b", b.offset}};
            } else if constexpr (std::is_same_v<T, Concept::Exponential>) {
                return {{"type", "exponential"}, {"lambda", b.lambda}};
            } else if constexpr (std::is_same_v<T, Concept::Tensor>) {
                return {{"type", "tensor"}, {"left", to_json(*b.left)}, {"right", to_json(*b.right)}};
            } else if constexpr (std::is_same_v<T, Concept::PointwiseProduct>) {
                return {{"type", "product"}, {"left", to_json(*b.left)}, {"right", to_json(*b.right)}};
            } else {
                return {{"type", "scalar"}, {"value", b.value}};
            }
        },
        c.body());
    body["space"] = to_json(c.space());
    return body;
}

Concept concept_from_json(const Json& j)
{
    try {
        const auto t = tag_of(j);
        const Space space = space_from_json(field(j, "space"));
        if (t == "crisp") return crisp(space, convex_set_from_json(field(j, "region")));
        if (t == "fuzz") return gauss_fuzz(space, convex_set_from_json(field(j, "prototype")), to_number(field(j, "sigma")));
        if (t == "affine") return affine(space, vec_from_json(field(j, "a")), to_number(field(j, "b")));
        if (t == "exponential") return exponential(to_number(field(j, "lambda")));
        if (t == "tensor") {
            const Concept c = tensor(concept_from_json(field(j, "left")), concept_from_json(field(j, "right")));
            return Concept(space, c.body());
        }
        if (t == "product") return Concept(space, multiply(concept_from_json(field(j, "left")), concept_from_json(field(j, "right"))).body());
        if (t == "scalar") return scalar_concept(space, to_number(field(j, "value")));
        throw SerializationError("unknown concept type '" + t + "'");
    } catch (const Json::exception& e) {
        throw SerializationError(e.what());
    }
}

Json to_json(const State& s)
{
    Json body = std::visit(
        [](const auto& b) -> Json {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, State::Dirac>) {
                return {{"type", "dirac"}, {"point", to_json(b.point)}};
            } else if constexpr (std::is_same_v<T, State::Uniform>) {
                return {{"type", "uniform"}, {"region", to_json(b.region)}};
            } else if constexpr (std::is_same_v<T, State::Gaussian>) {
                return {{"type", "gaussian"}, {"mean", to_json(b.mean)}, {"cov", to_json(b.cov)}};
            } else if constexpr (std::is_same_v<T, State::Density1D>) {
                return {{"type", b.kind == Density1DKind::laplace ? "laplace" : "logistic"},
                        {"location", b.location},
                        {"scale", b.scale}};
            } else if constexpr (std::is_same_v<T, State::Scaled>) {
                return {{"type", "scaled"}, {"factor", b.factor}, {"factor_error", b.factor_error}, {"inner", to_json(*b.inner)}};
            } else if constexpr (std::is_same_v<T, State::SampleCloud>) {
                return {{"type", "cloud"}, {"points", points_json(b.points)}, {"weights", b.weights}, {"iid", b.iid}};
            } else if constexpr (std::is_same_v<T, State::Product>) {
                return {{"type", "product"}, {"left", to_json(*b.left)}, {"right", to_json(*b.right)}};
            } else {
                throw SerializationError("density state '" + b.label + "' holds an opaque function");
            }
        },
        s.body());
    body["space"] = to_json(s.space());
    return body;
}

State state_from_json(const Json& j)
{
    try {
        const auto t = tag_of(j);
        const Space space = space_from_json(field(j, "space"));
        auto placed = [&](const State& s) { return with_space(s, space); };
        if (t == "dirac") return placed(dirac(vec_from_json(field(j, "point"))));
        if (t == "uniform") return placed(uniform(convex_set_from_json(field(j, "region"))));
        if (t == "gaussian") return placed(gaussian(vec_from_json(field(j, "mean")), mat_from_json(field(j, "cov"))));
        if (t == "laplace") return placed(laplace(to_number(field(j, "location")), to_number(field(j, "scale"))));
        if (t == "logistic") return placed(logistic(to_number(field(j, "location")), to_number(field(j, "scale"))));
        if (t == "scaled") {
            const State inner = state_from_json(field(j, "inner"));
            const double factor = to_number(field(j, "factor"));
            const double err = to_number(field(j, "factor_error"));
            if (factor == 1.0 && err == 0.0) return placed(inner);
            return State(space, State::Scaled{factor, err, std::make_shared<const State>(inner)});
        }
        if (t == "cloud")
            return sample_cloud(space, points_from(field(j, "points")), field(j, "weights").get<std::vector<double>>(),
                                j.value("iid", false));
        if (t == "product") {
            auto l = std::make_shared<const State>(state_from_json(field(j, "left")));
            auto r = std::make_shared<const State>(state_from_json(field(j, "right")));
            if (l->dim() + r->dim() != space.dim) throw SerializationError("product state dimension mismatch");
            return State(space, State::Product{l, r});
        }
        throw SerializationError("unknown state type '" + t + "'");
    } catch (const Json::exception& e) {
        throw SerializationError(e.what());
    }
}

Json to_json(const Channel& f)
{
    Json body = std::visit(
        [](const auto& b) -> Json {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Channel::CrispAffine>) {
                return {{"type", "affine"}, {"m", to_json(b.m)}, {"c", to_json(b.c)}, {"domain", to_json(b.domain)}};
            } else if constexpr (std::is_same_v<T, Channel::NoisyAffine>) {
                return {{"type", "noisy"}, {"m", to_json(b.m)}, {"c", to_json(b.c)}, {"domain", to_json(b.domain)},
                        {"noise", to_json(*b.noise)}};
            } else if constexpr (std::is_same_v<T, Channel::DensityKernel>) {
                throw SerializationError("density channel '" + b.label + "' holds an opaque function");
            } else if constexpr (std::is_same_v<T, Channel::Update>) {
                return {{"type", "update"}, {"concept", to_json(*b.predicate)}};
            } else if constexpr (std::is_same_v<T, Channel::Copy>) {
                return {{"type", "copy"}};
            } else if constexpr (std::is_same_v<T, Channel::Discard>) {
                return {{"type", "discard"}};
            } else if constexpr (std::is_same_v<T, Channel::Identity>) {
                return {{"type", "id"}};
            } else if constexpr (std::is_same_v<T, Channel::Swap>) {
                return {{"type", "swap"}, {"left_dim", b.left_dim}};
            } else if constexpr (std::is_same_v<T, Channel::Compose>) {
                return {{"type", "compose"}, {"first", to_json(*b.first)}, {"second", to_json(*b.second)}};
            } else if constexpr (std::is_same_v<T, Channel::Tensor>) {
                return {{"type", "tensor"}, {"left", to_json(*b.left)}, {"right", to_json(*b.right)}};
            } else if constexpr (std::is_same_v<T, Channel::StatePrep>) {
                return {{"type", "state"}, {"state", to_json(*b.state)}};
            } else {
                return {{"type", "effect"}, {"concept", to_json(*b.predicate)}};
            }
        },
        f.body());
    body["dom"] = to_json(f.dom());
    body["cod"] = to_json(f.cod());
    return body;
}

Channel channel_from_json(const Json& j)
{
    try {
        const auto t = tag_of(j);
        const Space dom = space_from_json(field(j, "dom"));
        const Space cod = space_from_json(field(j, "cod"));
        auto placed = [&](const Channel& f) { return Channel(dom, cod, f.body()); };
        if (t == "affine")
            return crisp_affine(dom, cod, mat_from_json(field(j, "m")), vec_from_json(field(j, "c")),
                                convex_set_from_json(field(j, "domain")));
        if (t == "noisy")
            return placed(noisy_affine(mat_from_json(field(j, "m")), vec_from_json(field(j, "c")), state_from_json(field(j, "noise")),
                                       convex_set_from_json(field(j, "domain"))));
        if (t == "update") return placed(update(concept_from_json(field(j, "concept"))));
        if (t == "effect") return placed(effect(concept_from_json(field(j, "concept"))));
        if (t == "copy") return copy(dom);
        if (t == "discard") return discard(dom);
        if (t == "id") return identity(dom);
        if (t == "swap") return Channel(dom, cod, Channel::Swap{field(j, "left_dim").get<int>()});
        if (t == "compose") return placed(compose(channel_from_json(field(j, "second")), channel_from_json(field(j, "first"))));
        if (t == "tensor") return placed(tensor(channel_from_json(field(j, "left")), channel_from_json(field(j, "right"))));
        if (t == "state") return placed(state_prep(state_from_json(field(j, "state"))));
        throw SerializationError("unknown channel type '" + t + "'");
    } catch (const Json::exception& e) {
        throw SerializationError(e.what());
    }
}

Json to_json(const Estimate& e)
{
    return {{"value", e.value}, {"stderr", e.std_error}, {"strategy", to_string(e.strategy)}};
}

}  // namespace logcon
