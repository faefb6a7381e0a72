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


#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "logcon/dsl.hpp"

namespace logcon::dsl {

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt(const Vec& v)
{
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s + (v.size() == 1 ? ",)" : ")");
}

std::string fmt(const Estimate& e)
{
    return fmt(e.value) + " +/- " + fmt(e.std_error) + " (" + to_string(e.strategy) + ")";
}

Estimate exact(double v) { return Estimate{v, 0.0, Strategy::closed_form}; }

Estimate product(const Estimate& a, const Estimate& b)
{
    const double se = std::hypot(a.value * b.std_error, b.value * a.std_error);
    const Strategy s = a.strategy == Strategy::closed_form ? b.strategy : a.strategy;
    return Estimate{a.value * b.value, se, s};
}

Space region_space(const Region& r) { return Space::of(r.set); }

Space concept_space(const Region& r) { return r.ambient ? *r.ambient : Space::reals(r.set.dim()); }

Morphism from_concept(Concept c)
{
    const int n = c.dim();
    return Morphism{std::move(c), n, 0};
}

Morphism from_estimate(Estimate e) { return Morphism{e, 0, 0}; }

Morphism from_state(const State& s, const EvalOptions& o)
{
    if (s.dim() == 0) return from_estimate(total_mass_estimate(s, o.integrator));
    return Morphism{s, 0, s.dim()};
}

Morphism from_channel(const Channel& raw, const EvalOptions& o)
{
    const Channel f = simplify(raw);
    if (f.dom().dim == 0) return from_state(apply(f, Vec(0), o), o);
    return Morphism{f, f.dom().dim, f.cod().dim};
}

template <class T>
const T* get(const Morphism& m) { return std::get_if<T>(&m.value); }

bool is_identity(const Morphism& m)
{
    const auto* f = get<Channel>(m);
    return f && f->as<Channel::Identity>();
}

Morphism scale(const Morphism& m, const Estimate& e, const EvalOptions& o)
{
    if (e.value == 1.0 && e.std_error == 0.0) return m;
    if (const auto* x = get<Estimate>(m)) return from_estimate(product(*x, e));
    if (const auto* s = get<State>(m)) return Morphism{scaled(e.value, *s, e.std_error), m.dom, m.cod};
    if (const auto* c = get<Concept>(m)) return from_concept(multiply(*c, scalar_concept(c->space(), e.value)));
    return from_channel(tensor(as_channel(m), state_prep(scalar_state(e.value, e.std_error))), o);
}

// a runs first, then b.
Morphism compose_values(const Morphism& a, const Morphism& b, const EvalOptions& o)
{
    if (const auto* e = get<Estimate>(a)) return scale(b, *e, o);
    if (const auto* e = get<Estimate>(b)) return scale(a, *e, o);
    if (is_identity(a)) return b;
    if (is_identity(b)) return a;
    if (const auto* s = get<State>(a)) {
        if (const auto* c = get<Concept>(b)) return from_estimate(pair(*s, *c, o.integrator));
        return from_state(push(as_channel(b), *s, o), o);
    }
    if (const auto* c = get<Concept>(b)) {
        if (const auto* f = get<Channel>(a)) {
            if (f->as<Channel::Copy>()) {
                if (const auto* t = c->as<Concept::Tensor>(); t && t->left->dim() == f->dom().dim)
                    return from_concept(multiply(*t->left, *t->right));
            }
            if (const auto* u = f->as<Channel::Update>()) return from_concept(multiply(*u->predicate, *c));
        }
    }
    return from_channel(then(as_channel(a), as_channel(b)), o);
}

Morphism tensor_values(const Morphism& a, const Morphism& b, const EvalOptions& o)
{
    if (const auto* e = get<Estimate>(a)) return scale(b, *e, o);
    if (const auto* e = get<Estimate>(b)) return scale(a, *e, o);
    const auto* ca = get<Concept>(a);
    const auto* cb = get<Concept>(b);
    if (ca && cb) return from_concept(tensor(*ca, *cb));
    const auto* sa = get<State>(a);
    const auto* sb = get<State>(b);
    if (sa && sb) return Morphism{product_state(*sa, *sb), 0, a.cod + b.cod};
    return from_channel(tensor(as_channel(a), as_channel(b)), o);
}

Concept concept_of(const Morphism& m, const Expr& e)
{
    if (const auto* c = get<Concept>(m)) return *c;
    if (const auto* f = get<Channel>(m)) {
        if (const auto* fx = f->as<Channel::Effect>()) return *fx->predicate;
        if (f->as<Channel::Discard>()) return scalar_concept(f->dom(), 1.0);
    }
    throw EvalError("`" + pretty(e) + "` is an effect with no closed concept form", e.span);
}

}  // namespace

Channel as_channel(const Morphism& m)
{
    return std::visit(
        [](const auto& v) -> Channel {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Concept>) {
                if (const auto* s = v.template as<Concept::Scalar>(); s && s->value == 1.0) return discard(v.space());
                return effect(v);
            } else if constexpr (std::is_same_v<T, State>) {
                return state_prep(v);
            } else if constexpr (std::is_same_v<T, Estimate>) {
                return state_prep(scalar_state(v.value, v.std_error));
            } else {
                return v;
            }
        },
        m.value);
}

Evaluator::Evaluator(TypedProgram program, EvalOptions options) : program_(std::move(program)), options_(options)
{
    for (const auto& d : program_.program.decls) decls_[d.name] = &d;
}

std::vector<std::string> Evaluator::names() const
{
    std::vector<std::string> out;
    for (const auto& d : program_.program.decls) out.push_back(d.name);
    return out;
}

const Value& Evaluator::value(const std::string& name)
{
    if (auto it = cache_.find(name); it != cache_.end()) return it->second;
    auto d = decls_.find(name);
    if (d == decls_.end()) throw EvalError("'" + name + "' is not declared", Span{});
    for (const auto& n : in_progress_)
        if (n == name) throw EvalError("'" + name + "' depends on itself", d->second->span);
    in_progress_.push_back(name);
    Value v = eval(*d->second->expr);
    in_progress_.pop_back();
    return cache_.emplace(name, std::move(v)).first->second;
}

Value Evaluator::eval(const Expr& e)
{
    try {
        switch (e.kind) {
        case Expr::Kind::number: return e.number;
        case Expr::Kind::name:
            if (!decls_.count(e.name)) throw EvalError("'" + e.name + "' is not declared", e.span);
            return value(e.name);
        case Expr::Kind::tuple: {
            std::vector<Value> items;
            for (const auto& a : e.args) items.push_back(eval(*a));
            const bool flat = std::all_of(items.begin(), items.end(), [](const Value& v) { return std::holds_alternative<double>(v); });
            if (flat) {
                Vec v(static_cast<Eigen::Index>(items.size()));
                for (std::size_t i = 0; i < items.size(); ++i) v[static_cast<Eigen::Index>(i)] = std::get<double>(items[i]);
                return v;
            }
            std::vector<Vec> rows;
            for (const auto& it : items) {
                if (const double* d = std::get_if<double>(&it)) rows.push_back(Vec::Constant(1, *d));
                else if (const Vec* r = std::get_if<Vec>(&it)) rows.push_back(*r);
                else throw EvalError("tuples hold numbers or rows of numbers", e.span);
            }
            Mat m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != m.cols()) throw EvalError("matrix rows have different lengths", e.args[i]->span);
                m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
            }
            return m;
        }
        case Expr::Kind::compose:
        case Expr::Kind::tensor: {
            const Value l = eval(*e.args[0]);
            const Value r = eval(*e.args[1]);
            const Region* rl = std::get_if<Region>(&l);
            const Region* rr = std::get_if<Region>(&r);
            if (e.kind == Expr::Kind::tensor && rl && rr) {
                return Region{ConvexSet::product(rl->set, rr->set), product_space(concept_space(*rl), concept_space(*rr))};
            }
            auto morph = [&](const Value& v, const Expr& at) -> Morphism {
                if (const double* d = std::get_if<double>(&v)) return from_estimate(exact(*d));
                if (const Morphism* m = std::get_if<Morphism>(&v)) return *m;
                throw EvalError("`" + pretty(at) + "` is not a morphism", at.span);
            };
            const Morphism a = morph(l, *e.args[0]);
            const Morphism b = morph(r, *e.args[1]);
            if (e.kind == Expr::Kind::compose) return compose_values(a, b, options_);
            return tensor_values(a, b, options_);
        }
        case Expr::Kind::call: return call(e);
        }
    } catch (const EvalError&) {
        throw;
    } catch (const std::exception& ex) {
        throw EvalError(ex.what(), e.span);
    }
    throw EvalError("unknown expression", e.span);
}

Value Evaluator::call(const Expr& e)
{
    std::vector<Value> a;
    for (const auto& x : e.args) a.push_back(eval(*x));
    auto arg_error = [&](std::size_t i, const std::string& want) {
        return EvalError(e.name + ": argument " + std::to_string(i + 1) + " must be " + want, e.args[i]->span);
    };
    auto num = [&](std::size_t i) {
        if (const double* d = std::get_if<double>(&a[i])) return *d;
        throw arg_error(i, "a number");
    };
    auto vec = [&](std::size_t i) -> Vec {
        if (const double* d = std::get_if<double>(&a[i])) return Vec::Constant(1, *d);
        if (const Vec* v = std::get_if<Vec>(&a[i])) return *v;
        throw arg_error(i, "a point");
    };
    auto mat = [&](std::size_t i) -> Mat {
        if (const double* d = std::get_if<double>(&a[i])) return Mat::Constant(1, 1, *d);
        if (const Vec* v = std::get_if<Vec>(&a[i])) return v->transpose();
        if (const Mat* m = std::get_if<Mat>(&a[i])) return *m;
        throw arg_error(i, "a matrix");
    };
    auto region = [&](std::size_t i) -> const Region& {
        if (const Region* r = std::get_if<Region>(&a[i])) return *r;
        throw arg_error(i, "a region");
    };
    auto morph = [&](std::size_t i) -> Morphism {
        if (const double* d = std::get_if<double>(&a[i])) return from_estimate(exact(*d));
        if (const Morphism* m = std::get_if<Morphism>(&a[i])) return *m;
        throw arg_error(i, "a morphism");
    };
    auto state = [&](std::size_t i) -> State {
        const Morphism m = morph(i);
        if (const State* s = get<State>(m)) return *s;
        throw arg_error(i, "a state");
    };
    auto concept_arg = [&](std::size_t i) { return concept_of(morph(i), *e.args[i]); };
    auto owned = [](ConvexSet s) { return Region{s, Space::of(s)}; };

    const std::string& f = e.name;
    if (f == "box") {
        if (a.size() == 1) return owned(ConvexSet::unit_cube(static_cast<int>(num(0))));
        return owned(ConvexSet::box(vec(0), vec(1)));
    }
    if (f == "reals") return owned(ConvexSet::whole(static_cast<int>(num(0))));
    if (f == "simplex") return owned(ConvexSet::standard_simplex(static_cast<int>(num(0))));
    if (f == "ball") return Region{ConvexSet::ball(vec(1), num(2)), concept_space(region(0))};
    if (f == "hull") {
        std::size_t first = 0;
        std::optional<Space> ambient;
        if (std::holds_alternative<Region>(a[0])) {
            ambient = concept_space(region(0));
            first = 1;
        }
        std::vector<Vec> pts;
        for (std::size_t i = first; i < a.size(); ++i) pts.push_back(vec(i));
        const ConvexSet h = pts.size() == 1 ? ConvexSet::point(pts.front()) : hull_of(pts);
        return Region{h, ambient ? ambient : std::optional<Space>(Space::reals(h.dim()))};
    }
    if (f == "point") {
        const Vec p = vec(0);
        return Region{ConvexSet::point(p), Space::reals(static_cast<int>(p.size()))};
    }
    if (f == "fuzz") return from_concept(gauss_fuzz(concept_space(region(0)), region(0).set, num(1)));
    if (f == "crisp") return from_concept(crisp(concept_space(region(0)), region(0).set));
    if (f == "affine") return from_concept(affine(region_space(region(0)), vec(1), num(2)));
    if (f == "uniform") {
        const State s = uniform(region(0).set);
        return Morphism{s, 0, s.dim()};
    }
    if (f == "dirac") {
        const Vec p = vec(0);
        return Morphism{dirac(p), 0, static_cast<int>(p.size())};
    }
    if (f == "gauss") {
        const Vec mu = vec(0);
        const Mat cov = std::holds_alternative<double>(a[1]) ? Mat(num(1) * Mat::Identity(mu.size(), mu.size())) : mat(1);
        return Morphism{gaussian(mu, cov), 0, static_cast<int>(mu.size())};
    }
    if (f == "laplace") return Morphism{laplace(num(0), num(1)), 0, 1};
    if (f == "logistic") return Morphism{logistic(num(0), num(1)), 0, 1};
    if (f == "noisy") return from_channel(noisy_affine(mat(0), vec(1), state(2)), options_);
    if (f == "map") return from_channel(crisp_affine(mat(0), vec(1)), options_);
    if (f == "update") return from_channel(update(concept_arg(0)), options_);
    if (f == "copy") return from_channel(copy(region_space(region(0))), options_);
    if (f == "discard") return from_concept(scalar_concept(region_space(region(0)), 1.0));
    if (f == "id") return from_channel(identity(region_space(region(0))), options_);
    if (f == "swap") return from_channel(swap(region_space(region(0)), region_space(region(1))), options_);
    if (f == "convolve") {
        const Morphism l = morph(0), r = morph(1);
        const State* sl = get<State>(l);
        const State* sr = get<State>(r);
        if (sl && sr) {
            const int n = sl->dim();
            Mat plus(n, 2 * n);
            plus << Mat::Identity(n, n), Mat::Identity(n, n);
            return from_state(push(crisp_affine(plus, Vec::Zero(n)), product_state(*sl, *sr), options_), options_);
        }
        return from_channel(convolve(as_channel(l), as_channel(r)), options_);
    }
    if (f == "pair") {
        const State s = state(0);
        const Morphism c = morph(1);
        if (const Concept* k = get<Concept>(c)) return from_estimate(pair(s, *k, options_.integrator));
        return from_state(push(as_channel(c), s, options_), options_);
    }
    if (f == "pullback") return compose_values(morph(0), morph(1), options_);
    throw EvalError("unknown builtin '" + f + "'", e.span);
}

std::string describe(const Value& v)
{
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                return fmt(x);
            } else if constexpr (std::is_same_v<T, Vec>) {
                return fmt(x);
            } else if constexpr (std::is_same_v<T, Mat>) {
                std::string s = "(";
                for (Eigen::Index i = 0; i < x.rows(); ++i) s += (i ? ", " : "") + fmt(Vec(x.row(i).transpose()));
                return s + ")";
            } else if constexpr (std::is_same_v<T, Region>) {
                return "region " + logcon::describe(x.set);
            } else {
                const std::string type = (x.dom == 0 ? std::string("I") : "R^" + std::to_string(x.dom)) + " ~> " +
                                         (x.cod == 0 ? std::string("I") : "R^" + std::to_string(x.cod));
                return std::visit(
                    [&](const auto& m) -> std::string {
                        using M = std::decay_t<decltype(m)>;
                        if constexpr (std::is_same_v<M, Estimate>) return "scalar " + fmt(m);
                        else if constexpr (std::is_same_v<M, Concept>) return "concept " + type + ": " + logcon::describe(m);
                        else if constexpr (std::is_same_v<M, State>) return "state " + type + ": " + logcon::describe(m);
                        else return "channel " + type + ": " + logcon::describe(m);
                    },
                    x.value);
            }
        },
        v);
}

Json to_json(const Value& v)
{
    return std::visit(
        [&](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                return {{"kind", "number"}, {"value", x}};
            } else if constexpr (std::is_same_v<T, Vec>) {
                return {{"kind", "point"}, {"value", logcon::to_json(x)}};
            } else if constexpr (std::is_same_v<T, Mat>) {
                return {{"kind", "matrix"}, {"value", logcon::to_json(x)}};
            } else if constexpr (std::is_same_v<T, Region>) {
                Json j{{"kind", "region"}, {"value", logcon::to_json(x.set)}};
                if (x.ambient) j["space"] = logcon::to_json(*x.ambient);
                return j;
            } else {
                Json j{{"dom", x.dom}, {"cod", x.cod}, {"description", describe(v)}};
                std::visit(
                    [&](const auto& m) {
                        using M = std::decay_t<decltype(m)>;
                        if constexpr (std::is_same_v<M, Estimate>) j["kind"] = "scalar";
                        else if constexpr (std::is_same_v<M, Concept>) j["kind"] = "concept";
                        else if constexpr (std::is_same_v<M, State>) j["kind"] = "state";
                        else j["kind"] = "channel";
                        try {
                            j["value"] = logcon::to_json(m);
                        } catch (const SerializationError&) {
                            j["value"] = nullptr;
                        }
                    },
                    x.value);
                return j;
            }
        },
        v);
}

std::string evaluate_at(const Value& v, const Vec& x, const EvalOptions& options)
{
    auto need = [&](int n) {
        if (x.size() != n)
            throw DimensionError("evaluation point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(n));
    };
    if (const double* d = std::get_if<double>(&v)) {
        need(0);
        return fmt(*d);
    }
    if (const Region* r = std::get_if<Region>(&v)) {
        need(r->set.dim());
        return contains(r->set, x) ? "1" : "0";
    }
    const Morphism* m = std::get_if<Morphism>(&v);
    if (!m) throw std::invalid_argument("points and matrices cannot be evaluated at a point");
    need(m->dom);
    if (const Estimate* e = get<Estimate>(*m)) return fmt(*e);
    if (const State* s = get<State>(*m)) return logcon::describe(*s) + ", mass " + fmt(total_mass_estimate(*s, options.integrator));
    if (const Concept* c = get<Concept>(*m)) return fmt(evaluate(*c, x));
    const Channel& f = std::get<Channel>(m->value);
    const State out = apply(f, x, options);
    if (m->cod == 0) return fmt(total_mass_estimate(out, options.integrator));
    return logcon::describe(out);
}

}  // namespace logcon::dsl
