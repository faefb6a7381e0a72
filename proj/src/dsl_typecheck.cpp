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


#include <cmath>
#include <functional>
#include <sstream>

#include "logcon/dsl.hpp"

namespace logcon::dsl {

namespace {

constexpr int kMaxDim = 64;

Type number_type(std::optional<double> c = std::nullopt)
{
    Type t;
    t.sort = Type::Sort::number;
    t.constant = c;
    return t;
}

Type vector_type(int n)
{
    Type t;
    t.sort = Type::Sort::vector;
    t.dim = n;
    return t;
}

Type matrix_type(int rows, int cols)
{
    Type t;
    t.sort = Type::Sort::matrix;
    t.rows = rows;
    t.cols = cols;
    return t;
}

Type region_type(int n)
{
    Type t;
    t.sort = Type::Sort::region;
    t.dim = n;
    return t;
}

Type morphism_type(int dom, int cod)
{
    Type t;
    t.sort = Type::Sort::morphism;
    t.dom = dom;
    t.cod = cod;
    return t;
}

std::string space_name(int n) { return n == 0 ? "I" : "R^" + std::to_string(n); }

class Checker {
public:
    explicit Checker(TypedProgram& out) : out_(out) {}

    void run()
    {
        for (const auto& d : out_.program.decls) {
            if (out_.types.count(d.name)) throw TypeError("'" + d.name + "' is declared twice", d.span);
            const Type t = check(*d.expr);
            validate_keyword(d, t);
            out_.types[d.name] = t;
        }
    }

private:
    Type check(const Expr& e)
    {
        Type t = infer(e);
        out_.annotations[&e] = t;
        return t;
    }

    [[noreturn]] static void fail(const std::string& msg, const Expr& e) { throw TypeError(msg, e.span); }

    static std::string show(const Expr& e, const Type& t) { return "`" + pretty(e) + "` : " + to_string(t); }

    void validate_keyword(const Decl& d, const Type& t)
    {
        const auto& k = d.keyword;
        auto bad = [&](const std::string& want) {
            throw TypeError(k + " '" + d.name + "' must be " + want + " but `" + pretty(*d.expr) + "` has type " + to_string(t), d.expr->span);
        };
        if (k == "space") {
            if (t.sort != Type::Sort::region) bad("a region");
        } else if (k == "concept") {
            if (t.sort != Type::Sort::morphism || t.cod != 0 || t.dom == 0) bad("an effect X ~> I");
        } else if (k == "state") {
            if (t.sort != Type::Sort::morphism || t.dom != 0 || t.cod == 0) bad("a state I ~> X");
        } else if (k == "scalar") {
            const bool number = t.sort == Type::Sort::number;
            if (!number && !(t.sort == Type::Sort::morphism && t.dom == 0 && t.cod == 0)) bad("a scalar I ~> I");
        } else if (k == "channel") {
            if (t.sort != Type::Sort::morphism) bad("a channel X ~> Y");
        }
    }

    Type infer(const Expr& e)
    {
        switch (e.kind) {
        case Expr::Kind::number: return number_type(e.number);
        case Expr::Kind::name: {
            auto it = out_.types.find(e.name);
            if (it != out_.types.end()) return it->second;
            if (builtins().count(e.name)) fail("builtin '" + e.name + "' needs an argument list", e);
            fail("'" + e.name + "' is not declared", e);
        }
        case Expr::Kind::tuple: return tuple(e);
        case Expr::Kind::compose: {
            const Type l = morphism(*e.args[0], check(*e.args[0]), "compose");
            const Type r = morphism(*e.args[1], check(*e.args[1]), "compose");
            if (l.cod != r.dom)
                fail("cannot compose " + show(*e.args[0], l) + " with " + show(*e.args[1], r) + ": " + space_name(l.cod) +
                         " does not match " + space_name(r.dom),
                     e);
            return morphism_type(l.dom, r.cod);
        }
        case Expr::Kind::tensor: {
            const Type l = check(*e.args[0]);
            const Type r = check(*e.args[1]);
            if (l.sort == Type::Sort::region && r.sort == Type::Sort::region) return region_type(l.dim + r.dim);
            if (l.sort == Type::Sort::region || r.sort == Type::Sort::region)
                fail("cannot tensor " + show(*e.args[0], l) + " with " + show(*e.args[1], r), e);
            const Type a = morphism(*e.args[0], l, "tensor");
            const Type b = morphism(*e.args[1], r, "tensor");
            if (a.dom + b.dom > kMaxDim || a.cod + b.cod > kMaxDim) fail("tensor exceeds dimension " + std::to_string(kMaxDim), e);
            return morphism_type(a.dom + b.dom, a.cod + b.cod);
        }
        case Expr::Kind::call: return call(e);
        }
        fail("unknown expression", e);
    }

    static Type morphism(const Expr& e, const Type& t, const char* op)
    {
        if (t.sort == Type::Sort::morphism) return t;
        if (t.sort == Type::Sort::number) return morphism_type(0, 0);
        fail(std::string("operand of ") + op + " must be a morphism, but " + show(e, t), e);
    }

    Type tuple(const Expr& e)
    {
        std::vector<Type> items;
        for (const auto& a : e.args) items.push_back(check(*a));
        if (items.empty()) return vector_type(0);
        bool all_numbers = true, all_vectors = true;
        for (const auto& t : items) {
            all_numbers &= t.sort == Type::Sort::number;
            all_vectors &= t.sort == Type::Sort::vector || t.sort == Type::Sort::number;
        }
        if (all_numbers) return vector_type(static_cast<int>(items.size()));
        if (all_vectors) {
            const int cols = items.front().sort == Type::Sort::number ? 1 : items.front().dim;
            for (std::size_t i = 0; i < items.size(); ++i) {
                const int len = items[i].sort == Type::Sort::number ? 1 : items[i].dim;
                if (len != cols) fail("matrix rows have different lengths", *e.args[i]);
            }
            return matrix_type(static_cast<int>(items.size()), cols);
        }
        fail("tuples hold numbers or rows of numbers", e);
    }

    // -- builtins ---------------------------------------------------------

    using Rule = std::function<Type(Checker&, const Expr&, const std::vector<Type>&)>;

    static const std::map<std::string, Rule>& builtins()
    {
        static const std::map<std::string, Rule> table = make_builtins();
        return table;
    }

    static void arity(const Expr& e, const std::vector<Type>& a, std::size_t lo, std::size_t hi)
    {
        if (a.size() < lo || a.size() > hi) {
            std::ostringstream os;
            os << e.name << " takes ";
            if (lo == hi) os << lo;
            else os << lo << " to " << hi;
            os << " argument" << (hi == 1 ? "" : "s") << ", got " << a.size();
            fail(os.str(), e);
        }
    }

    static int dimension_arg(const Expr& e, std::size_t i, const Type& t)
    {
        if (t.sort != Type::Sort::number || !t.constant)
            fail(e.name + ": argument " + std::to_string(i + 1) + " must be a literal dimension", *e.args[i]);
        const double v = *t.constant;
        if (v != std::floor(v) || v < 1 || v > kMaxDim)
            fail(e.name + ": dimension must be an integer between 1 and " + std::to_string(kMaxDim), *e.args[i]);
        return static_cast<int>(v);
    }

    static void need(const Expr& e, std::size_t i, const Type& t, Type::Sort sort, const char* what)
    {
        if (t.sort != sort) fail(e.name + ": argument " + std::to_string(i + 1) + " must be " + what + ", but " + show(*e.args[i], t), *e.args[i]);
    }

    static int vector_arg(const Expr& e, std::size_t i, const Type& t)
    {
        if (t.sort == Type::Sort::number) return 1;
        need(e, i, t, Type::Sort::vector, "a point");
        return t.dim;
    }

    static std::pair<int, int> matrix_arg(const Expr& e, std::size_t i, const Type& t)
    {
        if (t.sort == Type::Sort::number) return {1, 1};
        if (t.sort == Type::Sort::vector) return {1, t.dim};
        need(e, i, t, Type::Sort::matrix, "a matrix");
        return {t.rows, t.cols};
    }

    static void same(const Expr& e, std::size_t i, int got, int want, const char* what)
    {
        if (got != want)
            fail(e.name + ": " + what + " has dimension " + std::to_string(got) + " but " + std::to_string(want) + " is required",
                 *e.args[i]);
    }

    static Type effect_arg(const Expr& e, std::size_t i, const Type& t)
    {
        if (t.sort != Type::Sort::morphism || t.cod != 0 || t.dom == 0)
            fail(e.name + ": argument " + std::to_string(i + 1) + " must be a concept X ~> I, but " + show(*e.args[i], t), *e.args[i]);
        return t;
    }

    static std::map<std::string, Rule> make_builtins()
    {
        std::map<std::string, Rule> m;
        m["box"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 2);
            if (a.size() == 1) return region_type(dimension_arg(e, 0, a[0]));
            const int n = vector_arg(e, 0, a[0]);
            same(e, 1, vector_arg(e, 1, a[1]), n, "upper corner");
            if (n == 0) fail("box: dimension must be at least 1", e);
            return region_type(n);
        };
        m["reals"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 1);
            return region_type(dimension_arg(e, 0, a[0]));
        };
        m["simplex"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 1);
            return region_type(dimension_arg(e, 0, a[0]));
        };
        m["ball"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 3, 3);
            need(e, 0, a[0], Type::Sort::region, "a space");
            same(e, 1, vector_arg(e, 1, a[1]), a[0].dim, "centre");
            need(e, 2, a[2], Type::Sort::number, "a radius");
            return region_type(a[0].dim);
        };
        m["hull"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 4096);
            std::size_t first = 0;
            int n = -1;
            if (a[0].sort == Type::Sort::region) {
                n = a[0].dim;
                first = 1;
            }
            if (first == a.size()) fail("hull: needs at least one point", e);
            for (std::size_t i = first; i < a.size(); ++i) {
                const int len = vector_arg(e, i, a[i]);
                if (n < 0) n = len;
                same(e, i, len, n, "point");
            }
            if (n == 0) fail("hull: points must have at least one coordinate", e);
            return region_type(n);
        };
        m["point"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 1);
            const int n = vector_arg(e, 0, a[0]);
            if (n == 0) fail("point: needs at least one coordinate", e);
            return region_type(n);
        };
        m["fuzz"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 2, 2);
            need(e, 0, a[0], Type::Sort::region, "a region");
            need(e, 1, a[1], Type::Sort::number, "a width");
            return morphism_type(a[0].dim, 0);
        };
        m["crisp"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 1);
            need(e, 0, a[0], Type::Sort::region, "a region");
            return morphism_type(a[0].dim, 0);
        };
        m["affine"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 3, 3);
            need(e, 0, a[0], Type::Sort::region, "a space");
            same(e, 1, vector_arg(e, 1, a[1]), a[0].dim, "coefficient vector");
            need(e, 2, a[2], Type::Sort::number, "an offset");
            return morphism_type(a[0].dim, 0);
        };
        m["uniform"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 1);
            need(e, 0, a[0], Type::Sort::region, "a region");
            return morphism_type(0, a[0].dim);
        };
        m["dirac"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 1);
            const int n = vector_arg(e, 0, a[0]);
            if (n == 0) fail("dirac: needs at least one coordinate", e);
            return morphism_type(0, n);
        };
        m["gauss"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 2, 2);
            const int n = vector_arg(e, 0, a[0]);
            if (n == 0) fail("gauss: needs at least one coordinate", e);
            if (a[1].sort != Type::Sort::number) {
                const auto [r, c] = matrix_arg(e, 1, a[1]);
                if (r != n || c != n) fail("gauss: covariance must be " + std::to_string(n) + "x" + std::to_string(n), *e.args[1]);
            }
            return morphism_type(0, n);
        };
        auto density1d = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 2, 2);
            need(e, 0, a[0], Type::Sort::number, "a location");
            need(e, 1, a[1], Type::Sort::number, "a scale");
            return morphism_type(0, 1);
        };
        m["laplace"] = density1d;
        m["logistic"] = density1d;
        m["noisy"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 3, 3);
            const auto [r, c] = matrix_arg(e, 0, a[0]);
            same(e, 1, vector_arg(e, 1, a[1]), r, "offset");
            if (a[2].sort != Type::Sort::morphism || a[2].dom != 0 || a[2].cod == 0)
                fail("noisy: argument 3 must be a state, but " + show(*e.args[2], a[2]), *e.args[2]);
            same(e, 2, a[2].cod, r, "noise");
            return morphism_type(c, r);
        };
        m["map"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 2, 2);
            const auto [r, c] = matrix_arg(e, 0, a[0]);
            same(e, 1, vector_arg(e, 1, a[1]), r, "offset");
            return morphism_type(c, r);
        };
        m["update"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 1);
            const Type c = effect_arg(e, 0, a[0]);
            return morphism_type(c.dom, c.dom);
        };
        m["copy"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 1);
            need(e, 0, a[0], Type::Sort::region, "a space");
            return morphism_type(a[0].dim, 2 * a[0].dim);
        };
        m["discard"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 1);
            need(e, 0, a[0], Type::Sort::region, "a space");
            return morphism_type(a[0].dim, 0);
        };
        m["id"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 1, 1);
            need(e, 0, a[0], Type::Sort::region, "a space");
            return morphism_type(a[0].dim, a[0].dim);
        };
        m["swap"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 2, 2);
            need(e, 0, a[0], Type::Sort::region, "a space");
            need(e, 1, a[1], Type::Sort::region, "a space");
            return morphism_type(a[0].dim + a[1].dim, a[0].dim + a[1].dim);
        };
        m["convolve"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 2, 2);
            need(e, 0, a[0], Type::Sort::morphism, "a channel");
            need(e, 1, a[1], Type::Sort::morphism, "a channel");
            if (a[0].dom != a[1].dom || a[0].cod != a[1].cod)
                fail("convolve: " + show(*e.args[0], a[0]) + " and " + show(*e.args[1], a[1]) + " must have the same type", e);
            return a[0];
        };
        m["pair"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 2, 2);
            if (a[0].sort != Type::Sort::morphism || a[0].dom != 0 || a[0].cod == 0)
                fail("pair: argument 1 must be a state, but " + show(*e.args[0], a[0]), *e.args[0]);
            const Type c = effect_arg(e, 1, a[1]);
            if (c.dom != a[0].cod)
                fail("pair: cannot pair " + show(*e.args[0], a[0]) + " with " + show(*e.args[1], a[1]), e);
            return morphism_type(0, 0);
        };
        m["pullback"] = [](Checker&, const Expr& e, const std::vector<Type>& a) {
            arity(e, a, 2, 2);
            need(e, 0, a[0], Type::Sort::morphism, "a channel");
            const Type c = effect_arg(e, 1, a[1]);
            if (c.dom != a[0].cod)
                fail("pullback: cannot pull " + show(*e.args[1], a[1]) + " back along " + show(*e.args[0], a[0]), e);
            return morphism_type(a[0].dom, 0);
        };
        return m;
    }

    Type call(const Expr& e)
    {
        auto it = builtins().find(e.name);
        if (it == builtins().end()) {
            if (out_.types.count(e.name)) fail("'" + e.name + "' is not a function", e);
            fail("unknown builtin '" + e.name + "'", e);
        }
        std::vector<Type> args;
        for (const auto& a : e.args) args.push_back(check(*a));
        return it->second(*this, e, args);
    }

    TypedProgram& out_;
};

}  // namespace

std::string to_string(const Type& t)
{
    switch (t.sort) {
    case Type::Sort::number: return "number";
    case Type::Sort::vector: return "point of " + space_name(t.dim);
    case Type::Sort::matrix: return std::to_string(t.rows) + "x" + std::to_string(t.cols) + " matrix";
    case Type::Sort::region: return "region of " + space_name(t.dim);
    case Type::Sort::morphism: return space_name(t.dom) + " ~> " + space_name(t.cod);
    }
    return "?";
}

TypedProgram typecheck(const Program& p)
{
    TypedProgram out;
    out.program = p;
    Checker(out).run();
    return out;
}

}  // namespace logcon::dsl
