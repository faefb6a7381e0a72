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
#include <fstream>
#include <sstream>

#include "logcon/dsl.hpp"
#include "logcon/foodspace.hpp"
#include "support.hpp"

using namespace logcon;
using namespace logcon::dsl;
using logcon::test::v;
using logcon::test::v1;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE_MESSAGE(in, "cannot open " << path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string corpus() { return read_file(logcon::test::source_path("data/foodspace.lcon")); }

Evaluator run(const std::string& text) { return Evaluator(typecheck(parse(text))); }

/// Value of a morphism into I at x.
double value_at(Evaluator& ev, const std::string& name, const Vec& x)
{
    const auto& m = std::get<Morphism>(ev.value(name));
    if (const auto* c = std::get_if<Concept>(&m.value)) return evaluate(*c, x);
    return total_mass(apply(as_channel(m), x));
}

/// A random well-typed channel expression with the given domain, returning its codomain.
std::string diagram(int dom, int depth, CounterRng& rng, int& cod)
{
    const auto box = [](int n) { return "box(" + std::to_string(n) + ")"; };
    const auto pick = [&](int n) { return static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n)); };
    if (dom == 0) {
        cod = 1 + pick(2);
        return pick(2) ? "uniform(" + box(cod) + ")" : "gauss(" + std::string(cod == 1 ? "(0.5)" : "(0.5, 0.5)") + ", 0.1)";
    }
    if (depth > 0) {
        switch (pick(3)) {
        case 0: {
            int mid = 0;
            const std::string f = diagram(dom, depth - 1, rng, mid);
            if (mid > 0 && mid <= 3) return "(" + f + ") ; (" + diagram(mid, depth - 1, rng, cod) + ")";
            cod = mid;
            return f;
        }
        case 1:
            if (dom >= 2) {
                const int a = 1 + pick(dom - 1);
                int ca = 0, cb = 0;
                const std::string f = diagram(a, depth - 1, rng, ca), g = diagram(dom - a, depth - 1, rng, cb);
                cod = ca + cb;
                return "(" + f + ") * (" + g + ")";
            }
            break;
        default: break;
        }
    }
    switch (pick(5)) {
    case 0: cod = dom; return "id(" + box(dom) + ")";
    case 1:
        if (dom <= 2) {
            cod = 2 * dom;
            return "copy(" + box(dom) + ")";
        }
        cod = dom;
        return "id(" + box(dom) + ")";
    case 2: cod = 0; return "discard(" + box(dom) + ")";
    case 3: cod = dom; return "update(fuzz(" + box(dom) + ", 0.3))";
    default:
        if (dom >= 2) {
            cod = dom;
            return "swap(" + box(1) + ", " + box(dom - 1) + ")";
        }
        cod = 0;
        return "fuzz(" + box(dom) + ", 0.2)";
    }
}

}  // namespace

TEST_CASE("parsing the basic declarations")
{
    const Program a = parse("space C = box(3)");
    REQUIRE(a.decls.size() == 1);
    CHECK(a.decls[0].keyword == "space");
    CHECK(a.decls[0].name == "C");
    CHECK(a.decls[0].expr->kind == Expr::Kind::call);
    CHECK(a.decls[0].expr->name == "box");

    const Program b = parse("space C = box(3)\nconcept green = fuzz(ball(C, (0,1,0), 0.1), 0.2)");
    REQUIRE(b.decls.size() == 2);
    const Expr& fz = *b.decls[1].expr;
    CHECK(fz.name == "fuzz");
    REQUIRE(fz.args.size() == 2);
    CHECK(fz.args[0]->name == "ball");
    CHECK(fz.args[1]->number == 0.2);
    CHECK(fz.span.line == 2);
    CHECK(fz.span.col == 17);

    // Syntax only: bare wiring names parse, the typechecker decides.
    const Program c = parse("channel x = (id * discard) ; copy");
    REQUIRE(c.decls.size() == 1);
    CHECK(c.decls[0].expr->kind == Expr::Kind::compose);
    CHECK(c.decls[0].expr->args[0]->kind == Expr::Kind::tensor);
    CHECK_THROWS_AS(typecheck(c), TypeError);

    CHECK(parse("").decls.empty());
    CHECK(parse("# only a comment\n\n").decls.empty());
}

TEST_CASE("syntax errors carry positions and expected tokens")
{
    try {
        parse("space C = box(3)\nconcept g = fuzz(C,, 0.1)");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.where().line == 2);
        CHECK(e.where().col == 20);
        CHECK_FALSE(e.expected().empty());
    }
    CHECK_THROWS_AS(parse("space = box(3)"), SyntaxError);
    CHECK_THROWS_AS(parse("space C box(3)"), SyntaxError);
    CHECK_THROWS_AS(parse("space C = box(3"), SyntaxError);
    CHECK_THROWS_AS(parse("C = box(3)"), SyntaxError);
}

TEST_CASE("typing of wiring")
{
    const TypedProgram t = typecheck(parse("space X = box(2)\nchannel c = copy(X)\nchannel d = discard(X)\nchannel s = swap(X, box(1))"));
    CHECK(t.types.at("c").dom == 2);
    CHECK(t.types.at("c").cod == 4);
    CHECK(t.types.at("d").cod == 0);
    CHECK(t.types.at("s").dom == 3);

    // Effect on X after a channel W ~> X is an effect on W.
    const TypedProgram pre = typecheck(parse("space W = box(1)\nspace X = box(2)\nchannel f = copy(W)\nconcept c = fuzz(X, 0.2)\nconcept e = f ; c"));
    CHECK(pre.types.at("e").dom == 1);
    CHECK(pre.types.at("e").cod == 0);

    try {
        typecheck(parse("channel f = copy(box(1)) ; id(box(1))"));
        FAIL("expected a type error");
    } catch (const TypeError& e) {
        const std::string what = e.what();
        CHECK(what.find("copy(box(1))") != std::string::npos);
        CHECK(what.find("id(box(1))") != std::string::npos);
        CHECK(e.where().col == 13);
    }
    CHECK_THROWS_AS(typecheck(parse("concept c = fuzz(box(2), 0.1) * undefined")), TypeError);
    CHECK_THROWS_AS(typecheck(parse("space X = box(2)\nspace X = box(3)")), TypeError);
    CHECK_THROWS_AS(typecheck(parse("concept c = uniform(box(2))")), TypeError);
}

TEST_CASE("state followed by effect is the pairing")
{
    Evaluator ev = run("space I = box(1)\nstate u = uniform(I)\nconcept x = affine(I, (1), 0)\nscalar half = u ; x\nscalar same = pair(u, x)");
    const auto& m = std::get<Morphism>(ev.value("half"));
    const Estimate* e = std::get_if<Estimate>(&m.value);
    REQUIRE(e);
    CHECK(std::abs(e->value - 0.5) <= 1e-6);
    const auto& m2 = std::get<Morphism>(ev.value("same"));
    CHECK(std::get<Estimate>(m2.value).value == doctest::Approx(e->value));

    Evaluator g = run("state g = gauss((0), 1)\nconcept c = fuzz(point((0)), 1)\nscalar p = g ; c");
    CHECK(std::abs(std::get<Estimate>(std::get<Morphism>(g.value("p")).value).value - 1.0 / std::sqrt(2.0)) <= 1e-3);
}

TEST_CASE("empty program has an empty environment")
{
    const Evaluator ev = run("");
    CHECK(ev.names().empty());
}

TEST_CASE("the food space corpus evaluates to the library's concepts")
{
    Evaluator ev = run(corpus());
    for (const auto& name : ev.names()) CHECK_NOTHROW(ev.value(name));

    const FoodSpace food = food_space();
    const FoodConcepts fc = food_concepts(food, Widths{0.15, 0.15, 0.15, 0.15, 0.15});
    CounterRng rng(5);
    for (int i = 0; i < 200; ++i) {
        Vec x = sample_point(food.food.carrier, rng);
        if (i < 4) x = concat(i % 2 ? food.green : food.yellow, i / 2 ? food.bitter : food.sweet);
        const double g = value_at(ev, "green", x), b = value_at(ev, "banana", x);
        CHECK(g == doctest::Approx(evaluate(fc.green, x)).epsilon(1e-12));
        CHECK(b == doctest::Approx(evaluate(fc.banana, x)).epsilon(1e-12));
        CHECK(value_at(ev, "green_banana", x) == doctest::Approx(g * b).epsilon(1e-12));
        CHECK(value_at(ev, "sweet_banana", x) == doctest::Approx(value_at(ev, "sweet", x) * b).epsilon(1e-12));
    }
    CHECK(value_at(ev, "green_banana", v({0, 1, 0, 0, 1, 0, 0})) == 1.0);
    const auto& half = std::get<Morphism>(ev.value("half"));
    CHECK(std::abs(std::get<Estimate>(half.value).value - 0.5) <= 1e-6);
}

TEST_CASE("evaluation errors carry a source span")
{
    Evaluator ev = run("space I = box(1)\nstate u = uniform(hull(I, (0.5)))");
    try {
        ev.value("u");
        FAIL("expected an evaluation error");
    } catch (const EvalError& e) {
        CHECK(e.where().line == 2);
    }
}

TEST_CASE("property: pretty printing round-trips")
{
    const std::vector<std::string> texts{
        corpus(),
        read_file(logcon::test::source_path("tests/cli/pairing.lcon")),
        "channel x = (id * discard) ; copy",
        "channel y = a ; b ; c * d * e\nscalar z = -1.5e-3",
        "state g = gauss((1, 2), ((1, 0.5), (0.5, 2)))",
    };
    for (const auto& t : texts) {
        const Program p = parse(t);
        const std::string once = pretty(p);
        const Program q = parse(once);
        CHECK_MESSAGE(equivalent(p, q), once);
        CHECK(pretty(q) == once);
        CHECK(ast_json(q).at("decls").size() == p.decls.size());
    }
}

TEST_CASE("property: the parser never crashes on arbitrary bytes")
{
    CounterRng rng(2025);
    const std::string base = corpus();
    for (int i = 0; i < 10000; ++i) {
        std::string s;
        if (i % 2 == 0) {
            const std::size_t n = rng.next_u64() % 200;
            for (std::size_t k = 0; k < n; ++k) s.push_back(static_cast<char>(rng.next_u64() & 0xff));
        } else {
            s = base;
            for (int k = 0; k < 4; ++k) {
                const std::size_t at = rng.next_u64() % s.size();
                s[at] = static_cast<char>(rng.next_u64() & 0xff);
            }
        }
        try {
            const Program p = parse(s);
            try {
                typecheck(p);
            } catch (const TypeError&) {
            }
        } catch (const SyntaxError& e) {
            CHECK(e.where().line >= 1);
        }
    }
}

TEST_CASE("property: well-typed generated diagrams evaluate without dimension errors")
{
    CounterRng rng(77);
    EvalOptions o;
    o.mc_samples = 200;
    o.integrator.samples = 200;
    o.integrator.nodes = 8;
    for (int i = 0; i < 200; ++i) {
        const int dom = 1 + static_cast<int>(rng.next_u64() % 3);
        int cod = 0;
        const std::string text = "channel f = " + diagram(dom, 3, rng, cod);
        const TypedProgram t = typecheck(parse(text));
        CHECK(t.types.at("f").dom == dom);
        CHECK(t.types.at("f").cod == cod);
        Evaluator ev(t, o);
        try {
            const Value& val = ev.value("f");
            CHECK_NOTHROW(evaluate_at(val, sample_point(ConvexSet::unit_cube(dom), rng), o));
        } catch (const DimensionError& e) {
            FAIL(text << ": " << e.what());
        }
    }
}
