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

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "logcon/channels.hpp"
#include "logcon/serialize.hpp"

namespace logcon::dsl {

struct Span {
    int line = 1;
    int col = 1;
    std::size_t offset = 0;
    std::size_t length = 0;
};

std::string to_string(const Span& s);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { number, name, call, tuple, compose, tensor };
    Kind kind = Kind::number;
    double number = 0.0;
    std::string name;  // variable or callee
    std::vector<ExprPtr> args;  // call arguments, tuple items, or the two operands
    Span span;
};

struct Decl {
    std::string keyword;  // space | concept | state | channel | scalar
    std::string name;
    ExprPtr expr;
    Span span;
};

struct Program {
    std::vector<Decl> decls;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& message, Span where, std::vector<std::string> expected);
    const Span& where() const noexcept { return where_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    Span where_;
    std::vector<std::string> expected_;
};

class TypeError : public std::runtime_error {
public:
    TypeError(const std::string& message, Span where);
    const Span& where() const noexcept { return where_; }

private:
    Span where_;
};

class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& message, Span where);
    const Span& where() const noexcept { return where_; }

private:
    Span where_;
};

/// program := decl*; `;` binds looser than `*`, both associate to the left.
Program parse(std::string_view text);

std::string pretty(const Expr& e);
std::string pretty(const Program& p);
/// Structural equality ignoring source spans.
bool equivalent(const Expr& a, const Expr& b);
bool equivalent(const Program& a, const Program& b);
Json ast_json(const Program& p);

/// Static types. Morphisms carry domain and codomain dimensions, with 0 for
/// the unit: concepts are X ~> I, states I ~> X and scalars I ~> I.
struct Type {
    enum class Sort { number, vector, matrix, region, morphism };
    Sort sort = Sort::number;
    int dim = 0;  // vector length or region dimension
    int rows = 0;
    int cols = 0;
    int dom = 0;
    int cod = 0;
    std::optional<double> constant;  // known value of a number
};

std::string to_string(const Type& t);

struct TypedProgram {
    Program program;
    std::map<std::string, Type> types;
    std::map<const Expr*, Type> annotations;
};

TypedProgram typecheck(const Program& p);

/// A region of R^n, remembering the space it was carved from.
struct Region {
    ConvexSet set;
    std::optional<Space> ambient;
};

/// A morphism after evaluation, kept in the most specific form available.
struct Morphism {
    std::variant<Concept, State, Estimate, Channel> value;
    int dom = 0;
    int cod = 0;
};

using Value = std::variant<double, Vec, Mat, Region, Morphism>;

Channel as_channel(const Morphism& m);

class Evaluator {
public:
    explicit Evaluator(TypedProgram program, EvalOptions options = {});
    /// Evaluates a declaration and whatever it depends on.
    const Value& value(const std::string& name);
    std::vector<std::string> names() const;
    const TypedProgram& program() const noexcept { return program_; }

private:
    Value eval(const Expr& e);
    Value call(const Expr& e);
    TypedProgram program_;
    EvalOptions options_;
    std::map<std::string, const Decl*> decls_;
    std::map<std::string, Value> cache_;
    std::vector<std::string> in_progress_;
};

std::string describe(const Value& v);
Json to_json(const Value& v);

/// Evaluates a concept (X ~> I) or channel at a point; for states and scalars
/// the point must be empty.
std::string evaluate_at(const Value& v, const Vec& x, const EvalOptions& options = {});

}  // namespace logcon::dsl
