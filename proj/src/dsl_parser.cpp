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
#include <charconv>
#include <cstdio>
#include <sstream>

#include "logcon/dsl.hpp"

namespace logcon::dsl {

namespace {

constexpr int kMaxDepth = 256;

const std::vector<std::string> kKeywords{"space", "concept", "state", "channel", "scalar"};

bool is_keyword(const std::string& s) { return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end(); }

enum class Tok { number, name, keyword, lparen, rparen, comma, semicolon, star, equals, minus, end };

std::string tok_name(Tok t)
{
    switch (t) {
    case Tok::number: return "number";
    case Tok::name: return "name";
    case Tok::keyword: return "keyword";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::semicolon: return "';'";
    case Tok::star: return "'*'";
    case Tok::equals: return "'='";
    case Tok::minus: return "'-'";
    case Tok::end: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    double number = 0.0;
    Span span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Span sp{line_, col_, pos_, 0};
            if (pos_ >= src_.size()) {
                out.push_back({Tok::end, "", 0.0, sp});
                return out;
            }
            const char c = src_[pos_];
            auto single = [&](Tok t) {
                advance();
                sp.length = 1;
                out.push_back({t, std::string(1, c), 0.0, sp});
            };
            if (c == '(') single(Tok::lparen);
            else if (c == ')') single(Tok::rparen);
            else if (c == ',') single(Tok::comma);
            else if (c == ';') single(Tok::semicolon);
            else if (c == '*') single(Tok::star);
            else if (c == '=') single(Tok::equals);
            else if (c == '-') single(Tok::minus);
            else if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) out.push_back(number(sp));
            else if (is_alpha(c)) out.push_back(word(sp));
            else {
                std::ostringstream os;
                const auto byte = static_cast<unsigned>(static_cast<unsigned char>(c));
                if (byte >= 0x20 && byte < 0x7f) os << "unexpected character '" << c << "'";
                else os << "unexpected byte 0x" << std::hex << byte;
                sp.length = 1;
                throw SyntaxError(os.str(), sp, {"number", "name", "'('", "keyword"});
            }
        }
    }

private:
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

    void advance()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space()
    {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    Token number(Span sp)
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            advance();
            while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && is_digit(src_[look])) {
                while (pos_ < look) advance();
                while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        double v = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        sp.length = text.size();
        if (res.ec != std::errc() || res.ptr != text.data() + text.size())
            throw SyntaxError("number '" + text + "' is out of range", sp, {"number"});
        return {Tok::number, text, v, sp};
    }

    Token word(Span sp)
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) advance();
        std::string text(src_.substr(start, pos_ - start));
        sp.length = text.size();
        return {is_keyword(text) ? Tok::keyword : Tok::name, std::move(text), 0.0, sp};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

Span cover(const Span& a, const Span& b)
{
    Span s = a;
    s.length = b.offset + b.length - a.offset;
    return s;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program()
    {
        Program p;
        while (peek().kind != Tok::end) {
            if (peek().kind != Tok::keyword) fail({"space", "concept", "state", "channel", "scalar", "end of input"});
            p.decls.push_back(decl());
        }
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const
    {
        const Token& t = peek();
        std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        std::ostringstream os;
        os << "unexpected " << got << ", expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
        throw SyntaxError(os.str(), t.span, std::move(expected));
    }

    const Token& expect(Tok k)
    {
        if (peek().kind != k) fail({tok_name(k)});
        return take();
    }

    Decl decl()
    {
        const Token& kw = take();
        Decl d;
        d.keyword = kw.text;
        d.span = kw.span;
        d.name = expect(Tok::name).text;
        expect(Tok::equals);
        d.expr = expr(0);
        d.span = cover(kw.span, d.expr->span);
        const Tok next = peek().kind;
        if (next != Tok::keyword && next != Tok::end) fail({"';'", "'*'", "keyword", "end of input"});
        return d;
    }

    ExprPtr binary(Expr::Kind kind, ExprPtr l, ExprPtr r)
    {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->span = cover(l->span, r->span);
        e->args = {std::move(l), std::move(r)};
        return e;
    }

    void enter(int depth) const
    {
        if (depth > kMaxDepth) throw SyntaxError("expression nested more than " + std::to_string(kMaxDepth) + " levels deep", peek().span, {});
    }

    ExprPtr expr(int depth)
    {
        enter(depth);
        ExprPtr l = term(depth + 1);
        for (int chain = 1; peek().kind == Tok::semicolon; ++chain) {
            enter(depth + chain);
            take();
            l = binary(Expr::Kind::compose, l, term(depth + 1));
        }
        return l;
    }

    ExprPtr term(int depth)
    {
        enter(depth);
        ExprPtr l = primary(depth + 1);
        for (int chain = 1; peek().kind == Tok::star; ++chain) {
            enter(depth + chain);
            take();
            l = binary(Expr::Kind::tensor, l, primary(depth + 1));
        }
        return l;
    }

    ExprPtr primary(int depth)
    {
        enter(depth);
        auto e = std::make_shared<Expr>();
        const Token& t = peek();
        e->span = t.span;
        switch (t.kind) {
        case Tok::number:
            take();
            e->kind = Expr::Kind::number;
            e->number = t.number;
            return e;
        case Tok::minus: {
            take();
            const Token& n = expect(Tok::number);
            e->kind = Expr::Kind::number;
            e->number = -n.number;
            e->span = cover(e->span, n.span);
            return e;
        }
        case Tok::name: {
            take();
            e->name = t.text;
            if (peek().kind != Tok::lparen) {
                e->kind = Expr::Kind::name;
                return e;
            }
            e->kind = Expr::Kind::call;
            take();
            if (peek().kind != Tok::rparen) {
                e->args.push_back(expr(depth + 1));
                while (peek().kind == Tok::comma) {
                    take();
                    e->args.push_back(expr(depth + 1));
                }
            }
            if (peek().kind != Tok::rparen) fail({"','", "')'"});
            e->span = cover(e->span, take().span);
            return e;
        }
        case Tok::lparen: {
            take();
            e->kind = Expr::Kind::tuple;
            bool comma = false;
            if (peek().kind != Tok::rparen) {
                e->args.push_back(expr(depth + 1));
                while (peek().kind == Tok::comma) {
                    take();
                    comma = true;
                    if (peek().kind == Tok::rparen) break;
                    e->args.push_back(expr(depth + 1));
                }
            }
            if (peek().kind != Tok::rparen) fail({"','", "')'"});
            const Span close = take().span;
            if (e->args.size() == 1 && !comma) return e->args.front();
            e->span = cover(e->span, close);
            return e;
        }
        default:
            fail({"number", "name", "'('", "'-'"});
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

enum Prec { kCompose = 0, kTensor = 1, kAtom = 2 };

int prec_of(const Expr& e)
{
    if (e.kind == Expr::Kind::compose) return kCompose;
    if (e.kind == Expr::Kind::tensor) return kTensor;
    return kAtom;
}

void print(std::ostream& os, const Expr& e, int min_prec)
{
    const int p = prec_of(e);
    const bool paren = p < min_prec;
    if (paren) os << '(';
    switch (e.kind) {
    case Expr::Kind::number: os << format_number(e.number); break;
    case Expr::Kind::name: os << e.name; break;
    case Expr::Kind::call:
        os << e.name << '(';
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (i) os << ", ";
            print(os, *e.args[i], kCompose);
        }
        os << ')';
        break;
    case Expr::Kind::tuple:
        os << '(';
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (i) os << ", ";
            print(os, *e.args[i], kCompose);
        }
        if (e.args.size() == 1) os << ',';
        os << ')';
        break;
    case Expr::Kind::compose:
        print(os, *e.args[0], kCompose);
        os << " ; ";
        print(os, *e.args[1], kTensor);
        break;
    case Expr::Kind::tensor:
        print(os, *e.args[0], kTensor);
        os << " * ";
        print(os, *e.args[1], kAtom);
        break;
    }
    if (paren) os << ')';
}

const char* kind_name(Expr::Kind k)
{
    switch (k) {
    case Expr::Kind::number: return "number";
    case Expr::Kind::name: return "name";
    case Expr::Kind::call: return "call";
    case Expr::Kind::tuple: return "tuple";
    case Expr::Kind::compose: return "compose";
    case Expr::Kind::tensor: return "tensor";
    }
    return "?";
}

Json span_json(const Span& s) { return {{"line", s.line}, {"col", s.col}, {"offset", s.offset}, {"length", s.length}}; }

Json expr_json(const Expr& e)
{
    Json j{{"kind", kind_name(e.kind)}, {"span", span_json(e.span)}};
    if (e.kind == Expr::Kind::number) j["value"] = e.number;
    if (e.kind == Expr::Kind::name || e.kind == Expr::Kind::call) j["name"] = e.name;
    if (!e.args.empty() || e.kind == Expr::Kind::call || e.kind == Expr::Kind::tuple) {
        Json a = Json::array();
        for (const auto& x : e.args) a.push_back(expr_json(*x));
        j["args"] = a;
    }
    return j;
}

}  // namespace

std::string to_string(const Span& s) { return std::to_string(s.line) + ":" + std::to_string(s.col); }

SyntaxError::SyntaxError(const std::string& message, Span where, std::vector<std::string> expected)
    : std::runtime_error("syntax error at " + to_string(where) + ": " + message), where_(where), expected_(std::move(expected))
{
}

TypeError::TypeError(const std::string& message, Span where)
    : std::runtime_error("type error at " + to_string(where) + ": " + message), where_(where)
{
}

EvalError::EvalError(const std::string& message, Span where)
    : std::runtime_error("evaluation error at " + to_string(where) + ": " + message), where_(where)
{
}

Program parse(std::string_view text)
{
    Lexer lex(text);
    Parser parser(lex.run());
    return parser.program();
}

std::string pretty(const Expr& e)
{
    std::ostringstream os;
    print(os, e, kCompose);
    return os.str();
}

std::string pretty(const Program& p)
{
    std::ostringstream os;
    for (const auto& d : p.decls) os << d.keyword << ' ' << d.name << " = " << pretty(*d.expr) << '\n';
    return os.str();
}

bool equivalent(const Expr& a, const Expr& b)
{
    if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
    if (a.kind == Expr::Kind::number && a.number != b.number) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equivalent(*a.args[i], *b.args[i])) return false;
    return true;
}

bool equivalent(const Program& a, const Program& b)
{
    if (a.decls.size() != b.decls.size()) return false;
    for (std::size_t i = 0; i < a.decls.size(); ++i) {
        const auto& x = a.decls[i];
        const auto& y = b.decls[i];
        if (x.keyword != y.keyword || x.name != y.name || !equivalent(*x.expr, *y.expr)) return false;
    }
    return true;
}

Json ast_json(const Program& p)
{
    Json decls = Json::array();
    for (const auto& d : p.decls)
        decls.push_back({{"keyword", d.keyword}, {"name", d.name}, {"span", span_json(d.span)}, {"expr", expr_json(*d.expr)}});
    return {{"decls", decls}};
}

}  // namespace logcon::dsl
