#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sporadic/exactarith.hpp"

/// A small text DSL for binomial-sum sequence definitions:
///
///   def    := "seq" IDENT "(" "n" ")" "=" "sum" "(" IDENT "=" expr ".." expr ")" expr
///   expr   := term (("+"|"-") term)*
///   term   := unary (("*"|"/") unary)*
///   unary  := ["-"] power
///   power  := atom ["^" unary]
///   atom   := INT | IDENT | "(" expr ")" | "binom" "(" expr "," expr ")" | "fact" "(" expr ")"
///
/// Comments run from '#' to end of line. Evaluation is exact-rational per
/// term with an integrality check on the total.
namespace sporadic::dsl {

struct SourcePos {
    int line = 1;
    int col = 1;
};

class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, const std::string& message)
        : std::runtime_error("parse error at " + std::to_string(pos.line) + ":" +
                             std::to_string(pos.col) + ": " + message),
          pos_(pos) {}
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

class EvalError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExprKind { kIntLit, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kBinom, kFact };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    ExprKind kind;
    Integer value;      // kIntLit
    std::string name;   // kVar
    ExprPtr lhs, rhs;   // children; rhs empty for kNeg and kFact
};

inline ExprPtr make_int(Integer v) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::kIntLit;
    e->value = std::move(v);
    return e;
}

inline ExprPtr make_var(std::string name) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::kVar;
    e->name = std::move(name);
    return e;
}

inline ExprPtr make_node(ExprKind kind, ExprPtr lhs, ExprPtr rhs = nullptr) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

inline bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::kIntLit: return a.value == b.value;
        case ExprKind::kVar: return a.name == b.name;
        case ExprKind::kNeg:
        case ExprKind::kFact: return equal(*a.lhs, *b.lhs);
        default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
}

/// One sequence definition: name, bound summation index, bounds in n, body.
struct SequenceDef {
    std::string name;
    std::string index;
    ExprPtr lower, upper;
    ExprPtr body;
};

inline bool equal(const SequenceDef& a, const SequenceDef& b) {
    return a.name == b.name && a.index == b.index && equal(*a.lower, *b.lower) &&
           equal(*a.upper, *b.upper) && equal(*a.body, *b.body);
}

namespace dsl_detail {

enum class TokKind {
    kIdent, kInt, kPlus, kMinus, kStar, kSlash, kCaret,
    kLParen, kRParen, kComma, kAssign, kDotDot, kEnd
};

struct Token {
    TokKind kind;
    std::string text;
    SourcePos pos;
};

inline bool is_keyword(const std::string& s) {
    return s == "seq" || s == "sum" || s == "binom" || s == "fact";
}

inline std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    SourcePos pos;
    size_t i = 0;
    auto advance = [&](size_t count) {
        for (size_t k = 0; k < count; ++k, ++i) {
            if (text[i] == '\n') {
                ++pos.line;
                pos.col = 1;
            } else {
                ++pos.col;
            }
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const SourcePos start = pos;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                digits += text[i];
                advance(1);
            }
            out.push_back({TokKind::kInt, std::move(digits), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                ident += text[i];
                advance(1);
            }
            out.push_back({TokKind::kIdent, std::move(ident), start});
            continue;
        }
        switch (c) {
            case '+': out.push_back({TokKind::kPlus, "+", start}); advance(1); break;
            case '-': out.push_back({TokKind::kMinus, "-", start}); advance(1); break;
            case '*': out.push_back({TokKind::kStar, "*", start}); advance(1); break;
            case '/': out.push_back({TokKind::kSlash, "/", start}); advance(1); break;
            case '^': out.push_back({TokKind::kCaret, "^", start}); advance(1); break;
            case '(': out.push_back({TokKind::kLParen, "(", start}); advance(1); break;
            case ')': out.push_back({TokKind::kRParen, ")", start}); advance(1); break;
            case ',': out.push_back({TokKind::kComma, ",", start}); advance(1); break;
            case '=': out.push_back({TokKind::kAssign, "=", start}); advance(1); break;
            case '.':
                if (i + 1 < text.size() && text[i + 1] == '.') {
                    out.push_back({TokKind::kDotDot, "..", start});
                    advance(2);
                } else {
                    throw ParseError(start, "stray '.' (did you mean '..'?)");
                }
                break;
            default:
                throw ParseError(start, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({TokKind::kEnd, "", pos});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    SequenceDef parse_def() {
        expect_keyword("seq");
        SequenceDef def;
        def.name = expect_name("sequence name");
        expect(TokKind::kLParen, "'('");
        if (expect_name("argument name") != "n")
            throw ParseError(prev().pos, "the sequence argument must be named 'n'");
        expect(TokKind::kRParen, "')'");
        expect(TokKind::kAssign, "'='");
        expect_keyword("sum");
        expect(TokKind::kLParen, "'('");
        def.index = expect_name("summation index");
        if (def.index == "n")
            throw ParseError(prev().pos, "the summation index must differ from 'n'");
        expect(TokKind::kAssign, "'='");
        scope_ = {"n"};
        def.lower = parse_expr();
        expect(TokKind::kDotDot, "'..'");
        def.upper = parse_expr();
        expect(TokKind::kRParen, "')'");
        scope_ = {"n", def.index};
        def.body = parse_expr();
        expect(TokKind::kEnd, "end of input");
        return def;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& expected) {
        const Token& t = cur();
        const std::string got = t.kind == TokKind::kEnd ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.pos, "expected " + expected + ", found " + got);
    }

    const Token& expect(TokKind kind, const std::string& what) {
        if (cur().kind != kind) fail(what);
        return take();
    }

    void expect_keyword(const std::string& kw) {
        if (cur().kind != TokKind::kIdent || cur().text != kw) fail("'" + kw + "'");
        take();
    }

    std::string expect_name(const std::string& what) {
        if (cur().kind != TokKind::kIdent) fail(what);
        if (is_keyword(cur().text))
            throw ParseError(cur().pos, "'" + cur().text + "' is a reserved word");
        return take().text;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (cur().kind == TokKind::kPlus || cur().kind == TokKind::kMinus) {
            const bool add = take().kind == TokKind::kPlus;
            lhs = make_node(add ? ExprKind::kAdd : ExprKind::kSub, std::move(lhs), parse_term());
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        while (cur().kind == TokKind::kStar || cur().kind == TokKind::kSlash) {
            const bool mul = take().kind == TokKind::kStar;
            lhs = make_node(mul ? ExprKind::kMul : ExprKind::kDiv, std::move(lhs), parse_unary());
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (cur().kind == TokKind::kMinus) {
            take();
            return make_node(ExprKind::kNeg, parse_power());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (cur().kind == TokKind::kCaret) {
            take();
            return make_node(ExprKind::kPow, std::move(base), parse_unary());
        }
        return base;
    }

    ExprPtr parse_atom() {
        const Token& t = cur();
        switch (t.kind) {
            case TokKind::kInt: {
                take();
                return make_int(Integer(t.text));
            }
            case TokKind::kLParen: {
                take();
                ExprPtr inner = parse_expr();
                expect(TokKind::kRParen, "')'");
                return inner;
            }
            case TokKind::kIdent: {
                if (t.text == "binom") {
                    take();
                    expect(TokKind::kLParen, "'('");
                    ExprPtr a = parse_expr();
                    expect(TokKind::kComma, "','");
                    ExprPtr b = parse_expr();
                    expect(TokKind::kRParen, "')'");
                    return make_node(ExprKind::kBinom, std::move(a), std::move(b));
                }
                if (t.text == "fact") {
                    take();
                    expect(TokKind::kLParen, "'('");
                    ExprPtr a = parse_expr();
                    expect(TokKind::kRParen, "')'");
                    return make_node(ExprKind::kFact, std::move(a));
                }
                if (is_keyword(t.text)) fail("an expression");
                bool known = false;
                for (const auto& v : scope_) known = known || v == t.text;
                if (!known)
                    throw ParseError(t.pos, "unknown identifier '" + t.text + "'");
                take();
                return make_var(t.text);
            }
            default:
                fail("an expression");
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    std::vector<std::string> scope_;
};

inline Rational pow_rational(const Rational& base, const Integer& exp) {
    if (!exp.fits_slong_p()) throw EvalError("exponent out of range");
    const long e = exp.get_si();
    if (e == 0) return Rational(1);
    Rational b = base;
    if (e < 0) {
        if (base == 0) throw EvalError("zero raised to a negative power");
        b = Rational(1) / base;
    }
    Rational out(1);
    for (long i = 0; i < std::abs(e); ++i) out *= b;
    return out;
}

inline Integer require_integer(const Rational& q, const char* what) {
    if (q.get_den() != 1) throw EvalError(std::string(what) + " is not an integer");
    return Integer(q.get_num());
}

inline Rational eval_expr(const Expr& e, const std::map<std::string, Integer>& env) {
    switch (e.kind) {
        case ExprKind::kIntLit: return Rational(e.value);
        case ExprKind::kVar: {
            auto it = env.find(e.name);
            if (it == env.end()) throw EvalError("unbound variable '" + e.name + "'");
            return Rational(it->second);
        }
        case ExprKind::kNeg: return -eval_expr(*e.lhs, env);
        case ExprKind::kAdd: return eval_expr(*e.lhs, env) + eval_expr(*e.rhs, env);
        case ExprKind::kSub: return eval_expr(*e.lhs, env) - eval_expr(*e.rhs, env);
        case ExprKind::kMul: return eval_expr(*e.lhs, env) * eval_expr(*e.rhs, env);
        case ExprKind::kDiv: {
            Rational den = eval_expr(*e.rhs, env);
            if (den == 0) throw EvalError("division by zero");
            return eval_expr(*e.lhs, env) / den;
        }
        case ExprKind::kPow: {
            Rational base = eval_expr(*e.lhs, env);
            Integer exp = require_integer(eval_expr(*e.rhs, env), "exponent");
            return pow_rational(base, exp);
        }
        case ExprKind::kBinom: {
            Integer a = require_integer(eval_expr(*e.lhs, env), "binom upper argument");
            Integer b = require_integer(eval_expr(*e.rhs, env), "binom lower argument");
            if (a < 0) throw EvalError("binom upper argument is negative");
            return Rational(binomial(a, b));
        }
        case ExprKind::kFact: {
            Integer a = require_integer(eval_expr(*e.lhs, env), "fact argument");
            if (a < 0) throw EvalError("fact argument is negative");
            if (!a.fits_slong_p()) throw EvalError("fact argument out of range");
            return Rational(factorial(a.get_si()));
        }
    }
    throw EvalError("corrupt expression tree");
}

inline int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::kAdd:
        case ExprKind::kSub: return 1;
        case ExprKind::kMul:
        case ExprKind::kDiv: return 2;
        case ExprKind::kNeg: return 3;
        case ExprKind::kPow: return 4;
        default: return 5;
    }
}

inline std::string print_expr(const Expr& e);

inline std::string print_child(const Expr& child, int min_prec) {
    std::string s = print_expr(child);
    return precedence(child.kind) < min_prec ? "(" + s + ")" : s;
}

inline std::string print_expr(const Expr& e) {
    switch (e.kind) {
        case ExprKind::kIntLit: return e.value.get_str();
        case ExprKind::kVar: return e.name;
        case ExprKind::kNeg: return "-" + print_child(*e.lhs, 4);
        case ExprKind::kAdd:
            return print_child(*e.lhs, 1) + " + " + print_child(*e.rhs, 2);
        case ExprKind::kSub:
            return print_child(*e.lhs, 1) + " - " + print_child(*e.rhs, 2);
        case ExprKind::kMul:
            return print_child(*e.lhs, 2) + " * " + print_child(*e.rhs, 3);
        case ExprKind::kDiv:
            return print_child(*e.lhs, 2) + " / " + print_child(*e.rhs, 3);
        case ExprKind::kPow:
            return print_child(*e.lhs, 5) + "^" + print_child(*e.rhs, 3);
        case ExprKind::kBinom:
            return "binom(" + print_expr(*e.lhs) + ", " + print_expr(*e.rhs) + ")";
        case ExprKind::kFact: return "fact(" + print_expr(*e.lhs) + ")";
    }
    return "?";
}

}  // namespace dsl_detail

/// Parses one definition; malformed input raises ParseError with position.
inline SequenceDef parse(std::string_view text) {
    dsl_detail::Parser parser(dsl_detail::lex(text));
    return parser.parse_def();
}

/// Exact evaluation at n >= 0. Rational intermediates are allowed; the total
/// must come out an integer.
inline Integer evaluate(const SequenceDef& def, int64_t n) {
    if (n < 0) throw std::invalid_argument("evaluate: negative index");
    std::map<std::string, Integer> env{{"n", Integer(static_cast<long>(n))}};
    const Integer lo = dsl_detail::require_integer(dsl_detail::eval_expr(*def.lower, env),
                                                   "lower summation bound");
    const Integer hi = dsl_detail::require_integer(dsl_detail::eval_expr(*def.upper, env),
                                                   "upper summation bound");
    Rational total(0);
    for (Integer k = lo; k <= hi; ++k) {
        env[def.index] = k;
        total += dsl_detail::eval_expr(*def.body, env);
    }
    return dsl_detail::require_integer(total, "sequence value");
}

/// Canonical pretty-printing; parse(print(def)) is structurally equal to def
/// and print is idempotent on its own output.
inline std::string print(const SequenceDef& def) {
    return "seq " + def.name + "(n) = sum(" + def.index + " = " +
           dsl_detail::print_expr(*def.lower) + " .. " + dsl_detail::print_expr(*def.upper) +
           ") " + dsl_detail::print_expr(*def.body);
}

}  // namespace sporadic::dsl
