#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rcfm/errors.hpp"
#include "rcfm/matrix.hpp"
#include "rcfm/tj.hpp"

namespace rcfm {

// Surface syntax over the builder set:
//
//   program := ('let' ident '=' expr ';')* expr
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | primary ('^' uint)?
//   primary := 'S' '(' int ')' | 'E' '(' uint ',' uint ')' | 'I'
//            | 'T' '(' ('1' | '-1') ')' | rational | ident | '(' expr ')'
//            | 'conjdiag' '(' expr ';' signed-rational ';' ratfunc ')'
//
// Rationals are "p/q" literals (no spaces around the slash); unary minus binds
// tighter than '*'. The conjdiag ratio argument uses its own field grammar
// over the variable j with operators + - * / ^.

enum class TokenKind { Integer, Rational, Ident, Symbol, End };

struct Token {
    TokenKind kind;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string text) : text_(std::move(text)) { scan(); }

    const std::vector<Token>& tokens() const { return tokens_; }

private:
    void scan() {
        std::size_t i = 0;
        int line = 1, col = 1;
        auto advance = [&](std::size_t n) {
            for (std::size_t k = 0; k < n; ++k) {
                if (text_[i + k] == '\n') { ++line; col = 1; } else { ++col; }
            }
            i += n;
        };
        while (i < text_.size()) {
            char c = text_[i];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { advance(1); continue; }
            Token t{TokenKind::Symbol, "", line, col};
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t n = 0;
                while (i + n < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i + n]))) ++n;
                std::size_t whole = n;
                if (i + n < text_.size() && text_[i + n] == '/' && i + n + 1 < text_.size() &&
                    std::isdigit(static_cast<unsigned char>(text_[i + n + 1]))) {
                    ++n;
                    while (i + n < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i + n]))) ++n;
                    t.kind = TokenKind::Rational;
                } else {
                    n = whole;
                    t.kind = TokenKind::Integer;
                }
                t.text = text_.substr(i, n);
                advance(n);
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t n = 0;
                while (i + n < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[i + n])) || text_[i + n] == '_'))
                    ++n;
                t.kind = TokenKind::Ident;
                t.text = text_.substr(i, n);
                advance(n);
            } else if (std::string("+-*/^(),;=").find(c) != std::string::npos) {
                t.kind = TokenKind::Symbol;
                t.text = std::string(1, c);
                advance(1);
            } else {
                throw ParseError(line, col, {}, "unexpected character '" + std::string(1, c) + "'");
            }
            tokens_.push_back(std::move(t));
        }
        tokens_.push_back(Token{TokenKind::End, "", line, col});
    }

    std::string text_;
    std::vector<Token> tokens_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Rational,   // value
        BuildShift, // arg0 = i
        BuildUnit,  // arg0 = i, arg1 = j
        BuildIdentity,
        BuildT,     // arg0 = +1 / -1
        Ident,      // name
        Add, Sub, Mul, Neg, Pow,  // lhs / rhs / exponent
        ConjDiag,   // lhs = inner, value = a1, ratio
        Let,        // name, lhs = bound, rhs = body
    };

    Kind kind;
    Scalar value;
    long arg0 = 0, arg1 = 0;
    unsigned long exponent = 0;
    std::string name;
    RationalFunction ratio;
    ExprPtr lhs, rhs;
};

namespace detail {

inline ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
    explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

    ExprPtr parse_program() {
        ExprPtr result;
        std::vector<std::pair<std::string, ExprPtr>> lets;
        while (at_ident("let")) {
            next();
            Token name = expect(TokenKind::Ident, "identifier");
            expect_symbol("=");
            ExprPtr bound = parse_expr();
            expect_symbol(";");
            lets.emplace_back(name.text, bound);
        }
        result = parse_expr();
        if (!at_end()) unexpected({"end of input"});
        for (auto it = lets.rbegin(); it != lets.rend(); ++it)
            result = node({.kind = Expr::Kind::Let, .name = it->first, .lhs = it->second, .rhs = result});
        return result;
    }

    RationalFunction parse_ratfunc_only() {
        RationalFunction f = parse_ratexpr();
        if (!at_end()) unexpected({"end of input"});
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool at_end() const { return peek().kind == TokenKind::End; }
    bool at_symbol(const std::string& s) const {
        return peek().kind == TokenKind::Symbol && peek().text == s;
    }
    bool at_ident(const std::string& s) const {
        return peek().kind == TokenKind::Ident && peek().text == s;
    }

    [[noreturn]] void unexpected(std::vector<std::string> expected) const {
        const Token& t = peek();
        std::string got = t.kind == TokenKind::End ? "end of input" : "\"" + t.text + "\"";
        std::string msg = "unexpected " + got + " at line " + std::to_string(t.line) +
                          ", column " + std::to_string(t.col);
        if (!expected.empty()) {
            msg += "; expected ";
            for (std::size_t k = 0; k < expected.size(); ++k)
                msg += (k ? " | " : "") + expected[k];
        }
        throw ParseError(t.line, t.col, std::move(expected), msg);
    }

    Token expect(TokenKind kind, const std::string& what) {
        if (peek().kind != kind) unexpected({what});
        return next();
    }

    void expect_symbol(const std::string& s) {
        if (!at_symbol(s)) unexpected({"'" + s + "'"});
        next();
    }

    long parse_signed_integer() {
        bool neg = false;
        if (at_symbol("-")) { next(); neg = true; }
        Token t = expect(TokenKind::Integer, "integer");
        long v = std::stol(t.text);
        return neg ? -v : v;
    }

    Scalar parse_signed_rational() {
        bool neg = false;
        if (at_symbol("-")) { next(); neg = true; }
        if (peek().kind != TokenKind::Integer && peek().kind != TokenKind::Rational)
            unexpected({"rational"});
        Scalar v = scalar_from_string(next().text);
        return neg ? Scalar(-v) : v;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (at_symbol("+") || at_symbol("-")) {
            bool add = next().text == "+";
            ExprPtr rhs = parse_term();
            lhs = node({.kind = add ? Expr::Kind::Add : Expr::Kind::Sub, .lhs = lhs, .rhs = rhs});
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (at_symbol("*")) {
            next();
            ExprPtr rhs = parse_factor();
            lhs = node({.kind = Expr::Kind::Mul, .lhs = lhs, .rhs = rhs});
        }
        return lhs;
    }

    ExprPtr parse_factor() {
        if (at_symbol("-")) {
            next();
            return node({.kind = Expr::Kind::Neg, .lhs = parse_factor()});
        }
        ExprPtr base = parse_primary();
        if (at_symbol("^")) {
            next();
            Token e = expect(TokenKind::Integer, "nonnegative integer exponent");
            return node({.kind = Expr::Kind::Pow, .exponent = std::stoul(e.text), .lhs = base});
        }
        return base;
    }

    ExprPtr parse_primary() {
        if (peek().kind == TokenKind::Integer || peek().kind == TokenKind::Rational)
            return node({.kind = Expr::Kind::Rational, .value = scalar_from_string(next().text)});
        if (at_symbol("(")) {
            next();
            ExprPtr inner = parse_expr();
            expect_symbol(")");
            return inner;
        }
        if (peek().kind != TokenKind::Ident)
            unexpected({"'S'", "'E'", "'I'", "'T'", "rational", "identifier", "'('", "'conjdiag'"});
        Token id = next();
        if (id.text == "I") return node({.kind = Expr::Kind::BuildIdentity});
        if (id.text == "S") {
            expect_symbol("(");
            long i = parse_signed_integer();
            expect_symbol(")");
            return node({.kind = Expr::Kind::BuildShift, .arg0 = i});
        }
        if (id.text == "E") {
            expect_symbol("(");
            Token i = expect(TokenKind::Integer, "positive integer");
            expect_symbol(",");
            Token j = expect(TokenKind::Integer, "positive integer");
            expect_symbol(")");
            return node({.kind = Expr::Kind::BuildUnit, .arg0 = std::stol(i.text),
                         .arg1 = std::stol(j.text)});
        }
        if (id.text == "T") {
            expect_symbol("(");
            long v = parse_signed_integer();
            if (v != 1 && v != -1) unexpected({"'1'", "'-1'"});
            expect_symbol(")");
            return node({.kind = Expr::Kind::BuildT, .arg0 = v});
        }
        if (id.text == "conjdiag") {
            expect_symbol("(");
            ExprPtr inner = parse_expr();
            expect_symbol(";");
            Scalar a1 = parse_signed_rational();
            expect_symbol(";");
            RationalFunction ratio = parse_ratexpr();
            expect_symbol(")");
            return node({.kind = Expr::Kind::ConjDiag, .value = a1, .ratio = ratio, .lhs = inner});
        }
        if (id.text == "let")
            unexpected({"expression"});
        return node({.kind = Expr::Kind::Ident, .name = id.text});
    }

    // field grammar over j for diagonal ratios
    RationalFunction parse_ratexpr() {
        RationalFunction lhs = parse_ratterm();
        while (at_symbol("+") || at_symbol("-")) {
            bool add = next().text == "+";
            RationalFunction rhs = parse_ratterm();
            lhs = add ? lhs + rhs : lhs - rhs;
        }
        return lhs;
    }

    RationalFunction parse_ratterm() {
        RationalFunction lhs = parse_ratfactor();
        while (at_symbol("*") || at_symbol("/")) {
            bool mul = next().text == "*";
            RationalFunction rhs = parse_ratfactor();
            if (!mul && rhs.is_zero_fn()) fail("ZeroDenominator", "division by the zero function");
            lhs = mul ? lhs * rhs : lhs / rhs;
        }
        return lhs;
    }

    RationalFunction parse_ratfactor() {
        if (at_symbol("-")) {
            next();
            return -parse_ratfactor();
        }
        RationalFunction base = parse_ratprimary();
        if (at_symbol("^")) {
            next();
            Token e = expect(TokenKind::Integer, "nonnegative integer exponent");
            unsigned long n = std::stoul(e.text);
            RationalFunction acc = RationalFunction::constant(Scalar(1));
            for (unsigned long k = 0; k < n; ++k) acc = acc * base;
            return acc;
        }
        return base;
    }

    RationalFunction parse_ratprimary() {
        if (at_ident("j")) {
            next();
            return RationalFunction::variable();
        }
        if (peek().kind == TokenKind::Integer || peek().kind == TokenKind::Rational)
            return RationalFunction::constant(scalar_from_string(next().text));
        if (at_symbol("(")) {
            next();
            RationalFunction inner = parse_ratexpr();
            expect_symbol(")");
            return inner;
        }
        unexpected({"'j'", "rational", "'('"});
    }

    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expr(const std::string& text) {
    Lexer lex(text);
    detail::Parser p(lex.tokens());
    return p.parse_program();
}

inline RationalFunction parse_ratfunc(const std::string& text) {
    Lexer lex(text);
    detail::Parser p(lex.tokens());
    return p.parse_ratfunc_only();
}

// -- printing -----------------------------------------------------------------

namespace detail {

inline int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

inline std::string print_rec(const ExprPtr& e, int parent_prec) {
    auto wrap = [&](const std::string& s, int prec) {
        return prec < parent_prec ? "(" + s + ")" : s;
    };
    switch (e->kind) {
        case Expr::Kind::Rational: return scalar_to_string(e->value);
        case Expr::Kind::BuildShift: return "S(" + std::to_string(e->arg0) + ")";
        case Expr::Kind::BuildUnit:
            return "E(" + std::to_string(e->arg0) + "," + std::to_string(e->arg1) + ")";
        case Expr::Kind::BuildIdentity: return "I";
        case Expr::Kind::BuildT: return "T(" + std::to_string(e->arg0) + ")";
        case Expr::Kind::Ident: return e->name;
        case Expr::Kind::Add:
            return wrap(print_rec(e->lhs, 1) + " + " + print_rec(e->rhs, 2), 1);
        case Expr::Kind::Sub:
            return wrap(print_rec(e->lhs, 1) + " - " + print_rec(e->rhs, 2), 1);
        case Expr::Kind::Mul:
            return wrap(print_rec(e->lhs, 2) + "*" + print_rec(e->rhs, 3), 2);
        case Expr::Kind::Neg: return wrap("-" + print_rec(e->lhs, 3), 3);
        case Expr::Kind::Pow:
            return wrap(print_rec(e->lhs, 5) + "^" + std::to_string(e->exponent), 4);
        case Expr::Kind::ConjDiag:
            return "conjdiag(" + print_rec(e->lhs, 0) + "; " + scalar_to_string(e->value) +
                   "; " + e->ratio.to_string('j') + ")";
        case Expr::Kind::Let:
            return "let " + e->name + " = " + print_rec(e->lhs, 0) + "; " + print_rec(e->rhs, 0);
    }
    return "";
}

}  // namespace detail

inline std::string print_expr(const ExprPtr& e) { return detail::print_rec(e, 0); }

// -- evaluation -----------------------------------------------------------------

/// Expressions evaluate to a scalar or a matrix; a scalar combined with a
/// matrix under + or - is promoted to the scalar multiple of the identity.
using Value = std::variant<Scalar, RcfMatrix>;

namespace detail {

inline RcfMatrix to_matrix(const Value& v) {
    if (const auto* m = std::get_if<RcfMatrix>(&v)) return *m;
    return RcfMatrix::diagonal(RationalFunction::constant(std::get<Scalar>(v)));
}

inline Value eval_rec(const ExprPtr& e, std::map<std::string, Value>& env) {
    switch (e->kind) {
        case Expr::Kind::Rational: return e->value;
        case Expr::Kind::BuildShift: return RcfMatrix::shift(e->arg0);
        case Expr::Kind::BuildUnit: return RcfMatrix::unit(e->arg0, e->arg1);
        case Expr::Kind::BuildIdentity: return RcfMatrix::identity();
        case Expr::Kind::BuildT: return RcfMatrix::t_shift(static_cast<int>(e->arg0));
        case Expr::Kind::Ident: {
            auto it = env.find(e->name);
            if (it == env.end()) fail("UnknownIdentifier", "unbound identifier \"" + e->name + "\"");
            return it->second;
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            Value a = eval_rec(e->lhs, env), b = eval_rec(e->rhs, env);
            const bool sub = e->kind == Expr::Kind::Sub;
            if (std::holds_alternative<Scalar>(a) && std::holds_alternative<Scalar>(b)) {
                const Scalar& x = std::get<Scalar>(a);
                const Scalar& y = std::get<Scalar>(b);
                return sub ? Scalar(x - y) : Scalar(x + y);
            }
            RcfMatrix ma = to_matrix(a), mb = to_matrix(b);
            return sub ? ma - mb : ma + mb;
        }
        case Expr::Kind::Mul: {
            Value a = eval_rec(e->lhs, env), b = eval_rec(e->rhs, env);
            if (std::holds_alternative<Scalar>(a) && std::holds_alternative<Scalar>(b))
                return Scalar(std::get<Scalar>(a) * std::get<Scalar>(b));
            if (std::holds_alternative<Scalar>(a))
                return std::get<RcfMatrix>(b).scaled(std::get<Scalar>(a));
            if (std::holds_alternative<Scalar>(b))
                return std::get<RcfMatrix>(a).scaled(std::get<Scalar>(b));
            return std::get<RcfMatrix>(a) * std::get<RcfMatrix>(b);
        }
        case Expr::Kind::Neg: {
            Value a = eval_rec(e->lhs, env);
            if (std::holds_alternative<Scalar>(a)) return Scalar(-std::get<Scalar>(a));
            return -std::get<RcfMatrix>(a);
        }
        case Expr::Kind::Pow: {
            Value a = eval_rec(e->lhs, env);
            if (std::holds_alternative<Scalar>(a))
                return scalar_pow(std::get<Scalar>(a), e->exponent);
            return std::get<RcfMatrix>(a).pow(e->exponent);
        }
        case Expr::Kind::ConjDiag: {
            HyperDiagonal u(e->value, e->ratio);
            return hyperdiag_conjugate(u, to_matrix(eval_rec(e->lhs, env)));
        }
        case Expr::Kind::Let: {
            Value bound = eval_rec(e->lhs, env);
            auto [it, inserted] = env.emplace(e->name, bound);
            if (!inserted) it->second = bound;
            Value out = eval_rec(e->rhs, env);
            return out;
        }
    }
    fail("InternalInconsistency", "unhandled expression node");
}

}  // namespace detail

inline Value eval_expr(const ExprPtr& e) {
    std::map<std::string, Value> env;
    return detail::eval_rec(e, env);
}

inline RcfMatrix eval_expr_matrix(const std::string& text) {
    return detail::to_matrix(eval_expr(parse_expr(text)));
}

// -- TJ element surface syntax ---------------------------------------------------
//
//   tjexpr := tjterm (('+' | '-') tjterm)*
//   tjterm := rational ['*'] [word] | word
//   word   := ('x' | 'y')+ | '1'

inline TJElement parse_tj_element(const std::string& text) {
    Lexer lex(text);
    const auto& toks = lex.tokens();
    std::size_t pos = 0;
    auto peek = [&]() -> const Token& { return toks[pos]; };
    auto word_monomial = [&](const std::string& w, const Token& t) {
        if (w == "1") return TJMonomial{0, 0};
        std::vector<TJLetter> letters;
        for (char c : w) {
            if (c == 'x') letters.push_back(TJLetter::x);
            else if (c == 'y') letters.push_back(TJLetter::y);
            else
                throw ParseError(t.line, t.col, {"word over {x,y}"},
                                 "\"" + w + "\" is not a word over {x, y}");
        }
        return normalize_word(letters);
    };
    TJElement acc = TJElement::zero();
    bool first = true;
    while (true) {
        Scalar sign(1);
        if (peek().kind == TokenKind::Symbol && (peek().text == "+" || peek().text == "-")) {
            sign = peek().text == "-" ? -1 : 1;
            ++pos;
        } else if (!first) {
            break;
        }
        first = false;
        Scalar coeff(1);
        bool have_coeff = false;
        if (peek().kind == TokenKind::Integer || peek().kind == TokenKind::Rational) {
            coeff = scalar_from_string(peek().text);
            have_coeff = true;
            ++pos;
            if (peek().kind == TokenKind::Symbol && peek().text == "*") ++pos;
        }
        TJMonomial m{0, 0};
        bool have_word = false;
        if (peek().kind == TokenKind::Ident) {
            m = word_monomial(peek().text, peek());
            have_word = true;
            ++pos;
        }
        if (!have_coeff && !have_word) {
            const Token& t = peek();
            throw ParseError(t.line, t.col, {"rational", "word over {x,y}"},
                             "expected a term at line " + std::to_string(t.line) + ", column " +
                                 std::to_string(t.col));
        }
        acc = acc + TJElement::monomial(m.a, m.b, sign * coeff);
    }
    if (peek().kind != TokenKind::End) {
        const Token& t = peek();
        throw ParseError(t.line, t.col, {"'+'", "'-'", "end of input"},
                         "unexpected \"" + t.text + "\" in TJ element");
    }
    return acc;
}

}  // namespace rcfm
