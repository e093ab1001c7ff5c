#pragma once

#include "brstlab/bvkernel.hpp"
#include "brstlab/errors.hpp"
#include "brstlab/rational.hpp"
#include "brstlab/superpoly.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brstlab {

// Expression tree of the model language. A sum keeps one sign per child ('+' for the first);
// parentheses leave no node of their own.
struct Expr {
    enum class Kind { literal, variable, sum, product, power };
    Kind kind = Kind::literal;
    Rational value;
    std::string name;
    std::vector<Expr> children;
    std::vector<char> signs;
    unsigned exponent = 0;

    static Expr literal(Rational v) {
        Expr e;
        e.value = std::move(v);
        return e;
    }
    static Expr variable(std::string n) {
        Expr e;
        e.kind = Kind::variable;
        e.name = std::move(n);
        return e;
    }

    friend bool operator==(const Expr&, const Expr&) = default;
};

struct ModelFile {
    std::string name;
    Expr s0;
    std::array<Rational, 3> alpha{Rational(1), Rational(1), Rational(1)};
    Rational beta{1};
    Expr t = Expr::literal(Rational(0));

    friend bool operator==(const ModelFile&, const ModelFile&) = default;
};

namespace detail {

struct Token {
    enum class Kind { ident, nat, string, symbol, end };
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

inline std::string describe(const Token& t) {
    switch (t.kind) {
        case Token::Kind::end: return "end of input";
        case Token::Kind::string: return "string \"" + t.text + "\"";
        default: return "'" + t.text + "'";
    }
}

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        std::size_t l = line;
        std::size_t cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Token::Kind::ident, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Kind::nat, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
        } else if (c == '"') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != '"') throw SyntaxError(l, cl, "unterminated string", "'\"'");
            out.push_back({Token::Kind::string, std::string(src.substr(i + 1, j - i - 1)), l, cl});
            advance(j + 1 - i);
        } else if (std::string_view("{}[]();=,+-*/^").find(c) != std::string_view::npos) {
            out.push_back({Token::Kind::symbol, std::string(1, c), l, cl});
            advance(1);
        } else {
            throw SyntaxError(l, cl, "'" + std::string(1, c) + "'", "a token");
        }
    }
    out.push_back({Token::Kind::end, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

    ModelFile file() {
        ModelFile m;
        keyword("model");
        const Token& name = peek();
        if (name.kind != Token::Kind::string) fail({"a model name string"});
        m.name = name.text;
        ++pos_;
        keyword("action");
        symbol("{");
        keyword("S0");
        symbol("=");
        m.s0 = expr();
        symbol(";");
        symbol("}");
        if (is_ident("params")) {
            ++pos_;
            symbol("{");
            if (is_ident("alpha")) {
                ++pos_;
                symbol("=");
                symbol("[");
                for (int k = 0; k < 3; ++k) {
                    if (k > 0) symbol(",");
                    m.alpha[static_cast<std::size_t>(k)] = rat();
                }
                symbol("]");
                symbol(";");
            }
            if (is_ident("beta")) {
                ++pos_;
                symbol("=");
                m.beta = rat();
                symbol(";");
            }
            if (is_ident("T")) {
                ++pos_;
                symbol("=");
                m.t = expr();
                symbol(";");
            }
            if (!is_symbol("}")) {
                std::vector<std::string> exp;
                for (const char* kw : {"alpha", "beta", "T"}) exp.push_back(std::string("'") + kw + "'");
                exp.emplace_back("'}'");
                fail(exp);
            }
            ++pos_;
        }
        if (peek().kind != Token::Kind::end) fail({is_ident("params") ? "end of input" : "'params'", "end of input"});
        return m;
    }

    Expr expr() {
        Expr first = term();
        if (!is_symbol("+") && !is_symbol("-")) return first;
        Expr s;
        s.kind = Expr::Kind::sum;
        s.children.push_back(std::move(first));
        s.signs.push_back('+');
        while (is_symbol("+") || is_symbol("-")) {
            s.signs.push_back(peek().text[0]);
            ++pos_;
            s.children.push_back(term());
        }
        return s;
    }

private:
    Expr term() {
        Expr first = factor();
        if (!is_symbol("*")) return first;
        Expr p;
        p.kind = Expr::Kind::product;
        p.children.push_back(std::move(first));
        while (is_symbol("*")) {
            ++pos_;
            p.children.push_back(factor());
        }
        return p;
    }

    Expr factor() {
        Expr b = base();
        if (!is_symbol("^")) return b;
        ++pos_;
        const Token& n = peek();
        if (n.kind != Token::Kind::nat) fail({"a natural number"});
        ++pos_;
        Expr p;
        p.kind = Expr::Kind::power;
        p.exponent = static_cast<unsigned>(std::stoul(n.text));
        p.children.push_back(std::move(b));
        return p;
    }

    Expr base() {
        const Token& t = peek();
        if (t.kind == Token::Kind::nat || is_symbol("-")) return Expr::literal(rat());
        if (t.kind == Token::Kind::ident) {
            ++pos_;
            return Expr::variable(t.text);
        }
        if (is_symbol("(")) {
            ++pos_;
            Expr e = expr();
            symbol(")");
            return e;
        }
        fail({"a number", "a variable", "'('"});
    }

    Rational rat() {
        bool neg = false;
        if (is_symbol("-")) {
            neg = true;
            ++pos_;
        }
        const Token& n = peek();
        if (n.kind != Token::Kind::nat) fail({"a natural number"});
        ++pos_;
        mpz_class num(n.text);
        mpz_class den(1);
        if (is_symbol("/")) {
            ++pos_;
            const Token& d = peek();
            if (d.kind != Token::Kind::nat) fail({"a natural number"});
            den = mpz_class(d.text);
            if (den == 0) throw SemanticError("zero denominator at " + std::to_string(d.line) + ":" + std::to_string(d.column));
            ++pos_;
        }
        mpq_class q(num, den);
        q.canonicalize();
        if (neg) q = -q;
        return Rational(q);
    }

    [[nodiscard]] const Token& peek() const { return toks_[pos_]; }
    [[nodiscard]] bool is_symbol(std::string_view s) const {
        return peek().kind == Token::Kind::symbol && peek().text == s;
    }
    [[nodiscard]] bool is_ident(std::string_view s) const { return peek().kind == Token::Kind::ident && peek().text == s; }

    void symbol(std::string_view s) {
        if (!is_symbol(s)) fail({"'" + std::string(s) + "'"});
        ++pos_;
    }
    void keyword(std::string_view s) {
        if (!is_ident(s)) fail({"'" + std::string(s) + "'"});
        ++pos_;
    }
    [[noreturn]] void fail(const std::vector<std::string>& expected) const {
        std::string e;
        for (std::size_t i = 0; i < expected.size(); ++i) e += (i ? ", " : "") + expected[i];
        throw SyntaxError(peek().line, peek().column, describe(peek()), e);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

inline void check_variables(const Expr& e, const char* where) {
    if (e.kind == Expr::Kind::variable) {
        static const std::vector<std::string> ok{"M1", "M2", "M3", "M4"};
        static const std::vector<std::string> ghosts{"C1", "C2", "C3", "E"};
        if (std::find(ok.begin(), ok.end(), e.name) != ok.end()) return;
        if (std::find(ghosts.begin(), ghosts.end(), e.name) != ghosts.end())
            throw SemanticError(std::string("ghost variable ") + e.name + " in " + where);
        throw SemanticError(std::string("unknown variable ") + e.name + " in " + where);
    }
    for (const auto& c : e.children) check_variables(c, where);
}

inline std::string render_rational(const Rational& r) { return r.str(); }
}  // namespace detail

// Parses a model file; SyntaxError on malformed input, SemanticError on forbidden content.
inline ModelFile parse_model(std::string_view text) {
    detail::Parser p(text);
    ModelFile m = p.file();
    detail::check_variables(m.s0, "S0");
    detail::check_variables(m.t, "T");
    for (const auto& a : m.alpha)
        if (a.is_zero()) throw SemanticError("alpha entries must be nonzero");
    if (m.beta.is_zero()) throw SemanticError("beta must be nonzero");
    return m;
}

// Renders with the minimal parentheses that reproduce the same tree on re-parsing.
inline std::string render_expr(const Expr& e) {
    using K = Expr::Kind;
    auto wrap = [](const Expr& c, bool paren) { return paren ? "(" + render_expr(c) + ")" : render_expr(c); };
    switch (e.kind) {
        case K::literal: return detail::render_rational(e.value);
        case K::variable: return e.name;
        case K::sum: {
            std::string out;
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i > 0) out += std::string(" ") + e.signs[i] + " ";
                out += wrap(e.children[i], e.children[i].kind == K::sum);
            }
            return out;
        }
        case K::product: {
            std::string out;
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i > 0) out += "*";
                const auto& c = e.children[i];
                out += wrap(c, c.kind == K::sum || c.kind == K::product);
            }
            return out;
        }
        case K::power: {
            const auto& b = e.children.front();
            return wrap(b, b.kind != K::literal && b.kind != K::variable) + "^" + std::to_string(e.exponent);
        }
    }
    return {};
}

inline std::string render_model(const ModelFile& m) {
    std::string out = "model \"" + m.name + "\"\naction { S0 = " + render_expr(m.s0) + "; }\nparams { alpha=[";
    for (std::size_t i = 0; i < 3; ++i) out += (i ? "," : "") + detail::render_rational(m.alpha[i]);
    out += "]; beta=" + detail::render_rational(m.beta) + "; T=" + render_expr(m.t) + "; }\n";
    return out;
}

inline SuperPoly evaluate(const Expr& e, const FieldTable& table) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::literal: return SuperPoly(e.value);
        case K::variable: return table.gen(e.name);
        case K::sum: {
            SuperPoly out;
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                SuperPoly c = evaluate(e.children[i], table);
                if (e.signs[i] == '-')
                    out -= c;
                else
                    out += c;
            }
            return out;
        }
        case K::product: {
            SuperPoly out(1);
            for (const auto& c : e.children) out = out * evaluate(c, table);
            return out;
        }
        case K::power: return evaluate(e.children.front(), table).pow(e.exponent);
    }
    return {};
}

// Converts to the engine's model description. S0 must be a polynomial in M1^2+M2^2+M3^2 and M4.
inline ModelSpec to_model_spec(const ModelFile& m) {
    FieldTable t = u2_field_table();
    SuperPoly s0 = evaluate(m.s0, t);
    ModelSpec spec;
    spec.name = m.name;
    spec.alpha = m.alpha;
    spec.beta = m.beta;
    spec.t_poly = evaluate(m.t, t);
    GenIndex m1 = t.index("M1");
    GenIndex m4 = t.index("M4");
    SuperPoly slice = s0.substitute({{t.index("M2"), SuperPoly()}, {t.index("M3"), SuperPoly()}});
    for (const auto& [mono, c] : slice.terms()) {
        unsigned e1 = mono.exponent(m1);
        if (e1 % 2 != 0) throw SemanticError("S0 is not rotation invariant");
        auto& coeffs = spec.s0_coefficients[e1 / 2];
        unsigned e4 = mono.exponent(m4);
        if (coeffs.size() <= e4) coeffs.resize(e4 + 1);
        coeffs[e4] = c;
    }
    if (!(spec.s0(t) - s0).is_zero())
        throw SemanticError("S0 is not a polynomial in M1^2+M2^2+M3^2 and M4");
    return spec;
}

// The default model: S0 = M4^2 + M1^2 + M2^2 + M3^2, alpha = (1,1,1), beta = 1, T = 0.
inline std::string default_model_text() {
    return "model \"u2\"\naction { S0 = M4^2 + M1^2 + M2^2 + M3^2; }\nparams { alpha=[1,1,1]; beta=1; T=0; }\n";
}

}  // namespace brstlab
