#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "milnor/polynomial.hpp"

namespace milnor {

namespace detail {

enum class TokKind { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };

struct Token {
    TokKind kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            toks.push_back({TokKind::Number, s.substr(start, i - start), start});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            toks.push_back({TokKind::Ident, s.substr(start, i - start), start});
        } else {
            TokKind k;
            switch (c) {
                case '+': k = TokKind::Plus; break;
                case '-': k = TokKind::Minus; break;
                case '*': k = TokKind::Star; break;
                case '^': k = TokKind::Caret; break;
                case '/': k = TokKind::Slash; break;
                case '(': k = TokKind::LParen; break;
                case ')': k = TokKind::RParen; break;
                default: throw SyntaxError(std::string("unexpected character '") + c + "'", start);
            }
            toks.push_back({k, s.substr(start, 1), start});
            ++i;
        }
    }
    toks.push_back({TokKind::End, "", s.size()});
    return toks;
}

// Multi-degree scratch polynomial used only while parsing.
template <class F>
struct GenPoly {
    using Elem = typename F::Elem;
    std::map<Monomial, Elem, GrlexBefore> terms;

    void add_term(const F& k, const Monomial& m, const Elem& c) {
        auto it = terms.find(m);
        if (it == terms.end()) {
            if (!k.is_zero(c)) terms[m] = c;
        } else {
            it->second = k.add(it->second, c);
            if (k.is_zero(it->second)) terms.erase(it);
        }
    }
    GenPoly add(const F& k, const GenPoly& o) const {
        GenPoly r = *this;
        for (const auto& [m, c] : o.terms) r.add_term(k, m, c);
        return r;
    }
    GenPoly negate(const F& k) const {
        GenPoly r = *this;
        for (auto& [m, c] : r.terms) c = k.neg(c);
        return r;
    }
    GenPoly mul(const F& k, const GenPoly& o) const {
        GenPoly r;
        for (const auto& [ma, ca] : terms)
            for (const auto& [mb, cb] : o.terms) r.add_term(k, ma * mb, k.mul(ca, cb));
        return r;
    }
    GenPoly pow(const F& k, int nvars, int e) const {
        GenPoly r;
        r.add_term(k, Monomial::unit(nvars), k.one());
        for (int i = 0; i < e; ++i) r = r.mul(k, *this);
        return r;
    }
};

template <class F>
class Parser {
public:
    Parser(const std::string& text, const CtxPtr<F>& ctx)
        : ctx_(ctx), toks_(tokenize(text)), at_(0) {}

    GenPoly<F> run() {
        GenPoly<F> p = expr();
        if (peek().kind != TokKind::End) throw SyntaxError("unexpected token '" + peek().text + "'", peek().pos);
        return p;
    }

private:
    const Token& peek() const { return toks_[at_]; }
    Token next() { return toks_[at_++]; }
    bool accept(TokKind k) {
        if (peek().kind == k) {
            ++at_;
            return true;
        }
        return false;
    }
    void expect(TokKind k, const char* what) {
        if (!accept(k)) throw SyntaxError(std::string("expected ") + what, peek().pos);
    }

    bool starts_factor(TokKind k) const {
        return k == TokKind::Number || k == TokKind::Ident || k == TokKind::LParen;
    }

    GenPoly<F> expr() {
        const F& k = ctx_->field;
        bool neg = accept(TokKind::Minus);
        GenPoly<F> acc = term();
        if (neg) acc = acc.negate(k);
        while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
            bool minus = next().kind == TokKind::Minus;
            GenPoly<F> t = term();
            acc = acc.add(k, minus ? t.negate(k) : t);
        }
        return acc;
    }

    GenPoly<F> term() {
        const F& k = ctx_->field;
        GenPoly<F> acc = factor();
        for (;;) {
            if (accept(TokKind::Star)) {
                acc = acc.mul(k, factor());
            } else if (starts_factor(peek().kind)) {
                acc = acc.mul(k, factor());
            } else {
                break;
            }
        }
        return acc;
    }

    int exponent() {
        if (peek().kind != TokKind::Number) throw SyntaxError("expected exponent", peek().pos);
        Token t = next();
        if (t.text.size() > 6) throw SyntaxError("exponent too large", t.pos);
        return std::stoi(t.text);
    }

    GenPoly<F> factor() {
        const F& k = ctx_->field;
        const Token t = peek();
        if (t.kind == TokKind::Number) {
            next();
            typename F::Elem c = k.from_decimal(t.text);
            if (accept(TokKind::Slash)) {
                if (peek().kind != TokKind::Number) throw SyntaxError("expected denominator", peek().pos);
                Token d = next();
                typename F::Elem den = k.from_decimal(d.text);
                if (k.is_zero(den)) throw SyntaxError("zero denominator", d.pos);
                c = k.div(c, den);
            }
            GenPoly<F> p;
            p.add_term(k, Monomial::unit(ctx_->nvars), c);
            return p;
        }
        if (t.kind == TokKind::Ident) {
            next();
            int vi = ctx_->var_index(t.text);
            if (vi < 0) throw UnknownVariable(t.text);
            int e = accept(TokKind::Caret) ? exponent() : 1;
            Monomial m = Monomial::unit(ctx_->nvars);
            m.e[vi] = e;
            GenPoly<F> p;
            p.add_term(k, m, k.one());
            return p;
        }
        if (t.kind == TokKind::LParen) {
            next();
            GenPoly<F> p = expr();
            expect(TokKind::RParen, "')'");
            if (accept(TokKind::Caret)) p = p.pow(k, ctx_->nvars, exponent());
            return p;
        }
        throw SyntaxError("expected a coefficient, variable or '('", t.pos);
    }

    CtxPtr<F> ctx_;
    std::vector<Token> toks_;
    std::size_t at_;
};

}  // namespace detail

// Parse text into a homogeneous polynomial over ctx. After combining like
// terms, all surviving monomials must have one total degree.
template <class F>
HomPoly<F> parse_poly(const std::string& text, const CtxPtr<F>& ctx) {
    detail::Parser<F> parser(text, ctx);
    detail::GenPoly<F> g = parser.run();
    if (g.terms.empty()) return HomPoly<F>::zero(ctx, 0);
    int deg = g.terms.begin()->first.degree();
    for (const auto& [m, c] : g.terms) {
        if (m.degree() != deg) throw NotHomogeneous(std::min(deg, m.degree()), std::max(deg, m.degree()));
    }
    HomPoly<F> p(ctx, deg);
    for (const auto& [m, c] : g.terms) p.add_term(m, c);
    return p;
}

namespace detail {

template <class F>
std::string render_coeff_abs(const F&, const typename F::Elem&);

inline std::string render_coeff_abs(const QField& k, const Rational& c) {
    Rational a = c < 0 ? Rational(-c) : c;
    return k.to_string(a);
}

inline std::string render_coeff_abs(const PFField& k, std::uint64_t c) { return k.to_string(c); }

inline bool coeff_negative(const QField&, const Rational& c) { return c < 0; }
inline bool coeff_negative(const PFField&, std::uint64_t) { return false; }

}  // namespace detail

template <class F>
std::string render_monomial(const CtxPtr<F>& ctx, const Monomial& m) {
    std::string out;
    for (int i = 0; i < ctx->nvars; ++i) {
        if (m.e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += ctx->varnames[i];
        if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
    }
    return out;
}

// Canonical text form; parse_poly(render(f), ctx) reproduces f.
template <class F>
std::string render(const HomPoly<F>& f) {
    const F& k = f.ctx()->field;
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        bool neg = detail::coeff_negative(k, c);
        std::string cs = detail::render_coeff_abs(k, c);
        std::string ms = render_monomial(f.ctx(), m);
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (ms.empty()) {
            out += cs;
        } else if (cs == "1") {
            out += ms;
        } else {
            out += cs + "*" + ms;
        }
    }
    return out;
}

}  // namespace milnor
