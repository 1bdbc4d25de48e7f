#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "milnor/errors.hpp"
#include "milnor/field.hpp"
#include "milnor/monomial.hpp"

namespace milnor {

// Polynomial ring context: number of variables, their names, coefficient field.
// Shared immutably by every value built over it.
template <class F>
struct RingCtx {
    int nvars = 0;
    std::vector<std::string> varnames;
    F field;

    static std::vector<std::string> default_names(int nvars) {
        if (nvars == 3) return {"x", "y", "z"};
        if (nvars == 4) return {"x", "y", "z", "w"};
        std::vector<std::string> names;
        names.reserve(nvars);
        for (int i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i));
        return names;
    }

    static std::shared_ptr<const RingCtx> make(int nvars, F field = F(),
                                               std::vector<std::string> names = {}) {
        if (nvars < 2) throw InputError("a ring context needs at least 2 variables");
        if (names.empty()) names = default_names(nvars);
        if (static_cast<int>(names.size()) != nvars)
            throw InputError("variable name list does not match nvars");
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                if (names[i] == names[j]) throw InputError("duplicate variable name '" + names[i] + "'");
        auto ctx = std::make_shared<RingCtx>();
        ctx->nvars = nvars;
        ctx->varnames = std::move(names);
        ctx->field = std::move(field);
        return ctx;
    }

    int var_index(const std::string& name) const {
        for (int i = 0; i < nvars; ++i)
            if (varnames[i] == name) return i;
        return -1;
    }

    bool same_as(const RingCtx& o) const {
        return nvars == o.nvars && varnames == o.varnames && field == o.field;
    }
};

template <class F>
using CtxPtr = std::shared_ptr<const RingCtx<F>>;

// Homogeneous polynomial: sparse term map, all monomials of one total degree.
// The zero polynomial keeps its degree tag so graded maps stay total.
template <class F>
class HomPoly {
public:
    using Elem = typename F::Elem;
    using TermMap = std::map<Monomial, Elem, GrlexBefore>;

    HomPoly() = default;
    HomPoly(CtxPtr<F> ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {}

    static HomPoly zero(CtxPtr<F> ctx, int degree) { return HomPoly(std::move(ctx), degree); }

    static HomPoly monomial_poly(CtxPtr<F> ctx, const Monomial& m, Elem c) {
        HomPoly p(ctx, m.degree());
        if (!ctx->field.is_zero(c)) p.terms_[m] = std::move(c);
        return p;
    }

    static HomPoly variable(CtxPtr<F> ctx, int i) {
        Monomial m = Monomial::unit(ctx->nvars);
        m.e[i] = 1;
        return monomial_poly(ctx, m, ctx->field.one());
    }

    const CtxPtr<F>& ctx() const { return ctx_; }
    const F& field() const { return ctx_->field; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Elem coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ctx_->field.zero() : it->second;
    }

    void add_term(const Monomial& m, const Elem& c) {
        if (m.degree() != degree_) throw InputError("term degree does not match polynomial degree");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!ctx_->field.is_zero(c)) terms_[m] = c;
        } else {
            it->second = ctx_->field.add(it->second, c);
            if (ctx_->field.is_zero(it->second)) terms_.erase(it);
        }
    }

    HomPoly operator+(const HomPoly& o) const {
        require_same_ctx(o);
        if (degree_ != o.degree_ && !is_zero() && !o.is_zero())
            throw InputError("cannot add homogeneous polynomials of different degrees");
        HomPoly r = *this;
        if (r.is_zero()) r.degree_ = o.degree_;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    HomPoly operator-(const HomPoly& o) const { return *this + o.negate(); }

    HomPoly negate() const {
        HomPoly r = *this;
        for (auto& [m, c] : r.terms_) c = ctx_->field.neg(c);
        return r;
    }

    HomPoly scale(const Elem& s) const {
        HomPoly r(ctx_, degree_);
        if (ctx_->field.is_zero(s)) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = ctx_->field.mul(c, s);
        return r;
    }

    HomPoly operator*(const HomPoly& o) const {
        require_same_ctx(o);
        HomPoly r(ctx_, degree_ + o.degree_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ctx_->field.mul(ca, cb));
        return r;
    }

    HomPoly mul_monomial(const Monomial& m) const {
        HomPoly r(ctx_, degree_ + m.degree());
        for (const auto& [mm, c] : terms_) r.terms_[mm * m] = c;
        return r;
    }

    bool operator==(const HomPoly& o) const {
        if (!ctx_->same_as(*o.ctx_)) return false;
        if (is_zero() && o.is_zero()) return true;
        return degree_ == o.degree_ && terms_ == o.terms_;
    }

    Elem eval(const std::vector<Elem>& point) const {
        if (static_cast<int>(point.size()) != ctx_->nvars)
            throw InputError("point has wrong number of coordinates");
        const F& k = ctx_->field;
        Elem total = k.zero();
        for (const auto& [m, c] : terms_) {
            Elem v = c;
            for (int i = 0; i < ctx_->nvars; ++i)
                for (int j = 0; j < m.e[i]; ++j) v = k.mul(v, point[i]);
            total = k.add(total, v);
        }
        return total;
    }

private:
    void require_same_ctx(const HomPoly& o) const {
        if (!ctx_->same_as(*o.ctx_)) throw ContextMismatch("polynomials built over different rings");
    }

    CtxPtr<F> ctx_;
    int degree_ = 0;
    TermMap terms_;
};

// d/dx_i. Degree drops by one; degree-0 input stays the zero polynomial of
// degree tag 0.
template <class F>
HomPoly<F> partial(const HomPoly<F>& f, int i) {
    if (i < 0 || i >= f.ctx()->nvars) throw InputError("variable index out of range");
    int d = f.degree() == 0 ? 0 : f.degree() - 1;
    HomPoly<F> r(f.ctx(), d);
    const F& k = f.ctx()->field;
    for (const auto& [m, c] : f.terms()) {
        if (m.e[i] == 0) continue;
        Monomial mm = m;
        mm.e[i] -= 1;
        r.add_term(mm, k.mul(c, k.from_int(m.e[i])));
    }
    return r;
}

template <class F>
std::vector<HomPoly<F>> gradient(const HomPoly<F>& f) {
    std::vector<HomPoly<F>> g;
    g.reserve(f.ctx()->nvars);
    for (int i = 0; i < f.ctx()->nvars; ++i) g.push_back(partial(f, i));
    return g;
}

// Matrix of second partials evaluated at a point. Symmetric by construction.
template <class F>
std::vector<std::vector<typename F::Elem>> hessian(const HomPoly<F>& f,
                                                   const std::vector<typename F::Elem>& point) {
    const F& k = f.ctx()->field;
    int n = f.ctx()->nvars;
    if (static_cast<int>(point.size()) != n) throw InputError("point has wrong number of coordinates");
    bool all_zero = true;
    for (const auto& c : point)
        if (!k.is_zero(c)) all_zero = false;
    if (all_zero) throw ZeroPoint("hessian requires a nonzero point");
    std::vector<std::vector<typename F::Elem>> h(n, std::vector<typename F::Elem>(n, k.zero()));
    for (int i = 0; i < n; ++i) {
        HomPoly<F> fi = partial(f, i);
        for (int j = i; j < n; ++j) {
            auto v = partial(fi, j).eval(point);
            h[i][j] = v;
            h[j][i] = v;
        }
    }
    return h;
}

// Determinant of the 3x3 matrix of first partials. Requires nvars == 3.
template <class F>
HomPoly<F> jac3(const HomPoly<F>& a, const HomPoly<F>& b, const HomPoly<F>& c) {
    if (a.ctx()->nvars != 3) throw WrongArity("jac3 requires exactly 3 variables");
    std::vector<HomPoly<F>> ga = gradient(a), gb = gradient(b), gc = gradient(c);
    auto term = [&](int i, int j, int k2) { return ga[i] * (gb[j] * gc[k2]); };
    HomPoly<F> det = term(0, 1, 2) - term(0, 2, 1) - term(1, 0, 2) + term(1, 2, 0) + term(2, 0, 1) -
                     term(2, 1, 0);
    return det;
}

// f(M x): substitute x_i -> sum_j M[i][j] x_j. Used for coordinate-change
// invariance checks.
template <class F>
HomPoly<F> substitute_linear(const HomPoly<F>& f,
                             const std::vector<std::vector<typename F::Elem>>& m) {
    const auto& ctx = f.ctx();
    const F& k = ctx->field;
    int n = ctx->nvars;
    std::vector<HomPoly<F>> images;
    images.reserve(n);
    for (int i = 0; i < n; ++i) {
        HomPoly<F> li(ctx, 1);
        for (int j = 0; j < n; ++j) {
            Monomial mj = Monomial::unit(n);
            mj.e[j] = 1;
            li.add_term(mj, m[i][j]);
        }
        images.push_back(li);
    }
    HomPoly<F> out(ctx, f.degree());
    for (const auto& [mono, c] : f.terms()) {
        HomPoly<F> prod = HomPoly<F>::monomial_poly(ctx, Monomial::unit(n), c);
        for (int i = 0; i < n; ++i)
            for (int e = 0; e < mono.e[i]; ++e) prod = prod * images[i];
        out = out + prod;
    }
    return out;
}

using HomPolyQ = HomPoly<QField>;
using HomPolyP = HomPoly<PFField>;

}  // namespace milnor
