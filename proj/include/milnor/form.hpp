#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "milnor/polynomial.hpp"

namespace milnor {

using IndexTuple = std::vector<int>;

// Strictly increasing index tuples of length p over {0..nvars-1}, lex order.
inline std::vector<IndexTuple> all_index_tuples(int nvars, int p) {
    std::vector<IndexTuple> out;
    if (p < 0 || p > nvars) return out;
    IndexTuple cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == p) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < nvars; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Position of a strictly increasing tuple within all_index_tuples(nvars, p).
inline std::int64_t tuple_rank(const IndexTuple& t, int nvars) {
    std::int64_t rank = 0;
    int p = static_cast<int>(t.size());
    int prev = -1;
    for (int j = 0; j < p; ++j) {
        for (int v = prev + 1; v < t[j]; ++v) rank += binomial(nvars - 1 - v, p - 1 - j);
        prev = t[j];
    }
    return rank;
}

// Sorts idx ascending in-place; returns the permutation sign, or 0 on a
// repeated index.
inline int sort_tuple_sign(IndexTuple& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return sign;
}

// Differential p-form with homogeneous polynomial coefficients of one degree.
// Components are stored on strictly increasing index tuples; all wedge signs
// are resolved on insertion. Total degree = coefficient degree + form degree.
template <class F>
class PolyForm {
public:
    using Elem = typename F::Elem;
    using CompMap = std::map<IndexTuple, HomPoly<F>>;

    PolyForm() = default;
    PolyForm(CtxPtr<F> ctx, int formdeg, int coeffdeg)
        : ctx_(std::move(ctx)), formdeg_(formdeg), coeffdeg_(coeffdeg) {
        if (formdeg_ < 0 || formdeg_ > ctx_->nvars) throw InputError("form degree out of range");
        if (coeffdeg_ < 0) throw InputError("coefficient degree must be nonnegative");
    }

    static PolyForm zero(CtxPtr<F> ctx, int formdeg, int coeffdeg) {
        return PolyForm(std::move(ctx), formdeg, coeffdeg);
    }

    const CtxPtr<F>& ctx() const { return ctx_; }
    int formdeg() const { return formdeg_; }
    int coeffdeg() const { return coeffdeg_; }
    int total_degree() const { return formdeg_ + coeffdeg_; }
    bool is_zero() const { return comps_.empty(); }
    const CompMap& components() const { return comps_; }

    HomPoly<F> component(const IndexTuple& t) const {
        auto it = comps_.find(t);
        return it == comps_.end() ? HomPoly<F>::zero(ctx_, coeffdeg_) : it->second;
    }

    // Adds h dx_{idx}; idx may be unsorted, signs are absorbed here.
    void add_component(IndexTuple idx, const HomPoly<F>& h) {
        if (static_cast<int>(idx.size()) != formdeg_) throw InputError("tuple length does not match form degree");
        if (h.is_zero()) return;
        if (h.degree() != coeffdeg_) throw InputError("component degree does not match form coefficient degree");
        int sign = sort_tuple_sign(idx);
        if (sign == 0) return;
        HomPoly<F> add = sign == 1 ? h : h.negate();
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            comps_.emplace(std::move(idx), std::move(add));
        } else {
            it->second = it->second + add;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    PolyForm operator+(const PolyForm& o) const {
        require_compatible(o, true);
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        PolyForm r = *this;
        for (const auto& [t, h] : o.comps_) r.add_component(t, h);
        return r;
    }

    PolyForm negate() const {
        PolyForm r = *this;
        for (auto& [t, h] : r.comps_) h = h.negate();
        return r;
    }

    PolyForm operator-(const PolyForm& o) const { return *this + o.negate(); }

    PolyForm scale(const Elem& s) const {
        PolyForm r(ctx_, formdeg_, coeffdeg_);
        for (const auto& [t, h] : comps_) {
            HomPoly<F> hs = h.scale(s);
            if (!hs.is_zero()) r.comps_.emplace(t, std::move(hs));
        }
        return r;
    }

    PolyForm scale_poly(const HomPoly<F>& g) const {
        PolyForm r(ctx_, formdeg_, coeffdeg_ + g.degree());
        for (const auto& [t, h] : comps_) {
            HomPoly<F> hg = h * g;
            if (!hg.is_zero()) r.comps_.emplace(t, std::move(hg));
        }
        return r;
    }

    bool operator==(const PolyForm& o) const {
        if (!ctx_->same_as(*o.ctx_)) return false;
        if (is_zero() && o.is_zero()) return true;  // degree tags are bookkeeping only
        return formdeg_ == o.formdeg_ && coeffdeg_ == o.coeffdeg_ && comps_ == o.comps_;
    }

    void require_compatible(const PolyForm& o, bool same_degrees) const {
        if (!ctx_->same_as(*o.ctx_)) throw ContextMismatch("forms built over different rings");
        if (same_degrees && (formdeg_ != o.formdeg_ || (coeffdeg_ != o.coeffdeg_ && !is_zero() && !o.is_zero())))
            throw InputError("form degrees do not match");
    }

private:
    CtxPtr<F> ctx_;
    int formdeg_ = 0;
    int coeffdeg_ = 0;
    CompMap comps_;
};

// Wedge product. Graded anticommutative; the zero form of excess degree is
// returned when the combined form degree exceeds the number of variables.
template <class F>
PolyForm<F> wedge(const PolyForm<F>& a, const PolyForm<F>& b) {
    a.require_compatible(b, false);
    int nvars = a.ctx()->nvars;
    int p = a.formdeg() + b.formdeg();
    int cd = a.coeffdeg() + b.coeffdeg();
    if (p > nvars) return PolyForm<F>::zero(a.ctx(), nvars, 0);
    PolyForm<F> r(a.ctx(), p, cd);
    for (const auto& [ta, ha] : a.components())
        for (const auto& [tb, hb] : b.components()) {
            IndexTuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            r.add_component(std::move(t), ha * hb);
        }
    return r;
}

// Exterior derivative: form degree +1, coefficient degree -1, total degree
// preserved. Constant coefficients map to zero.
template <class F>
PolyForm<F> exterior_d(const PolyForm<F>& a) {
    int nvars = a.ctx()->nvars;
    int p = a.formdeg() + 1;
    int cd = a.coeffdeg() > 0 ? a.coeffdeg() - 1 : 0;
    if (p > nvars || a.coeffdeg() == 0) return PolyForm<F>::zero(a.ctx(), std::min(p, nvars), cd);
    PolyForm<F> r(a.ctx(), p, cd);
    for (const auto& [t, h] : a.components())
        for (int i = 0; i < nvars; ++i) {
            HomPoly<F> hi = partial(h, i);
            if (hi.is_zero()) continue;
            IndexTuple ti;
            ti.push_back(i);
            ti.insert(ti.end(), t.begin(), t.end());
            r.add_component(std::move(ti), hi);
        }
    return r;
}

// Contraction with the Euler field sum_i x_i d/dx_i: form degree -1,
// coefficient degree +1.
template <class F>
PolyForm<F> euler_contract(const PolyForm<F>& a) {
    if (a.formdeg() < 1) throw InputError("contraction requires form degree >= 1");
    PolyForm<F> r(a.ctx(), a.formdeg() - 1, a.coeffdeg() + 1);
    for (const auto& [t, h] : a.components())
        for (std::size_t q = 0; q < t.size(); ++q) {
            HomPoly<F> hx = h * HomPoly<F>::variable(a.ctx(), t[q]);
            IndexTuple rest;
            for (std::size_t j = 0; j < t.size(); ++j)
                if (j != q) rest.push_back(t[j]);
            if (q % 2 == 1) hx = hx.negate();
            r.add_component(std::move(rest), hx);
        }
    return r;
}

// df as a 1-form.
template <class F>
PolyForm<F> differential(const HomPoly<F>& f) {
    int d = f.degree() == 0 ? 0 : f.degree() - 1;
    PolyForm<F> r(f.ctx(), 1, d);
    for (int i = 0; i < f.ctx()->nvars; ++i) r.add_component({i}, partial(f, i));
    return r;
}

// dx_0 ^ ... ^ dx_{n}.
template <class F>
PolyForm<F> volume_form(const CtxPtr<F>& ctx) {
    PolyForm<F> r(ctx, ctx->nvars, 0);
    IndexTuple all;
    for (int i = 0; i < ctx->nvars; ++i) all.push_back(i);
    r.add_component(all, HomPoly<F>::monomial_poly(ctx, Monomial::unit(ctx->nvars), ctx->field.one()));
    return r;
}

// Dimension of the space of p-forms of the given total degree.
inline std::int64_t form_space_dim(int nvars, int p, int total_degree) {
    if (p < 0 || p > nvars) return 0;
    return binomial(nvars, p) * monomial_count(nvars, total_degree - p);
}

// Coordinates of a form in the canonical basis (tuples in lex order, degree
// basis within each tuple block).
template <class F>
std::vector<typename F::Elem> form_coordinates(const PolyForm<F>& a) {
    int nvars = a.ctx()->nvars;
    std::int64_t block = monomial_count(nvars, a.coeffdeg());
    std::vector<typename F::Elem> out(static_cast<std::size_t>(form_space_dim(nvars, a.formdeg(), a.total_degree())),
                                      a.ctx()->field.zero());
    for (const auto& [t, h] : a.components()) {
        std::int64_t base = tuple_rank(t, nvars) * block;
        for (const auto& [m, c] : h.terms()) out[static_cast<std::size_t>(base + monomial_rank(m))] = c;
    }
    return out;
}

// Inverse of form_coordinates for a fixed (formdeg, coeffdeg) shape.
template <class F>
PolyForm<F> form_from_coordinates(const CtxPtr<F>& ctx, int formdeg, int coeffdeg,
                                  const std::vector<typename F::Elem>& coords) {
    PolyForm<F> r(ctx, formdeg, coeffdeg);
    auto tuples = all_index_tuples(ctx->nvars, formdeg);
    auto monos = monomial_basis(ctx->nvars, coeffdeg);
    std::size_t at = 0;
    for (const auto& t : tuples) {
        HomPoly<F> h(ctx, coeffdeg);
        for (const auto& m : monos) {
            if (!ctx->field.is_zero(coords[at])) h.add_term(m, coords[at]);
            ++at;
        }
        if (!h.is_zero()) r.add_component(t, h);
    }
    return r;
}

}  // namespace milnor
