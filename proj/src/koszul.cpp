#include "milnor/koszul.hpp"

#include <algorithm>

namespace milnor {

template <class F>
Hypersurface<F> Hypersurface<F>::make(HomPoly<F> f, std::vector<HomPoly<F>> factors,
                                      std::vector<int> genera) {
    if (f.is_zero() || f.degree() < 2) throw InputError("hypersurface equation must have degree >= 2");
    Hypersurface<F> h;
    h.N = f.degree();
    h.n = f.ctx()->nvars - 1;
    h.f = std::move(f);
    const F& k = h.f.ctx()->field;
    if (!factors.empty()) {
        HomPoly<F> prod = factors[0];
        for (std::size_t i = 1; i < factors.size(); ++i) prod = prod * factors[i];
        if (prod.degree() != h.N || prod.is_zero())
            throw FactorProductMismatch("factor product degree does not match the equation");
        // product must equal the equation up to a nonzero constant
        auto lead_it = h.f.terms().begin();
        auto cf = lead_it->second;
        auto cp = prod.coeff(lead_it->first);
        if (k.is_zero(cp)) throw FactorProductMismatch("factor product differs from the equation");
        auto c = k.div(cp, cf);
        if (!(prod == h.f.scale(c)))
            throw FactorProductMismatch("factor product is not a constant multiple of the equation");
        // repetition-free: no factor may be proportional to another
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (std::size_t j = i + 1; j < factors.size(); ++j) {
                if (factors[i].degree() != factors[j].degree()) continue;
                auto li = factors[i].terms().begin();
                auto cj = factors[j].coeff(li->first);
                if (k.is_zero(cj)) continue;
                auto s = k.div(cj, li->second);
                if (factors[j] == factors[i].scale(s))
                    throw FactorProductMismatch("factor list contains a repeated component");
            }
        h.factors = std::move(factors);
    }
    if (!genera.empty()) {
        if (!h.factors.empty() && genera.size() != h.factors.size())
            throw InputError("genera list length must match the factor list");
        h.genera = std::move(genera);
    }
    return h;
}

DimTable smooth_series(int n, int N, int bound) {
    if (N < 2) throw InputError("degree must be at least 2");
    DimTable t;
    t.bound = bound;
    t.dims.assign(static_cast<std::size_t>(bound) + 1, 0);
    for (int k = 0; k <= bound; ++k) {
        std::int64_t v = 0;
        for (int i = 0; i <= n + 1; ++i) {
            int d = k - i * (N - 1);
            if (d < 0) break;
            std::int64_t term = binomial(n + 1, i) * binomial(d + n, n);
            v += (i % 2 == 0) ? term : -term;
        }
        t.dims[static_cast<std::size_t>(k)] = static_cast<int>(v);
    }
    t.tail = 0;
    t.tail_from = (n + 1) * (N - 2) + 1;
    return t;
}

template <class F>
SparseMat<F> jacobian_matrix(const Hypersurface<F>& input, int k) {
    const auto& ctx = input.f.ctx();
    int nvars = input.nvars();
    int dcol = k - input.N + 1;
    SparseMat<F> m(static_cast<int>(monomial_count(nvars, k)),
                   dcol < 0 ? 0 : static_cast<int>((input.n + 1) * monomial_count(nvars, dcol)),
                   ctx->field, "jacobian multiplication, target degree " + std::to_string(k));
    if (dcol < 0) return m;
    auto monos = monomial_basis(nvars, dcol);
    std::int64_t block = static_cast<std::int64_t>(monos.size());
    for (int i = 0; i < nvars; ++i) {
        HomPoly<F> fi = partial(input.f, i);
        for (std::int64_t a = 0; a < block; ++a) {
            int col = static_cast<int>(i * block + a);
            for (const auto& [mono, c] : fi.terms())
                m.add(static_cast<int>(monomial_rank(mono * monos[static_cast<std::size_t>(a)])), col, c);
        }
    }
    return m;
}

template <class F>
SparseMat<F> koszul_matrix(const Hypersurface<F>& input, int p, int j) {
    const auto& ctx = input.f.ctx();
    int nvars = input.nvars();
    int rows = static_cast<int>(form_space_dim(nvars, p + 1, j + input.N));
    int cols = static_cast<int>(form_space_dim(nvars, p, j));
    SparseMat<F> m(rows, cols, ctx->field,
                   "koszul differential p=" + std::to_string(p) + ", degree " + std::to_string(j));
    if (rows == 0 || cols == 0) return m;
    auto tuples = all_index_tuples(nvars, p);
    auto monos = monomial_basis(nvars, j - p);
    std::int64_t col_block = static_cast<std::int64_t>(monos.size());
    std::int64_t row_block = monomial_count(nvars, j + input.N - p - 1);
    std::vector<HomPoly<F>> partials = gradient(input.f);
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
        const IndexTuple& t = tuples[ti];
        for (int i = 0; i < nvars; ++i) {
            if (std::find(t.begin(), t.end(), i) != t.end()) continue;
            IndexTuple bigger;
            bigger.push_back(i);
            bigger.insert(bigger.end(), t.begin(), t.end());
            int sign = sort_tuple_sign(bigger);
            std::int64_t row_base = tuple_rank(bigger, nvars) * row_block;
            const HomPoly<F>& fi = partials[static_cast<std::size_t>(i)];
            for (std::int64_t a = 0; a < col_block; ++a) {
                int col = static_cast<int>(static_cast<std::int64_t>(ti) * col_block + a);
                for (const auto& [mono, c] : fi.terms()) {
                    auto v = sign == 1 ? c : ctx->field.neg(c);
                    m.add(static_cast<int>(row_base + monomial_rank(mono * monos[static_cast<std::size_t>(a)])),
                          col, v);
                }
            }
        }
    }
    return m;
}

template <class F>
SparseMat<F> forms_matrix(const CtxPtr<F>& ctx, int formdeg, int total_degree,
                          const std::vector<PolyForm<F>>& forms, std::string label) {
    int rows = static_cast<int>(form_space_dim(ctx->nvars, formdeg, total_degree));
    SparseMat<F> m(rows, static_cast<int>(forms.size()), ctx->field, std::move(label));
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (forms[i].is_zero()) continue;
        if (forms[i].formdeg() != formdeg || forms[i].total_degree() != total_degree)
            throw InputError("forms_matrix: inconsistent form shape");
        auto coords = form_coordinates(forms[i]);
        for (std::size_t r = 0; r < coords.size(); ++r)
            if (!ctx->field.is_zero(coords[r])) m.add(static_cast<int>(r), static_cast<int>(i), coords[r]);
    }
    return m;
}

template <class F>
DimTable milnor_dims(const Hypersurface<F>& input, int bound, const LinalgOptions& opts,
                     CertInfo* cert) {
    int T = input.top_degree();
    if (bound < T + 2)
        throw InputError("dimension bound must be at least " + std::to_string(T + 2));
    int nvars = input.nvars();
    DimTable t;
    t.bound = bound;
    t.dims.assign(static_cast<std::size_t>(bound) + 1, 0);
    CertInfo local;
    for (int k = 0; k <= bound; ++k) {
        int amb = static_cast<int>(monomial_count(nvars, k));
        if (k < input.N - 1) {
            t.dims[static_cast<std::size_t>(k)] = amb;
            continue;
        }
        auto span = jacobian_matrix(input, k);
        auto q = quotient_dim(amb, span, opts);
        local.absorb(q.cert);
        t.dims[static_cast<std::size_t>(k)] = q.value;
    }
    for (int k = T + 1; k <= bound; ++k) {
        if (t.dims[static_cast<std::size_t>(k)] != t.dims[static_cast<std::size_t>(T + 1)])
            throw NotStabilized(
                "graded dimensions do not stabilize inside the guaranteed window; "
                "the hypersurface most likely has non-isolated singularities");
    }
    t.tail = t.dims[static_cast<std::size_t>(bound)];
    int from = bound;
    while (from > 0 && t.dims[static_cast<std::size_t>(from - 1)] == t.tail) --from;
    t.tail_from = from;
    if (cert) cert->absorb(local);
    return t;
}

template <class F>
int koszul_hn_dim_direct(const Hypersurface<F>& input, int j, const LinalgOptions& opts,
                         CertInfo* cert) {
    int n = input.n;
    auto a = koszul_matrix(input, n, j);
    auto b = koszul_matrix(input, n - 1, j - input.N);
    auto ca = rank(a, opts);
    auto cb = rank(b, opts);
    if (cert) {
        cert->absorb(ca);
        cert->absorb(cb);
    }
    int dim_domain = static_cast<int>(form_space_dim(input.nvars(), n, j));
    return (dim_domain - ca.rank) - cb.rank;
}

template <class F>
KoszulReport analyze(const Hypersurface<F>& input, const LinalgOptions& opts, int bound) {
    KoszulReport rep;
    rep.N = input.N;
    rep.n = input.n;
    rep.T = input.top_degree();
    if (bound < rep.T + 2) bound = rep.T + 2;
    rep.milnor = milnor_dims(input, bound, opts, &rep.cert);
    rep.smooth = smooth_series(rep.n, rep.N, bound);
    rep.tau = rep.milnor.tail;
    rep.st = rep.milnor.tail_from;

    // hn table from the dimension identity between the two top cohomologies
    int shift = rep.N - rep.n - 1;
    int hn_bound = bound - shift;
    rep.hn.bound = hn_bound;
    rep.hn.dims.assign(static_cast<std::size_t>(hn_bound) + 1, 0);
    for (int j = 0; j <= hn_bound; ++j) {
        int v = rep.milnor.at(j + shift) - rep.smooth.at(j + shift);
        if (v < 0)
            throw InconsistentEuler("negative cohomology dimension at degree " + std::to_string(j) +
                                    "; rank computation is inconsistent");
        rep.hn.dims[static_cast<std::size_t>(j)] = v;
    }
    rep.hn.tail = rep.tau;
    rep.hn.tail_from = rep.n * (rep.N - 1);

    if (rep.tau == 0) {
        for (int k = 0; k <= bound; ++k)
            if (rep.milnor.at(k) != rep.smooth.at(k))
                throw InconsistentEuler("zero tail with a non-smooth dimension table");
        rep.smooth_input = true;
    } else {
        int first_diff = -1;
        for (int k = 0; k <= bound; ++k) {
            if (rep.milnor.at(k) != rep.smooth.at(k)) {
                first_diff = k;
                break;
            }
        }
        rep.ct = first_diff - 1;
    }

    // cross-check the table route against the direct Koszul computation
    int check_to = 2 * rep.N;
    for (int j = 0; j <= check_to; ++j) {
        int direct = koszul_hn_dim_direct(input, j, opts, &rep.cert);
        if (direct != rep.hn.at(j))
            throw InconsistentEuler("direct Koszul dimension " + std::to_string(direct) +
                                    " != table value " + std::to_string(rep.hn.at(j)) +
                                    " in degree " + std::to_string(j));
    }

    if (!rep.smooth_input) {
        int expected_mdr = *rep.ct - rep.N + 2;
        int found = -1;
        for (int m = 0; m <= expected_mdr; ++m) {
            int j = m + rep.n;
            int q = j <= check_to ? rep.hn.at(j) : koszul_hn_dim_direct(input, j, opts, &rep.cert);
            if (q != 0) {
                found = m;
                break;
            }
        }
        if (found != expected_mdr)
            throw InconsistentEuler("minimal relation degree by kernel search (" + std::to_string(found) +
                                    ") does not match the threshold law value (" +
                                    std::to_string(expected_mdr) + ")");
        rep.mdr = found;
    }
    return rep;
}

namespace {

template <class F>
SparseMat<F> selector_rows(const F& field, int dim, const std::vector<int>& positions) {
    SparseMat<F> m(static_cast<int>(positions.size()), dim, field, "coordinate selectors");
    for (std::size_t i = 0; i < positions.size(); ++i)
        m.add(static_cast<int>(i), positions[i], field.one());
    return m;
}

template <class F>
std::vector<PolyForm<F>> kernel_forms(const Hypersurface<F>& input, int formdeg, int coeffdeg,
                                      const SparseMat<F>& stacked) {
    auto kvecs = kernel_basis(stacked);
    std::vector<PolyForm<F>> forms;
    forms.reserve(kvecs.size());
    for (const auto& v : kvecs)
        forms.push_back(form_from_coordinates(input.f.ctx(), formdeg, coeffdeg, v));
    return forms;
}

}  // namespace

template <class F>
SyzygyBasis<F> syzygy_space(const Hypersurface<F>& input, int m, const LinalgOptions& opts) {
    if (m < 0) throw InputError("relation degree must be nonnegative");
    SyzygyBasis<F> out;
    out.m = m;
    int n = input.n;
    int j = m + n;
    auto a = koszul_matrix(input, n, j);
    auto b = koszul_matrix(input, n - 1, j - input.N);
    auto ca = rank(a, opts);
    auto cb = rank(b, opts);
    out.cert.absorb(ca);
    out.cert.absorb(cb);
    int dim_domain = static_cast<int>(form_space_dim(input.nvars(), n, j));
    int q = (dim_domain - ca.rank) - cb.rank;
    out.quotient_dim = q;
    if (q == 0) return out;

    // kernel vectors restricted to a coordinate complement of the trivial
    // span give exactly one representative per quotient dimension
    auto build = [&](const LinalgOptions& o) {
        auto pivots = colspace_pivot_rows(b, o);
        auto stacked = SparseMat<F>::vstack(a, selector_rows(input.f.ctx()->field, dim_domain, pivots));
        stacked.provenance = "relation space, degree " + std::to_string(m);
        return kernel_forms(input, n, j - n, stacked);
    };
    auto forms = build(opts);
    if (static_cast<int>(forms.size()) != q && opts.mode != RankMode::ExactOnly) {
        LinalgOptions exact = opts;
        exact.mode = RankMode::ExactOnly;
        auto ea = rank(a, exact);
        auto eb = rank(b, exact);
        out.cert.absorb(ea);
        out.cert.absorb(eb);
        q = (dim_domain - ea.rank) - eb.rank;
        out.quotient_dim = q;
        forms = build(exact);
    }
    if (static_cast<int>(forms.size()) != q)
        throw InconsistentEuler("relation representative count " + std::to_string(forms.size()) +
                                " does not match quotient dimension " + std::to_string(q));

    PolyForm<F> df = differential(input.f);
    for (const auto& w : forms) {
        if (!wedge(df, w).is_zero())
            throw WedgeNotZero("relation representative is not annihilated by df");
    }
    auto rep_mat = forms_matrix(input.f.ctx(), n, j, forms, "relation representatives");
    auto rel = relative_rank(rep_mat, b, opts);
    out.cert.absorb(rel.cert);
    if (rel.value != q)
        throw InconsistentEuler("relation representatives are not independent modulo trivial relations");
    out.representatives = std::move(forms);
    return out;
}

template <class F>
SyzygyBasis<F> thm5_basis(const Hypersurface<F>& input, const LinalgOptions& opts) {
    if (input.n != 2) throw WrongArity("explicit relation basis is defined for plane curves only");
    if (input.factors.size() < 2)
        throw InputError("explicit relation basis needs at least two components");
    const auto& ctx = input.f.ctx();
    const F& k = ctx->field;
    int r = static_cast<int>(input.factors.size());
    int N = input.N;

    PolyForm<F> sigma = euler_contract(volume_form(ctx));
    PolyForm<F> df = differential(input.f);

    SyzygyBasis<F> out;
    out.m = N - 2;
    std::vector<PolyForm<F>> gammas;
    for (int jj = 0; jj < r - 1; ++jj) {
        // product of all components except jj and the last one
        HomPoly<F> rest = HomPoly<F>::monomial_poly(ctx, Monomial::unit(ctx->nvars), k.one());
        for (int l = 0; l < r; ++l)
            if (l != jj && l != r - 1) rest = rest * input.factors[static_cast<std::size_t>(l)];
        PolyForm<F> beta =
            wedge(differential(input.factors[static_cast<std::size_t>(jj)]),
                  differential(input.factors[static_cast<std::size_t>(r - 1)]))
                .scale_poly(rest)
                .negate();
        PolyForm<F> gamma = beta;
        if (r > 2) {
            HomPoly<F> h(ctx, N - 3);
            for (int l = 0; l < r; ++l) {
                if (l == jj || l == r - 1) continue;
                HomPoly<F> prod = HomPoly<F>::monomial_poly(ctx, Monomial::unit(ctx->nvars), k.one());
                for (int s = 0; s < r; ++s)
                    if (s != l && s != jj && s != r - 1) prod = prod * input.factors[static_cast<std::size_t>(s)];
                h = h + prod * jac3(input.factors[static_cast<std::size_t>(l)],
                                    input.factors[static_cast<std::size_t>(jj)],
                                    input.factors[static_cast<std::size_t>(r - 1)]);
            }
            h = h.scale(k.inv(k.from_int(N)));
            gamma = beta + sigma.scale_poly(h);
        }
        if (!wedge(df, gamma).is_zero())
            throw WedgeNotZero("constructed relation form is not annihilated by df; "
                               "the factor list does not match the equation");
        gammas.push_back(std::move(gamma));
    }

    // independence modulo the trivial span (which is empty in this degree,
    // but keep the generic check)
    auto b = koszul_matrix(input, 1, N - input.N);
    auto rep_mat = forms_matrix(ctx, 2, N, gammas, "component relation forms");
    auto rel = relative_rank(rep_mat, b, opts);
    out.cert.absorb(rel.cert);
    if (rel.value != r - 1)
        throw InconsistentEuler("component relation forms are not linearly independent");

    auto a = koszul_matrix(input, 2, N);
    auto ca = rank(a, opts);
    auto cb = rank(b, opts);
    out.cert.absorb(ca);
    out.cert.absorb(cb);
    out.quotient_dim = static_cast<int>(form_space_dim(3, 2, N)) - ca.rank - cb.rank;
    out.representatives = std::move(gammas);
    return out;
}

// explicit instantiations for the two coefficient fields
template struct Hypersurface<QField>;
template struct Hypersurface<PFField>;
template SparseMat<QField> jacobian_matrix<QField>(const Hypersurface<QField>&, int);
template SparseMat<PFField> jacobian_matrix<PFField>(const Hypersurface<PFField>&, int);
template SparseMat<QField> koszul_matrix<QField>(const Hypersurface<QField>&, int, int);
template SparseMat<PFField> koszul_matrix<PFField>(const Hypersurface<PFField>&, int, int);
template SparseMat<QField> forms_matrix<QField>(const CtxPtr<QField>&, int, int,
                                                const std::vector<PolyForm<QField>>&, std::string);
template SparseMat<PFField> forms_matrix<PFField>(const CtxPtr<PFField>&, int, int,
                                                  const std::vector<PolyForm<PFField>>&, std::string);
template DimTable milnor_dims<QField>(const Hypersurface<QField>&, int, const LinalgOptions&, CertInfo*);
template DimTable milnor_dims<PFField>(const Hypersurface<PFField>&, int, const LinalgOptions&, CertInfo*);
template int koszul_hn_dim_direct<QField>(const Hypersurface<QField>&, int, const LinalgOptions&, CertInfo*);
template int koszul_hn_dim_direct<PFField>(const Hypersurface<PFField>&, int, const LinalgOptions&, CertInfo*);
template KoszulReport analyze<QField>(const Hypersurface<QField>&, const LinalgOptions&, int);
template KoszulReport analyze<PFField>(const Hypersurface<PFField>&, const LinalgOptions&, int);
template SyzygyBasis<QField> syzygy_space<QField>(const Hypersurface<QField>&, int, const LinalgOptions&);
template SyzygyBasis<PFField> syzygy_space<PFField>(const Hypersurface<PFField>&, int, const LinalgOptions&);
template SyzygyBasis<QField> thm5_basis<QField>(const Hypersurface<QField>&, const LinalgOptions&);
template SyzygyBasis<PFField> thm5_basis<PFField>(const Hypersurface<PFField>&, const LinalgOptions&);

}  // namespace milnor
