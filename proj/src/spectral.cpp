#include "milnor/spectral.hpp"

namespace milnor {

E1Table e1_table(const KoszulReport& report) {
    E1Table t;
    t.N = report.N;
    t.n = report.n;
    t.cutoff = (report.T + 2 + report.N - 1) / report.N;  // ceil((T+2)/N)
    for (int q = 0; q <= t.cutoff; ++q) {
        int j = (q + 1) * report.N;
        t.lineL.push_back(report.milnor.at(j - report.n - 1));
        t.lineLp.push_back(report.hn.at(j));
    }
    return t;
}

template <class F>
int d1_rank(const Hypersurface<F>& input, int t, const LinalgOptions& opts, CertInfo* cert) {
    if (t < 0) throw InputError("page parameter must be nonnegative");
    int n = input.n, N = input.N;
    int j = (t + 1) * N;           // total degree of the relation forms
    int m = j - n;                 // relation degree
    int target_deg = j - n - 1;    // Milnor grading of the target
    if (m < 0) return 0;

    auto syz = syzygy_space(input, m, opts);
    if (cert) cert->absorb(syz.cert);
    auto modulo = jacobian_matrix(input, target_deg);

    // the differential is well defined on the quotient: derivatives of the
    // trivial span must land inside the Jacobian span
    {
        PolyForm<F> df = differential(input.f);
        auto tuples = all_index_tuples(input.nvars(), n - 1);
        auto monos = monomial_basis(input.nvars(), j - N - (n - 1));
        std::vector<PolyForm<F>> dtrivial;
        for (const auto& tup : tuples) {
            for (const auto& mono : monos) {
                PolyForm<F> eta(input.f.ctx(), n - 1, j - N - (n - 1));
                eta.add_component(tup, HomPoly<F>::monomial_poly(input.f.ctx(), mono,
                                                                 input.f.ctx()->field.one()));
                PolyForm<F> dw = exterior_d(wedge(df, eta));
                if (!dw.is_zero()) dtrivial.push_back(std::move(dw));
            }
        }
        if (!dtrivial.empty()) {
            auto dmat = forms_matrix(input.f.ctx(), input.nvars(), j, dtrivial,
                                     "derivatives of trivial relations");
            auto rel = relative_rank(dmat, modulo, opts);
            if (cert) cert->absorb(rel.cert);
            if (rel.value != 0)
                throw WellDefinednessFailure("derivative of a trivial relation escapes the Jacobian span");
        }
    }

    if (syz.quotient_dim == 0) return 0;
    std::vector<PolyForm<F>> dforms;
    for (const auto& w : syz.representatives) dforms.push_back(exterior_d(w));
    auto dmat = forms_matrix(input.f.ctx(), input.nvars(), j, dforms, "d of relation representatives");
    auto rel = relative_rank(dmat, modulo, opts);
    if (cert) cert->absorb(rel.cert);
    return rel.value;
}

template <class F>
E2Table e2_table(const Hypersurface<F>& input, const KoszulReport& report, bool degenerate,
                 const LinalgOptions& opts) {
    E1Table e1 = e1_table(report);
    E2Table t;
    t.cutoff = e1.cutoff;
    t.degenerate = degenerate;
    for (int q = 0; q <= t.cutoff; ++q) {
        int r = d1_rank(input, q, opts, &t.cert);
        if (r > e1.lineLp[static_cast<std::size_t>(q)] || r > e1.lineL[static_cast<std::size_t>(q)])
            throw InconsistentEuler("differential rank exceeds a page dimension");
        t.d1rank.push_back(r);
        t.lineL2.push_back(e1.lineL[static_cast<std::size_t>(q)] - r);
        t.lineLp2.push_back(e1.lineLp[static_cast<std::size_t>(q)] - r);
    }
    if (degenerate) {
        int n = report.n;
        if (n - 1 <= t.cutoff &&
            t.d1rank[static_cast<std::size_t>(n - 1)] != e1.lineLp[static_cast<std::size_t>(n - 1)])
            throw DegeneracyViolation("differential is not injective at page parameter " +
                                      std::to_string(n - 1));
        for (int q = n; q <= t.cutoff; ++q)
            if (t.lineLp2[static_cast<std::size_t>(q)] != 0)
                throw DegeneracyViolation(
                    "nonzero limit relation space at page parameter " + std::to_string(q) +
                    "; a singularity is not weighted homogeneous or the input assertion is wrong");
    }
    return t;
}

template <class F>
CurveFiltrationReport curve_report(const Hypersurface<F>& input, const KoszulReport& report,
                                   const E2Table& e2, int r) {
    if (input.n != 2) throw WrongArity("curve report requires a plane curve");
    if (!e2.degenerate)
        throw NotDegenerate("curve filtration report requires a degenerate second page");
    CurveFiltrationReport rep;
    rep.g = (input.N - 1) * (input.N - 2) / 2;
    rep.r = r;
    rep.dimH1 = r - 1;
    rep.dimH2 = 2 * rep.g + r - 1 - report.tau;
    for (int q = 0; q <= e2.cutoff; ++q) {
        int level = 2 - q;
        rep.grP[level] = e2.lineL2[static_cast<std::size_t>(q)];
    }
    rep.dimP2 = e2.lineL2[0];
    rep.identity_lhs = report.milnor.at(2 * input.N - 3) + rep.dimP2;
    rep.identity_rhs = 2 * rep.g + r - 1;
    rep.corB1_check = rep.identity_lhs == rep.identity_rhs &&
                      rep.identity_rhs == rep.dimH2 + report.tau;
    rep.cert.absorb(report.cert);
    rep.cert.absorb(e2.cert);
    return rep;
}

template <class F>
SurfaceFiltrationReport surface_report(const Hypersurface<F>& input, const PointSet<F>& nodes,
                                       const KoszulReport& report, const LinalgOptions& opts) {
    if (input.n != 3) throw WrongArity("surface report requires a surface in projective 3-space");
    int N = input.N;
    auto statuses = verify_nodes(input.f, nodes);
    for (std::size_t i = 0; i < statuses.size(); ++i)
        if (statuses[i] != NodeStatus::Node)
            throw NodalHypothesisViolated("supplied point " + std::to_string(i) + " is " +
                                          to_string(statuses[i]));

    SurfaceFiltrationReport rep;
    rep.nnodes = nodes.size();
    rep.p_g = static_cast<int>(binomial(N - 1, 3));
    std::int64_t num = 1;
    for (int i = 0; i < 4; ++i) num *= (N - 1);
    num -= 1;
    if (num % N != 0) throw Error("middle Betti number formula is not integral");
    rep.b2 = static_cast<int>(num / N + 2);
    rep.h11 = rep.b2 - 2 * rep.p_g;
    auto d_n4 = defect(nodes, N - 4, opts);
    auto d_2n4 = defect(nodes, 2 * N - 4, opts);
    rep.cert.absorb(d_n4.cert);
    rep.cert.absorb(d_2n4.cert);
    rep.defect_n4 = d_n4.value;
    rep.defect_2n4 = d_2n4.value;
    rep.grP2 = rep.h11 - 1 - rep.defect_n4;
    rep.grF2 = rep.h11 - 1 - rep.nnodes;
    rep.p3 = rep.p_g;
    rep.equalPF = rep.nnodes == 0 || N < 4;

    // cross-checks forced by the nodal hypothesis
    if (report.tau != rep.nnodes)
        throw NodalHypothesisViolated("certified tail " + std::to_string(report.tau) +
                                      " does not equal the number of supplied nodes (" +
                                      std::to_string(rep.nnodes) +
                                      "); the node list is incomplete or the surface is not nodal");
    if (rep.defect_2n4 != 0)
        throw NodalHypothesisViolated("defect in degree 2N-4 is nonzero");
    if (report.hn.at(N) != rep.defect_2n4)
        throw NodalHypothesisViolated("relation space in degree N does not match the defect in degree 2N-4");
    if (report.hn.at(2 * N) != rep.defect_n4)
        throw NodalHypothesisViolated("relation space in degree 2N does not match the defect in degree N-4");
    CertInfo d1cert;
    int d1 = d1_rank(input, 1, opts, &d1cert);
    rep.cert.absorb(d1cert);
    if (d1 != report.hn.at(2 * N))
        throw NodalHypothesisViolated("page-one differential is not injective at parameter 1");
    if (report.milnor.at(2 * N - 4) != report.smooth.at(2 * N - 4) + rep.defect_2n4 ||
        report.smooth.at(2 * N - 4) != rep.h11 - 1)
        throw NodalHypothesisViolated("graded dimension in degree 2N-4 violates the closed formula");
    if ((rep.grP2 == rep.grF2) != (rep.defect_n4 == rep.nnodes))
        throw NodalHypothesisViolated("filtration comparison is inconsistent with the defect");
    rep.cert.absorb(report.cert);
    return rep;
}

HodgeReference hodge_reference(int n, int N) {
    if (N < 2) throw InputError("degree must be at least 2");
    HodgeReference h;
    if (n == 2) {
        h.g = (N - 1) * (N - 2) / 2;
        return h;
    }
    if (n == 3) {
        std::int64_t num = 1;
        for (int i = 0; i < 4; ++i) num *= (N - 1);
        num -= 1;
        if (num % N != 0) throw Error("middle Betti number formula is not integral");
        h.p_g = static_cast<int>(binomial(N - 1, 3));
        h.b2 = static_cast<int>(num / N + 2);
        h.h11 = *h.b2 - 2 * *h.p_g;
        return h;
    }
    throw UnsupportedDimension("closed-form Hodge data covers curves and surfaces only");
}

template int d1_rank<QField>(const Hypersurface<QField>&, int, const LinalgOptions&, CertInfo*);
template int d1_rank<PFField>(const Hypersurface<PFField>&, int, const LinalgOptions&, CertInfo*);
template E2Table e2_table<QField>(const Hypersurface<QField>&, const KoszulReport&, bool,
                                  const LinalgOptions&);
template E2Table e2_table<PFField>(const Hypersurface<PFField>&, const KoszulReport&, bool,
                                   const LinalgOptions&);
template CurveFiltrationReport curve_report<QField>(const Hypersurface<QField>&, const KoszulReport&,
                                                    const E2Table&, int);
template CurveFiltrationReport curve_report<PFField>(const Hypersurface<PFField>&, const KoszulReport&,
                                                     const E2Table&, int);
template SurfaceFiltrationReport surface_report<QField>(const Hypersurface<QField>&,
                                                        const PointSet<QField>&, const KoszulReport&,
                                                        const LinalgOptions&);
template SurfaceFiltrationReport surface_report<PFField>(const Hypersurface<PFField>&,
                                                         const PointSet<PFField>&, const KoszulReport&,
                                                         const LinalgOptions&);

}  // namespace milnor
