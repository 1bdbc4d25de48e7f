#include "milnor/points.hpp"

#include <sstream>

namespace milnor {

template <class F>
PointSet<F> PointSet<F>::make(CtxPtr<F> ctx, std::vector<std::vector<Elem>> raw,
                              std::vector<std::string> labels) {
    const F& k = ctx->field;
    PointSet<F> ps;
    ps.ctx = ctx;
    for (auto& p : raw) {
        if (static_cast<int>(p.size()) != ctx->nvars)
            throw InputError("point has wrong number of coordinates");
        int last = -1;
        for (int i = 0; i < ctx->nvars; ++i)
            if (!k.is_zero(p[static_cast<std::size_t>(i)])) last = i;
        if (last < 0) throw ZeroPoint("projective point cannot be the zero vector");
        auto inv = k.inv(p[static_cast<std::size_t>(last)]);
        for (auto& c : p) c = k.mul(c, inv);
        for (const auto& q : ps.points) {
            bool equal = true;
            for (int i = 0; i < ctx->nvars; ++i)
                if (!k.eq(q[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)])) equal = false;
            if (equal) throw InputError("point set contains projectively equal points");
        }
        ps.points.push_back(std::move(p));
    }
    if (!labels.empty() && labels.size() != ps.points.size())
        throw InputError("label list length must match the point list");
    ps.labels = std::move(labels);
    return ps;
}

std::string to_string(NodeStatus s) {
    switch (s) {
        case NodeStatus::Node: return "Node";
        case NodeStatus::NotOnHypersurface: return "NotOnHypersurface";
        case NodeStatus::NotSingular: return "NotSingular";
        case NodeStatus::DegenerateSingularity: return "DegenerateSingularity";
    }
    return "?";
}

template <class F>
std::vector<NodeStatus> verify_nodes(const HomPoly<F>& f, const PointSet<F>& pts) {
    if (f.degree() < 2) throw InputError("node verification needs degree >= 2");
    const F& k = f.ctx()->field;
    int n = f.ctx()->nvars - 1;
    std::vector<NodeStatus> out;
    auto grad = gradient(f);
    for (const auto& p : pts.points) {
        if (!k.is_zero(f.eval(p))) {
            out.push_back(NodeStatus::NotOnHypersurface);
            continue;
        }
        bool singular = true;
        for (const auto& g : grad)
            if (!k.is_zero(g.eval(p))) singular = false;
        if (!singular) {
            out.push_back(NodeStatus::NotSingular);
            continue;
        }
        auto h = hessian(f, p);
        SparseMat<F> hm(n + 1, n + 1, k, "hessian");
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (!k.is_zero(h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))
                    hm.add(i, j, h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        LinalgOptions exact;
        exact.mode = RankMode::ExactOnly;
        out.push_back(rank(hm, exact).rank == n ? NodeStatus::Node : NodeStatus::DegenerateSingularity);
    }
    return out;
}

template <class F>
SparseMat<F> evaluation_matrix(const PointSet<F>& pts, int k) {
    const F& field = pts.ctx->field;
    auto monos = monomial_basis(pts.ctx->nvars, k);
    SparseMat<F> m(pts.size(), static_cast<int>(monos.size()), field,
                   "point evaluation, degree " + std::to_string(k));
    for (int r = 0; r < pts.size(); ++r) {
        const auto& p = pts.points[static_cast<std::size_t>(r)];
        for (std::size_t c = 0; c < monos.size(); ++c) {
            auto v = field.one();
            for (int i = 0; i < pts.ctx->nvars; ++i)
                for (int e = 0; e < monos[c].e[static_cast<std::size_t>(i)]; ++e)
                    v = field.mul(v, p[static_cast<std::size_t>(i)]);
            m.add(r, static_cast<int>(c), v);
        }
    }
    return m;
}

template <class F>
CertValue defect(const PointSet<F>& pts, int k, const LinalgOptions& opts) {
    CertValue out;
    if (k < 0) {
        out.value = pts.size();  // no forms, no conditions
        return out;
    }
    auto m = evaluation_matrix(pts, k);
    auto c = rank(m, opts);
    out.cert.absorb(c);
    out.value = pts.size() - c.rank;
    return out;
}

template <class F>
DefectTable defect_table(const PointSet<F>& pts, int bound, const LinalgOptions& opts) {
    DefectTable t;
    t.size = pts.size();
    for (int k = 0; k <= bound; ++k) {
        auto d = defect(pts, k, opts);
        t.cert.absorb(d.cert);
        t.defects.push_back(d.value);
    }
    return t;
}

template <class F>
CbReport cb_check(const Hypersurface<F>& input, const PointSet<F>& nodes,
                  const KoszulReport& report, const LinalgOptions& opts) {
    CbReport rep;
    rep.statuses = verify_nodes(input.f, nodes);
    rep.nodes_ok = true;
    for (auto s : rep.statuses)
        if (s != NodeStatus::Node) rep.nodes_ok = false;

    int n = input.n, N = input.N;
    int s_max = n * N - 2 * n - 1;
    for (int k = 0; k <= s_max; ++k) {
        CbLine line;
        line.k = k;
        line.j = n * N - n - 1 - k;
        line.hn_dim = report.hn.at(line.j);
        auto d = defect(nodes, k, opts);
        rep.cert.absorb(d.cert);
        line.defect = d.value;
        line.pass = line.hn_dim == line.defect;
        rep.lines.push_back(line);
    }
    int j0 = n * (N - 1);
    rep.tail_ok = report.hn.at(j0) == nodes.size() && report.hn.at(j0 + 1) == nodes.size() &&
                  report.hn.tail == nodes.size();
    rep.top_ok = report.milnor.at(input.top_degree()) == nodes.size();
    rep.tau_ok = report.tau == nodes.size();
    rep.pass = rep.nodes_ok && rep.tail_ok && rep.top_ok && rep.tau_ok;
    for (const auto& l : rep.lines) rep.pass = rep.pass && l.pass;
    rep.cert.absorb(report.cert);
    return rep;
}

template <class F>
CorC1Report corC1_check(const Hypersurface<F>& input, const PointSet<F>& nodes, int r,
                        const LinalgOptions& opts) {
    if (input.n != 2) throw WrongArity("this check applies to plane curves");
    CorC1Report rep;
    rep.r = r;
    int N = input.N;
    auto d3 = defect(nodes, N - 3, opts);
    rep.cert.absorb(d3.cert);
    rep.defect_at_n3 = d3.value;
    rep.at_n3_ok = d3.value == r - 1;
    // defects are non-increasing, so vanishing at N-2 settles every higher degree
    auto d2 = defect(nodes, N - 2, opts);
    rep.cert.absorb(d2.cert);
    rep.above_ok = d2.value == 0;
    rep.pass = rep.at_n3_ok && rep.above_ok;
    return rep;
}

PointFileData parse_point_file(const std::string& text) {
    PointFileData data;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "prime:") {
            std::uint64_t p = 0;
            if (!(ls >> p)) throw InputError("point file: malformed prime header");
            data.prime = p;
            continue;
        }
        std::vector<std::string> coords{first};
        std::string tok;
        while (ls >> tok) coords.push_back(tok);
        data.coords.push_back(std::move(coords));
    }
    return data;
}

namespace {

Rational rational_from_string(const std::string& s) {
    try {
        Rational r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw InputError("point file: bad coordinate '" + s + "'");
    }
}

}  // namespace

template <>
PointSet<QField> points_from_strings<QField>(const CtxPtr<QField>& ctx,
                                             const std::vector<std::vector<std::string>>& coords) {
    std::vector<std::vector<Rational>> pts;
    for (const auto& row : coords) {
        if (static_cast<int>(row.size()) != ctx->nvars)
            throw InputError("point has wrong number of coordinates");
        std::vector<Rational> p;
        for (const auto& s : row) p.push_back(rational_from_string(s));
        pts.push_back(std::move(p));
    }
    return PointSet<QField>::make(ctx, std::move(pts));
}

template <>
PointSet<PFField> points_from_strings<PFField>(const CtxPtr<PFField>& ctx,
                                               const std::vector<std::vector<std::string>>& coords) {
    const PFField& k = ctx->field;
    std::vector<std::vector<std::uint64_t>> pts;
    for (const auto& row : coords) {
        if (static_cast<int>(row.size()) != ctx->nvars)
            throw InputError("point has wrong number of coordinates");
        std::vector<std::uint64_t> p;
        for (const auto& s : row) p.push_back(k.from_rational(rational_from_string(s)));
        pts.push_back(std::move(p));
    }
    return PointSet<PFField>::make(ctx, std::move(pts));
}

template struct PointSet<QField>;
template struct PointSet<PFField>;
template std::vector<NodeStatus> verify_nodes<QField>(const HomPolyQ&, const PointSet<QField>&);
template std::vector<NodeStatus> verify_nodes<PFField>(const HomPolyP&, const PointSet<PFField>&);
template SparseMat<QField> evaluation_matrix<QField>(const PointSet<QField>&, int);
template SparseMat<PFField> evaluation_matrix<PFField>(const PointSet<PFField>&, int);
template CertValue defect<QField>(const PointSet<QField>&, int, const LinalgOptions&);
template CertValue defect<PFField>(const PointSet<PFField>&, int, const LinalgOptions&);
template DefectTable defect_table<QField>(const PointSet<QField>&, int, const LinalgOptions&);
template DefectTable defect_table<PFField>(const PointSet<PFField>&, int, const LinalgOptions&);
template CbReport cb_check<QField>(const Hypersurface<QField>&, const PointSet<QField>&,
                                   const KoszulReport&, const LinalgOptions&);
template CbReport cb_check<PFField>(const Hypersurface<PFField>&, const PointSet<PFField>&,
                                    const KoszulReport&, const LinalgOptions&);
template CorC1Report corC1_check<QField>(const Hypersurface<QField>&, const PointSet<QField>&, int,
                                         const LinalgOptions&);
template CorC1Report corC1_check<PFField>(const Hypersurface<PFField>&, const PointSet<PFField>&, int,
                                          const LinalgOptions&);

}  // namespace milnor
