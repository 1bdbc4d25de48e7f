#pragma once

#include <optional>
#include <string>
#include <vector>

#include "milnor/koszul.hpp"
#include "milnor/linalg.hpp"
#include "milnor/polynomial.hpp"

namespace milnor {

// Finite set of projective points with exact coordinates, normalized so the
// last nonzero coordinate is 1. Projectively equal points are rejected.
template <class F>
struct PointSet {
    using Elem = typename F::Elem;
    CtxPtr<F> ctx;
    std::vector<std::vector<Elem>> points;
    std::vector<std::string> labels;

    static PointSet make(CtxPtr<F> ctx, std::vector<std::vector<Elem>> raw,
                         std::vector<std::string> labels = {});

    int size() const { return static_cast<int>(points.size()); }
};

enum class NodeStatus { Node, NotOnHypersurface, NotSingular, DegenerateSingularity };

std::string to_string(NodeStatus s);

// Per-point classification: lies on f = 0, all partials vanish, and the
// second-derivative matrix has rank exactly n there.
template <class F>
std::vector<NodeStatus> verify_nodes(const HomPoly<F>& f, const PointSet<F>& pts);

// |pts| x dim S_k matrix of monomial evaluations.
template <class F>
SparseMat<F> evaluation_matrix(const PointSet<F>& pts, int k);

// Failure of the points to impose independent conditions in degree k:
// |pts| - rank of the evaluation matrix. Degrees below zero impose no
// conditions, so the defect is |pts| there.
template <class F>
CertValue defect(const PointSet<F>& pts, int k, const LinalgOptions& opts = {});

struct DefectTable {
    std::vector<int> defects;  // indices 0..bound
    int size = 0;
    CertInfo cert;
};

template <class F>
DefectTable defect_table(const PointSet<F>& pts, int bound, const LinalgOptions& opts = {});

// One compared degree of the syzygy-dimension / defect bridge.
struct CbLine {
    int k = 0;        // defect degree
    int j = 0;        // cohomology degree n*N - n - 1 - k
    int hn_dim = 0;
    int defect = 0;
    bool pass = false;
};

struct CbReport {
    std::vector<NodeStatus> statuses;
    bool nodes_ok = false;
    std::vector<CbLine> lines;
    bool tail_ok = false;    // hn dimensions equal |nodes| from degree n(N-1) on
    bool top_ok = false;     // dim M(f)_T == |nodes|
    bool tau_ok = false;     // certified tail == |nodes|
    bool pass = false;
    CertInfo cert;
};

// Degreewise comparison of the n-th Koszul cohomology dimensions with the
// defects of the node set. The node list is the caller's completeness
// assertion; any failed line signals a missing node, a non-node singularity,
// or a bug.
template <class F>
CbReport cb_check(const Hypersurface<F>& input, const PointSet<F>& nodes,
                  const KoszulReport& report, const LinalgOptions& opts = {});

struct CorC1Report {
    int defect_at_n3 = 0;   // expected r - 1
    int r = 0;
    bool at_n3_ok = false;
    bool above_ok = false;  // defects vanish beyond degree N-3
    bool pass = false;
    CertInfo cert;
};

// Nodal-curve defect consequences: defects vanish above degree N-3 and equal
// r-1 there.
template <class F>
CorC1Report corC1_check(const Hypersurface<F>& input, const PointSet<F>& nodes, int r,
                        const LinalgOptions& opts = {});

// Point file contents: optional prime header plus coordinate rows kept as
// strings (field conversion happens against a ring context).
struct PointFileData {
    std::optional<std::uint64_t> prime;
    std::vector<std::vector<std::string>> coords;
};

PointFileData parse_point_file(const std::string& text);

template <class F>
PointSet<F> points_from_strings(const CtxPtr<F>& ctx, const std::vector<std::vector<std::string>>& coords);

}  // namespace milnor
