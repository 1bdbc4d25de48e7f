#pragma once

#include <optional>
#include <vector>

#include "milnor/form.hpp"
#include "milnor/linalg.hpp"
#include "milnor/polynomial.hpp"

namespace milnor {

// A reduced hypersurface f = 0 of degree N in projective n-space, with the
// optional component factorization used by the explicit syzygy basis (plane
// curves only).
template <class F>
struct Hypersurface {
    HomPoly<F> f;
    int N = 0;
    int n = 0;
    std::vector<HomPoly<F>> factors;  // empty when not supplied
    std::vector<int> genera;          // empty when not supplied

    static Hypersurface make(HomPoly<F> f, std::vector<HomPoly<F>> factors = {},
                             std::vector<int> genera = {});

    int nvars() const { return n + 1; }
    // largest degree with a possibly nonzero graded piece for the smooth reference
    int top_degree() const { return (n + 1) * (N - 2); }
};

// Map degree -> dimension with a certified eventually-constant tail.
struct DimTable {
    std::vector<int> dims;  // indices 0..bound
    int bound = -1;
    int tail = 0;
    int tail_from = 0;

    int at(int k) const {
        if (k < 0) return 0;
        if (k <= bound) return dims[static_cast<std::size_t>(k)];
        return tail;
    }
};

struct KoszulReport {
    int N = 0;
    int n = 0;
    int T = 0;
    DimTable milnor;
    DimTable smooth;
    DimTable hn;  // dimensions of the n-th Koszul cohomology by total degree
    int tau = 0;
    int st = 0;
    std::optional<int> ct;   // absent when the hypersurface is smooth
    std::optional<int> mdr;  // absent when the hypersurface is smooth
    bool smooth_input = false;
    CertInfo cert;
};

// Nontrivial degree-m relations among the partial derivatives, presented as
// n-forms annihilated by wedging with df, independent modulo the image of
// df ^ (n-1)-forms.
template <class F>
struct SyzygyBasis {
    int m = 0;
    std::vector<PolyForm<F>> representatives;
    int quotient_dim = 0;
    CertInfo cert;
};

// Coefficients of (1 - t^(N-1))^(n+1) / (1 - t)^(n+1), truncated at bound.
DimTable smooth_series(int n, int N, int bound);

// Multiplication matrix whose columns are x^a * df/dx_i expressed in the
// degree-k monomial basis.
template <class F>
SparseMat<F> jacobian_matrix(const Hypersurface<F>& input, int k);

// Matrix of (df ^ -) from p-forms of total degree j to (p+1)-forms of total
// degree j + N, in the canonical coordinate bases.
template <class F>
SparseMat<F> koszul_matrix(const Hypersurface<F>& input, int p, int j);

// Matrix whose columns are the coordinates of the given forms (all of one
// shape).
template <class F>
SparseMat<F> forms_matrix(const CtxPtr<F>& ctx, int formdeg, int total_degree,
                          const std::vector<PolyForm<F>>& forms, std::string label = {});

// Graded dimensions of S / (ideal of partial derivatives) up to bound
// (at least T+2); the tail is certified by the stabilization window.
template <class F>
DimTable milnor_dims(const Hypersurface<F>& input, int bound, const LinalgOptions& opts = {},
                     CertInfo* cert = nullptr);

// dim of the n-th Koszul cohomology in total degree j, computed directly from
// the two wedge matrices.
template <class F>
int koszul_hn_dim_direct(const Hypersurface<F>& input, int j, const LinalgOptions& opts = {},
                         CertInfo* cert = nullptr);

// Full threshold analysis. The minimal nontrivial relation degree is computed
// both from the dimension tables and by direct kernel search; disagreement is
// a hard error.
template <class F>
KoszulReport analyze(const Hypersurface<F>& input, const LinalgOptions& opts = {}, int bound = -1);

// Representatives of the nontrivial relations of degree m.
template <class F>
SyzygyBasis<F> syzygy_space(const Hypersurface<F>& input, int m, const LinalgOptions& opts = {});

// Explicit basis of the degree N-2 relations of a plane curve from its
// component factorization; every output form is verified against df and
// checked for independence.
template <class F>
SyzygyBasis<F> thm5_basis(const Hypersurface<F>& input, const LinalgOptions& opts = {});

}  // namespace milnor
