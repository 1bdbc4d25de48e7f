#pragma once

#include <map>
#include <optional>
#include <vector>

#include "milnor/koszul.hpp"
#include "milnor/points.hpp"

namespace milnor {

// First-page dimensions of the filtration spectral sequence, on the two
// nonzero lines, indexed by the page parameter t >= 0.
struct E1Table {
    int N = 0;
    int n = 0;
    int cutoff = 0;
    std::vector<int> lineL;   // dim at (n-t, t): graded Milnor dimensions
    std::vector<int> lineLp;  // dim at (n-1-t, t): graded relation spaces
};

E1Table e1_table(const KoszulReport& report);

struct E2Table {
    int cutoff = 0;
    std::vector<int> d1rank;
    std::vector<int> lineL2;
    std::vector<int> lineLp2;
    bool degenerate = false;  // when set, the table is also the limit page
    CertInfo cert;
};

// Rank of the first-page differential at parameter t: exterior derivatives of
// the relation representatives, taken modulo the Jacobian graded piece.
template <class F>
int d1_rank(const Hypersurface<F>& input, int t, const LinalgOptions& opts = {},
            CertInfo* cert = nullptr);

// Second page from kernel/cokernel dimensions. `degenerate` is the caller's
// assertion (weighted homogeneous singularities, or all singularities
// verified nodes); violations of the implied shape are hard errors.
template <class F>
E2Table e2_table(const Hypersurface<F>& input, const KoszulReport& report, bool degenerate,
                 const LinalgOptions& opts = {});

struct CurveFiltrationReport {
    int g = 0;
    int r = 0;
    int dimH1 = 0;
    int dimH2 = 0;
    std::map<int, int> grP;  // filtration level -> graded dimension of H^2
    int dimP2 = 0;
    bool corB1_check = false;
    int identity_lhs = 0;  // dim M(f)_{2N-3} + dim P^2
    int identity_rhs = 0;  // 2g + r - 1
    CertInfo cert;
};

// Pole-order filtration on the middle cohomology of a plane-curve complement;
// requires a degenerate second page.
template <class F>
CurveFiltrationReport curve_report(const Hypersurface<F>& input, const KoszulReport& report,
                                   const E2Table& e2, int r);

struct SurfaceFiltrationReport {
    int p_g = 0;
    int b2 = 0;
    int h11 = 0;
    int grP2 = 0;
    int grF2 = 0;
    int p3 = 0;
    bool equalPF = false;
    int nnodes = 0;
    int defect_n4 = 0;    // defect in degree N-4 (|nodes| below degree 0)
    int defect_2n4 = 0;   // defect in degree 2N-4; vanishes for nodal surfaces
    CertInfo cert;
};

// Filtration dimensions of a nodal-surface complement via the closed
// formulas, with the spectral cross-checks run and enforced.
template <class F>
SurfaceFiltrationReport surface_report(const Hypersurface<F>& input, const PointSet<F>& nodes,
                                       const KoszulReport& report, const LinalgOptions& opts = {});

struct HodgeReference {
    std::optional<int> g;    // curves
    std::optional<int> p_g;  // surfaces
    std::optional<int> b2;
    std::optional<int> h11;
};

// Closed-form Hodge data of the smooth reference in dimension 2 or 3.
HodgeReference hodge_reference(int n, int N);

}  // namespace milnor
