#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "milnor/field.hpp"
#include "milnor/modp.hpp"

namespace milnor {

// Sparse matrix in triplet form over an exact field. Entries are unique
// (row, col) pairs with nonzero values; provenance is a free-form label for
// diagnostics.
template <class F>
struct SparseMat {
    using Elem = typename F::Elem;
    struct Entry {
        int row;
        int col;
        Elem val;
    };

    int rows = 0;
    int cols = 0;
    std::vector<Entry> entries;
    std::string provenance;
    F field;

    SparseMat() = default;
    SparseMat(int r, int c, F f = F(), std::string label = {})
        : rows(r), cols(c), provenance(std::move(label)), field(std::move(f)) {}

    void add(int r, int c, Elem v) {
        if (r < 0 || r >= rows || c < 0 || c >= cols) throw Error("matrix entry out of range");
        if (field.is_zero(v)) return;
        entries.push_back(Entry{r, c, std::move(v)});
    }

    SparseMat transposed() const {
        SparseMat t(cols, rows, field, provenance + " (transposed)");
        t.entries.reserve(entries.size());
        for (const auto& e : entries) t.entries.push_back(Entry{e.col, e.row, e.val});
        return t;
    }

    // Columns of a followed by columns of b.
    static SparseMat hstack(const SparseMat& a, const SparseMat& b) {
        if (a.rows != b.rows) throw Error("hstack: row counts differ");
        SparseMat m(a.rows, a.cols + b.cols, a.field, a.provenance + "|" + b.provenance);
        m.entries = a.entries;
        for (const auto& e : b.entries) m.entries.push_back(Entry{e.row, e.col + a.cols, e.val});
        return m;
    }

    // Rows of a followed by rows of b.
    static SparseMat vstack(const SparseMat& a, const SparseMat& b) {
        if (a.cols != b.cols) throw Error("vstack: column counts differ");
        SparseMat m(a.rows + b.rows, a.cols, a.field, a.provenance + ";" + b.provenance);
        m.entries = a.entries;
        for (const auto& e : b.entries) m.entries.push_back(Entry{e.row + a.rows, e.col, e.val});
        return m;
    }

    static SparseMat from_columns(int rows, const std::vector<std::vector<Elem>>& cols_vs, F f = F(),
                                  std::string label = {}) {
        SparseMat m(rows, static_cast<int>(cols_vs.size()), std::move(f), std::move(label));
        for (int c = 0; c < m.cols; ++c)
            for (int r = 0; r < rows; ++r)
                if (!m.field.is_zero(cols_vs[c][r])) m.add(r, c, cols_vs[c][r]);
        return m;
    }
};

using SparseMatQ = SparseMat<QField>;
using SparseMatP = SparseMat<PFField>;

// Outcome of a rank computation. Modular mode is certified only when at least
// two distinct primes agree; anything else is flagged and must not propagate
// silently.
struct RankCertificate {
    enum class Mode { Exact, Modular };
    int rank = 0;
    Mode mode = Mode::Exact;
    std::vector<std::uint64_t> primes;
    bool agreement = true;

    bool certified() const { return mode == Mode::Exact || (agreement && primes.size() >= 2); }
    std::string describe() const;
};

enum class RankMode { Auto, ExactOnly, ModularOnly };

struct LinalgOptions {
    RankMode mode = RankMode::Auto;
    std::vector<std::uint64_t> primes = {kDefaultPrime0, kDefaultPrime1};
};

// Aggregates certification state across the many rank calls behind a report.
struct CertInfo {
    bool certified = true;
    bool used_exact = false;
    bool used_modular = false;
    std::vector<std::uint64_t> primes;

    void absorb(const RankCertificate& c);
    void absorb(const CertInfo& o);
    std::string describe() const;
};

RankCertificate rank(const SparseMatQ& m, const LinalgOptions& opts = {});
RankCertificate rank(const SparseMatP& m, const LinalgOptions& opts = {});

// Exact right kernel basis; every vector is verified against the matrix.
std::vector<std::vector<Rational>> kernel_basis(const SparseMatQ& m);
std::vector<std::vector<std::uint64_t>> kernel_basis(const SparseMatP& m);

struct CertValue {
    int value = 0;
    CertInfo cert;
};

// ambient_dim - rank(span); span must have ambient_dim rows.
template <class F>
CertValue quotient_dim(int ambient_dim, const SparseMat<F>& span, const LinalgOptions& opts = {});

// rank([vectors | modulo]) - rank(modulo); same row count required.
template <class F>
CertValue relative_rank(const SparseMat<F>& vectors, const SparseMat<F>& modulo,
                        const LinalgOptions& opts = {});

// Row indices that carry the pivots of the column space of m: positions such
// that the complementary coordinate subspace meets the column space trivially.
// Used to slice quotients by a known subspace.
std::vector<int> colspace_pivot_rows(const SparseMatQ& m, const LinalgOptions& opts = {});
std::vector<int> colspace_pivot_rows(const SparseMatP& m, const LinalgOptions& opts = {});

namespace detail {
// Reduce a rational matrix mod p; throws BadPrime if p divides a denominator.
std::vector<std::uint32_t> reduce_mod_p(const SparseMatQ& m, std::uint64_t p);
int dense_rank_mod_p(std::vector<std::uint32_t>& data, int rows, int cols, std::uint64_t p);
}  // namespace detail

}  // namespace milnor
