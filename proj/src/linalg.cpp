#include "milnor/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "milnor/errors.hpp"

namespace milnor {

namespace {

constexpr std::int64_t kDenseEntryLimit = 1 << 28;

//
// Dense elimination over F_p. Rows are referenced through an indirection
// table so swaps are pointer swaps; the inner loop is the dispatched axpy
// kernel.
//
struct DenseEchelonP {
    int rows = 0;
    int cols = 0;
    std::uint64_t p = 0;
    std::vector<std::uint32_t> data;
    std::vector<std::uint32_t*> row;
    std::vector<int> pivot_cols;
    int rnk = 0;

    DenseEchelonP(std::vector<std::uint32_t> flat, int r, int c, std::uint64_t prime)
        : rows(r), cols(c), p(prime), data(std::move(flat)) {
        row.resize(rows);
        for (int i = 0; i < rows; ++i) row[i] = data.data() + static_cast<std::size_t>(i) * cols;
    }

    void run() {
        int r0 = 0;
        for (int c = 0; c < cols && r0 < rows; ++c) {
            int piv = -1;
            for (int i = r0; i < rows; ++i) {
                if (row[i][c] != 0) {
                    piv = i;
                    break;
                }
            }
            if (piv < 0) continue;
            std::swap(row[r0], row[piv]);
            std::uint64_t ipiv = invmod_u64(row[r0][c], p);
            for (int i = r0 + 1; i < rows; ++i) {
                std::uint32_t v = row[i][c];
                if (v == 0) continue;
                std::uint32_t mult = static_cast<std::uint32_t>(p - mulmod_u64(v, ipiv, p));
                if (mult == static_cast<std::uint32_t>(p)) mult = 0;
                kernels::modp_axpy(row[i] + c, row[r0] + c, static_cast<std::size_t>(cols - c), mult,
                                   static_cast<std::uint32_t>(p));
                row[i][c] = 0;  // exact by construction; guards rounding of the kernel
            }
            pivot_cols.push_back(c);
            ++r0;
        }
        rnk = r0;
    }

    // Kernel basis mod p: one vector per free column.
    std::vector<std::vector<std::uint64_t>> kernel() const {
        std::vector<char> is_pivot(cols, 0);
        for (int c : pivot_cols) is_pivot[c] = 1;
        std::vector<std::vector<std::uint64_t>> out;
        for (int f = 0; f < cols; ++f) {
            if (is_pivot[f]) continue;
            std::vector<std::uint64_t> x(cols, 0);
            x[f] = 1;
            for (int j = rnk - 1; j >= 0; --j) {
                int c = pivot_cols[j];
                std::uint64_t s = 0;
                for (int l = c + 1; l < cols; ++l) {
                    if (row[j][l] == 0 || x[l] == 0) continue;
                    s = (s + mulmod_u64(row[j][l], x[l], p)) % p;
                }
                if (s != 0) {
                    std::uint64_t ipiv = invmod_u64(row[j][c], p);
                    x[c] = mulmod_u64(p - s, ipiv, p);
                }
            }
            out.push_back(std::move(x));
        }
        return out;
    }
};

std::vector<std::uint32_t> flat_from_sparse_p(const SparseMatP& m) {
    std::int64_t total = static_cast<std::int64_t>(m.rows) * m.cols;
    if (total > kDenseEntryLimit) throw Error("matrix too large for dense modular elimination");
    std::vector<std::uint32_t> flat(static_cast<std::size_t>(total), 0);
    for (const auto& e : m.entries)
        flat[static_cast<std::size_t>(e.row) * m.cols + e.col] =
            static_cast<std::uint32_t>(e.val % m.field.modulus());
    return flat;
}

//
// Exact elimination over the integers (denominators cleared row-wise).
// Pivoting is Markowitz cost (nnz_row-1)*(nnz_col-1) with deterministic
// tie-break by lowest (row, col); rows are content-stripped after each
// update to control growth.
//
struct IList {
    std::vector<std::pair<int, mpz_class>> e;  // sorted by column
};

class ExactEliminator {
public:
    ExactEliminator(const SparseMatQ& m) : rows_(m.rows), cols_(m.cols) {
        std::vector<std::map<int, Rational>> per_row(rows_);
        for (const auto& t : m.entries) {
            auto [it, fresh] = per_row[t.row].emplace(t.col, t.val);
            if (!fresh) it->second += t.val;
        }
        active_.resize(rows_);
        alive_.assign(rows_, 0);
        col_count_.assign(cols_, 0);
        for (int r = 0; r < rows_; ++r) {
            if (per_row[r].empty()) continue;
            mpz_class lcm_den(1);
            for (const auto& [c, v] : per_row[r]) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den_mpz_t());
            IList row;
            for (const auto& [c, v] : per_row[r]) {
                mpz_class z = v.get_num() * (lcm_den / v.get_den());
                if (z != 0) row.e.emplace_back(c, std::move(z));
            }
            strip_content(row);
            if (row.e.empty()) continue;
            for (const auto& [c, z] : row.e) ++col_count_[c];
            active_[r] = std::move(row);
            alive_[r] = 1;
        }
    }

    void run() {
        for (;;) {
            int best_row = -1, best_col = -1;
            long best_cost = -1;
            for (int r = 0; r < rows_; ++r) {
                if (!alive_[r]) continue;
                long rn = static_cast<long>(active_[r].e.size()) - 1;
                for (const auto& [c, v] : active_[r].e) {
                    long cost = rn * (col_count_[c] - 1);
                    if (best_cost < 0 || cost < best_cost ||
                        (cost == best_cost && (r < best_row || (r == best_row && c < best_col)))) {
                        best_cost = cost;
                        best_row = r;
                        best_col = c;
                    }
                }
            }
            if (best_row < 0) break;
            pivot_step(best_row, best_col);
        }
    }

    int rank() const { return static_cast<int>(echelon_.size()); }

    const std::vector<int>& pivot_cols() const { return pivot_cols_; }

    std::vector<std::vector<Rational>> kernel() const {
        std::vector<char> is_pivot(cols_, 0);
        for (int c : pivot_cols_) is_pivot[c] = 1;
        std::vector<std::vector<Rational>> out;
        for (int f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            out.push_back(solve_for_free_col(f));
        }
        return out;
    }

    std::vector<Rational> solve_for_free_col(int f) const {
        std::vector<Rational> x(cols_, Rational(0));
        x[f] = 1;
        for (int j = static_cast<int>(echelon_.size()) - 1; j >= 0; --j) {
            int c = pivot_cols_[j];
            Rational s(0);
            Rational piv;
            for (const auto& [l, v] : echelon_[j].e) {
                if (l == c) {
                    piv = Rational(v);
                    continue;
                }
                if (sgn(x[l]) != 0) s += Rational(v) * x[l];
            }
            if (sgn(s) != 0) x[c] = -s / piv;
        }
        // scale to a primitive integer vector for stable output
        mpz_class lcm_den(1);
        for (const auto& v : x)
            if (sgn(v) != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den_mpz_t());
        mpz_class content(0);
        std::vector<mpz_class> z(cols_);
        for (int c = 0; c < cols_; ++c) {
            if (sgn(x[c]) == 0) continue;
            z[c] = x[c].get_num() * (lcm_den / x[c].get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[c].get_mpz_t());
        }
        if (content == 0) content = 1;
        for (int c = 0; c < cols_; ++c) x[c] = Rational(z[c] / content);
        return x;
    }

private:
    static void strip_content(IList& row) {
        mpz_class g(0);
        for (const auto& [c, v] : row.e) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) return;
        }
        if (g <= 1) return;
        for (auto& [c, v] : row.e) v /= g;
    }

    void pivot_step(int r, int c) {
        IList piv_row = std::move(active_[r]);
        alive_[r] = 0;
        for (const auto& [cc, v] : piv_row.e) --col_count_[cc];
        mpz_class piv_val;
        for (const auto& [cc, v] : piv_row.e)
            if (cc == c) piv_val = v;

        for (int i = 0; i < rows_; ++i) {
            if (!alive_[i]) continue;
            auto& row = active_[i];
            auto it = std::lower_bound(row.e.begin(), row.e.end(), c,
                                       [](const auto& a, int col) { return a.first < col; });
            if (it == row.e.end() || it->first != c) continue;
            mpz_class factor = it->second;
            for (const auto& [cc, v] : row.e) --col_count_[cc];
            IList merged;
            merged.e.reserve(row.e.size() + piv_row.e.size());
            auto a = row.e.begin();
            auto b = piv_row.e.begin();
            while (a != row.e.end() || b != piv_row.e.end()) {
                if (b == piv_row.e.end() || (a != row.e.end() && a->first < b->first)) {
                    merged.e.emplace_back(a->first, a->second * piv_val);
                    ++a;
                } else if (a == row.e.end() || b->first < a->first) {
                    merged.e.emplace_back(b->first, -factor * b->second);
                    ++b;
                } else {
                    mpz_class v = a->second * piv_val - factor * b->second;
                    if (v != 0) merged.e.emplace_back(a->first, std::move(v));
                    ++a;
                    ++b;
                }
            }
            strip_content(merged);
            for (const auto& [cc, v] : merged.e) ++col_count_[cc];
            if (merged.e.empty())
                alive_[i] = 0;
            else
                active_[i] = std::move(merged);
        }
        pivot_cols_.push_back(c);
        echelon_.push_back(std::move(piv_row));
    }

    int rows_, cols_;
    std::vector<IList> active_;
    std::vector<char> alive_;
    std::vector<int> col_count_;
    std::vector<IList> echelon_;
    std::vector<int> pivot_cols_;
};

std::vector<std::uint64_t> usable_primes(const LinalgOptions& opts) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p : opts.primes) {
        if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    }
    if (ps.empty()) throw BadPrime("no primes supplied for modular mode");
    for (std::uint64_t p : ps)
        if (p <= (1ull << 30) || p >= (1ull << 31) || !is_prime_u64(p))
            throw BadPrime("certification modulus " + std::to_string(p) + " is not a prime in (2^30, 2^31)");
    return ps;
}

}  // namespace

namespace detail {

std::vector<std::uint32_t> reduce_mod_p(const SparseMatQ& m, std::uint64_t p) {
    std::int64_t total = static_cast<std::int64_t>(m.rows) * m.cols;
    if (total > kDenseEntryLimit) throw Error("matrix too large for dense modular elimination");
    std::vector<std::uint32_t> flat(static_cast<std::size_t>(total), 0);
    for (const auto& e : m.entries) {
        std::uint64_t den = mpz_fdiv_ui(e.val.get_den_mpz_t(), static_cast<unsigned long>(p));
        if (den == 0)
            throw BadPrime("prime " + std::to_string(p) + " divides a denominator in " + m.provenance);
        std::uint64_t num = mpz_fdiv_ui(e.val.get_num_mpz_t(), static_cast<unsigned long>(p));
        std::uint64_t v = num == 0 ? 0 : mulmod_u64(num, invmod_u64(den, p), p);
        flat[static_cast<std::size_t>(e.row) * m.cols + e.col] = static_cast<std::uint32_t>(v);
    }
    return flat;
}

int dense_rank_mod_p(std::vector<std::uint32_t>& data, int rows, int cols, std::uint64_t p) {
    DenseEchelonP ech(std::move(data), rows, cols, p);
    ech.run();
    return ech.rnk;
}

}  // namespace detail

std::string RankCertificate::describe() const {
    if (mode == Mode::Exact) return "exact";
    std::string s = agreement ? "modular[" : "modular-UNCERTIFIED[";
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(primes[i]);
    }
    return s + "]";
}

void CertInfo::absorb(const RankCertificate& c) {
    if (!c.certified()) certified = false;
    if (c.mode == RankCertificate::Mode::Exact)
        used_exact = true;
    else
        used_modular = true;
    for (std::uint64_t p : c.primes)
        if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
}

void CertInfo::absorb(const CertInfo& o) {
    certified = certified && o.certified;
    used_exact = used_exact || o.used_exact;
    used_modular = used_modular || o.used_modular;
    for (std::uint64_t p : o.primes)
        if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
}

std::string CertInfo::describe() const {
    if (!certified) return "UNCERTIFIED";
    if (used_modular) {
        std::string s = "modular[";
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(primes[i]);
        }
        s += "]";
        if (used_exact) s += "+exact";
        return s;
    }
    return "exact";
}

RankCertificate rank(const SparseMatQ& m, const LinalgOptions& opts) {
    auto exact = [&m]() {
        ExactEliminator e(m);
        e.run();
        RankCertificate c;
        c.rank = e.rank();
        c.mode = RankCertificate::Mode::Exact;
        return c;
    };

    if (opts.mode == RankMode::ExactOnly) return exact();

    std::vector<std::uint64_t> primes = usable_primes(opts);
    std::vector<std::uint64_t> used;
    std::vector<int> ranks;
    for (std::uint64_t p : primes) {
        try {
            auto flat = detail::reduce_mod_p(m, p);
            ranks.push_back(detail::dense_rank_mod_p(flat, m.rows, m.cols, p));
            used.push_back(p);
        } catch (const BadPrime&) {
            // this prime divides a denominator; skip it
        }
    }
    if (used.size() < 2) {
        if (opts.mode == RankMode::Auto) return exact();
        throw BadPrime("fewer than two usable certification primes for " + m.provenance);
    }
    bool agree = std::all_of(ranks.begin(), ranks.end(), [&](int r) { return r == ranks[0]; });
    if (!agree && opts.mode == RankMode::Auto) return exact();
    RankCertificate c;
    c.rank = *std::max_element(ranks.begin(), ranks.end());
    c.mode = RankCertificate::Mode::Modular;
    c.primes = used;
    c.agreement = agree;
    return c;
}

RankCertificate rank(const SparseMatP& m, const LinalgOptions&) {
    auto flat = flat_from_sparse_p(m);
    DenseEchelonP ech(std::move(flat), m.rows, m.cols, m.field.modulus());
    ech.run();
    RankCertificate c;
    c.rank = ech.rnk;
    c.mode = RankCertificate::Mode::Exact;  // arithmetic is exact in the matrix's own field
    c.primes = {m.field.modulus()};
    return c;
}

std::vector<std::vector<Rational>> kernel_basis(const SparseMatQ& m) {
    ExactEliminator e(m);
    e.run();
    auto vecs = e.kernel();
    for (const auto& v : vecs) {
        std::vector<Rational> residual(m.rows, Rational(0));
        for (const auto& t : m.entries)
            if (sgn(v[t.col]) != 0) residual[t.row] += t.val * v[t.col];
        for (const auto& r : residual)
            if (sgn(r) != 0) throw Error("kernel verification failed for " + m.provenance);
    }
    return vecs;
}

std::vector<std::vector<std::uint64_t>> kernel_basis(const SparseMatP& m) {
    auto flat = flat_from_sparse_p(m);
    DenseEchelonP ech(std::move(flat), m.rows, m.cols, m.field.modulus());
    ech.run();
    auto vecs = ech.kernel();
    const auto& k = m.field;
    for (const auto& v : vecs) {
        std::vector<std::uint64_t> residual(m.rows, 0);
        for (const auto& t : m.entries)
            residual[t.row] = k.add(residual[t.row], k.mul(t.val, v[t.col]));
        for (auto r : residual)
            if (r != 0) throw Error("kernel verification failed for " + m.provenance);
    }
    return vecs;
}

template <class F>
CertValue quotient_dim(int ambient_dim, const SparseMat<F>& span, const LinalgOptions& opts) {
    if (span.rows != ambient_dim) throw Error("quotient_dim: span row count must equal ambient dimension");
    auto c = rank(span, opts);
    CertValue out;
    out.value = ambient_dim - c.rank;
    out.cert.absorb(c);
    return out;
}

template <class F>
CertValue relative_rank(const SparseMat<F>& vectors, const SparseMat<F>& modulo,
                        const LinalgOptions& opts) {
    if (vectors.rows != modulo.rows) throw Error("relative_rank: row counts differ");
    auto joint = SparseMat<F>::hstack(vectors, modulo);
    auto cj = rank(joint, opts);
    auto cm = rank(modulo, opts);
    CertValue out;
    out.value = cj.rank - cm.rank;
    out.cert.absorb(cj);
    out.cert.absorb(cm);
    return out;
}

template CertValue quotient_dim<QField>(int, const SparseMat<QField>&, const LinalgOptions&);
template CertValue quotient_dim<PFField>(int, const SparseMat<PFField>&, const LinalgOptions&);
template CertValue relative_rank<QField>(const SparseMat<QField>&, const SparseMat<QField>&,
                                         const LinalgOptions&);
template CertValue relative_rank<PFField>(const SparseMat<PFField>&, const SparseMat<PFField>&,
                                          const LinalgOptions&);

std::vector<int> colspace_pivot_rows(const SparseMatQ& m, const LinalgOptions& opts) {
    SparseMatQ t = m.transposed();
    if (opts.mode != RankMode::ExactOnly) {
        for (std::uint64_t p : usable_primes(opts)) {
            try {
                auto flat = detail::reduce_mod_p(t, p);
                DenseEchelonP ech(std::move(flat), t.rows, t.cols, p);
                ech.run();
                return ech.pivot_cols;
            } catch (const BadPrime&) {
                continue;
            }
        }
    }
    ExactEliminator e(t);
    e.run();
    std::vector<int> out = e.pivot_cols();
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> colspace_pivot_rows(const SparseMatP& m, const LinalgOptions&) {
    SparseMatP t = m.transposed();
    auto flat = flat_from_sparse_p(t);
    DenseEchelonP ech(std::move(flat), t.rows, t.cols, t.field.modulus());
    ech.run();
    return ech.pivot_cols;
}

}  // namespace milnor
