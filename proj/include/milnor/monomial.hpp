#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "milnor/util.hpp"

namespace milnor {

// Exponent vector of a monomial; length is the number of variables.
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}
    static Monomial unit(int nvars) { return Monomial(std::vector<int>(nvars, 0)); }

    int nvars() const { return static_cast<int>(e.size()); }
    int degree() const { return std::accumulate(e.begin(), e.end(), 0); }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }

    bool operator==(const Monomial&) const = default;
};

// Graded lexicographic order, arranged so that the smallest element under this
// comparator is the leading monomial (higher degree first, then lex with
// x_0 > x_1 > ...). Map iteration therefore matches display order.
struct GrlexBefore {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.e > b.e;  // lexicographically larger exponent vector comes first
    }
};

// All monomials of total degree k in nvars variables, in the display order
// above (x_0^k first). Deterministic.
inline std::vector<Monomial> monomial_basis(int nvars, int k) {
    std::vector<Monomial> out;
    if (k < 0) return out;
    out.reserve(static_cast<std::size_t>(monomial_count(nvars, k)));
    std::vector<int> e(nvars, 0);
    // recursive enumeration: first variable takes the largest exponent first
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == nvars - 1) {
            e[pos] = rem;
            out.push_back(Monomial(e));
            return;
        }
        for (int v = rem; v >= 0; --v) {
            e[pos] = v;
            self(self, pos + 1, rem - v);
        }
        e[pos] = 0;
    };
    rec(rec, 0, k);
    return out;
}

// Index of a degree-k monomial inside monomial_basis(nvars, k).
inline std::int64_t monomial_rank(const Monomial& m) {
    int nvars = m.nvars();
    int rem = m.degree();
    std::int64_t rank = 0;
    for (int pos = 0; pos < nvars - 1; ++pos) {
        // entries with a larger exponent at this position come first
        for (int v = rem; v > m.e[pos]; --v) rank += monomial_count(nvars - pos - 1, rem - v);
        rem -= m.e[pos];
    }
    return rank;
}

}  // namespace milnor
