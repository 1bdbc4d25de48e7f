#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "milnor/linalg.hpp"

using namespace milnor;

namespace {

SparseMatQ from_rows(const std::vector<std::vector<int>>& rows, int cols) {
    SparseMatQ m(static_cast<int>(rows.size()), cols, QField{}, "test");
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0)
                m.add(r, c, Rational(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]));
    return m;
}

SparseMatQ random_int_matrix(std::mt19937& rng, int rows, int cols, int density_pct = 40) {
    SparseMatQ m(rows, cols, QField{}, "fuzz");
    std::uniform_int_distribution<int> val(-9, 9);
    std::uniform_int_distribution<int> pct(0, 99);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (pct(rng) < density_pct) {
                int v = val(rng);
                if (v != 0) m.add(r, c, Rational(v));
            }
    return m;
}

}  // namespace

TEST_CASE("axpy kernel equivalence: scalar vs dispatched") {
    std::mt19937 rng(42);
    for (std::uint64_t p : {kDefaultPrime0, kDefaultPrime1}) {
        std::uniform_int_distribution<std::uint64_t> val(0, p - 1);
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t n = 1 + rng() % 67;
            std::vector<std::uint32_t> dst(n), src(n);
            for (std::size_t i = 0; i < n; ++i) {
                dst[i] = static_cast<std::uint32_t>(val(rng));
                src[i] = static_cast<std::uint32_t>(val(rng));
            }
            std::uint32_t mult = static_cast<std::uint32_t>(val(rng));
            auto expect = dst;
            kernels::modp_axpy_scalar(expect.data(), src.data(), n, mult,
                                      static_cast<std::uint32_t>(p));
            auto got = dst;
            kernels::modp_axpy(got.data(), src.data(), n, mult, static_cast<std::uint32_t>(p));
            CHECK(got == expect);
        }
    }
    // boundary residues
    for (std::uint64_t p : {kDefaultPrime0, kDefaultPrime1}) {
        std::uint32_t top = static_cast<std::uint32_t>(p - 1);
        std::vector<std::uint32_t> dst(16, top), src(16, top);
        auto expect = dst;
        kernels::modp_axpy_scalar(expect.data(), src.data(), 16, top, static_cast<std::uint32_t>(p));
        kernels::modp_axpy(dst.data(), src.data(), 16, top, static_cast<std::uint32_t>(p));
        CHECK(dst == expect);
    }
}

TEST_CASE("kernel dispatch matches the host cpu") {
    if (kernels::cpu_has_avx2()) {
        CHECK(kernels::active_kernel() == "avx2");
        kernels::use_scalar_kernels(true);
        CHECK(kernels::active_kernel() == "scalar");
        kernels::use_scalar_kernels(false);
        CHECK(kernels::active_kernel() == "avx2");
    } else {
        CHECK(kernels::active_kernel() == "scalar");
    }
}

TEST_CASE("rank basics") {
    auto id3 = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
    CHECK(rank(id3).rank == 3);
    auto dep = from_rows({{1, 2, 3}, {2, 4, 6}}, 3);
    CHECK(rank(dep).rank == 1);
    LinalgOptions exact;
    exact.mode = RankMode::ExactOnly;
    CHECK(rank(dep, exact).rank == 1);
    CHECK(rank(dep, exact).describe() == "exact");
    SparseMatQ empty(4, 5, QField{}, "zero");
    CHECK(rank(empty).rank == 0);
}

TEST_CASE("rank invariances") {
    std::mt19937 rng(11);
    LinalgOptions exact;
    exact.mode = RankMode::ExactOnly;
    for (int t = 0; t < 30; ++t) {
        auto m = random_int_matrix(rng, 6, 8);
        int r = rank(m, exact).rank;
        CHECK(r <= 6);
        // scale a row by a nonzero scalar
        SparseMatQ scaled = m;
        for (auto& e : scaled.entries)
            if (e.row == 2) e.val *= Rational(7, 3);
        CHECK(rank(scaled, exact).rank == r);
        // permute rows
        SparseMatQ perm = m;
        for (auto& e : perm.entries) e.row = (e.row + 3) % 6;
        CHECK(rank(perm, exact).rank == r);
    }
}

TEST_CASE("modular agrees with exact on random integer matrices") {
    std::mt19937 rng(777);
    LinalgOptions exact;
    exact.mode = RankMode::ExactOnly;
    LinalgOptions modular;
    modular.mode = RankMode::ModularOnly;
    for (int t = 0; t < 100; ++t) {
        auto m = random_int_matrix(rng, 5 + static_cast<int>(rng() % 8), 5 + static_cast<int>(rng() % 8));
        auto ce = rank(m, exact);
        auto cm = rank(m, modular);
        CHECK(ce.rank == cm.rank);
        CHECK(cm.agreement);
        CHECK(cm.certified());
    }
    // the dedicated 30x40 case
    auto big = random_int_matrix(rng, 30, 40, 30);
    CHECK(rank(big, exact).rank == rank(big, modular).rank);

    // single-prime rank never exceeds the exact rank
    for (int t = 0; t < 30; ++t) {
        auto m = random_int_matrix(rng, 6, 6);
        int re = rank(m, exact).rank;
        for (std::uint64_t p : {kDefaultPrime0, kDefaultPrime1}) {
            auto flat = detail::reduce_mod_p(m, p);
            CHECK(detail::dense_rank_mod_p(flat, m.rows, m.cols, p) <= re);
        }
    }
}

TEST_CASE("modular certification and escalation") {
    // entry divisible by the first default prime: single-prime rank drops
    SparseMatQ m(1, 1, QField{}, "prime-divisible entry");
    m.add(0, 0, Rational(static_cast<long>(kDefaultPrime0)));
    LinalgOptions modular;
    modular.mode = RankMode::ModularOnly;
    auto c = rank(m, modular);
    CHECK_FALSE(c.agreement);
    CHECK_FALSE(c.certified());
    // auto mode escalates to exact and gets it right
    auto ca = rank(m);
    CHECK(ca.rank == 1);
    CHECK(ca.mode == RankCertificate::Mode::Exact);

    // denominator divisible by both primes: modular-only cannot certify
    SparseMatQ d(1, 1, QField{}, "bad denominators");
    d.add(0, 0, Rational(1) / (Rational(static_cast<long>(kDefaultPrime0)) *
                               Rational(static_cast<long>(kDefaultPrime1))));
    CHECK_THROWS_AS(rank(d, modular), BadPrime);
    CHECK(rank(d).rank == 1);
}

TEST_CASE("kernel basis") {
    auto id3 = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
    CHECK(kernel_basis(id3).empty());

    auto m = from_rows({{1, -1}}, 2);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == Rational(1));
    CHECK(k[0][1] == Rational(1));

    std::mt19937 rng(31);
    for (int t = 0; t < 40; ++t) {
        auto a = random_int_matrix(rng, 5, 9);
        auto k2 = kernel_basis(a);
        LinalgOptions exact;
        exact.mode = RankMode::ExactOnly;
        CHECK(static_cast<int>(k2.size()) == 9 - rank(a, exact).rank);
    }
}

TEST_CASE("quotient and relative ranks") {
    SparseMatQ zero(10, 4, QField{}, "zero span");
    CHECK(quotient_dim(10, zero).value == 10);
    auto full = from_rows({{1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                           {0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
                           {0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
                           {0, 0, 0, 1, 0, 0, 0, 0, 0, 0},
                           {0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
                           {0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
                           {0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
                           {0, 0, 0, 0, 0, 0, 0, 1, 0, 0},
                           {0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
                           {0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
                          10)
                    .transposed();
    CHECK(quotient_dim(10, full).value == 0);

    // vectors inside the column space contribute nothing
    auto modulo = from_rows({{1, 0}, {0, 1}, {0, 0}}, 2);
    auto inside = from_rows({{1}, {1}, {0}}, 1);
    CHECK(relative_rank(inside, modulo).value == 0);
    SparseMatQ nothing(3, 0, QField{}, "empty modulo");
    CHECK(relative_rank(inside, nothing).value == 1);

    // consistency: quotient_dim + rank == ambient
    std::mt19937 rng(4);
    for (int t = 0; t < 30; ++t) {
        auto s = random_int_matrix(rng, 7, 5);
        auto q = quotient_dim(7, s);
        CHECK(q.value + rank(s).rank == 7);
    }
}

TEST_CASE("prime field matrices") {
    PFField fp(kDefaultPrime0);
    SparseMatP m(2, 3, fp, "Fp test");
    m.add(0, 0, 1);
    m.add(0, 1, 2);
    m.add(1, 0, 2);
    m.add(1, 1, 4);
    m.add(0, 2, 5);
    m.add(1, 2, fp.from_int(10));
    auto c = rank(m);
    CHECK(c.rank == 1);
    CHECK(c.certified());
    auto k = kernel_basis(m);
    CHECK(k.size() == 2);

    auto pivots = colspace_pivot_rows(m);
    REQUIRE(pivots.size() == 1);
    CHECK(pivots[0] == 0);
}

TEST_CASE("column space pivot rows") {
    auto b = from_rows({{1, 0}, {0, 0}, {0, 1}}, 2);
    auto rowsq = colspace_pivot_rows(b);
    CHECK(rowsq == std::vector<int>{0, 2});
    LinalgOptions exact;
    exact.mode = RankMode::ExactOnly;
    CHECK(colspace_pivot_rows(b, exact) == std::vector<int>{0, 2});
}
