#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "milnor/form.hpp"
#include "milnor/parser.hpp"
#include "milnor/polynomial.hpp"

using namespace milnor;

namespace {

CtxPtr<QField> ctx3() {
    static CtxPtr<QField> c = RingCtx<QField>::make(3);
    return c;
}

CtxPtr<QField> ctx4() {
    static CtxPtr<QField> c = RingCtx<QField>::make(4);
    return c;
}

HomPolyQ q(const std::string& s, const CtxPtr<QField>& c = ctx3()) { return parse_poly(s, c); }

HomPolyQ random_poly(std::mt19937& rng, const CtxPtr<QField>& ctx, int max_deg = 3) {
    std::uniform_int_distribution<int> degd(0, max_deg);
    int deg = degd(rng);
    auto basis = monomial_basis(ctx->nvars, deg);
    std::uniform_int_distribution<int> cnt(1, 4);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    HomPolyQ p(ctx, deg);
    int terms = cnt(rng);
    for (int i = 0; i < terms; ++i) p.add_term(basis[pick(rng)], Rational(coef(rng)));
    return p;
}

PolyForm<QField> random_form(std::mt19937& rng, const CtxPtr<QField>& ctx, int formdeg, int coeffdeg) {
    PolyForm<QField> w(ctx, formdeg, coeffdeg);
    auto tuples = all_index_tuples(ctx->nvars, formdeg);
    auto basis = monomial_basis(ctx->nvars, coeffdeg);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (const auto& t : tuples) {
        HomPolyQ h(ctx, coeffdeg);
        h.add_term(basis[pick(rng)], Rational(coef(rng)));
        if (!h.is_zero()) w.add_component(t, h);
    }
    return w;
}

}  // namespace

TEST_CASE("monomial basis counts and order") {
    auto b2 = monomial_basis(3, 2);
    CHECK(b2.size() == 6);
    auto b3 = monomial_basis(3, 3);
    CHECK(b3.size() == 10);
    CHECK(b3[0].e == std::vector<int>{3, 0, 0});
    CHECK(monomial_basis(4, 0).size() == 1);
    // rank agrees with the enumeration order
    for (int nv : {3, 4}) {
        for (int k : {0, 1, 2, 3, 5}) {
            auto b = monomial_basis(nv, k);
            for (std::size_t i = 0; i < b.size(); ++i)
                CHECK(monomial_rank(b[i]) == static_cast<std::int64_t>(i));
        }
    }
}

TEST_CASE("parser basics") {
    auto f = q("x^4+y^4+z^4");
    CHECK(f.degree() == 4);
    CHECK(f.term_count() == 3);

    auto g = q("x*(x^2*y+x*y^2+z^3)");
    CHECK(g.degree() == 4);
    CHECK(g == q("x^3*y + x^2*y^2 + x*z^3"));

    CHECK_THROWS_AS(q("x^2+y^3"), NotHomogeneous);
    try {
        q("x^2+y^3");
    } catch (const NotHomogeneous& e) {
        CHECK(e.degree_a == 2);
        CHECK(e.degree_b == 3);
    }
    CHECK_THROWS_AS(q("x^2+q^2"), UnknownVariable);
    CHECK_THROWS_AS(q("x^2+"), SyntaxError);
    CHECK_THROWS_AS(q("(x"), SyntaxError);

    // implicit products, rational coefficients, parenthesized powers
    CHECK(q("2x y") == q("2*x*y"));
    CHECK(q("1/2*x^2 + 3/2*y^2") == q("x^2").scale(Rational(1, 2)) + q("y^2").scale(Rational(3, 2)));
    CHECK(q("(x+y)^2") == q("x^2+2*x*y+y^2"));
    CHECK(q("-x^2+x^2").is_zero());
}

TEST_CASE("parser over a prime field") {
    PFField fp(kDefaultPrime0);
    auto ctx = RingCtx<PFField>::make(3, fp);
    auto f = parse_poly<PFField>("x^2 - 3*y^2", ctx);
    CHECK(f.coeff(Monomial({0, 2, 0})) == fp.from_int(-3));
    auto half = parse_poly<PFField>("1/2*x*y", ctx);
    CHECK(fp.mul(half.coeff(Monomial({1, 1, 0})), 2) == 1);
}

TEST_CASE("render round trip") {
    std::mt19937 rng(12345);
    for (int i = 0; i < 120; ++i) {
        auto f = random_poly(rng, i % 2 ? ctx3() : ctx4());
        auto back = parse_poly(render(f), f.ctx());
        CHECK(back == f);
    }
    PFField fp(kDefaultPrime1);
    auto pctx = RingCtx<PFField>::make(3, fp);
    auto f = parse_poly<PFField>("5*x^2*y + 7*z^3 + 2147483628*x^3", pctx);
    CHECK(parse_poly(render(f), pctx) == f);
}

TEST_CASE("partial derivatives") {
    CHECK(partial(q("x^2*y"), 0) == q("2*x*y"));
    CHECK(partial(q("x^4+y^4+z^4"), 2) == q("4*z^3"));
    // Euler identity: sum x_i f_i = deg(f) * f
    auto f = q("x^3*y+x^2*y^2+x*z^3");
    HomPolyQ acc(ctx3(), 4);
    for (int i = 0; i < 3; ++i) acc = acc + HomPolyQ::variable(ctx3(), i) * partial(f, i);
    CHECK(acc == f.scale(Rational(4)));

    std::mt19937 rng(99);
    for (int i = 0; i < 100; ++i) {
        auto g = random_poly(rng, ctx3());
        if (g.degree() == 0) continue;
        for (int v = 0; v < 3; ++v) CHECK(partial(g, v).degree() == g.degree() - 1);
    }
}

TEST_CASE("wedge products") {
    auto dx = differential(q("x"));
    auto dy = differential(q("y"));
    CHECK(wedge(dx, dx).is_zero());
    auto dxdy = wedge(dx, dy);
    CHECK(dxdy.component({0, 1}) == q("1"));

    auto f = q("x*y*z");
    auto df = differential(f);
    auto w = wedge(df, dxdy);
    PolyForm<QField> expect(ctx3(), 3, 2);
    expect.add_component({0, 1, 2}, q("x*y"));
    CHECK(w == expect);

    // graded anticommutativity on random pairs
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        int pa = static_cast<int>(rng() % 3), pb = static_cast<int>(rng() % 3);
        auto a = random_form(rng, ctx3(), pa, 1 + static_cast<int>(rng() % 2));
        auto b = random_form(rng, ctx3(), pb, 1 + static_cast<int>(rng() % 2));
        auto ab = wedge(a, b);
        auto ba = wedge(b, a);
        if ((pa * pb) % 2 == 1) ba = ba.negate();
        CHECK(ab == ba);
    }
}

TEST_CASE("exterior derivative") {
    PolyForm<QField> a(ctx3(), 1, 2);
    a.add_component({1}, q("x^2"));
    auto da = exterior_d(a);
    PolyForm<QField> expect(ctx3(), 2, 1);
    expect.add_component({0, 1}, q("2*x"));
    CHECK(da == expect);

    PolyForm<QField> b(ctx3(), 0, 4);
    b.add_component({}, q("x^3*y"));
    CHECK(exterior_d(exterior_d(b)).is_zero());

    PolyForm<QField> c(ctx3(), 1, 1);
    c.add_component({1}, q("x"));
    c.add_component({0}, q("y").negate());
    auto dc = exterior_d(c);
    PolyForm<QField> expect2(ctx3(), 2, 0);
    expect2.add_component({0, 1}, q("2"));
    CHECK(dc == expect2);
}

TEST_CASE("contraction with the Euler field") {
    auto dxdy = wedge(differential(q("x")), differential(q("y")));
    auto c = euler_contract(dxdy);
    PolyForm<QField> expect(ctx3(), 1, 1);
    expect.add_component({1}, q("x"));
    expect.add_component({0}, q("y").negate());
    CHECK(c == expect);

    auto sigma = euler_contract(volume_form(ctx3()));
    PolyForm<QField> expect_sigma(ctx3(), 2, 1);
    expect_sigma.add_component({1, 2}, q("x"));
    expect_sigma.add_component({0, 2}, q("y").negate());
    expect_sigma.add_component({0, 1}, q("z"));
    CHECK(sigma == expect_sigma);
    CHECK(euler_contract(sigma).is_zero());  // contraction squares to zero

    // contraction of df recovers deg(f) * f
    auto f = q("x^4+y^4+z^4");
    auto cdf = euler_contract(differential(f));
    CHECK(cdf.component({}) == f.scale(Rational(4)));
}

TEST_CASE("graded Leibniz and contraction anti-derivation") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 100; ++i) {
        int pa = static_cast<int>(rng() % 3), pb = static_cast<int>(rng() % 3);
        auto a = random_form(rng, ctx3(), pa, 1 + static_cast<int>(rng() % 2));
        auto b = random_form(rng, ctx3(), pb, 1 + static_cast<int>(rng() % 2));
        auto lhs = exterior_d(wedge(a, b));
        auto rhs = wedge(exterior_d(a), b) + (pa % 2 == 0 ? wedge(a, exterior_d(b))
                                                          : wedge(a, exterior_d(b)).negate());
        CHECK(lhs == rhs);
        if (pa >= 1 && pb >= 1) {
            auto clhs = euler_contract(wedge(a, b));
            auto crhs = wedge(euler_contract(a), b) +
                        (pa % 2 == 0 ? wedge(a, euler_contract(b))
                                     : wedge(a, euler_contract(b)).negate());
            CHECK(clhs == crhs);
        }
    }
}

TEST_CASE("hessian") {
    auto f = q("z*y^2 - x^3 - x^2*z");
    std::vector<Rational> p{Rational(0), Rational(0), Rational(1)};
    auto h = hessian(f, p);
    CHECK(h[0][0] == Rational(-2));
    CHECK(h[1][1] == Rational(2));
    CHECK(h[2][2] == Rational(0));
    CHECK(h[0][1] == Rational(0));

    auto g = q("x^2+y^2+z^2");
    std::vector<Rational> pt{Rational(3), Rational(-1), Rational(2)};
    auto hg = hessian(g, pt);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(hg[i][j] == (i == j ? Rational(2) : Rational(0)));

    auto x4 = q("x^4");
    std::vector<Rational> e1{Rational(0), Rational(1), Rational(0)};
    auto hx = hessian(x4, e1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(hx[i][j] == Rational(0));

    CHECK_THROWS_AS(hessian(f, std::vector<Rational>{Rational(0), Rational(0), Rational(0)}), ZeroPoint);

    // symmetry on random inputs
    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
        auto r = random_poly(rng, ctx3());
        if (r.degree() < 2) continue;
        std::vector<Rational> pp{Rational(1), Rational(static_cast<int>(rng() % 5)),
                                 Rational(static_cast<int>(rng() % 5))};
        auto hh = hessian(r, pp);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(hh[a][b] == hh[b][a]);
    }
}

TEST_CASE("jacobian determinant") {
    CHECK(jac3(q("x"), q("y"), q("z")) == q("1"));
    CHECK(jac3(q("x"), q("y"), q("x")).is_zero());
    CHECK(jac3(q("x^2"), q("y^2"), q("z^2")) == q("8*x*y*z"));
    auto f4 = parse_poly("x^2", ctx4());
    CHECK_THROWS_AS(jac3(f4, f4, f4), WrongArity);
}

TEST_CASE("linear substitution") {
    auto f = q("x^2 + y*z");
    std::vector<std::vector<Rational>> m{{Rational(0), Rational(1), Rational(0)},
                                         {Rational(1), Rational(0), Rational(0)},
                                         {Rational(0), Rational(0), Rational(1)}};
    CHECK(substitute_linear(f, m) == q("y^2 + x*z"));
}
