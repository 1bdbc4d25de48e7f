#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "milnor/parser.hpp"
#include "milnor/points.hpp"

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

std::vector<Rational> pt(std::vector<long> v) {
    std::vector<Rational> p;
    for (long x : v) p.push_back(Rational(x));
    return p;
}

PointSet<QField> pset(std::vector<std::vector<long>> pts, CtxPtr<QField> c = ctx3()) {
    std::vector<std::vector<Rational>> raw;
    for (auto& p : pts) raw.push_back(pt(p));
    return PointSet<QField>::make(c, std::move(raw));
}

}  // namespace

TEST_CASE("point set construction") {
    auto ps = pset({{0, 0, 2}, {3, 0, 3}});
    CHECK(ps.points[0] == pt({0, 0, 1}));
    CHECK(ps.points[1] == pt({1, 0, 1}));
    CHECK_THROWS_AS(pset({{0, 0, 1}, {0, 0, 5}}), InputError);  // projectively equal
    CHECK_THROWS_AS(pset({{0, 0, 0}}), ZeroPoint);
    CHECK_THROWS_AS(pset({{1, 0}}), InputError);  // wrong arity
}

TEST_CASE("node verification") {
    auto f = parse_poly("z*y^2-x^3-x^2*z", ctx3());
    auto st = verify_nodes(f, pset({{0, 0, 1}}));
    CHECK(st == std::vector<NodeStatus>{NodeStatus::Node});

    auto fermat = parse_poly("x^4+y^4+z^4", ctx3());
    CHECK(verify_nodes(fermat, pset({{0, 0, 1}}))[0] == NodeStatus::NotOnHypersurface);

    // smooth point of the nodal cubic
    CHECK(verify_nodes(f, pset({{0, 1, 0}}))[0] == NodeStatus::NotSingular);

    // unibranch non-nodes
    auto g = parse_poly("x^2*y^3+z^5", ctx3());
    auto stg = verify_nodes(g, pset({{1, 0, 0}, {0, 1, 0}}));
    CHECK(stg[0] == NodeStatus::DegenerateSingularity);
    CHECK(stg[1] == NodeStatus::DegenerateSingularity);

    // quartic surface with one node at (0:0:0:1)
    auto s = parse_poly("(x^2+y^2+z^2)*w^2+x^4+y^4+z^4", ctx4());
    CHECK(verify_nodes(s, PointSet<QField>::make(ctx4(), {pt({0, 0, 0, 1})}))[0] == NodeStatus::Node);
}

TEST_CASE("defects of standard configurations") {
    auto one = pset({{1, 2, 1}});
    for (int k = 0; k <= 4; ++k) CHECK(defect(one, k).value == 0);
    CHECK(defect(one, -1).value == 1);

    auto collinear = pset({{0, 0, 1}, {0, 1, 1}, {0, -1, 1}});
    CHECK(defect(collinear, 0).value == 2);
    CHECK(defect(collinear, 1).value == 1);
    CHECK(defect(collinear, 2).value == 0);
    CHECK(defect(collinear, 3).value == 0);

    auto six = pset({{0, 0, 1}, {1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {-1, 1, 1}});
    auto table = defect_table(six, 4);
    CHECK(table.defects == std::vector<int>{5, 3, 1, 0, 0});
}

TEST_CASE("defect properties") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        int npts = 1 + static_cast<int>(rng() % 6);
        std::vector<std::vector<Rational>> raw;
        for (int i = 0; i < npts; ++i) {
            std::vector<Rational> p;
            for (int j = 0; j < 3; ++j) p.push_back(Rational(static_cast<int>(rng() % 5) - 2));
            bool zero = true;
            for (auto& c : p)
                if (sgn(c) != 0) zero = false;
            if (zero) p[2] = 1;
            raw.push_back(std::move(p));
        }
        PointSet<QField> ps = [&raw]() {
            // drop projective duplicates
            std::vector<std::vector<Rational>> keep;
            for (auto& p : raw) {
                try {
                    auto trial_set = keep;
                    trial_set.push_back(p);
                    auto made = PointSet<QField>::make(ctx3(), trial_set);
                    keep.push_back(p);
                } catch (const InputError&) {
                }
            }
            return PointSet<QField>::make(ctx3(), keep);
        }();
        if (ps.size() == 0) continue;
        int prev = ps.size() - 1;
        CHECK(defect(ps, 0).value == ps.size() - 1);
        for (int k = 0; k <= ps.size(); ++k) {
            int d = defect(ps, k).value;
            CHECK(d <= prev);  // non-increasing
            CHECK(d >= 0);
            prev = d;
        }
        CHECK(defect(ps, ps.size() - 1).value == 0);  // points impose independent conditions

        // scaling a representative does not change any defect
        auto scaled = ps.points;
        scaled[0] = ps.points[0];
        for (auto& c : scaled[0]) c *= Rational(5, 3);
        auto ps2 = PointSet<QField>::make(ctx3(), scaled);
        for (int k = 0; k <= 3; ++k) CHECK(defect(ps2, k).value == defect(ps, k).value);
    }
}

TEST_CASE("defect over prime fields with cube roots of unity") {
    // nodes of x*(x^3+y^3+z^3): (0:-1:1), (0:-w:1), (0:-w^2:1) with w^3 = 1
    std::vector<int> defects_seen;
    for (std::uint64_t p : {kDefaultPrime0, kDefaultPrime1}) {
        PFField fp(p);
        REQUIRE((p - 1) % 3 == 0);
        std::uint64_t w = 1;
        for (std::uint64_t a = 2; w == 1; ++a) w = powmod_u64(a, (p - 1) / 3, p);
        REQUIRE(fp.add(fp.add(fp.mul(w, w), w), 1) == 0);
        auto ctx = RingCtx<PFField>::make(3, fp);
        auto ps = PointSet<PFField>::make(
            ctx, {{0, fp.neg(1), 1}, {0, fp.neg(w), 1}, {0, fp.neg(fp.mul(w, w)), 1}});
        auto f = parse_poly<PFField>("x*(x^3+y^3+z^3)", ctx);
        auto statuses = verify_nodes(f, ps);
        for (auto s : statuses) CHECK(s == NodeStatus::Node);
        for (int k = 0; k <= 2; ++k) defects_seen.push_back(defect(ps, k).value);
    }
    // certified by agreement across the two primes
    CHECK(defects_seen == std::vector<int>{2, 1, 0, 2, 1, 0});
}

TEST_CASE("point file parsing") {
    auto data = parse_point_file("# nodes\nprime: 2147483647\n0 -1 1  # first\n0 5 1\n");
    REQUIRE(data.prime.has_value());
    CHECK(*data.prime == 2147483647ull);
    REQUIRE(data.coords.size() == 2);
    CHECK(data.coords[0] == std::vector<std::string>{"0", "-1", "1"});

    auto qdata = parse_point_file("1/2 0 1\n");
    auto ps = points_from_strings<QField>(ctx3(), qdata.coords);
    CHECK(ps.points[0][0] == Rational(1, 2));
    CHECK_THROWS_AS(points_from_strings<QField>(ctx3(), {{"a", "0", "1"}}), InputError);
}
