#include <gtest/gtest.h>

#include <ellipscheme/exactpoly.hpp>

#include <random>

#include "brute_roots.hpp"

using namespace ellipscheme;

namespace {

UniPoly u_pow(int n) { return UniPoly::monomial(1, n); }

}  // namespace

TEST(Rational, ParseAndFormat) {
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(format_rational(make_rational(6, -4)), "-3/2");
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
    EXPECT_THROW(parse_rational("1.5"), Error);
}

TEST(Rational, AddThenSubtractIsExact) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int i = 0; i < 500; ++i) {
        Rational x(num(rng), den(rng)), y(num(rng), den(rng));
        x.canonicalize();
        y.canonicalize();
        EXPECT_EQ(Rational(x + y) - y, x);
    }
}

TEST(UniPoly, Arithmetic) {
    const UniPoly u = UniPoly::identity();
    EXPECT_EQ((u + UniPoly::constant(1)) + (u - UniPoly::constant(1)), UniPoly({0, 2}));
    EXPECT_EQ(u * u, u_pow(2));
    EXPECT_TRUE((UniPoly{} * u).is_zero());
    EXPECT_EQ((u - u).degree(), -1);
    EXPECT_EQ(poly_arith(u, u, PolyOp::Sub), UniPoly{});
    EXPECT_EQ(pow(u + UniPoly::constant(1), 3), UniPoly({1, 3, 3, 1}));
}

TEST(UniPoly, DivmodReconstructs) {
    const UniPoly a{5, -3, 0, 2, 7}, b{1, 0, 3};
    auto [quo, rem] = divmod(a, b);
    EXPECT_EQ(quo * b + rem, a);
    EXPECT_LT(rem.degree(), b.degree());
}

TEST(UniPoly, TextFormatRoundTrip) {
    const UniPoly a{0, Rational(-1, 2), 1};
    EXPECT_EQ(format_poly(a), "0 -1/2 1");
    EXPECT_EQ(parse_poly("0 -1/2 1"), a);
    EXPECT_EQ(parse_poly(format_poly(a)), a);
    EXPECT_EQ(format_poly(UniPoly{}), "0");
}

TEST(Gcd, Examples) {
    const UniPoly one = UniPoly::constant(1);
    EXPECT_EQ(squarefree_and_gcd(UniPoly{-1, 0, 1}, UniPoly{-1, 1}).gcd, (UniPoly{-1, 1}));
    const UniPoly sq = pow(UniPoly{-1, 1}, 2);
    EXPECT_EQ(gcd(sq, sq.derivative()), (UniPoly{-1, 1}));
    EXPECT_FALSE(is_squarefree(sq));
    EXPECT_EQ(gcd(UniPoly{1, 0, 1}, UniPoly::identity()), one);
    EXPECT_TRUE(is_squarefree(UniPoly{1, 0, 1}));
}

TEST(Sign, Examples) {
    const UniPoly a{-2, 0, 1};
    EXPECT_EQ(sign_at(a, 0), -1);
    EXPECT_EQ(sign_on_interval(a, -1, 1), -1);
    EXPECT_EQ(sign_at(UniPoly{-1, 1}, 1), 0);
    EXPECT_THROW(sign_on_interval(UniPoly::identity(), -1, 1), Error);
}

TEST(Sign, IntegerPathMatchesRationalHorner) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        UniPoly a = brute::random_poly(rng, 10);
        if (a.is_zero()) continue;
        Rational x(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1);
        x.canonicalize();
        EXPECT_EQ(sign_at(a, x), sgn(a.eval(x)));
    }
}

TEST(Sturm, Examples) {
    auto two = sturm_isolate(UniPoly{-2, 0, 1});
    ASSERT_EQ(two.size(), 2u);
    EXPECT_GE(two[0].lo, -2);
    EXPECT_LE(two[0].hi, -1);
    EXPECT_GE(two[1].lo, 1);
    EXPECT_LE(two[1].hi, 2);
    EXPECT_TRUE(sturm_isolate(UniPoly{1, 0, 1}).empty());
    EXPECT_THROW(sturm_isolate(pow(UniPoly{-1, 1}, 2)), Error);
}

TEST(Sturm, RootAtZeroAndWindow) {
    const UniPoly a{0, -1, 0, 1};  // u^3 - u
    auto all = sturm_isolate(a);
    ASSERT_EQ(all.size(), 3u);
    EXPECT_LT(all[0].hi, all[1].lo);
    EXPECT_LT(all[1].hi, all[2].lo);
    EXPECT_EQ(sturm_isolate(a, IsolatingInterval{0, 1}).size(), 1u);  // (0, 1] holds only 1
    EXPECT_EQ(sturm_isolate(a, IsolatingInterval{-1, 0}).size(), 1u);
    EXPECT_EQ(sturm_isolate(a, IsolatingInterval{Rational(1, 2), 3}).size(), 1u);
}

TEST(Sturm, IntervalsAreTightAndCountOne) {
    const UniPoly a{3, -7, 0, 2, -1, 0, 1};
    SturmSequence s(a);
    for (const auto& iv : sturm_isolate(a)) {
        EXPECT_LE(iv.width(), kDefaultRefineWidth);
        EXPECT_EQ(s.count(iv.lo, iv.hi), 1);
        EXPECT_NE(sign_at(a, iv.lo), 0);
        EXPECT_NE(sign_at(a, iv.hi), 0);
        auto finer = refine(a, iv, Rational(1, 1 << 20));
        EXPECT_EQ(s.count(finer.lo, finer.hi), 1);
        EXPECT_GE(finer.lo, iv.lo);
        EXPECT_LE(finer.hi, iv.hi);
    }
}

TEST(Sturm, RootsOfVeryDifferentSizes) {
    // roots 2^-300, 1 and 2^300
    const Rational tiny = pow2_inv(300), huge = Rational(1) / tiny;
    const UniPoly a = UniPoly{-tiny, 1} * UniPoly{-1, 1} * UniPoly{-huge, 1};
    auto roots = sturm_isolate(a, std::nullopt, std::nullopt);
    ASSERT_EQ(roots.size(), 3u);
    EXPECT_TRUE(roots[0].lo < tiny && tiny < roots[0].hi);
    EXPECT_TRUE(roots[2].lo < huge && huge < roots[2].hi);
}

TEST(Sturm, SignOnRootFreeGaps) {
    const UniPoly a{-6, 11, -6, 1};  // (u-1)(u-2)(u-3)
    auto roots = sturm_isolate(a);
    ASSERT_EQ(roots.size(), 3u);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        const int s = sign_on_interval(a, roots[i].hi, roots[i + 1].lo);
        for (int j = 1; j < 8; ++j) {
            Rational m = roots[i].hi + (roots[i + 1].lo - roots[i].hi) * Rational(j, 8);
            EXPECT_EQ(sign_at(a, m), s);
        }
    }
}

TEST(Cubic, Examples) {
    EXPECT_EQ(ordered_real_roots_of_cubic(-1, 0).size(), 3u);
    EXPECT_EQ(ordered_real_roots_of_cubic(1, 0).size(), 1u);
    EXPECT_THROW(ordered_real_roots_of_cubic(0, 0), Error);
    try {
        ordered_real_roots_of_cubic(-3, 2);  // (x-1)^2 (x+2)
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotSquarefree);
    }
}

TEST(Sturm, AgreesWithFactoredOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        auto fp = brute::random_factored(rng, 12);
        const UniPoly a = fp.expand();
        auto got = sturm_isolate(a);
        ASSERT_EQ(got.size(), fp.roots.size()) << "trial " << trial;
        for (std::size_t i = 0; i < got.size(); ++i)
            EXPECT_TRUE(got[i].lo < fp.roots[i] && fp.roots[i] < got[i].hi) << "trial " << trial;
        EXPECT_EQ(static_cast<int>(got.size()), brute::grid_sign_changes(fp));
    }
}

TEST(Sturm, AgreesWithDenseSampling) {
    std::mt19937_64 rng(77);
    int checked = 0;
    while (checked < 200) {
        UniPoly a = brute::random_poly(rng, 12);
        if (a.degree() < 1 || !is_squarefree(a)) continue;
        ++checked;
        EXPECT_EQ(static_cast<int>(sturm_isolate(a).size()), brute::stable_sign_changes(a)) << format_poly(a);
    }
}
