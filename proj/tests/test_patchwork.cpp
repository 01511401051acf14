#include <gtest/gtest.h>

#include <ellipscheme/fixtures.hpp>
#include <ellipscheme/patchwork.hpp>

#include <bit>
#include <cstdlib>
#include <set>
#include <map>

using namespace ellipscheme;

namespace {

const FixtureSet& fx() {
    static const FixtureSet f = embedded_fixtures();
    return f;
}

LatticeTriangulation fan(int k) {
    LatticeTriangulation t;
    t.k = k;
    for (int i = 0; i <= 6 * k; ++i) t.vertices.push_back({i, 0});
    t.vertices.push_back({0, 3});
    const int apex = 6 * k + 1;
    for (int i = 0; i < 6 * k; ++i) t.triangles.push_back({i, i + 1, apex});
    return t;
}

bool has_kind(const std::vector<Violation>& vs, Violation::Kind k) {
    for (const auto& v : vs)
        if (v.kind == k) return true;
    return false;
}

/// Index of the oval around the same vertex set after a collapse.
int find_oval(const PatchworkClassification& cls, const std::vector<int>& surrounded) {
    for (int i = 0; i < static_cast<int>(cls.ovals.size()); ++i)
        if (cls.ovals[i].surrounded == surrounded) return i;
    return -1;
}

}  // namespace

TEST(Validate, FanIsOk) {
    for (int k : {1, 2, 3}) EXPECT_TRUE(validate(fan(k)).empty()) << "k=" << k;
}

TEST(Validate, Violations) {
    auto overlap = fan(1);
    overlap.triangles.push_back({0, 2, 7});
    EXPECT_TRUE(has_kind(validate(overlap), Violation::Kind::ImproperIntersection));

    auto outside = fan(1);
    outside.vertices.push_back({7, 0});
    outside.triangles.back() = {5, 8, 7};
    EXPECT_TRUE(has_kind(validate(outside), Violation::Kind::VertexOutside));

    auto bad = fan(1);
    bad.triangles.push_back({0, 1, 42});
    EXPECT_TRUE(has_kind(validate(bad), Violation::Kind::BadIndex));

    auto hole = fan(1);
    hole.triangles.pop_back();
    EXPECT_FALSE(validate(hole).empty());
}

TEST(Lifting, FanEmptyHistory) {
    const auto t = fan(1);
    const auto lift = build_lifting(t, {});
    EXPECT_TRUE(certify_convex(t, lift));
    EXPECT_EQ(lift.heights[t.apex()], 0);
    EXPECT_EQ(lift.heights[3], 9);
}

TEST(Lifting, OneAndTwoNestedRefinements) {
    LatticeTriangulation t;
    t.k = 1;
    t.vertices = {{0, 0}, {6, 0}, {0, 3}, {1, 1}};
    t.triangles = {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}};
    const RefinementHistory one{{{0, 1, 2}, 3}};
    const auto lift1 = build_lifting(t, one);
    EXPECT_TRUE(certify_convex(t, lift1));
    EXPECT_LT(lift1.heights[3], detail::plane_value(t, lift1.heights, {0, 1, 2}, t.vertices[3]));

    t.vertices.push_back({2, 1});
    t.triangles = {{0, 1, 3}, {0, 2, 3}, {1, 3, 4}, {2, 3, 4}, {1, 2, 4}};
    const RefinementHistory two{{{0, 1, 2}, 3}, {{1, 2, 3}, 4}};
    EXPECT_TRUE(validate(t).empty());
    const auto lift2 = build_lifting(t, two);
    EXPECT_TRUE(certify_convex(t, lift2));

    auto flat = lift2;
    flat.heights[4] = detail::plane_value(t, lift2.heights, {1, 2, 3}, t.vertices[4]);
    EXPECT_FALSE(certify_convex(t, flat));
}

TEST(Lifting, HistoryMismatch) {
    auto t = fan(1);
    t.vertices.push_back({1, 1});
    try {
        build_lifting(t, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotRefinementShaped);
    }
    // (1,1) is not interior to the first fan triangle
    EXPECT_THROW(build_lifting(t, {{{0, 1, 7}, 8}}), Error);
}

TEST(Lifting, FixturesCertify) {
    for (int k : {1, 2}) {
        for (int l = 0; l <= k; ++l) {
            const auto c = mcurve_family(k, l, fx());
            EXPECT_TRUE(validate(c.tri).empty());
            EXPECT_TRUE(certify_convex(c.tri, build_lifting(c.tri, c.history)));
        }
    }
}

TEST(Symmetrize, SignRule) {
    LatticeTriangulation t;
    t.vertices = {{1, 2}, {0, 0}, {2, 0}};
    const auto q = symmetrize(t, {1, -1, -1});
    auto sign_of = [&](LatticePoint p) { return q.signs[q.index_of(p)]; };
    EXPECT_EQ(sign_of({1, 2}), 1);
    EXPECT_EQ(sign_of({-1, 2}), -1);
    EXPECT_EQ(sign_of({1, -2}), 1);
    EXPECT_EQ(sign_of({-1, -2}), -1);
    EXPECT_EQ(sign_of({0, 0}), -1);
    EXPECT_EQ(sign_of({-2, 0}), -1);
    EXPECT_EQ(std::count(q.vertices.begin(), q.vertices.end(), LatticePoint{0, 0}), 1);
}

TEST(Symmetrize, FirstQuadrantRoundTrip) {
    const auto c = mcurve_family(1, 1, fx());
    const auto q = symmetrize(c.tri, c.signs);
    LatticeTriangulation back;
    back.k = q.k;
    SignDistribution signs;
    std::map<int, int> index;
    for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) {
        if (q.vertices[v].i1 < 0 || q.vertices[v].i2 < 0) continue;
        index[v] = static_cast<int>(back.vertices.size());
        back.vertices.push_back(q.vertices[v]);
        signs.push_back(q.signs[v]);
    }
    for (const auto& t : q.triangles) {
        if (!index.contains(t[0]) || !index.contains(t[1]) || !index.contains(t[2])) continue;
        back.triangles.push_back({index[t[0]], index[t[1]], index[t[2]]});
    }
    ASSERT_EQ(back.triangles.size(), c.tri.triangles.size());
    const auto again = symmetrize(back, signs);
    EXPECT_EQ(again.vertices, q.vertices);
    EXPECT_EQ(again.signs, q.signs);
    std::set<Triangle> a, b;
    for (auto t : q.triangles) a.insert(sorted(t));
    for (auto t : again.triangles) b.insert(sorted(t));
    EXPECT_EQ(a, b);
}

TEST(Trace, SingleTriangleSegment) {
    // the four quadrant copies of (0,0)+, (1,0)-, (0,1)-
    QuadTriangulation q;
    q.vertices = {{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}};
    q.signs = {-1, -1, 1, -1, -1};
    q.base_vertex = {1, 2, 0, 2, 1};
    q.triangles = {{2, 4, 3}, {2, 0, 3}, {2, 4, 1}, {2, 0, 1}};
    const auto curve = trace_curve(q);
    ASSERT_EQ(curve.segments.size(), 4u);
    const auto& s = curve.segments[0];
    std::set<HalfPoint> ends{s.a, s.b};
    EXPECT_EQ(ends, (std::set<HalfPoint>{{1, 0}, {0, 1}}));
    ASSERT_EQ(curve.components.size(), 1u);
    EXPECT_EQ(curve.components[0].glue_crossings, 0);
    // an oval around (0,0) but nothing wraps the base, so there is no scheme
    try {
        classify_components(curve);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnclassifiableOval);
    }
}

TEST(Trace, UniformSignsGiveNoCurve) {
    QuadTriangulation q;
    q.vertices = {{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}};
    q.signs = {1, 1, 1, 1, 1};
    q.base_vertex = {1, 2, 0, 2, 1};
    q.triangles = {{2, 4, 3}, {2, 0, 3}, {2, 4, 1}, {2, 0, 1}};
    const auto curve = trace_curve(q);
    EXPECT_TRUE(curve.segments.empty());
    EXPECT_TRUE(curve.components.empty());
}

TEST(Trace, SegmentPerMixedTriangle) {
    for (int k : {1, 2}) {
        const auto c = mcurve_family(k, 0, fx());
        const auto q = symmetrize(c.tri, c.signs);
        const auto curve = trace_curve(q);
        std::size_t mixed = 0;
        for (const auto& t : q.triangles)
            mixed += !(q.signs[t[0]] == q.signs[t[1]] && q.signs[t[1]] == q.signs[t[2]]);
        EXPECT_EQ(curve.segments.size(), mixed);
    }
}

TEST(PatchworkScheme, McurveFamily) {
    EXPECT_EQ(classify_construction(mcurve_family(1, 0, fx())).scheme, RealScheme::ovals(0, 4));
    EXPECT_EQ(classify_construction(mcurve_family(1, 1, fx())).signed_scheme(), "<4|0>");
    const auto k2 = classify_construction(mcurve_family(2, 1, fx()));
    EXPECT_EQ(k2.scheme, RealScheme::ovals(5, 5));
    EXPECT_EQ(k2.component_count(), 11);
    for (int k = 1; k <= 3; ++k)
        for (int l = 0; l <= k; ++l) {
            const auto cls = classify_construction(mcurve_family(k, l, fx()));
            EXPECT_EQ(cls.component_count(), 6 * k - 1) << k << " " << l;
            EXPECT_EQ(cls.scheme, RealScheme::ovals(k - 1 + 4 * l, 5 * k - 1 - 4 * l)) << k << " " << l;
            EXPECT_EQ(cls.pseudo_lines, 1);
        }
}

TEST(PatchworkScheme, M2Family) {
    EXPECT_EQ(classify_construction(m2curve_family(1, 0, fx())).scheme, RealScheme::ovals(1, 1));
    EXPECT_EQ(classify_construction(m2curve_family(2, 0, fx())).scheme, RealScheme::ovals(2, 6));
    const auto l1 = classify_construction(m2curve_family(2, 1, fx()));
    EXPECT_EQ(l1.scheme, RealScheme::ovals(2, 6));
    EXPECT_NE(format_construction(m2curve_family(2, 0, fx())), format_construction(m2curve_family(2, 1, fx())));
    for (int k = 1; k <= 3; ++k)
        for (int l = 0; l <= k - 1; ++l)
            EXPECT_EQ(classify_construction(m2curve_family(k, l, fx())).scheme, RealScheme::ovals(k + 4 * l, 5 * k - 4 - 4 * l));
}

TEST(PatchworkScheme, FamilyRanges) {
    EXPECT_THROW(mcurve_family(1, 2, fx()), Error);
    EXPECT_THROW(m2curve_family(1, 1, fx()), Error);
    EXPECT_THROW(mcurve_family(0, 0, fx()), Error);
}

TEST(PatchworkScheme, UniformBaseSigns) {
    // every vertex of T positive: the reflections still create sign changes
    LatticeTriangulation t = fan(1);
    SignDistribution plus(t.vertices.size(), 1);
    const auto curve = trace_curve(symmetrize(t, plus));
    int crossings = 0;
    for (const auto& c : curve.components) crossings += c.glue_crossings;
    EXPECT_EQ(crossings % 2, 1);
    const auto cls = classify_components(curve);
    EXPECT_EQ(cls.scheme, RealScheme::ovals(0, 0));
}

TEST(Collapse, Examples) {
    const auto m = mcurve_family(1, 1, fx());
    const auto two = collapse_to(m, 2, 0);
    EXPECT_EQ(classify_construction(two).signed_scheme(), "<2|0>");
    EXPECT_EQ(classify_construction(collapse_ovals(m, {})).signed_scheme(), "<4|0>");
    const auto m2 = m2curve_family(1, 0, fx());
    EXPECT_EQ(classify_construction(collapse_to(m2, 1, 0)).signed_scheme(), "<1|0>");
    EXPECT_THROW(collapse_ovals(m, {9}), Error);
    EXPECT_THROW(collapse_to(m, 5, 0), Error);
}

TEST(Collapse, DisjointCollapsesCommute) {
    const auto m = mcurve_family(1, 1, fx());
    const auto cls = classify_construction(m);
    const int n = static_cast<int>(cls.ovals.size());
    auto targets_of = [n](int mask) {
        std::vector<int> t;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) t.push_back(i);
        return t;
    };
    auto accepted = [&](int mask) {
        try {
            collapse_ovals(m, targets_of(mask));
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    int pairs = 0;
    for (int x = 1; x < (1 << n); ++x)
        for (int y = 1; y < (1 << n); ++y) {
            if ((x & y) || !accepted(x) || !accepted(y) || !accepted(x | y)) continue;
            ++pairs;
            const auto both = collapse_ovals(m, targets_of(x | y));
            EXPECT_EQ(classify_construction(both).component_count(), cls.component_count() - std::popcount(unsigned(x | y)));
            const auto step = collapse_ovals(m, targets_of(x));
            const auto mid = classify_construction(step);
            std::vector<int> rest;
            for (int i : targets_of(y)) {
                const int idx = find_oval(mid, cls.ovals[i].surrounded);
                ASSERT_GE(idx, 0);
                rest.push_back(idx);
            }
            EXPECT_EQ(collapse_ovals(step, rest).signs, both.signs);
        }
    EXPECT_GE(pairs, 2);
}

TEST(Collapse, EveryPlusCountReachable) {
    const auto m = mcurve_family(1, 1, fx());
    for (int a = 0; a <= 4; ++a) {
        const auto c = classify_construction(collapse_to(m, a, 0));
        EXPECT_EQ(c.signed_scheme(), "<" + std::to_string(a) + "|0>");
        EXPECT_EQ(c.pseudo_lines, 1);
    }
    // the ovals around (2,1) and (-2,1) share one coefficient and cannot be split
    const auto cls = classify_construction(m);
    const QuadTriangulation q = symmetrize(m.tri, m.signs);
    for (int i = 0; i < static_cast<int>(cls.ovals.size()); ++i) {
        if (q.vertices[cls.ovals[i].surrounded[0]] == LatticePoint{-2, 1}) {
            EXPECT_THROW(collapse_ovals(m, {i}), Error);
        }
    }
}

TEST(TPolynomial, Terms) {
    LatticeTriangulation t;
    t.vertices = {{0, 3}};
    ConvexLifting lift{{Rational(0)}};
    const auto r = emit_T_polynomial({t, {1}, lift, Rational(1, 2)});
    EXPECT_EQ(r.coeff_of_x(3), UniPoly::constant(1));
    EXPECT_EQ(r.term_count(), 1u);

    t.vertices = {{1, 0}};
    lift.heights = {Rational(2)};
    const auto s = emit_T_polynomial({t, {-1}, lift, Rational(1, 2)});
    EXPECT_EQ(s.coeff_of_x(0), (UniPoly{0, Rational(-1, 4)}));

    const auto c = mcurve_family(1, 0, fx());
    const auto full = emit_T_polynomial({c.tri, c.signs, build_lifting(c.tri, c.history), Rational(1, 2)});
    EXPECT_EQ(full.term_count(), c.tri.vertices.size());
    EXPECT_THROW(emit_T_polynomial({c.tri, c.signs, build_lifting(c.tri, c.history), Rational(0)}), Error);
}

TEST(Oracle, AgreesOnAllFirstLevelFixtures) {
    struct Case {
        Construction c;
        RealScheme want;
    };
    const std::vector<Case> cases{{mcurve_family(1, 0, fx()), RealScheme::ovals(0, 4)},
                                  {mcurve_family(1, 1, fx()), RealScheme::ovals(0, 4)},
                                  {m2curve_family(1, 0, fx()), RealScheme::ovals(1, 1)}};
    for (const auto& cs : cases) {
        const auto rep = patchwork_oracle(cs.c);
        EXPECT_EQ(rep.combinatorial, cs.want);
        ASSERT_GE(rep.steps.size(), 3u);
        for (std::size_t i = rep.steps.size() - 3; i < rep.steps.size(); ++i) EXPECT_EQ(rep.steps[i].scheme, cs.want);
        EXPECT_TRUE(check_generic(rep.curve).generic());
    }
}

TEST(Fixtures, FilesMatchEmbeddedCopy) {
    const auto files = load_fixtures(ELLIPSCHEME_SOURCE_FIXTURE_DIR);
    EXPECT_EQ(format_construction(files.big_plus), format_construction(parse_construction(fixture_text::kBigPlus)));
    EXPECT_EQ(format_construction(files.big_minus), format_construction(parse_construction(fixture_text::kBigMinus)));
    EXPECT_EQ(format_construction(files.small), format_construction(parse_construction(fixture_text::kSmall)));
    EXPECT_EQ(format_construction(files.big_modified),
              format_construction(parse_construction(fixture_text::kBigModified)));
}

TEST(Fixtures, LoadAndOverride) {
    const auto loaded = load_fixtures(ELLIPSCHEME_SOURCE_FIXTURE_DIR);
    EXPECT_EQ(format_construction(loaded.big_plus), format_construction(fx().big_plus));
    EXPECT_THROW(load_fixtures("/nonexistent/fixture/dir"), Error);
    ::setenv("ELLIPSCHEME_FIXTURE_DIR", ELLIPSCHEME_SOURCE_FIXTURE_DIR, 1);
    EXPECT_EQ(format_construction(default_fixtures().small), format_construction(fx().small));
    ::setenv("ELLIPSCHEME_FIXTURE_DIR", "/nonexistent/fixture/dir", 1);
    EXPECT_THROW(default_fixtures(), Error);
    ::unsetenv("ELLIPSCHEME_FIXTURE_DIR");
}

TEST(Fixtures, ConstructionTextRoundTrip) {
    for (const auto& c : {mcurve_family(2, 1, fx()), m2curve_family(1, 0, fx())}) {
        const auto back = parse_construction(format_construction(c));
        EXPECT_EQ(back.tri.k, c.tri.k);
        EXPECT_EQ(back.tri.vertices, c.tri.vertices);
        EXPECT_EQ(back.tri.triangles, c.tri.triangles);
        EXPECT_EQ(back.signs, c.signs);
        EXPECT_EQ(back.history, c.history);
    }
    EXPECT_THROW(parse_construction("0 0 +\n1 0 ?\n"), Error);
}

TEST(Render, PatchworkSvg) {
    const auto c = mcurve_family(1, 1, fx());
    const auto curve = trace_curve(symmetrize(c.tri, c.signs));
    const std::string svg = render_patchwork_svg(curve);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    std::size_t lines = 0;
    for (std::size_t pos = svg.find("<line"); pos != std::string::npos; pos = svg.find("<line", pos + 1)) ++lines;
    EXPECT_GE(lines, curve.segments.size());
}
