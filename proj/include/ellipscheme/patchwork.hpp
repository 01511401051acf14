#ifndef ELLIPSCHEME_PATCHWORK_HPP
#define ELLIPSCHEME_PATCHWORK_HPP

// Combinatorial patchworking for trigonal curves on F_2k.
//
// Input is a lattice triangulation of T = conv{(0,0), (6k,0), (0,3)} with a
// sign at every vertex. The triangulation is reflected into the quadrangle
// Q = conv{(+-6k,0), (0,+-3)}, signs follow s(e1 i1, e2 i2) = e1^i1 e2^i2 s(i1,i2),
// and every triangle with mixed signs contributes the segment joining the
// midpoints of its two mixed edges. The resulting piecewise-linear curve is
// isotopic to the real part of the T-polynomial curve for small t > 0.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "exactpoly.hpp"
#include "trigonal.hpp"

namespace ellipscheme {

struct LatticePoint {
    int i1 = 0;
    int i2 = 0;

    auto operator<=>(const LatticePoint&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const LatticePoint& p) {
    return os << "(" << p.i1 << "," << p.i2 << ")";
}

using Triangle = std::array<int, 3>;

inline Triangle sorted(Triangle t) {
    std::sort(t.begin(), t.end());
    return t;
}

namespace detail {

/// Twice the signed area of (a, b, c).
inline std::int64_t orient(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    return static_cast<std::int64_t>(b.i1 - a.i1) * (c.i2 - a.i2) - static_cast<std::int64_t>(b.i2 - a.i2) * (c.i1 - a.i1);
}

inline bool strictly_inside(const LatticePoint& p, const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    auto o = orient(a, b, c);
    auto s1 = orient(a, b, p), s2 = orient(b, c, p), s3 = orient(c, a, p);
    if (o < 0) {
        s1 = -s1;
        s2 = -s2;
        s3 = -s3;
    }
    return s1 > 0 && s2 > 0 && s3 > 0;
}

inline bool in_closed_triangle(const LatticePoint& p, const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    auto o = orient(a, b, c);
    auto s1 = orient(a, b, p), s2 = orient(b, c, p), s3 = orient(c, a, p);
    if (o < 0) {
        s1 = -s1;
        s2 = -s2;
        s3 = -s3;
    }
    return s1 >= 0 && s2 >= 0 && s3 >= 0;
}

}  // namespace detail

struct LatticeTriangulation {
    int k = 1;
    std::vector<LatticePoint> vertices;
    std::vector<Triangle> triangles;

    int index_of(const LatticePoint& p) const {
        auto it = std::find(vertices.begin(), vertices.end(), p);
        return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
    }
    int apex() const { return index_of({0, 3}); }
};

/// Sign (+1 or -1) per triangulation vertex, aligned with `vertices`.
using SignDistribution = std::vector<int>;

/// Subdivision of one triangle (given by vertex indices) into three through an interior vertex.
struct Refinement {
    Triangle parent;
    int point;

    friend bool operator==(const Refinement&, const Refinement&) = default;
};

using RefinementHistory = std::vector<Refinement>;

/// Triangulation, signs and the refinement history certifying convexity.
struct Construction {
    LatticeTriangulation tri;
    SignDistribution signs;
    RefinementHistory history;
};

// ---------------------------------------------------------------- validate

struct Violation {
    enum class Kind { BadIndex, VertexOutside, MissingCorner, Degenerate, ImproperIntersection, AreaMismatch };
    Kind kind;
    std::string detail;
};

inline std::string_view to_string(Violation::Kind k) {
    switch (k) {
    case Violation::Kind::BadIndex: return "bad index";
    case Violation::Kind::VertexOutside: return "vertex outside";
    case Violation::Kind::MissingCorner: return "missing corner";
    case Violation::Kind::Degenerate: return "degenerate triangle";
    case Violation::Kind::ImproperIntersection: return "improper intersection";
    case Violation::Kind::AreaMismatch: return "area mismatch";
    }
    return "?";
}

namespace detail {

/// True when the interiors of two triangles are disjoint (separating axis test on edge lines).
inline bool interiors_disjoint(const std::array<LatticePoint, 3>& s, const std::array<LatticePoint, 3>& t) {
    auto separated_by = [](const std::array<LatticePoint, 3>& a, const std::array<LatticePoint, 3>& b) {
        const std::int64_t o = orient(a[0], a[1], a[2]);
        for (int e = 0; e < 3; ++e) {
            const auto& p = a[e];
            const auto& q = a[(e + 1) % 3];
            bool all_out = true;
            for (const auto& r : b) {
                std::int64_t side = orient(p, q, r);
                if (o < 0) side = -side;
                if (side > 0) {
                    all_out = false;
                    break;
                }
            }
            if (all_out) return true;
        }
        return false;
    };
    return separated_by(s, t) || separated_by(t, s);
}

}  // namespace detail

/// Structural checks on a triangulation of T. Never throws.
inline std::vector<Violation> validate(const LatticeTriangulation& tri) {
    std::vector<Violation> out;
    const int k = tri.k;
    const int n = static_cast<int>(tri.vertices.size());
    auto inside_t = [k](const LatticePoint& p) { return p.i1 >= 0 && p.i2 >= 0 && p.i1 + 2 * k * p.i2 <= 6 * k; };
    for (const auto& v : tri.vertices) {
        if (!inside_t(v)) {
            std::ostringstream s;
            s << v;
            out.push_back({Violation::Kind::VertexOutside, s.str()});
        }
    }
    for (LatticePoint c : {LatticePoint{0, 0}, LatticePoint{6 * k, 0}, LatticePoint{0, 3}}) {
        if (tri.index_of(c) < 0) {
            std::ostringstream s;
            s << c;
            out.push_back({Violation::Kind::MissingCorner, s.str()});
        }
    }
    std::int64_t area2 = 0;
    std::vector<std::array<LatticePoint, 3>> pts;
    for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
        const auto& tr = tri.triangles[t];
        if (std::any_of(tr.begin(), tr.end(), [n](int i) { return i < 0 || i >= n; })) {
            out.push_back({Violation::Kind::BadIndex, "triangle " + std::to_string(t)});
            continue;
        }
        std::array<LatticePoint, 3> p{tri.vertices[tr[0]], tri.vertices[tr[1]], tri.vertices[tr[2]]};
        std::int64_t o = detail::orient(p[0], p[1], p[2]);
        if (o == 0) {
            out.push_back({Violation::Kind::Degenerate, "triangle " + std::to_string(t)});
            continue;
        }
        area2 += o < 0 ? -o : o;
        pts.push_back(p);
        for (int v = 0; v < n; ++v) {
            if (v == tr[0] || v == tr[1] || v == tr[2]) continue;
            if (detail::in_closed_triangle(tri.vertices[v], p[0], p[1], p[2])) {
                std::ostringstream s;
                s << "vertex " << tri.vertices[v] << " lies on triangle " << t;
                out.push_back({Violation::Kind::ImproperIntersection, s.str()});
            }
        }
    }
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            if (!detail::interiors_disjoint(pts[a], pts[b]))
                out.push_back({Violation::Kind::ImproperIntersection,
                               "triangles " + std::to_string(a) + " and " + std::to_string(b) + " overlap"});
    if (area2 != 18 * static_cast<std::int64_t>(k))
        out.push_back({Violation::Kind::AreaMismatch,
                       "doubled area " + std::to_string(area2) + " != " + std::to_string(18 * k)});
    return out;
}

// ---------------------------------------------------------------- lifting

/// Heights nu at the vertices; the piecewise-linear interpolation is convex
/// and bends across every interior edge.
struct ConvexLifting {
    std::vector<Rational> heights;
};

namespace detail {

/// Value at p of the affine function through the lifted corners of tr.
inline Rational plane_value(const LatticeTriangulation& tri, const std::vector<Rational>& h, const Triangle& tr,
                            const LatticePoint& p) {
    const auto& a = tri.vertices[tr[0]];
    const auto& b = tri.vertices[tr[1]];
    const auto& c = tri.vertices[tr[2]];
    const Rational total(static_cast<long>(orient(a, b, c)));
    Rational v = h[tr[0]] * static_cast<long>(orient(p, b, c)) + h[tr[1]] * static_cast<long>(orient(a, p, c)) +
                 h[tr[2]] * static_cast<long>(orient(a, b, p));
    return v / total;
}

/// Replays the history from the fan over the bottom vertices. Returns the
/// triangles in creation order together with the refinement parents.
inline std::vector<Triangle> replay_history(const LatticeTriangulation& tri, const RefinementHistory& history) {
    const int apex = tri.apex();
    if (apex < 0) throw Error(ErrorCode::NotRefinementShaped, "apex (0,3) missing");
    std::set<int> refined;
    for (const auto& r : history) {
        if (!refined.insert(r.point).second)
            throw Error(ErrorCode::NotRefinementShaped, "vertex inserted twice");
    }
    std::vector<int> bottom;
    for (int v = 0; v < static_cast<int>(tri.vertices.size()); ++v) {
        if (refined.contains(v) || v == apex) continue;
        if (tri.vertices[v].i2 != 0)
            throw Error(ErrorCode::NotRefinementShaped, "vertex off the bottom edge is not introduced by a refinement");
        bottom.push_back(v);
    }
    std::sort(bottom.begin(), bottom.end(), [&](int a, int b) { return tri.vertices[a].i1 < tri.vertices[b].i1; });
    std::vector<Triangle> cur;
    for (std::size_t i = 0; i + 1 < bottom.size(); ++i) cur.push_back(sorted({bottom[i], bottom[i + 1], apex}));
    for (const auto& r : history) {
        Triangle par = sorted(r.parent);
        auto it = std::find(cur.begin(), cur.end(), par);
        if (it == cur.end()) throw Error(ErrorCode::NotRefinementShaped, "refinement parent is not a current triangle");
        const auto& p = tri.vertices[r.point];
        if (!strictly_inside(p, tri.vertices[par[0]], tri.vertices[par[1]], tri.vertices[par[2]]))
            throw Error(ErrorCode::NotRefinementShaped, "refinement point is not interior to its parent");
        cur.erase(it);
        cur.push_back(sorted({par[0], par[1], r.point}));
        cur.push_back(sorted({par[1], par[2], r.point}));
        cur.push_back(sorted({par[0], par[2], r.point}));
    }
    std::vector<Triangle> want;
    for (auto t : tri.triangles) want.push_back(sorted(t));
    std::vector<Triangle> got = cur;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) throw Error(ErrorCode::NotRefinementShaped, "history does not reproduce the triangulation");
    return cur;
}

}  // namespace detail

/// Exact strict-convexity certificate: across every interior edge the far
/// vertex of each neighbour lies strictly above the other triangle's plane.
inline bool certify_convex(const LatticeTriangulation& tri, const ConvexLifting& lift) {
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (int t = 0; t < static_cast<int>(tri.triangles.size()); ++t) {
        const auto& tr = tri.triangles[t];
        for (int e = 0; e < 3; ++e) {
            int a = tr[e], b = tr[(e + 1) % 3];
            edge_tris[{std::min(a, b), std::max(a, b)}].push_back(t);
        }
    }
    for (const auto& [edge, ts] : edge_tris) {
        if (ts.size() != 2) continue;
        for (int side = 0; side < 2; ++side) {
            const Triangle& here = tri.triangles[ts[side]];
            const Triangle& there = tri.triangles[ts[1 - side]];
            int far = -1;
            for (int v : there)
                if (v != edge.first && v != edge.second) far = v;
            if (lift.heights[far] <= detail::plane_value(tri, lift.heights, here, tri.vertices[far])) return false;
        }
    }
    return true;
}

/// Heights nu(i,0) = i^2 and nu(0,3) = 0 on the fan, then each refinement
/// vertex sits below its parent's plane by iota_j = scale / 4^j, where j is
/// the nesting depth of the refinement (refinements of disjoint triangles do
/// not interact). The scale halves until the exact certificate passes.
inline ConvexLifting build_lifting(const LatticeTriangulation& tri, const RefinementHistory& history) {
    detail::replay_history(tri, history);
    Rational scale = 1;
    for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
        ConvexLifting lift;
        lift.heights.assign(tri.vertices.size(), Rational(0));
        for (std::size_t v = 0; v < tri.vertices.size(); ++v)
            if (tri.vertices[v].i2 == 0) lift.heights[v] = Rational(tri.vertices[v].i1) * tri.vertices[v].i1;
        std::map<Triangle, int> depth;  // nesting depth of each triangle created by a refinement
        for (const auto& r : history) {
            const Triangle par = sorted(r.parent);
            const int j = (depth.contains(par) ? depth[par] : 0) + 1;
            lift.heights[r.point] =
                detail::plane_value(tri, lift.heights, r.parent, tri.vertices[r.point]) - scale / pow(Rational(4), j);
            for (int e = 0; e < 3; ++e) depth[sorted({par[e], par[(e + 1) % 3], r.point})] = j;
        }
        if (certify_convex(tri, lift)) return lift;
        scale /= 2;
    }
    throw Error(ErrorCode::CertificationFailed, "no iota schedule certified convexity");
}

// ---------------------------------------------------------------- symmetrize

/// s(e1 i1, e2 i2) = e1^i1 * e2^i2 * s(i1, i2).
inline int reflected_sign(int s, const LatticePoint& base, int e1, int e2) {
    if (e1 < 0 && base.i1 % 2 != 0) s = -s;
    if (e2 < 0 && base.i2 % 2 != 0) s = -s;
    return s;
}

/// Triangulation of Q made of the four reflected copies of T.
struct QuadTriangulation {
    int k = 1;
    std::vector<LatticePoint> vertices;
    std::vector<int> signs;
    std::vector<Triangle> triangles;
    std::vector<int> base_vertex;  // index of the vertex of T this one reflects

    int index_of(const LatticePoint& p) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
        return it != vertices.end() && *it == p ? static_cast<int>(it - vertices.begin()) : -1;
    }
};

inline QuadTriangulation symmetrize(const LatticeTriangulation& tri, const SignDistribution& signs) {
    if (signs.size() != tri.vertices.size())
        throw Error(ErrorCode::InvalidFixture, "sign distribution does not match the vertex set");
    QuadTriangulation q;
    q.k = tri.k;
    std::map<LatticePoint, std::pair<int, int>> pts;  // point -> (sign, base vertex)
    constexpr std::array<std::array<int, 2>, 4> quadrants{{{1, 1}, {-1, 1}, {1, -1}, {-1, -1}}};
    for (std::size_t v = 0; v < tri.vertices.size(); ++v) {
        const auto& b = tri.vertices[v];
        for (auto [e1, e2] : quadrants)
            pts.emplace(LatticePoint{e1 * b.i1, e2 * b.i2}, std::pair{reflected_sign(signs[v], b, e1, e2), static_cast<int>(v)});
    }
    for (const auto& [p, sb] : pts) {
        q.vertices.push_back(p);
        q.signs.push_back(sb.first);
        q.base_vertex.push_back(sb.second);
    }
    for (auto [e1, e2] : quadrants) {
        for (const auto& t : tri.triangles) {
            Triangle r;
            for (int i = 0; i < 3; ++i) {
                const auto& b = tri.vertices[t[i]];
                r[i] = q.index_of({e1 * b.i1, e2 * b.i2});
            }
            q.triangles.push_back(r);
        }
    }
    return q;
}

// ---------------------------------------------------------------- tracing

/// Point with half-integer coordinates, stored doubled so everything stays integral.
struct HalfPoint {
    std::int64_t x2 = 0;
    std::int64_t y2 = 0;

    auto operator<=>(const HalfPoint&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const HalfPoint& p) {
    auto half = [&](std::int64_t v) {
        if (v % 2 == 0) return std::to_string(v / 2);
        return std::to_string(v) + "/2";
    };
    return os << "(" << half(p.x2) << "," << half(p.y2) << ")";
}

using Edge = std::pair<int, int>;

inline Edge make_edge(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

struct Segment {
    HalfPoint a;
    HalfPoint b;
    Edge edge_a;
    Edge edge_b;
    int triangle;
};

enum class ComponentKind { Oval, PseudoLine };

/// One closed component after gluing the boundary of Q.
struct CurveComponent {
    std::vector<int> segments;
    std::vector<HalfPoint> polygon;  // midpoints in cyclic order (unglued coordinates)
    int glue_crossings = 0;
};

struct PatchworkCurve {
    QuadTriangulation quad;
    std::vector<Segment> segments;
    std::vector<CurveComponent> components;
};

namespace detail {

inline HalfPoint midpoint(const QuadTriangulation& q, const Edge& e) {
    const auto& a = q.vertices[e.first];
    const auto& b = q.vertices[e.second];
    return {a.i1 + b.i1, a.i2 + b.i2};
}

}  // namespace detail

/// Selects one segment per mixed-sign triangle and chains the segments into
/// closed components, gluing the upper-right side of Q to the upper-left one
/// and the lower-right side to the lower-left one through (i1,i2) -> (-i1,i2).
inline PatchworkCurve trace_curve(const QuadTriangulation& quad) {
    PatchworkCurve curve;
    curve.quad = quad;
    std::map<Edge, int> edge_count;
    for (const auto& t : quad.triangles)
        for (int e = 0; e < 3; ++e) ++edge_count[make_edge(t[e], t[(e + 1) % 3])];

    std::map<Edge, std::vector<int>> node_segments;
    for (int ti = 0; ti < static_cast<int>(quad.triangles.size()); ++ti) {
        const auto& t = quad.triangles[ti];
        std::vector<Edge> mixed;
        for (int e = 0; e < 3; ++e)
            if (quad.signs[t[e]] != quad.signs[t[(e + 1) % 3]]) mixed.push_back(make_edge(t[e], t[(e + 1) % 3]));
        if (mixed.empty()) continue;
        Segment s{detail::midpoint(quad, mixed[0]), detail::midpoint(quad, mixed[1]), mixed[0], mixed[1], ti};
        int id = static_cast<int>(curve.segments.size());
        curve.segments.push_back(s);
        node_segments[mixed[0]].push_back(id);
        node_segments[mixed[1]].push_back(id);
    }

    // boundary identification partner of each active boundary node
    std::map<Edge, Edge> glue;
    for (const auto& [edge, segs] : node_segments) {
        if (edge_count[edge] != 1) continue;
        const auto& a = quad.vertices[edge.first];
        const auto& b = quad.vertices[edge.second];
        int ma = quad.index_of({-a.i1, a.i2});
        int mb = quad.index_of({-b.i1, b.i2});
        Edge partner = make_edge(ma, mb);
        if (ma < 0 || mb < 0 || !node_segments.contains(partner))
            throw Error(ErrorCode::InvalidFixture, "boundary of Q is not symmetric");
        glue[edge] = partner;
    }

    std::vector<bool> used(curve.segments.size(), false);
    for (int start = 0; start < static_cast<int>(curve.segments.size()); ++start) {
        if (used[start]) continue;
        CurveComponent comp;
        int seg = start;
        Edge node = curve.segments[start].edge_a;
        const Edge first_node = node;
        while (true) {
            used[seg] = true;
            comp.segments.push_back(seg);
            const Segment& s = curve.segments[seg];
            Edge other = s.edge_a == node ? s.edge_b : s.edge_a;
            comp.polygon.push_back(detail::midpoint(quad, node));
            // step across `other`
            const auto& at_other = node_segments[other];
            int next = -1;
            Edge next_node = other;
            if (at_other.size() == 2) {
                next = at_other[0] == seg ? at_other[1] : at_other[0];
            } else {
                comp.polygon.push_back(detail::midpoint(quad, other));
                next_node = glue.at(other);
                ++comp.glue_crossings;
                next = node_segments[next_node][0];
            }
            if (next_node == first_node && next == start) break;
            if (used[next]) throw Error(ErrorCode::InvalidFixture, "curve graph is not a union of cycles");
            seg = next;
            node = next_node;
        }
        curve.components.push_back(std::move(comp));
    }
    return curve;
}

// ---------------------------------------------------------------- classify

struct OvalInfo {
    int component;
    std::vector<int> surrounded;  // indices into quad.vertices
    int sign;
};

struct PatchworkClassification {
    RealScheme scheme = RealScheme::ovals(0, 0);
    int plus = 0;   // ovals around "+" vertices
    int minus = 0;  // ovals around "-" vertices
    int pseudo_lines = 0;
    std::vector<OvalInfo> ovals;  // sorted by their first surrounded vertex

    int component_count() const { return pseudo_lines + static_cast<int>(ovals.size()); }
    /// "<plus|minus>" without canonical reordering.
    std::string signed_scheme() const {
        if (scheme.is_three_pseudo_lines()) return scheme.to_string();
        return "<" + std::to_string(plus) + "|" + std::to_string(minus) + ">";
    }
};

namespace detail {

/// Even-odd test of the lattice point p (doubled to (2 i1, 2 i2)) against a closed polygon.
inline bool point_in_polygon(const LatticePoint& lp, const std::vector<HalfPoint>& poly) {
    const std::int64_t px = 2 * static_cast<std::int64_t>(lp.i1), py = 2 * static_cast<std::int64_t>(lp.i2);
    bool inside = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const auto& a = poly[i];
        const auto& b = poly[j];
        if ((a.y2 > py) == (b.y2 > py)) continue;
        // x-coordinate of the crossing compared to px, without division
        const std::int64_t dy = b.y2 - a.y2;
        const std::int64_t lhs = (px - a.x2) * dy;
        const std::int64_t rhs = (py - a.y2) * (b.x2 - a.x2);
        if (dy > 0 ? lhs < rhs : lhs > rhs) inside = !inside;
    }
    return inside;
}

}  // namespace detail

/// Reads the real scheme off a traced curve. A component is a pseudo-line iff
/// it crosses the left/right identification an odd number of times; every
/// other component is an oval grouped by the sign of the vertices it encloses.
inline PatchworkClassification classify_components(const PatchworkCurve& curve) {
    PatchworkClassification out;
    const auto& quad = curve.quad;
    for (int c = 0; c < static_cast<int>(curve.components.size()); ++c) {
        const auto& comp = curve.components[c];
        if (comp.glue_crossings % 2 == 1) {
            ++out.pseudo_lines;
            continue;
        }
        if (comp.glue_crossings != 0)
            throw Error(ErrorCode::UnclassifiableOval, "oval crossing the line at infinity of the base is not supported");
        OvalInfo info{c, {}, 0};
        for (int v = 0; v < static_cast<int>(quad.vertices.size()); ++v) {
            if (!detail::point_in_polygon(quad.vertices[v], comp.polygon)) continue;
            info.surrounded.push_back(v);
            if (info.sign == 0) {
                info.sign = quad.signs[v];
            } else if (info.sign != quad.signs[v]) {
                throw Error(ErrorCode::UnclassifiableOval, "oval surrounds vertices of both signs");
            }
        }
        if (info.surrounded.empty()) throw Error(ErrorCode::UnclassifiableOval, "oval surrounds no vertex");
        (info.sign > 0 ? out.plus : out.minus) += 1;
        out.ovals.push_back(std::move(info));
    }
    std::sort(out.ovals.begin(), out.ovals.end(),
              [&](const OvalInfo& a, const OvalInfo& b) { return quad.vertices[a.surrounded[0]] < quad.vertices[b.surrounded[0]]; });
    if (out.pseudo_lines == 3 && out.ovals.empty()) {
        out.scheme = RealScheme::three_pseudo_lines();
    } else if (out.pseudo_lines == 1) {
        out.scheme = RealScheme::ovals(out.plus, out.minus);
    } else {
        throw Error(ErrorCode::UnclassifiableOval,
                    std::to_string(out.pseudo_lines) + " components wrap the base; expected 1 (or 3 without ovals)");
    }
    return out;
}

inline PatchworkClassification classify_construction(const Construction& c) {
    return classify_components(trace_curve(symmetrize(c.tri, c.signs)));
}

// ---------------------------------------------------------------- collapsing

/// Removes the listed ovals (indices into classify_construction(c).ovals) by
/// flipping the sign of the single vertex each one encloses, then checks that
/// exactly those ovals disappeared and nothing else changed.
inline Construction collapse_ovals(const Construction& c, const std::vector<int>& targets) {
    const auto before = classify_construction(c);
    const QuadTriangulation quad = symmetrize(c.tri, c.signs);
    std::set<int> target_set(targets.begin(), targets.end());
    Construction out = c;
    std::set<int> flipped;
    for (int t : target_set) {
        if (t < 0 || t >= static_cast<int>(before.ovals.size()))
            throw Error(ErrorCode::OutOfRange, "oval index " + std::to_string(t) + " out of range");
        const auto& oval = before.ovals[t];
        if (oval.surrounded.size() != 1)
            throw Error(ErrorCode::NotIsolated, "oval " + std::to_string(t) + " surrounds " +
                                                    std::to_string(oval.surrounded.size()) + " vertices");
        // ovals around reflected copies of one vertex go with a single flip
        int base = quad.base_vertex[oval.surrounded[0]];
        if (flipped.insert(base).second) out.signs[base] = -out.signs[base];
    }
    const auto after = classify_construction(out);
    // surviving ovals must be exactly the untouched ones
    const QuadTriangulation quad_after = symmetrize(out.tri, out.signs);
    std::vector<std::pair<std::vector<int>, int>> expect, got;
    for (int i = 0; i < static_cast<int>(before.ovals.size()); ++i)
        if (!target_set.contains(i)) expect.emplace_back(before.ovals[i].surrounded, before.ovals[i].sign);
    for (const auto& o : after.ovals) got.emplace_back(o.surrounded, o.sign);
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    if (expect != got || after.pseudo_lines != before.pseudo_lines)
        throw Error(ErrorCode::CollapseNotLocal, "sign flip changed more than the targeted ovals");
    return out;
}

/// Collapses ovals so that `plus` ovals around "+" vertices and `minus`
/// ovals around "-" vertices remain. Victim sets are tried in lexicographic
/// order; the first one collapse_ovals accepts wins.
inline Construction collapse_to(const Construction& c, int plus, int minus) {
    const auto cls = classify_construction(c);
    if (plus < 0 || minus < 0 || plus > cls.plus || minus > cls.minus)
        throw Error(ErrorCode::OutOfRange, "requested counts exceed " + cls.signed_scheme());
    std::vector<int> pos, neg;
    for (int i = 0; i < static_cast<int>(cls.ovals.size()); ++i) (cls.ovals[i].sign > 0 ? pos : neg).push_back(i);
    // choose(n, r) masks as bool vectors, first r entries set
    auto masks = [](std::size_t n, std::size_t r) {
        std::vector<std::vector<bool>> out;
        std::vector<bool> m(n, false);
        std::fill(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(r), true);
        do out.push_back(m);
        while (std::prev_permutation(m.begin(), m.end()));
        return out;
    };
    std::optional<Error> last;
    for (const auto& mp : masks(pos.size(), pos.size() - plus))
        for (const auto& mn : masks(neg.size(), neg.size() - minus)) {
            std::vector<int> targets;
            for (std::size_t i = 0; i < pos.size(); ++i)
                if (mp[i]) targets.push_back(pos[i]);
            for (std::size_t i = 0; i < neg.size(); ++i)
                if (mn[i]) targets.push_back(neg[i]);
            try {
                return collapse_ovals(c, targets);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NotIsolated && e.code() != ErrorCode::CollapseNotLocal) throw;
                last = e;
            }
        }
    throw Error(last->code(), "no set of ovals collapses to <" + std::to_string(plus) + "|" + std::to_string(minus) +
                                  "> (last attempt: " + last->what() + ")");
}

// ---------------------------------------------------------------- T-polynomial

struct TPolynomialRequest {
    LatticeTriangulation tri;
    SignDistribution signs;
    ConvexLifting lifting;
    Rational t;
};

/// Lifting heights scaled by the least common denominator, so they can serve
/// as exponents of t. Positive scaling keeps the lifting convex.
inline std::vector<Integer> integer_exponents(const ConvexLifting& lift) {
    Integer lcd = 1;
    for (const auto& h : lift.heights) mpz_lcm(lcd.get_mpz_t(), lcd.get_mpz_t(), h.get_den_mpz_t());
    std::vector<Integer> out;
    for (const auto& h : lift.heights) out.push_back(h.get_num() * (lcd / h.get_den()));
    return out;
}

/// r_t(u, x) = sum over vertices of s(i1,i2) t^nu(i1,i2) u^i1 x^i2.
inline BiPoly emit_T_polynomial(const TPolynomialRequest& req) {
    if (req.t <= 0) throw Error(ErrorCode::OutOfRange, "t must be positive");
    const auto exps = integer_exponents(req.lifting);
    BiPoly r;
    for (std::size_t v = 0; v < req.tri.vertices.size(); ++v) {
        const Integer& e = exps[v];
        const Integer mag = abs(e);
        if (!mag.fits_ulong_p()) throw Error(ErrorCode::OutOfRange, "exponent too large");
        Rational coeff = e >= 0 ? pow(req.t, mag.get_ui()) : pow(Rational(1) / req.t, mag.get_ui());
        const auto& p = req.tri.vertices[v];
        r.add_term(coeff * req.signs[v], p.i1, p.i2);
    }
    return r;
}

// ---------------------------------------------------------------- oracle

struct OracleStep {
    Rational t;
    std::optional<RealScheme> scheme;  // empty when the curve was not generic
};

struct OracleReport {
    RealScheme combinatorial = RealScheme::ovals(0, 0);
    std::vector<OracleStep> steps;
    Rational t_final;
    TrigonalCurve curve;  // depressed curve at t_final
};

/// Compares the combinatorial scheme with the exact discriminant analysis of
/// the T-polynomial at t = 1/2, 1/4, ... until three consecutive generic
/// values agree with it.
inline OracleReport patchwork_oracle(const Construction& c, int max_halvings = 40) {
    OracleReport rep;
    rep.combinatorial = classify_construction(c).scheme;
    const ConvexLifting lift = build_lifting(c.tri, c.history);
    int streak = 0;
    for (int m = 1; m <= max_halvings; ++m) {
        const Rational t = pow2_inv(m);
        TrigonalCurve curve = depress(emit_T_polynomial({c.tri, c.signs, lift, t}), c.tri.k);
        OracleStep step{t, std::nullopt};
        try {
            step.scheme = real_scheme(curve);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NonGeneric) throw;
        }
        rep.steps.push_back(step);
        streak = step.scheme && *step.scheme == rep.combinatorial ? streak + 1 : 0;
        if (streak == 3) {
            rep.t_final = t;
            rep.curve = std::move(curve);
            return rep;
        }
    }
    std::string seen;
    for (std::size_t i = rep.steps.size() >= 3 ? rep.steps.size() - 3 : 0; i < rep.steps.size(); ++i)
        seen += " " + (rep.steps[i].scheme ? rep.steps[i].scheme->to_string() : std::string("non-generic"));
    throw Error(ErrorCode::NoStabilization, "expected " + rep.combinatorial.to_string() + ", last schemes:" + seen);
}

// ---------------------------------------------------------------- fixture text format
//
//   k=<int>              optional
//   i1 i2 <+|->          one line per vertex
//   v v v                one line per triangle, by vertex index
//   v v v v              optional refinement: parent triangle, inserted vertex

inline std::string format_construction(const Construction& c, bool with_k = true) {
    std::ostringstream out;
    if (with_k) out << "k=" << c.tri.k << "\n";
    for (std::size_t v = 0; v < c.tri.vertices.size(); ++v)
        out << c.tri.vertices[v].i1 << " " << c.tri.vertices[v].i2 << " " << (c.signs[v] > 0 ? "+" : "-") << "\n";
    for (const auto& t : c.tri.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
    for (const auto& r : c.history)
        out << r.parent[0] << " " << r.parent[1] << " " << r.parent[2] << " " << r.point << "\n";
    return out.str();
}

inline Construction parse_construction(std::istream& in, int default_k = 1) {
    Construction c;
    c.tri.k = default_k;
    std::string line;
    int stage = 0;  // 0 vertices, 1 triangles, 2 refinements
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        return Error(ErrorCode::Parse, "fixture line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() == 1 && tok[0].rfind("k=", 0) == 0) {
            try {
                c.tri.k = std::stoi(tok[0].substr(2));
            } catch (const std::exception&) {
                throw fail("bad k");
            }
            continue;
        }
        auto to_int = [&](const std::string& s) {
            try {
                std::size_t used = 0;
                int v = std::stoi(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return v;
            } catch (const std::exception&) {
                throw fail("expected integer, got '" + s + "'");
            }
        };
        if (tok.size() == 3 && (tok[2] == "+" || tok[2] == "-")) {
            if (stage != 0) throw fail("vertex after triangles");
            c.tri.vertices.push_back({to_int(tok[0]), to_int(tok[1])});
            c.signs.push_back(tok[2] == "+" ? 1 : -1);
        } else if (tok.size() == 3) {
            if (stage > 1) throw fail("triangle after refinements");
            stage = 1;
            c.tri.triangles.push_back({to_int(tok[0]), to_int(tok[1]), to_int(tok[2])});
        } else if (tok.size() == 4) {
            stage = 2;
            c.history.push_back({{to_int(tok[0]), to_int(tok[1]), to_int(tok[2])}, to_int(tok[3])});
        } else {
            throw fail("unrecognised line");
        }
    }
    const int n = static_cast<int>(c.tri.vertices.size());
    auto bad = [n](int i) { return i < 0 || i >= n; };
    for (const auto& t : c.tri.triangles)
        if (std::any_of(t.begin(), t.end(), bad)) throw Error(ErrorCode::Parse, "triangle index out of range");
    for (const auto& r : c.history)
        if (std::any_of(r.parent.begin(), r.parent.end(), bad) || bad(r.point))
            throw Error(ErrorCode::Parse, "refinement index out of range");
    return c;
}

inline Construction parse_construction(std::string_view text, int default_k = 1) {
    std::istringstream in{std::string(text)};
    return parse_construction(in, default_k);
}

// ---------------------------------------------------------------- families

/// Local pieces in the frame of l = 0: the big triangle [(1,0),(5,0),(0,3)]
/// with its two sign patterns, the small one [(-1,0),(1,0),(0,3)], and the
/// modified big triangle used for (M-2)-curves. Triangle and refinement
/// indices refer to the piece's own vertex list.
struct FixtureSet {
    Construction big_plus;
    Construction big_minus;
    Construction small;
    Construction big_modified;
};

namespace detail {

/// Shear carrying the l = 0 frame to position l; preserves i1 parity.
inline LatticePoint shift_to(const LatticePoint& p, int l) { return {p.i1 + 2 * l * (3 - p.i2), p.i2}; }

class Assembler {
public:
    explicit Assembler(int k) { c_.tri.k = k; }

    int vertex(const LatticePoint& p, int sign) {
        auto it = index_.find(p);
        if (it != index_.end()) {
            if (c_.signs[it->second] != sign)
                throw Error(ErrorCode::InvalidFixture, "pieces disagree on a shared vertex sign");
            return it->second;
        }
        int id = static_cast<int>(c_.tri.vertices.size());
        c_.tri.vertices.push_back(p);
        c_.signs.push_back(sign);
        index_[p] = id;
        return id;
    }

    void add_piece(const Construction& piece, int l) {
        std::vector<int> map;
        for (std::size_t v = 0; v < piece.tri.vertices.size(); ++v)
            map.push_back(vertex(shift_to(piece.tri.vertices[v], l), piece.signs[v]));
        for (const auto& t : piece.tri.triangles) c_.tri.triangles.push_back({map[t[0]], map[t[1]], map[t[2]]});
        for (const auto& r : piece.history)
            c_.history.push_back({{map[r.parent[0]], map[r.parent[1]], map[r.parent[2]]}, map[r.point]});
    }

    void add_triangle(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
        c_.tri.triangles.push_back({index_.at(a), index_.at(b), index_.at(c)});
    }

    Construction take() { return std::move(c_); }

private:
    Construction c_;
    std::map<LatticePoint, int> index_;
};

inline Construction assemble(int k, int lambda, bool modified, const FixtureSet& fx) {
    Assembler as(k);
    const int apex_sign = fx.big_minus.signs[fx.big_minus.tri.index_of({0, 3})];
    as.vertex({0, 0}, -1);
    as.vertex({6 * k, 0}, -1);
    as.vertex({0, 3}, apex_sign);
    for (int l = 0; l < k; ++l) {
        const Construction* piece = l < lambda ? &fx.big_plus : &fx.big_minus;
        if (modified && l == k - 1) piece = &fx.big_modified;
        as.add_piece(*piece, l);
    }
    for (int l = 1; l < k; ++l) as.add_piece(fx.small, l);
    as.add_triangle({0, 0}, {1, 0}, {0, 3});
    as.add_triangle({6 * k - 1, 0}, {6 * k, 0}, {0, 3});
    return as.take();
}

}  // namespace detail

/// M-curve with scheme <k-1+4 lambda | 5k-1-4 lambda>: the first lambda big
/// triangles carry the "+" pattern, the rest the "-" one.
inline Construction mcurve_family(int k, int lambda, const FixtureSet& fx) {
    if (k < 1 || lambda < 0 || lambda > k) throw Error(ErrorCode::OutOfRange, "need k >= 1 and 0 <= lambda <= k");
    return detail::assemble(k, lambda, false, fx);
}

/// (M-2)-curve with scheme <k+4 lambda | 5k-4-4 lambda>: as mcurve_family but
/// the last big triangle (a "-" one) is replaced by the modified piece.
inline Construction m2curve_family(int k, int lambda, const FixtureSet& fx) {
    if (k < 1 || lambda < 0 || lambda > k - 1) throw Error(ErrorCode::OutOfRange, "need k >= 1 and 0 <= lambda <= k-1");
    return detail::assemble(k, lambda, true, fx);
}

// ---------------------------------------------------------------- SVG

/// Draws Q, the symmetrized triangulation, vertex signs and the traced curve.
inline std::string render_patchwork_svg(const PatchworkCurve& curve) {
    const auto& q = curve.quad;
    const double sx = 40.0, sy = 80.0, pad = 30.0;
    const double w = 2 * 6 * q.k * sx + 2 * pad, h = 2 * 3 * sy + 2 * pad;
    auto X = [&](double i1) { return pad + (i1 + 6 * q.k) * sx; };
    auto Y = [&](double i2) { return pad + (3 - i2) * sy; };
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
        << " " << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<g stroke=\"#bbbbbb\" stroke-width=\"1\" fill=\"none\">\n";
    for (const auto& t : q.triangles) {
        out << "<polygon points=\"";
        for (int v : t) out << X(q.vertices[v].i1) << "," << Y(q.vertices[v].i2) << " ";
        out << "\"/>\n";
    }
    out << "</g>\n";
    out << "<polygon points=\"" << X(6 * q.k) << "," << Y(0) << " " << X(0) << "," << Y(3) << " " << X(-6 * q.k) << ","
        << Y(0) << " " << X(0) << "," << Y(-3) << "\" stroke=\"black\" stroke-width=\"1.5\" fill=\"none\"/>\n";
    out << "<g stroke=\"#c00000\" stroke-width=\"3\" stroke-linecap=\"round\">\n";
    for (const auto& s : curve.segments)
        out << "<line x1=\"" << X(s.a.x2 / 2.0) << "\" y1=\"" << Y(s.a.y2 / 2.0) << "\" x2=\"" << X(s.b.x2 / 2.0)
            << "\" y2=\"" << Y(s.b.y2 / 2.0) << "\"/>\n";
    out << "</g>\n";
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        out << "<circle cx=\"" << X(q.vertices[v].i1) << "\" cy=\"" << Y(q.vertices[v].i2) << "\" r=\"5\" fill=\""
            << (q.signs[v] > 0 ? "black" : "white") << "\" stroke=\"black\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ellipscheme

#endif  // ELLIPSCHEME_PATCHWORK_HPP
