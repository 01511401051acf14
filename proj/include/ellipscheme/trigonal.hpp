#ifndef ELLIPSCHEME_TRIGONAL_HPP
#define ELLIPSCHEME_TRIGONAL_HPP

// Trigonal curves x^3 + p(u) x + q(u) = 0 on the Hirzebruch surface F_2k:
// reduction to this form, the discriminant, genericity, and the real scheme
// read off from the sign pattern of the discriminant on the real line.

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "exactpoly.hpp"

namespace ellipscheme {

/// Polynomial in (u, x) stored as coefficients of x^j, each a polynomial in u.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<UniPoly> by_x) : by_x_(std::move(by_x)) { trim(); }

    void add_term(const Rational& c, int u_exp, int x_exp) {
        if (static_cast<std::size_t>(x_exp) >= by_x_.size()) by_x_.resize(x_exp + 1);
        by_x_[x_exp] += UniPoly::monomial(c, u_exp);
        trim();
    }

    int x_degree() const { return static_cast<int>(by_x_.size()) - 1; }
    UniPoly coeff_of_x(int j) const { return j >= 0 && j <= x_degree() ? by_x_[j] : UniPoly{}; }
    std::size_t term_count() const {
        std::size_t n = 0;
        for (const auto& p : by_x_)
            for (const auto& c : p.coefficients()) n += c != 0;
        return n;
    }

    /// Evaluates at u = u0, giving a polynomial in x.
    UniPoly at_u(const Rational& u0) const {
        std::vector<Rational> c;
        for (const auto& p : by_x_) c.push_back(p.eval(u0));
        return UniPoly(std::move(c));
    }

private:
    void trim() {
        while (!by_x_.empty() && by_x_.back().is_zero()) by_x_.pop_back();
    }

    std::vector<UniPoly> by_x_;
};

/// x^3 + p(u) x + q(u) = 0 on F_2k, with deg p <= 4k and deg q <= 6k.
struct TrigonalCurve {
    int k = 1;
    UniPoly p;
    UniPoly q;

    friend bool operator==(const TrigonalCurve&, const TrigonalCurve&) = default;
};

/// Either three pseudo-lines, or one pseudo-line plus the unordered oval
/// counts <a|b>. Stored canonically with a <= b.
class RealScheme {
public:
    static RealScheme three_pseudo_lines() { return RealScheme(true, 0, 0); }
    static RealScheme ovals(int a, int b) { return RealScheme(false, std::min(a, b), std::max(a, b)); }

    bool is_three_pseudo_lines() const { return three_; }
    int a() const { return a_; }
    int b() const { return b_; }
    int oval_count() const { return a_ + b_; }

    friend bool operator==(const RealScheme&, const RealScheme&) = default;

    std::string to_string() const {
        if (three_) return "3PL";
        return "<" + std::to_string(a_) + "|" + std::to_string(b_) + ">";
    }

    /// Accepts "3PL" or "<a|b>".
    static RealScheme parse(std::string_view text) {
        if (text == "3PL") return three_pseudo_lines();
        if (text.size() >= 5 && text.front() == '<' && text.back() == '>') {
            auto bar = text.find('|');
            if (bar != std::string_view::npos) {
                try {
                    int a = std::stoi(std::string(text.substr(1, bar - 1)));
                    int b = std::stoi(std::string(text.substr(bar + 1, text.size() - bar - 2)));
                    if (a >= 0 && b >= 0) return ovals(a, b);
                } catch (const std::exception&) {
                }
            }
        }
        throw Error(ErrorCode::Parse, "bad real scheme '" + std::string(text) + "'");
    }

private:
    RealScheme(bool three, int a, int b) : three_(three), a_(a), b_(b) {}

    bool three_;
    int a_;
    int b_;
};

inline std::ostream& operator<<(std::ostream& os, const RealScheme& s) { return os << s.to_string(); }

struct GenericityReport {
    UniPoly delta;
    bool degree_ok = false;
    bool squarefree_ok = false;
    bool coprime_ok = false;

    bool generic() const { return degree_ok && squarefree_ok && coprime_ok; }
};

/// Brings c*(x^3 + a2 x^2 + a1 x + a0) to reduced form via x -> x - a2/3.
inline TrigonalCurve depress(const BiPoly& raw, int k) {
    if (k < 1) throw Error(ErrorCode::OutOfRange, "k must be positive");
    if (raw.x_degree() != 3) throw Error(ErrorCode::BadNewtonPolygon, "polynomial must have degree 3 in x");
    const UniPoly lead = raw.coeff_of_x(3);
    if (lead.degree() != 0) throw Error(ErrorCode::BadNewtonPolygon, "coefficient of x^3 must be a nonzero constant");
    for (int j = 0; j <= 3; ++j) {
        // exponents must satisfy i + 2k j <= 6k
        if (raw.coeff_of_x(j).degree() > 6 * k - 2 * k * j)
            throw Error(ErrorCode::BadNewtonPolygon, "monomial outside the trigonal Newton triangle");
    }
    const Rational inv = Rational(1) / lead.leading();
    const UniPoly a2 = raw.coeff_of_x(2) * inv;
    const UniPoly a1 = raw.coeff_of_x(1) * inv;
    const UniPoly a0 = raw.coeff_of_x(0) * inv;
    TrigonalCurve c;
    c.k = k;
    c.p = a1 - Rational(1, 3) * (a2 * a2);
    c.q = a0 - Rational(1, 3) * (a1 * a2) + Rational(2, 27) * (a2 * a2 * a2);
    if (c.p.degree() > 4 * k || c.q.degree() > 6 * k)
        throw Error(ErrorCode::DegreeOverflow, "reduced coefficients exceed deg p <= 4k, deg q <= 6k");
    return c;
}

inline UniPoly discriminant(const TrigonalCurve& c) {
    return Rational(4) * (c.p * c.p * c.p) + Rational(27) * (c.q * c.q);
}

inline GenericityReport check_generic(const TrigonalCurve& c) {
    GenericityReport r;
    r.delta = discriminant(c);
    r.degree_ok = r.delta.degree() == 12 * c.k;
    r.squarefree_ok = is_squarefree(r.delta);
    auto coprime = [](const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() && b.is_zero()) return false;
        return gcd(a, b).is_constant();
    };
    r.coprime_ok = coprime(c.p, c.q) && coprime(c.p, r.delta) && coprime(c.q, r.delta);
    return r;
}

enum class PairSide { Lower, Upper };

inline std::string_view to_string(PairSide s) { return s == PairSide::Lower ? "lower" : "upper"; }

namespace detail {

/// Exact sign of f at the root of the squarefree polynomial `poly` isolated by
/// iv, assuming f does not vanish there. Shrinks iv until f is root-free on it.
inline int sign_at_root(const UniPoly& f, const UniPoly& poly, IsolatingInterval iv) {
    if (f.is_zero()) return 0;
    if (f.degree() == 0) return sign(f.leading());
    const UniPoly f_sqf = divmod(f, gcd(f, f.derivative())).first;
    const SturmSequence sturm(f_sqf);
    for (int round = 0; round < 4096; ++round) {
        int lo = sign_at(f, iv.lo), hi = sign_at(f, iv.hi);
        if (lo != 0 && lo == hi && sturm.count(iv.lo, iv.hi) == 0) return lo;
        iv = refine(poly, iv, iv.width() / 2);
    }
    throw Error(ErrorCode::DegenerateEndpoint, "could not separate a root of Delta from the roots of a coefficient");
}

}  // namespace detail

/// One Delta-negative open interval of P^1(R), bounded by two isolated roots
/// of Delta. When wraps_infinity is set the interval runs from `left` through
/// the point at infinity to `right`.
struct NegativeInterval {
    IsolatingInterval left;
    IsolatingInterval right;
    bool wraps_infinity = false;
    Rational sample;  // a rational point inside the interval
};

/// Which adjacent pair of the three ordered real branches merges at the root
/// of Delta isolated by `root`. At such a root the cubic has the double root
/// d = -3q/(2p) (the gcd of g and dg/dx) and the simple root -2d, so the pair
/// is the lower one exactly when d < 0, i.e. when q < 0 there (p < 0 forced).
inline PairSide endpoint_pair_side(const TrigonalCurve& c, const UniPoly& delta, const IsolatingInterval& root) {
    int sp = detail::sign_at_root(c.p, delta, root);
    int sq = detail::sign_at_root(c.q, delta, root);
    if (sp >= 0 || sq == 0)
        throw Error(ErrorCode::DegenerateEndpoint, "endpoint cubic is not a double root plus a distinct simple root");
    return sq < 0 ? PairSide::Lower : PairSide::Upper;
}

/// Pair of branches forming the oval over a Delta-negative interval, read at
/// the left endpoint (the right one when the interval wraps infinity).
inline PairSide oval_pair_side(const TrigonalCurve& c, const NegativeInterval& iv) {
    const UniPoly delta = discriminant(c);
    return endpoint_pair_side(c, delta, iv.wraps_infinity ? iv.right : iv.left);
}

/// Sign of g = x^3 + p(u0) x + q(u0) between the two branches of `side` at u0.
inline int branch_gap_sign(const TrigonalCurve& c, const Rational& u0, PairSide side) {
    auto roots = ordered_real_roots_of_cubic(c.p.eval(u0), c.q.eval(u0));
    if (roots.size() != 3) throw Error(ErrorCode::SignAmbiguous, "expected three real branches inside a Delta-negative interval");
    const Rational m = side == PairSide::Lower ? roots[0].hi : roots[1].hi;
    const UniPoly g{c.q.eval(u0), c.p.eval(u0), 0, 1};
    return sign_on_interval(g, m, m);
}

struct OvalRecord {
    NegativeInterval interval;
    PairSide side;
    int group_sign;  // sign of g inside the oval
};

struct SchemeAnalysis {
    GenericityReport genericity;
    std::vector<IsolatingInterval> delta_roots;
    std::vector<NegativeInterval> negative_intervals;
    std::vector<OvalRecord> ovals;
    int zigzags = 0;  // negative intervals swept by a fold of the pseudo-line
    int plus = 0;
    int minus = 0;
    RealScheme scheme = RealScheme::ovals(0, 0);
};

/// Full sign analysis of Delta on P^1(R). Throws NonGeneric unless the curve
/// passes check_generic.
inline SchemeAnalysis analyze_scheme(const TrigonalCurve& c) {
    SchemeAnalysis out;
    out.genericity = check_generic(c);
    if (!out.genericity.generic()) throw Error(ErrorCode::NonGeneric, "curve fails the genericity check");
    const UniPoly& delta = out.genericity.delta;
    const int lead_sign = sign(delta.leading());
    // isolation only: roots of T-polynomial discriminants can be astronomically large
    out.delta_roots = sturm_isolate(delta, std::nullopt, std::nullopt);
    const auto& roots = out.delta_roots;

    if (roots.empty()) {
        out.scheme = lead_sign < 0 ? RealScheme::three_pseudo_lines() : RealScheme::ovals(0, 0);
        return out;
    }

    const std::size_t m = roots.size();
    for (std::size_t i = 0; i < m; ++i) {
        // gap between root i and root i+1 (cyclically; the last one wraps infinity)
        const bool wraps = i + 1 == m;
        const Rational sample = roots[i].hi;
        if (sign_at(delta, sample) > 0) continue;
        NegativeInterval iv{roots[i], roots[(i + 1) % m], wraps, sample};
        out.negative_intervals.push_back(iv);
    }

    for (const auto& iv : out.negative_intervals) {
        PairSide left = endpoint_pair_side(c, delta, iv.left);
        PairSide right = endpoint_pair_side(c, delta, iv.right);
        if (left != right) {
            ++out.zigzags;
            continue;
        }
        int gs = branch_gap_sign(c, iv.sample, left);
        // lower pair: (m-x1)(m-x2)(m-x3) has signs (+)(-)(-); upper pair: (+)(+)(-)
        if (gs != (left == PairSide::Lower ? 1 : -1))
            throw Error(ErrorCode::SignAmbiguous, "branch pairing disagrees with the sign of g inside the oval");
        out.ovals.push_back({iv, left, gs});
        (gs > 0 ? out.plus : out.minus) += 1;
    }
    out.scheme = RealScheme::ovals(out.plus, out.minus);
    return out;
}

inline RealScheme real_scheme(const TrigonalCurve& c) { return analyze_scheme(c).scheme; }

inline constexpr int kMaxHalvings = 64;

/// A curve with three disjoint pseudo-lines: a small perturbation of
/// x (x - u^2k - 1)(x + u^2k + 2).
inline TrigonalCurve special_extremal(int k) {
    if (k < 1) throw Error(ErrorCode::OutOfRange, "k must be positive");
    const UniPoly u2k = UniPoly::monomial(1, 2 * k);
    const UniPoly g1;
    const UniPoly g2 = u2k + UniPoly::constant(1);
    const UniPoly g3 = -u2k - UniPoly::constant(2);
    // (x-g1)(x-g2)(x-g3) = x^3 - e1 x^2 + e2 x - e3
    const UniPoly e1 = g1 + g2 + g3;
    const UniPoly e2 = g1 * g2 + g1 * g3 + g2 * g3;
    const UniPoly e3 = g1 * g2 * g3;
    for (int j = 1; j <= kMaxHalvings; ++j) {
        BiPoly r(std::vector<UniPoly>{-e3 + UniPoly::constant(pow2_inv(j)), e2, -e1, UniPoly::constant(1)});
        TrigonalCurve c = depress(r, k);
        if (!check_generic(c).generic()) continue;
        if (real_scheme(c).is_three_pseudo_lines()) return c;
    }
    throw Error(ErrorCode::PerturbationFailed, "no perturbation 2^-j, j <= 64, gave a generic three pseudo-line curve");
}

// ---- curve file format ----
//   k=<int>
//   p=<coefficients, constant first>
//   q=<coefficients, constant first>

inline std::string format_curve(const TrigonalCurve& c) {
    return "k=" + std::to_string(c.k) + "\np=" + format_poly(c.p) + "\nq=" + format_poly(c.q) + "\n";
}

inline TrigonalCurve parse_curve(std::istream& in) {
    TrigonalCurve c;
    bool seen_k = false, seen_p = false, seen_q = false;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        line = line.substr(first);
        auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::Parse, "expected key=value, got '" + line + "'");
        std::string key = line.substr(0, eq);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::string value = line.substr(eq + 1);
        if (key == "k") {
            try {
                std::size_t used = 0;
                c.k = std::stoi(value, &used);
                if (value.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw Error(ErrorCode::Parse, "bad k value '" + value + "'");
            }
            if (c.k < 1) throw Error(ErrorCode::Parse, "k must be positive");
            seen_k = true;
        } else if (key == "p") {
            c.p = parse_poly(value);
            seen_p = true;
        } else if (key == "q") {
            c.q = parse_poly(value);
            seen_q = true;
        } else {
            throw Error(ErrorCode::Parse, "unknown key '" + key + "'");
        }
    }
    if (!seen_k || !seen_p || !seen_q) throw Error(ErrorCode::Parse, "curve file needs k=, p= and q= lines");
    if (c.p.degree() > 4 * c.k || c.q.degree() > 6 * c.k)
        throw Error(ErrorCode::DegreeOverflow, "deg p <= 4k and deg q <= 6k required");
    return c;
}

inline TrigonalCurve parse_curve(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_curve(in);
}

}  // namespace ellipscheme

#endif // ELLIPSCHEME_TRIGONAL_HPP
