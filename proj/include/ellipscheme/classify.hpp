#ifndef ELLIPSCHEME_CLASSIFY_HPP
#define ELLIPSCHEME_CLASSIFY_HPP

// Topological types of real parts of real regular jacobian elliptic surfaces
// with holomorphic Euler characteristic k: the admissible (chi, h*) diagram,
// the types attached to each point, the extremal list, and its closure under
// Morse simplifications.

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "trigonal.hpp"

namespace ellipscheme {

/// Numerical invariants of the complex surface, all fixed by k.
struct KInvariants {
    int k;
    int b_total;    // total Betti number, 12k
    int b2;         // 12k - 2
    int tau;        // signature, -8k
    int tau_minus;  // negative index, 10k - 1
    int chi_top;    // 12k

    static KInvariants of(int k) { return {k, 12 * k, 12 * k - 2, -8 * k, 10 * k - 1, 12 * k}; }
};

enum class SurfaceKind { Sphere, Orientable, NonOrientable };

/// One closed connected surface: the sphere S, S_g (g >= 1) or V_q (q >= 1).
struct Surface {
    SurfaceKind kind = SurfaceKind::Sphere;
    int genus = 0;  // g for S_g, q for V_q, 0 for the sphere

    static Surface sphere() { return {}; }
    static Surface orientable(int g) { return g == 0 ? sphere() : Surface{SurfaceKind::Orientable, g}; }
    static Surface non_orientable(int q) { return q == 0 ? sphere() : Surface{SurfaceKind::NonOrientable, q}; }

    int euler() const { return kind == SurfaceKind::NonOrientable ? 2 - genus : 2 - 2 * genus; }
    /// First mod-2 Betti number.
    int h1() const { return kind == SurfaceKind::NonOrientable ? genus : 2 * genus; }

    std::string to_string() const {
        switch (kind) {
        case SurfaceKind::Sphere: return "S";
        case SurfaceKind::Orientable: return "S" + std::to_string(genus);
        case SurfaceKind::NonOrientable: return "V" + std::to_string(genus);
        }
        return "?";
    }

    auto operator<=>(const Surface&) const = default;
};

struct BettiData {
    int chi;
    int h_star;
    int h1;
    int ncomp;

    friend bool operator==(const BettiData&, const BettiData&) = default;
};

/// Nonempty multiset of surfaces, kept sorted (spheres first).
class TopType {
public:
    TopType() = default;
    explicit TopType(std::vector<Surface> comps) : comps_(std::move(comps)) { std::sort(comps_.begin(), comps_.end()); }

    /// a S + main, the shape of every type attached to a diagram point.
    static TopType with_spheres(int spheres, Surface main) {
        std::vector<Surface> c(spheres, Surface::sphere());
        c.push_back(main);
        return TopType(std::move(c));
    }

    const std::vector<Surface>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }
    int sphere_count() const {
        return static_cast<int>(std::count(comps_.begin(), comps_.end(), Surface::sphere()));
    }

    BettiData betti() const {
        BettiData d{0, 0, 0, static_cast<int>(comps_.size())};
        for (const auto& s : comps_) {
            d.chi += s.euler();
            d.h1 += s.h1();
            d.h_star += 2 + s.h1();
        }
        return d;
    }

    /// "2S+S4", "V10", "S1+S1", "4S+V2".
    std::string to_string() const {
        std::string out;
        int spheres = sphere_count();
        if (spheres > 0) out = spheres == 1 ? "S" : std::to_string(spheres) + "S";
        for (const auto& s : comps_) {
            if (s.kind == SurfaceKind::Sphere) continue;
            if (!out.empty()) out += "+";
            out += s.to_string();
        }
        return out;
    }

    static TopType parse(std::string_view text);

    auto operator<=>(const TopType&) const = default;

private:
    std::vector<Surface> comps_;
};

inline TopType TopType::parse(std::string_view text) {
    auto fail = [&](const std::string& why) {
        return Error(ErrorCode::Parse, "bad topological type '" + std::string(text) + "': " + why);
    };
    std::vector<Surface> comps;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('+', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view tok = text.substr(pos, end - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        std::size_t i = 0;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
        int mult = i == 0 ? 1 : std::stoi(std::string(tok.substr(0, i)));
        if (mult < 1) throw fail("multiplicity must be positive");
        if (i >= tok.size() || (tok[i] != 'S' && tok[i] != 'V')) throw fail("expected S or V");
        char letter = tok[i++];
        std::string_view digits = tok.substr(i);
        if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw fail("trailing characters");
        Surface s;
        if (letter == 'S') {
            s = Surface::orientable(digits.empty() ? 0 : std::stoi(std::string(digits)));
        } else {
            if (digits.empty()) throw fail("V needs a number of cross-caps");
            int q = std::stoi(std::string(digits));
            if (q < 1) throw fail("V needs at least one cross-cap");
            if (q % 2 != 0) throw fail("odd cross-cap counts never occur for these surfaces");
            s = Surface::non_orientable(q);
        }
        for (int m = 0; m < mult; ++m) comps.push_back(s);
        pos = end + 1;
    }
    if (comps.empty()) throw fail("empty");
    return TopType(std::move(comps));
}

inline std::ostream& operator<<(std::ostream& os, const TopType& t) { return os << t.to_string(); }

inline BettiData betti(const TopType& t) { return t.betti(); }

/// (chi(X(R)), h*(X(R))) point of the diagram.
struct DiagramPoint {
    int chi;
    int h_star;

    int ncomp() const { return (chi + h_star) / 4; }
    int h1() const { return (h_star - chi) / 2; }

    auto operator<=>(const DiagramPoint&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const DiagramPoint& p) {
    return os << "(" << p.chi << "," << p.h_star << ")";
}

namespace detail {
inline int mod(int a, int m) { return ((a % m) + m) % m; }
}  // namespace detail

inline bool is_allowed(const DiagramPoint& pt, int k) {
    const int chi = pt.chi, h = pt.h_star;
    if (chi % 2 != 0 || h % 2 != 0) return false;
    if (h < 4 || h > 12 * k) return false;
    if (chi < 2 - 10 * k || chi > 10 * k - 2) return false;
    if (chi > h - 4 || chi < 4 - h) return false;
    if ((chi + h) % 4 != 0) return false;
    const int ncomp = (chi + h) / 4;
    if (ncomp < 1 || ncomp > 5 * k) return false;
    const int h1 = (h - chi) / 2;
    if (h1 < 2 || h1 > 10 * k || h1 % 2 != 0) return false;
    const int d = (12 * k - h) / 2;
    if (d == 0 && detail::mod(chi - 8 * k, 16) != 0) return false;
    if (d == 1 && detail::mod(chi - 8 * k - 2, 16) != 0 && detail::mod(chi - 8 * k + 2, 16) != 0) return false;
    return true;
}

/// Every (chi, h*) surviving the Smith, Comessatti, Rokhlin-type and
/// elliptic-specific restrictions.
inline std::set<DiagramPoint> allowed_points(int k) {
    if (k < 1) throw Error(ErrorCode::OutOfRange, "k must be positive");
    std::set<DiagramPoint> out;
    for (int h = 4; h <= 12 * k; h += 2)
        for (int chi = 2 - 10 * k; chi <= 10 * k - 2; chi += 2)
            if (is_allowed({chi, h}, k)) out.insert({chi, h});
    return out;
}

/// The non-spherical component for a handle count l: S_l (k even) or V_2l (k odd).
inline Surface main_component(int l, int k) {
    return k % 2 == 0 ? Surface::orientable(l) : Surface::non_orientable(2 * l);
}

/// Two tori (k even) or two Klein bottles (k odd).
inline TopType exceptional_pair(int k) {
    Surface s = main_component(1, k);
    return TopType({s, s});
}

inline std::set<TopType> point_to_types(const DiagramPoint& pt, int k) {
    if (!is_allowed(pt, k)) throw Error(ErrorCode::NotAllowed, "point is not in the admissible diagram");
    const int a = (pt.chi + pt.h_star) / 4 - 1;
    const int l = (pt.h_star - pt.chi) / 4;
    std::set<TopType> out{TopType::with_spheres(a, main_component(l, k))};
    if (pt == DiagramPoint{0, 8}) out.insert(exceptional_pair(k));
    return out;
}

enum class ExtremalFamily { M, M2, Exceptional };

struct ExtremalType {
    TopType type;
    ExtremalFamily family;
    int lambda;  // -1 for the exceptional pair
};

inline std::vector<ExtremalType> extremal_types_detailed(int k) {
    if (k < 1) throw Error(ErrorCode::OutOfRange, "k must be positive");
    std::vector<ExtremalType> out;
    for (int lambda = 0; lambda <= k; ++lambda) {
        int a = k + 4 * lambda - 1, l = 5 * k - 4 * lambda;
        out.push_back({TopType::with_spheres(a, main_component(l, k)), ExtremalFamily::M, lambda});
    }
    for (int lambda = 0; lambda <= k - 1; ++lambda) {
        int a = k + 4 * lambda, l = 5 * k - 4 * lambda - 3;
        out.push_back({TopType::with_spheres(a, main_component(l, k)), ExtremalFamily::M2, lambda});
    }
    out.push_back({exceptional_pair(k), ExtremalFamily::Exceptional, -1});
    return out;
}

inline std::vector<TopType> extremal_types(int k) {
    std::vector<TopType> out;
    for (auto& e : extremal_types_detailed(k)) out.push_back(e.type);
    return out;
}

struct MorseOptions {
    /// Allow S_1 -> S and V_2 -> S contractions.
    bool allow_genus_zero = true;
};

/// All results of a single Morse simplification.
inline std::set<TopType> morse_moves(const TopType& t, MorseOptions opts = {}) {
    std::set<TopType> out;
    const auto& comps = t.components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i > 0 && comps[i] == comps[i - 1]) continue;
        const Surface& s = comps[i];
        std::vector<Surface> rest = comps;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        if (s.kind == SurfaceKind::Sphere) {
            if (!rest.empty()) out.insert(TopType(rest));
            continue;
        }
        Surface smaller = s.kind == SurfaceKind::Orientable ? Surface::orientable(s.genus - 1)
                                                            : Surface::non_orientable(s.genus - 2);
        if (smaller.kind == SurfaceKind::Sphere && !opts.allow_genus_zero) continue;
        rest.push_back(smaller);
        out.insert(TopType(rest));
    }
    return out;
}

/// Types reachable from the extremal list by Morse simplifications, keeping
/// those with first Betti number at least 2.
inline std::set<TopType> morse_closure(int k, MorseOptions opts = {}) {
    std::set<TopType> seen;
    std::vector<TopType> work = extremal_types(k);
    for (auto& t : work) seen.insert(t);
    while (!work.empty()) {
        TopType t = std::move(work.back());
        work.pop_back();
        for (auto& n : morse_moves(t, opts))
            if (seen.insert(n).second) work.push_back(n);
    }
    std::set<TopType> out;
    for (auto& t : seen)
        if (t.betti().h1 >= 2) out.insert(t);
    return out;
}

/// Union of point_to_types over the admissible diagram.
inline std::set<TopType> diagram_types(int k) {
    std::set<TopType> out;
    for (const auto& pt : allowed_points(k)) out.merge(point_to_types(pt, k));
    return out;
}

struct TheoremCheck {
    int k;
    bool ok;
    std::vector<TopType> only_in_closure;
    std::vector<TopType> only_in_diagram;
    std::size_t closure_size;
    std::size_t diagram_size;
};

/// Compares the Morse closure of the extremal list with the types the
/// restrictions leave open.
inline TheoremCheck verify_theorem(int k, MorseOptions opts = {}) {
    auto closure = morse_closure(k, opts);
    auto diagram = diagram_types(k);
    TheoremCheck r{k, false, {}, {}, closure.size(), diagram.size()};
    std::set_difference(closure.begin(), closure.end(), diagram.begin(), diagram.end(),
                        std::back_inserter(r.only_in_closure));
    std::set_difference(diagram.begin(), diagram.end(), closure.begin(), closure.end(),
                        std::back_inserter(r.only_in_diagram));
    r.ok = r.only_in_closure.empty() && r.only_in_diagram.empty();
    return r;
}

/// Real parts of the double cover of F_2k branched along C + E, one per lift
/// of the real structure.
inline std::set<TopType> cover_type(const RealScheme& s, int k) {
    if (k < 1) throw Error(ErrorCode::OutOfRange, "k must be positive");
    if (s.is_three_pseudo_lines()) return {exceptional_pair(k)};
    auto one = [k](int a, int b) { return TopType::with_spheres(a, main_component(b + 1, k)); };
    return {one(s.a(), s.b()), one(s.b(), s.a())};
}

inline bool is_extremal(const TopType& t, [[maybe_unused]] int k, const std::set<TopType>& closure) {
    if (!closure.contains(t)) throw Error(ErrorCode::NotInFamily, t.to_string() + " is not in the Morse closure");
    for (const auto& other : closure)
        if (morse_moves(other).contains(t)) return false;
    return true;
}

inline bool is_extremal(const TopType& t, int k) { return is_extremal(t, k, morse_closure(k)); }

}  // namespace ellipscheme

#endif  // ELLIPSCHEME_CLASSIFY_HPP
