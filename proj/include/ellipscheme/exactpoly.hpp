#ifndef ELLIPSCHEME_EXACTPOLY_HPP
#define ELLIPSCHEME_EXACTPOLY_HPP

// Exact rational arithmetic and dense univariate polynomials over Q,
// with Sturm-sequence real root isolation.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace ellipscheme {

/// Arbitrary precision rational, always kept in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& r) { return sgn(r); }

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// 2^-n as an exact rational.
inline Rational pow2_inv(unsigned n) {
    Integer d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, n);
    return make_rational(1, d);
}

inline Rational pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

/// Parses "n" or "n/d" in base 10. Accepts ASCII '-' and U+2212 as minus.
inline Rational parse_rational(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text.compare(i, 3, "\xE2\x88\x92") == 0) {
            s.push_back('-');
            i += 2;
        } else {
            s.push_back(text[i]);
        }
    }
    auto valid_int = [](std::string_view t) {
        if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || (slash != std::string::npos && den.front() == '-'))
        throw Error(ErrorCode::Parse, "bad rational '" + std::string(text) + "'");
    if (num.front() == '+') num.erase(0, 1);
    if (den.front() == '+') den.erase(0, 1);
    return make_rational(Integer(num), Integer(den));
}

inline std::string format_rational(const Rational& r) { return r.get_str(10); }

/// Dense polynomial in one variable, constant term first. The coefficient
/// vector never carries trailing zeros, so the zero polynomial is empty.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static UniPoly constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }
    static UniPoly monomial(const Rational& c, std::size_t degree) {
        std::vector<Rational> v(degree + 1);
        v[degree] = c;
        return UniPoly(std::move(v));
    }
    /// The polynomial u.
    static UniPoly identity() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }
    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_constant() const { return c_.size() <= 1; }

    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& leading() const { return c_.back(); }
    std::span<const Rational> coefficients() const { return c_; }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return UniPoly(std::move(d));
    }

    /// Returns this(inner(u)).
    UniPoly compose(const UniPoly& inner) const {
        UniPoly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
        return acc;
    }

    UniPoly monic() const {
        if (is_zero()) return {};
        return *this * (Rational(1) / leading());
    }

    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(UniPoly a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(UniPoly a, const Rational& s) {
        if (s == 0) return {};
        for (auto& x : a.c_) x *= s;
        return a;
    }
    friend UniPoly operator*(const Rational& s, UniPoly a) { return std::move(a) * s; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

enum class PolyOp { Add, Sub, Mul };

inline UniPoly poly_arith(const UniPoly& a, const UniPoly& b, PolyOp op) {
    switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
    }
    return {};
}

inline UniPoly pow(const UniPoly& base, unsigned e) {
    UniPoly r = UniPoly::constant(1);
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
}

/// Euclidean division: a = q*b + r with deg r < deg b.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("divmod: division by zero polynomial");
    std::vector<Rational> rem(a.coefficients().begin(), a.coefficients().end());
    const int db = b.degree();
    if (a.degree() < db) return {UniPoly{}, a};
    std::vector<Rational> quot(a.degree() - db + 1);
    const Rational inv_lead = Rational(1) / b.leading();
    for (int i = a.degree(); i >= db; --i) {
        if (rem[i] == 0) continue;
        Rational f = rem[i] * inv_lead;
        quot[i - db] = f;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeff(j);
    }
    rem.resize(db);
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

/// Scales a nonzero polynomial by a positive rational so its coefficients are
/// coprime integers. Signs at every point are preserved.
inline UniPoly primitive_part(const UniPoly& a) {
    if (a.is_zero()) return a;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& c : a.coefficients()) {
        if (c == 0) continue;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    return a * make_rational(den_lcm, num_gcd);
}

/// Monic gcd; gcd(0, 0) is rejected.
inline UniPoly gcd(UniPoly a, UniPoly b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
    while (!b.is_zero()) {
        UniPoly r = divmod(a, b).second;
        a = std::move(b);
        b = primitive_part(r);
    }
    return a.monic();
}

inline bool is_squarefree(const UniPoly& a) {
    if (a.is_zero()) return false;
    if (a.degree() <= 1) return true;
    return gcd(a, a.derivative()).is_constant();
}

/// Monic gcd of a and b, plus the squarefreeness flag of a.
struct GcdReport {
    UniPoly gcd;
    bool a_squarefree;
};

inline GcdReport squarefree_and_gcd(const UniPoly& a, const UniPoly& b) {
    return {gcd(a, b), is_squarefree(a)};
}

namespace detail {

/// Integer coefficients equal to a's times a positive constant.
inline std::vector<Integer> integer_coefficients(const UniPoly& a) {
    Integer den = 1;
    for (const auto& c : a.coefficients()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> out;
    out.reserve(a.coefficients().size());
    for (const auto& c : a.coefficients()) out.push_back(c.get_num() * (den / c.get_den()));
    return out;
}

/// Sign of d^n * a(num/d) for d > 0, evaluated in integers.
inline int homogeneous_sign(const std::vector<Integer>& c, const Integer& num, const Integer& d) {
    if (c.empty()) return 0;
    Integer acc = c.back(), dpow = 1;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        dpow *= d;
        acc *= num;
        acc += c[i] * dpow;
    }
    return sgn(acc);
}

inline int homogeneous_sign(const std::vector<Integer>& c, const Rational& x) {
    return homogeneous_sign(c, x.get_num(), x.get_den());
}

}  // namespace detail

inline int sign_at(const UniPoly& a, const Rational& x) {
    return detail::homogeneous_sign(detail::integer_coefficients(a), x);
}

/// Open interval (lo, hi) with rational endpoints containing exactly one root
/// of the polynomial it was computed for. The polynomial is nonzero at both
/// endpoints, which also makes the half-open Sturm convention (lo, hi] hold.
struct IsolatingInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
};

inline std::ostream& operator<<(std::ostream& os, const IsolatingInterval& iv) {
    return os << "(" << iv.lo << ", " << iv.hi << ")";
}

/// Exact sign on an interval the caller knows to be root-free.
inline int sign_on_interval(const UniPoly& a, const Rational& lo, const Rational& hi) {
    int s = sign_at(a, (lo + hi) / 2);
    if (s == 0) throw Error(ErrorCode::SignAmbiguous, "polynomial vanishes at the sample point of a root-free interval");
    return s;
}

class SturmSequence {
public:
    explicit SturmSequence(const UniPoly& a) {
        if (a.is_zero()) throw std::invalid_argument("Sturm sequence of zero polynomial");
        seq_.push_back(primitive_part(a));
        if (a.degree() > 0) {
            seq_.push_back(primitive_part(a.derivative()));
            while (true) {
                UniPoly r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
                if (r.is_zero()) break;
                seq_.push_back(primitive_part(-r));
            }
        }
        for (const auto& p : seq_) ints_.push_back(detail::integer_coefficients(p));
    }

    /// Number of sign variations at x (zeros skipped).
    int variations(const Rational& x) const {
        int count = 0, prev = 0;
        for (const auto& c : ints_) {
            int s = detail::homogeneous_sign(c, x);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    int variations_at_infinity(bool positive) const {
        int count = 0, prev = 0;
        for (const auto& p : seq_) {
            int s = sign(p.leading());
            if (!positive && p.degree() % 2 == 1) s = -s;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    /// Number of distinct real roots in (lo, hi].
    int count(const Rational& lo, const Rational& hi) const { return variations(lo) - variations(hi); }
    int count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }

    std::span<const UniPoly> polynomials() const { return seq_; }

private:
    std::vector<UniPoly> seq_;
    std::vector<std::vector<Integer>> ints_;
};

namespace detail {

/// floor(log2 r) for r > 0.
inline long floor_log2(const Rational& r) {
    const Integer& n = r.get_num();
    const Integer& d = r.get_den();
    long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
    // 2^e <= n/d < 2^(e+2) at this point
    Integer lhs = n, rhs = d;
    if (e >= 0) {
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    if (lhs < rhs) return e - 1;
    return lhs >= 2 * rhs ? e + 1 : e;
}

inline Rational pow2(long e) {
    Rational r = 1;
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

/// Exponent e with every root of a strictly inside (-2^e, 2^e) (Fujiwara's bound).
inline long root_bound_exponent(const UniPoly& a) {
    const int n = a.degree();
    long best = 0;
    bool any = false;
    for (int i = 1; i <= n; ++i) {
        const Rational& c = a.coefficients()[n - i];
        if (c == 0) continue;
        // |c / lead|^(1/i) < 2^ceil((floor_log2 + 1) / i)
        long l = floor_log2(abs(c / a.leading())) + 1;
        long e = l >= 0 ? (l + i - 1) / i : -((-l) / i);
        if (!any || e > best) best = e;
        any = true;
    }
    return any ? best + 1 : 0;
}

}  // namespace detail

/// Strict bound: every real root lies in (-B, B). B is a power of two.
inline Rational root_bound(const UniPoly& a) { return detail::pow2(detail::root_bound_exponent(a)); }

namespace detail {

/// A point strictly inside (lo, hi), as close to the midpoint as possible, where a is nonzero.
inline Rational nonroot_split(const UniPoly& a, const Rational& lo, const Rational& hi) {
    Rational mid = (lo + hi) / 2;
    if (sign_at(a, mid) != 0) return mid;
    Rational step = (hi - lo) / 4;
    while (true) {
        Rational left = mid - step, right = mid + step;
        if (sign_at(a, left) != 0) return left;
        if (sign_at(a, right) != 0) return right;
        step /= 2;
    }
}

/// Split point for bisection. Intervals of one sign spanning several binary
/// orders of magnitude are cut at a power of two near their geometric middle,
/// so roots of very different sizes separate in few steps.
inline Rational magnitude_split(const UniPoly& a, const Rational& lo, const Rational& hi) {
    if (lo < 0 && hi > 0) {
        if (sign_at(a, 0) != 0) return 0;
        return nonroot_split(a, lo, hi);
    }
    const bool neg = hi <= 0;
    const Rational small = neg ? Rational(-hi) : lo;
    const Rational big = neg ? Rational(-lo) : hi;
    if (small > 0) {
        const long el = floor_log2(small), eh = floor_log2(big);
        if (eh - el >= 2) {
            Rational m = pow2(el + (eh - el) / 2);
            if (neg) m = -m;
            if (sign_at(a, m) != 0) return m;
        }
    }
    return nonroot_split(a, lo, hi);
}

}  // namespace detail

inline constexpr long kDefaultRefineDenominator = 1024;

/// Shrinks iv around its root until its width is at most max_width.
/// Requires a squarefree polynomial with a single root inside iv.
inline IsolatingInterval refine(const UniPoly& a, IsolatingInterval iv, const Rational& max_width) {
    const auto c = detail::integer_coefficients(a);
    const int s_lo = detail::homogeneous_sign(c, iv.lo);
    while (iv.width() > max_width) {
        Rational m = detail::magnitude_split(a, iv.lo, iv.hi);
        if (detail::homogeneous_sign(c, m) == s_lo) {
            iv.lo = m;
        } else {
            iv.hi = m;
        }
    }
    return iv;
}

inline const Rational kDefaultRefineWidth{1, kDefaultRefineDenominator};

/// Isolates every distinct real root of a squarefree polynomial, optionally
/// restricted to the half-open window (lo, hi]. Intervals come back sorted,
/// pairwise disjoint and, unless max_width is empty, no wider than max_width.
inline std::vector<IsolatingInterval> sturm_isolate(const UniPoly& a,
                                                    std::optional<IsolatingInterval> window = std::nullopt,
                                                    std::optional<Rational> max_width = kDefaultRefineWidth) {
    if (a.is_zero()) throw std::invalid_argument("sturm_isolate: zero polynomial");
    if (!is_squarefree(a)) throw Error(ErrorCode::NotSquarefree, "sturm_isolate needs a squarefree polynomial");
    std::vector<IsolatingInterval> out;
    if (a.degree() == 0) return out;

    SturmSequence sturm(a);
    Rational lo, hi;
    if (window) {
        lo = window->lo;
        hi = window->hi;
        // a root sitting exactly on hi belongs to the window; push hi slightly right
        if (sign_at(a, hi) == 0) {
            Rational eps = (hi - lo) / 2;
            while (sign_at(a, hi + eps) == 0 || sturm.count(hi, hi + eps) != 0) eps /= 2;
            hi += eps;
        }
        if (sign_at(a, lo) == 0) {
            // lo itself is excluded; move slightly right without crossing another root
            Rational eps = (hi - lo) / 2;
            while (sign_at(a, lo + eps) == 0 || sturm.count(lo, lo + eps) != 0) eps /= 2;
            lo += eps;
        }
    }

    struct Pending {
        Rational lo, hi;
        int count;
    };
    std::vector<Pending> stack;
    if (window) {
        stack.push_back({lo, hi, sturm.count(lo, hi)});
    } else {
        // nonzero roots have modulus in (small, b); a root at 0 is handled on its own
        const Rational b = root_bound(a);
        std::vector<Rational> rev;
        std::size_t z = 0;
        while (a.coefficients()[z] == 0) ++z;
        for (std::size_t i = a.coefficients().size(); i-- > z;) rev.push_back(a.coefficients()[i]);
        const Rational small = Rational(1) / root_bound(UniPoly(std::move(rev)));
        if (z > 0) out.push_back({-small, small});
        stack.push_back({small, b, sturm.count(small, b)});
        stack.push_back({-b, -small, sturm.count(-b, -small)});
    }
    while (!stack.empty()) {
        Pending cur = stack.back();
        stack.pop_back();
        if (cur.count <= 0) continue;
        if (cur.count == 1) {
            out.push_back({cur.lo, cur.hi});
            continue;
        }
        Rational m = detail::magnitude_split(a, cur.lo, cur.hi);
        int left = sturm.count(cur.lo, m);
        stack.push_back({m, cur.hi, cur.count - left});
        stack.push_back({cur.lo, m, left});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    if (max_width)
        for (auto& iv : out) iv = refine(a, iv, *max_width);
    return out;
}

/// Sorted isolating intervals for the real roots of x^3 + p0 x + q0.
inline std::vector<IsolatingInterval> ordered_real_roots_of_cubic(const Rational& p0, const Rational& q0) {
    if (4 * p0 * p0 * p0 + 27 * q0 * q0 == 0)
        throw Error(ErrorCode::NotSquarefree, "cubic has a multiple root (4p^3+27q^2 = 0)");
    return sturm_isolate(UniPoly{q0, p0, 0, 1});
}

// ---- text format: whitespace separated coefficients, constant term first ----

inline UniPoly parse_poly(std::string_view line) {
    std::istringstream in{std::string(line)};
    std::vector<Rational> coeffs;
    std::string tok;
    while (in >> tok) coeffs.push_back(parse_rational(tok));
    return UniPoly(std::move(coeffs));
}

inline std::string format_poly(const UniPoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& c : a.coefficients()) {
        if (!out.empty()) out += ' ';
        out += format_rational(c);
    }
    return out;
}

/// Human readable form, highest degree first, e.g. "4*u^3 + 27".
inline std::string pretty(const UniPoly& a, std::string_view var = "u") {
    if (a.is_zero()) return "0";
    std::string out;
    for (int i = a.degree(); i >= 0; --i) {
        const Rational& c = a.coefficients()[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        bool unit = mag == 1 && i > 0;
        if (!unit) out += format_rational(mag);
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const UniPoly& a) { return os << pretty(a); }

}  // namespace ellipscheme

#endif // ELLIPSCHEME_EXACTPOLY_HPP
