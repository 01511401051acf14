#ifndef ELLIPSCHEME_TESTS_BRUTE_ROOTS_HPP
#define ELLIPSCHEME_TESTS_BRUTE_ROOTS_HPP

// Root counting by sampling, used as an oracle for the Sturm code.

#include <ellipscheme/exactpoly.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace brute {

using ellipscheme::Rational;
using ellipscheme::UniPoly;

/// Random polynomial of degree 1..max_degree with coefficients n/d, |n| <= 9, 1 <= d <= 4.
inline UniPoly random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(1, max_degree), num(-9, 9), den(1, 4);
    const int d = deg(rng);
    std::vector<Rational> c(d + 1);
    for (auto& x : c) {
        x = Rational(num(rng), den(rng));
        x.canonicalize();
    }
    while (c.back() == 0) c.back() = Rational(num(rng), den(rng));
    c.back().canonicalize();
    return UniPoly(std::move(c));
}

/// c * prod (u - r_i) * prod ((u - a_j)^2 + b_j), b_j > 0; the roots are known
/// by construction and sit on multiples of 1/8 inside [-8, 8].
struct FactoredPoly {
    Rational scale;
    std::vector<Rational> roots;  // sorted, distinct
    std::vector<std::pair<Rational, Rational>> quadratics;

    UniPoly expand() const {
        UniPoly out = UniPoly::constant(scale);
        for (const auto& r : roots) out = out * UniPoly{-r, 1};
        for (const auto& [a, b] : quadratics) out = out * UniPoly{a * a + b, -2 * a, 1};
        return out;
    }

    /// Sign read off the factors, without expanding.
    int sign(const Rational& x) const {
        int s = sgn(scale);
        for (const auto& r : roots) s *= sgn(x - r);
        return s;
    }
};

inline FactoredPoly random_factored(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> grid(-64, 64), small(1, 9), coin(0, 2);
    FactoredPoly fp;
    fp.scale = Rational(small(rng) * (coin(rng) == 0 ? -1 : 1), small(rng));
    fp.scale.canonicalize();
    std::uniform_int_distribution<int> deg(1, max_degree);
    int remaining = deg(rng);
    std::set<Rational> roots;
    while (remaining > 0) {
        if (remaining >= 2 && coin(rng) == 0) {
            Rational a(grid(rng), 8), b(small(rng), small(rng));
            a.canonicalize();
            b.canonicalize();
            fp.quadratics.emplace_back(a, b);
            remaining -= 2;
        } else {
            Rational r(grid(rng), 8);
            r.canonicalize();
            if (roots.insert(r).second) --remaining;
        }
    }
    fp.roots.assign(roots.begin(), roots.end());
    return fp;
}

/// Sign changes over odd multiples of 1/16 in [-9, 9]; no root sits on the
/// grid and two roots are never closer than 1/8.
inline int grid_sign_changes(const FactoredPoly& fp) {
    int changes = 0, prev = 0;
    for (int j = -145; j <= 145; j += 2) {
        const int s = fp.sign(Rational(j, 16));
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

/// Sign changes of a over a uniform grid on [-B, B] (B the Cauchy bound),
/// doubling the grid until the count has been the same three times running.
inline int stable_sign_changes(const UniPoly& a) {
    Rational bound = 0;
    for (int i = 0; i < a.degree(); ++i) bound = std::max(bound, Rational(abs(a.coeff(i) / a.leading())));
    bound += 1;
    auto count = [&](long n) {
        int changes = 0, prev = 0;
        for (long j = -n; j <= n; ++j) {
            const int s = sgn(a.eval(bound * Rational(j, n)));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    };
    int last = -1, streak = 0;
    for (long n = 64; n <= (1L << 16); n *= 2) {
        const int c = count(n);
        streak = c == last ? streak + 1 : 1;
        last = c;
        if (streak == 3) break;
    }
    return last;
}

}  // namespace brute

#endif  // ELLIPSCHEME_TESTS_BRUTE_ROOTS_HPP
