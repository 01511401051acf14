#!/usr/bin/env python3
"""Independent reference values for the C++ tests.

Re-derives, with exact Python fractions and plain sets, the numbers frozen into
tests/test_reference.cpp:

  * size of the admissible diagram and of the Morse closure for k = 1..8,
    with the closure computed on (spheres, handles, exceptional) tuples;
  * for every curve file in tests/data: deg Delta, squarefreeness, the number
    of distinct real roots of Delta and the real scheme, found by deciding
    which pair of fibre points merges at each root of Delta.

Usage: reference.py [curve files...]   (defaults to tests/data/*.txt)
"""

import glob
import os
import sys
from fractions import Fraction



# ---------------------------------------------------------------- diagram

def admissible(chi, h, k):
    if chi % 2 or h % 2:
        return False
    if not (4 <= h <= 12 * k and 2 - 10 * k <= chi <= 10 * k - 2):
        return False
    if not (4 - h <= chi <= h - 4) or (chi + h) % 4:
        return False
    if not 1 <= (chi + h) // 4 <= 5 * k:
        return False
    h1 = (h - chi) // 2
    if not (2 <= h1 <= 10 * k) or h1 % 2:
        return False
    d = (12 * k - h) // 2
    if d == 0 and (chi - 8 * k) % 16:
        return False
    if d == 1 and (chi - 8 * k - 2) % 16 and (chi - 8 * k + 2) % 16:
        return False
    return True


def diagram(k):
    pts = [(c, h) for h in range(4, 12 * k + 1, 2) for c in range(2 - 10 * k, 10 * k - 1, 2) if admissible(c, h, k)]
    types = set()
    for c, h in pts:
        types.add(("main", (c + h) // 4 - 1, (h - c) // 4))
        if (c, h) == (0, 8):
            types.add(("pair", 1, 1))
    return pts, types


def closure(k):
    # ("main", a, l): a spheres and one surface with l handles (genus-0 main is a sphere)
    # ("pair", l1, l2): two handle-carrying surfaces, as in the exceptional type
    start = [("main", k + 4 * lam - 1, 5 * k - 4 * lam) for lam in range(k + 1)]
    start += [("main", k + 4 * lam, 5 * k - 4 * lam - 3) for lam in range(k)]
    start += [("pair", 1, 1)]

    def norm(t):
        if t[0] == "pair":
            l1, l2 = sorted(t[1:])
            if l1 == 0:
                return ("main", 1, l2)
            return ("pair", l1, l2)
        _, a, l = t
        if l == 0 and a > 0:
            return ("main", a, 0)
        return t

    def moves(t):
        out = set()
        if t[0] == "main":
            _, a, l = t
            comps = a + 1
            if a > 0 and comps >= 2:
                if l > 0:
                    out.add(("main", a - 1, l))
                else:
                    out.add(("main", a - 1, 0))
            if l > 0:
                out.add(norm(("main", a, l - 1)))
        else:
            _, l1, l2 = t
            out.add(norm(("pair", l1 - 1, l2)))
            out.add(norm(("pair", l1, l2 - 1)))
        return out

    seen = set(start)
    work = list(start)
    while work:
        for n in moves(work.pop()):
            if n not in seen:
                seen.add(n)
                work.append(n)

    def h1(t):
        return 2 * t[1] + 2 * t[2] if t[0] == "pair" else 2 * t[2]

    return {t for t in seen if h1(t) >= 2}


# ---------------------------------------------------------------- curves
#
# Real roots are isolated by Descartes' rule of signs with bisection, a
# different algorithm from the Sturm sequences of the library.

def parse_curve(path):
    vals = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith("#"):
                key, value = line.split("=", 1)
                vals[key.strip()] = value
    poly = lambda s: trim([Fraction(tok) for tok in s.split()])
    return int(vals["k"]), poly(vals["p"]), poly(vals["q"])


def trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def scale(a, s):
    return trim([s * x for x in a])


def evaluate(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def polygcd(a, b):
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            f = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[i + shift] -= f * c
            r = trim(r)
        a, b = b, r
    return a


def compose_affine(a, lo, width):
    """a(lo + width t) as a coefficient list in t."""
    out = []
    lin = [Fraction(lo), Fraction(width)]
    for c in reversed(a):
        out = add(mul(out, lin), [c])
    return out


def variations(c):
    signs = [x > 0 for x in c if x != 0]
    return sum(1 for i in range(1, len(signs)) if signs[i] != signs[i - 1])


def descartes_01(a):
    """Descartes bound for the roots of a in (0, 1): variations of (t+1)^n a(1/(t+1))."""
    c = list(reversed(a))  # t^n a(1/t)
    n = len(c)
    for i in range(n):  # Taylor shift by 1
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1]
    return variations(c)


def isolate(a, lo, hi):
    """Disjoint intervals (l, h), or points (m, m), one per root of a in (lo, hi), 0 < lo."""
    v = descartes_01(compose_affine(a, lo, hi - lo))
    if v == 0:
        return []
    if v == 1:
        return [(lo, hi)]
    m = (lo + hi) / 2
    if hi / lo > 4:
        # geometric middle, so roots of very different sizes separate quickly
        e = (hi.numerator.bit_length() - hi.denominator.bit_length()
             + lo.numerator.bit_length() - lo.denominator.bit_length()) // 2
        g = Fraction(2) ** e
        if lo < g < hi:
            m = g
    mid = [(m, m)] if evaluate(a, m) == 0 else []
    return isolate(a, lo, m) + mid + isolate(a, m, hi)


def positive_roots(a):
    z = next(i for i, c in enumerate(a) if c != 0)
    b = a[z:]
    upper = 1 + max(abs(c / b[-1]) for c in b[:-1])
    lower = 1 / (1 + max(abs(c / b[0]) for c in b[1:]))
    return isolate(b, lower, upper)


def real_roots(a):
    negative = [(-h, -l) for l, h in reversed(positive_roots([c * (-1) ** i for i, c in enumerate(a)]))]
    zero = [(Fraction(0), Fraction(0))] if a[0] == 0 else []
    return negative + zero + positive_roots(a)


def sign_at_root(f, a, iv):
    """Sign of f at the root of a isolated by iv, f and a coprime."""
    lo, hi = iv
    if lo == hi:
        s = evaluate(f, lo)
        return (s > 0) - (s < 0)
    sa = evaluate(a, lo) > 0
    while descartes_01(compose_affine(f, lo, hi - lo)) != 0:
        m = (lo + hi) / 2
        if evaluate(a, m) == 0:
            return sign_at_root(f, a, (m, m))
        if (evaluate(a, m) > 0) == sa:
            lo = m
        else:
            hi = m
    s = evaluate(f, (lo + hi) / 2)
    return (s > 0) - (s < 0)


def scheme(k, p, q):
    delta = add(scale(mul(mul(p, p), p), 4), scale(mul(q, q), 27))
    info = {"deg": len(delta) - 1, "squarefree": len(polygcd(delta, derivative(delta))) == 1}
    roots = real_roots(delta)
    info["real_roots"] = len(roots)
    if not roots:
        info["scheme"] = "3PL" if delta[-1] < 0 else "<0|0>"
        return info
    # at a root of Delta, p < 0 and the double fibre point -3q/2p lies below
    # the simple one 3q/p exactly when q < 0
    side = ["lower" if sign_at_root(q, delta, iv) < 0 else "upper" for iv in roots]
    n = len(roots)
    counts = {"lower": 0, "upper": 0}
    for i in range(n):
        if i + 1 < n:
            negative = evaluate(delta, (roots[i][1] + roots[i + 1][0]) / 2) < 0
        else:
            negative = delta[-1] < 0
        if negative and side[i] == side[(i + 1) % n]:
            counts[side[i]] += 1
    info["scheme"] = "<%d|%d>" % (counts["lower"], counts["upper"])
    return info


def main(argv):
    for k in range(1, 9):
        pts, types = diagram(k)
        cl = closure(k)
        print("k=%d points=%d diagram_types=%d closure=%d equal=%s" % (k, len(pts), len(types), len(cl), cl == types))
    root = os.path.join(os.path.dirname(__file__), "..", "..", "tests", "data")
    files = argv[1:] or sorted(glob.glob(os.path.join(root, "*.txt")))
    for path in files:
        k, p, q = parse_curve(path)
        info = scheme(k, p, q)
        print("%s k=%d deg=%d squarefree=%s real_roots=%d scheme=%s" % (
            os.path.basename(path), k, info["deg"], info["squarefree"], info["real_roots"], info["scheme"]))


if __name__ == "__main__":
    main(sys.argv)
