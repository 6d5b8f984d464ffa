"""Independent reference computations used to freeze expected values.

Each function here re-derives a quantity by a different route than the
package code: hinge sums instead of piecewise assembly, multiset peeling
instead of piece bookkeeping, sympy Groebner bases instead of the in-house
Buchberger or rank code.
"""

from fractions import Fraction
from math import comb

import sympy

X, Y, Z = sympy.symbols("x y z")


def hinge_density(pieces, d, x):
    """``sum r * max(0, -(a + d (x - 1)))``, the bundle density pointwise."""
    x = Fraction(x)
    return sum((r * max(Fraction(0), -(Fraction(a) + d * (x - 1))) for a, r in pieces), Fraction(0))


def hinge_pair_density(v_pieces, degrees, d, x):
    m_pieces = [((1 - e) * d, 1) for e in degrees]
    return hinge_density(v_pieces, d, x) - hinge_density(m_pieces, d, x)


def multiset_peel(v_pieces, degrees, d):
    """Peel on the expanded slope multiset; returns ``(t, a_min)``."""
    v = sorted((Fraction(a) for a, r in v_pieces for _ in range(r)), reverse=True)
    m = sorted(((1 - e) * d for e in degrees), reverse=True)
    t = 0
    while True:
        sigma = m[-1]
        s = m.count(sigma)
        if v[-1] < sigma:
            return t, v[-1]
        assert v[-1] == sigma and v.count(sigma) >= s
        for _ in range(s):
            v.remove(sigma)
            m.remove(sigma)
        t += 1


def sympy_graded_dim(h_text, gens_text, m, p):
    """``dim (F_p[x,y,z]/(h, gens))_m`` from a sympy Groebner basis."""
    polys = [sympy.sympify(h_text)] + [sympy.sympify(g) for g in gens_text]
    G = sympy.groebner(polys, X, Y, Z, modulus=p, order="grevlex")
    lms = [sympy.Poly(g, X, Y, Z, modulus=p).monoms(order="grevlex")[0] for g in G.exprs]
    count = 0
    for a in range(m + 1):
        for b in range(m - a + 1):
            mono = (a, b, m - a - b)
            if not any(all(u <= w for u, w in zip(lm, mono)) for lm in lms):
                count += 1
    return count


def plane_curve_hilbert(d, m):
    """``dim (k[x,y,z]/(h))_m`` for a plane curve of degree ``d``."""
    return comb(m + 2, 2) - (comb(m - d + 2, 2) if m >= d else 0)


def klein_residual(d, p):
    c = sympy.Rational(3 * p * d + d * d - 9 * d + 15, 2 * p * d)
    return c - sympy.Rational(3, 2)
