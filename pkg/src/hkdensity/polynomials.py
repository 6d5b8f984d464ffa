"""Sparse polynomials in three variables over F_p.

A polynomial is a ``dict`` mapping exponent triples ``(a, b, c)`` to nonzero
coefficients in ``[1, p)``.  The text format is terms ``c*x^a*y^b*z^c``
joined by ``+`` or ``-``; coefficients and exponents may be omitted.
"""

from __future__ import annotations

import re
from math import comb
from typing import Iterable, Iterator

from hkdensity.errors import ValidationError

Monomial = tuple[int, int, int]
Poly = dict

VARIABLES = ("x", "y", "z")

_TERM_SPLIT = re.compile(r"([+-])")


def _clean(poly: dict, p: int) -> dict:
    return {m: c % p for m, c in poly.items() if c % p}


def parse_poly(text: str, p: int, variables: tuple[str, str, str] = VARIABLES) -> Poly:
    """Parse ``"x^4 + y^4 - 2*z^4"`` into a polynomial mod ``p``."""
    if not isinstance(text, str) or not text.strip():
        raise ValidationError(f"empty polynomial text: {text!r}")
    index = {v: i for i, v in enumerate(variables)}
    src = text.replace(" ", "").replace("**", "^")
    parts = _TERM_SPLIT.split(src)
    out: dict = {}
    sign = 1
    pending = False
    for part in parts:
        if part in ("+", "-"):
            sign *= -1 if part == "-" else 1
            pending = True
            continue
        if not part:
            continue
        coeff = sign
        exps = [0, 0, 0]
        for factor in part.split("*"):
            if not factor:
                raise ValidationError(f"malformed term {part!r} in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, caret, power = factor.partition("^")
            if name not in index:
                raise ValidationError(f"unknown variable {name!r} in {text!r}")
            if caret and not power.isdigit():
                raise ValidationError(f"bad exponent {power!r} in {text!r}")
            exps[index[name]] += int(power) if power else 1
        mono = tuple(exps)
        out[mono] = out.get(mono, 0) + coeff
        sign = 1
        pending = False
    if pending:
        raise ValidationError(f"dangling sign in {text!r}")
    return _clean(out, p)


def format_poly(poly: Poly, variables: tuple[str, str, str] = VARIABLES) -> str:
    if not poly:
        return "0"
    terms = []
    for mono in sorted(poly, key=grevlex_key, reverse=True):
        c = poly[mono]
        factors = [] if c == 1 and any(mono) else [str(c)]
        for v, e in zip(variables, mono):
            if e:
                factors.append(v if e == 1 else f"{v}^{e}")
        terms.append("*".join(factors))
    return " + ".join(terms)


def grevlex_key(m: Monomial):
    """Sort key for degree reverse lexicographic order with x > y > z."""
    return (m[0] + m[1] + m[2], -m[2], -m[1])


def degree(poly: Poly) -> int:
    if not poly:
        raise ValidationError("the zero polynomial has no degree")
    return max(sum(m) for m in poly)


def is_homogeneous(poly: Poly) -> bool:
    return len({sum(m) for m in poly}) <= 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    out = dict(f)
    for m, c in g.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def scale(f: Poly, c: int, p: int) -> Poly:
    c %= p
    return {m: v * c % p for m, v in f.items()} if c else {}


def mul(f: Poly, g: Poly, p: int) -> Poly:
    out: dict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return {m: c for m, c in out.items() if c}


def mul_monomial(f: Poly, mono: Monomial) -> Poly:
    a, b, e = mono
    return {(m[0] + a, m[1] + b, m[2] + e): v for m, v in f.items()}


def power(f: Poly, n: int, p: int) -> Poly:
    """``f**n`` mod ``p``, using Frobenius on the base-``p`` digits of ``n``."""
    result: Poly = {(0, 0, 0): 1}
    frob = f
    while n:
        n, digit = divmod(n, p)
        for _ in range(digit):
            result = mul(result, frob, p)
        # f^(p^k) = sum c^(p^k) m^(p^k) and c^p = c in F_p
        frob = {(m[0] * p, m[1] * p, m[2] * p): c for m, c in frob.items()}
    return result


def frobenius(f: Poly, q: int) -> Poly:
    """``f**q`` for ``q`` a power of the characteristic: exponents scale by ``q``."""
    return {(m[0] * q, m[1] * q, m[2] * q): c for m, c in f.items()}


def substitute_linear(f: Poly, images: tuple[Poly, Poly, Poly], p: int) -> Poly:
    """Replace each variable by the corresponding (linear) polynomial."""
    cache: dict = {}

    def pw(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in cache:
            cache[key] = power(images[i], e, p)
        return cache[key]

    out: Poly = {}
    for (a, b, c), coeff in f.items():
        term = mul(mul(pw(0, a), pw(1, b), p), pw(2, c), p)
        out = add(out, scale(term, coeff, p), p)
    return out


def evaluate(f: Poly, point: tuple[int, int, int], p: int) -> int:
    x, y, z = point
    return sum(c * pow(x, a, p) * pow(y, b, p) * pow(z, e, p) for (a, b, e), c in f.items()) % p


def derivative(f: Poly, var: int, p: int) -> Poly:
    out: dict = {}
    for m, c in f.items():
        if m[var]:
            n = list(m)
            n[var] -= 1
            v = c * m[var] % p
            if v:
                out[tuple(n)] = v
    return out


def monomials_of_degree(m: int) -> Iterator[Monomial]:
    """All ``x^a y^b z^c`` with ``a + b + c = m``, in a fixed order."""
    for a in range(m, -1, -1):
        for b in range(m - a, -1, -1):
            yield (a, b, m - a - b)


def count_monomials(m: int) -> int:
    return comb(m + 2, 2) if m >= 0 else 0


def freeze(f: Poly) -> tuple:
    return tuple(sorted(f.items()))


def thaw(items: Iterable) -> Poly:
    return dict(items)
