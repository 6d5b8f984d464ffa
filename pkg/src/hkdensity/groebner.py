"""Degree-truncated Buchberger algorithm for homogeneous ideals in F_p[x, y, z].

Everything is homogeneous, so S-pairs are processed in order of the degree of
their lcm and the computation can stop at any degree ``D``: the leading
monomials found so far generate the initial ideal in every degree ``<= D``.
Order is grevlex with ``x > y > z``.
"""

from __future__ import annotations

from collections import defaultdict

from hkdensity.errors import ValidationError
from hkdensity.polynomials import Monomial, Poly, count_monomials, grevlex_key, is_homogeneous


def _lm(f: Poly) -> Monomial:
    return max(f, key=grevlex_key)


def _divides(a: Monomial, b: Monomial) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2]


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return (max(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2]))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return not (a[0] and b[0] or a[1] and b[1] or a[2] and b[2])


def _sub_multiple(f: Poly, g: Poly, shift: Monomial, c: int, p: int) -> None:
    """``f -= c * shift * g`` in place."""
    a, b, e = shift
    for m, v in g.items():
        key = (m[0] + a, m[1] + b, m[2] + e)
        w = (f.get(key, 0) - c * v) % p
        if w:
            f[key] = w
        else:
            f.pop(key, None)


class TruncatedGroebner:
    """Groebner basis of a homogeneous ideal, valid up to ``self.degree``."""

    def __init__(self, generators, p: int):
        self.p = p
        self.polys: list[Poly] = []
        self.lms: list[Monomial] = []
        self.active: list[int] = []
        self.pairs: dict[int, list[tuple[int, int]]] = defaultdict(list)
        self.pending: dict[int, list[Poly]] = defaultdict(list)
        self.degree = -1
        for g in generators:
            g = {m: c % p for m, c in g.items() if c % p}
            if not g:
                continue
            if not is_homogeneous(g):
                raise ValidationError("Groebner backend needs homogeneous generators")
            self.pending[sum(next(iter(g)))].append(g)

    # reduction -----------------------------------------------------------
    def _reducer(self, m: Monomial):
        for i in self.active:
            if _divides(self.lms[i], m):
                return i
        return None

    def reduce(self, f: Poly) -> Poly:
        """Top-reduce ``f`` (a copy) until its leading monomial is standard."""
        f = dict(f)
        p = self.p
        while f:
            lm = _lm(f)
            i = self._reducer(lm)
            if i is None:
                return f
            g = self.lms[i]
            shift = (lm[0] - g[0], lm[1] - g[1], lm[2] - g[2])
            _sub_multiple(f, self.polys[i], shift, f[lm], p)
        return f

    def _spoly(self, i: int, j: int) -> Poly:
        li, lj = self.lms[i], self.lms[j]
        l = _lcm(li, lj)
        f = {(m[0] + l[0] - li[0], m[1] + l[1] - li[1], m[2] + l[2] - li[2]): c for m, c in self.polys[i].items()}
        _sub_multiple(f, self.polys[j], (l[0] - lj[0], l[1] - lj[1], l[2] - lj[2]), 1, self.p)
        return f

    # Gebauer-Moeller update ---------------------------------------------
    def _insert(self, h: Poly) -> None:
        p = self.p
        lm = _lm(h)
        inv = pow(h[lm], p - 2, p)
        h = {m: c * inv % p for m, c in h.items()}
        k = len(self.polys)
        self.polys.append(h)
        self.lms.append(lm)
        lcms = {i: _lcm(lm, self.lms[i]) for i in self.active}
        # keep a new pair unless another new pair has a strictly dividing lcm
        # (or an equal lcm, first one wins)
        kept = []
        cand = list(self.active)
        for idx, i in enumerate(cand):
            li = lcms[i]
            if _coprime(lm, self.lms[i]):
                kept.append((i, True))
                continue
            redundant = False
            for jdx, j in enumerate(cand):
                if j == i:
                    continue
                lj = lcms[j]
                if _divides(lj, li) and (lj != li or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                kept.append((i, False))
        # chain criterion on old pairs
        for deg, plist in self.pairs.items():
            new = []
            for a, b in plist:
                lab = _lcm(self.lms[a], self.lms[b])
                if _divides(lm, lab) and _lcm(lm, self.lms[a]) != lab and _lcm(lm, self.lms[b]) != lab:
                    continue
                new.append((a, b))
            self.pairs[deg] = new
        for i, cop in kept:
            if not cop:
                self.pairs[sum(lcms[i])].append((i, k))
        self.active = [i for i in self.active if not _divides(lm, self.lms[i])] + [k]

    # driver ---------------------------------------------------------------
    def extend(self, degree: int) -> "TruncatedGroebner":
        """Process all pairs and generators up to ``degree``."""
        for delta in range(self.degree + 1, degree + 1):
            work = [self._spoly(a, b) for a, b in self.pairs.pop(delta, [])]
            work += self.pending.pop(delta, [])
            for f in work:
                r = self.reduce(f)
                if r:
                    self._insert(r)
            self.degree = delta
        return self

    def leading_monomials(self) -> list[Monomial]:
        return [self.lms[i] for i in self.active]

    def standard_count(self, m: int) -> int:
        """Number of degree-``m`` monomials outside the initial ideal."""
        if m > self.degree:
            self.extend(m)
        lms = [g for g in self.leading_monomials() if sum(g) <= m]
        covered = 0
        for a in range(m + 1):
            # x^a y^b z^(m-a-b) is divisible by (u, v, w) iff v <= b <= m - a - w
            spans = sorted((v, m - a - w) for u, v, w in lms if u <= a and v <= m - a - w)
            hi = -1
            for lo, top in spans:
                if top <= hi:
                    continue
                covered += top - max(lo, hi + 1) + 1
                hi = top
        return count_monomials(m) - covered

    def self_check(self, degree: int | None = None) -> bool:
        """Every S-polynomial with lcm degree ``<= degree`` reduces to zero."""
        degree = self.degree if degree is None else degree
        self.extend(degree)
        act = self.active
        for x, i in enumerate(act):
            for j in act[x + 1 :]:
                if sum(_lcm(self.lms[i], self.lms[j])) > degree:
                    continue
                if self.reduce(self._spoly(i, j)):
                    return False
        return True
