"""Brute-force graded lengths of ``R/I^[q]`` over F_p.

Three ways to get ``dim (R/J)_m`` for ``R = F_p[x, y, z]/(h)``:

``rank``
    If ``h`` contains a pure power ``z^d`` (after a linear change of
    coordinates if needed) then ``R`` is free over ``F_p[x, y]`` on
    ``1, z, ..., z^(d-1)``.  ``J_m`` is spanned by ``x^a y^b z^j g`` with
    ``j < d``, each reduced to that basis; the answer is the basis size minus
    the rank over F_p.
``dense``
    The literal matrix of all degree-``m`` multiples of ``h`` and of the
    generators in the full polynomial ring.
``groebner``
    Standard monomials of a degree-truncated Groebner basis of ``(h) + J``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from hkdensity.density import EnvelopePair
from hkdensity.errors import BudgetExceededError, InvariantViolation, ValidationError
from hkdensity.groebner import TruncatedGroebner
from hkdensity.kernels import rank_mod_p
from hkdensity.piecewise import PiecewiseLinear
from hkdensity.polynomials import (
    Poly,
    degree,
    evaluate,
    monomials_of_degree,
    substitute_linear,
)
from hkdensity.rings import IdealSpec, RingPresentation, frobenius_power, is_power_of, projective_points

BACKENDS = ("rank", "groebner", "dense")

__all__ = [
    "BACKENDS",
    "graded_dim",
    "EmpiricalDensity",
    "empirical_density",
    "empirical_f_threshold",
    "ComparisonReport",
    "compare_to_closed_form",
    "check_finite_colength",
    "f_threshold_index",
    "first_vanishing_degree",
]


# ---------------------------------------------------------------------------
# rank backend


def _find_monic_substitution(h: Poly, p: int):
    """Linear images of ``(x, y, z)`` under which ``h`` has a nonzero ``z^d`` term.

    The ``z^d`` coefficient of ``h(x u + y v + z P)`` is ``h(P)``, so any
    F_p-point ``P`` off the curve works.
    """
    d = degree(h)
    points = [(0, 0, 1)] + [pt for pt in projective_points(p) if pt != (0, 0, 1)]
    for pt in points:
        if not evaluate(h, pt, p):
            continue
        # complete P to a basis with two standard vectors
        pivot = max(i for i in range(3) if pt[i])
        others = [i for i in range(3) if i != pivot]
        images = []
        for i in range(3):
            img = {(0, 0, 1): pt[i]} if pt[i] else {}
            if i in others:
                key = (1, 0, 0) if others.index(i) == 0 else (0, 1, 0)
                img[key] = 1
            images.append(img)
        images = tuple(images)
        assert substitute_linear(h, images, p).get((0, 0, d))
        return images
    return None


class _ZBasisReducer:
    """Normal forms in ``R`` relative to the basis ``x^a y^b z^j``, ``j < d``."""

    def __init__(self, h: Poly, p: int):
        self.p = p
        self.d = d = degree(h)
        lead = h[(0, 0, d)]
        inv = pow(lead, p - 2, p)
        # z^d = tail, with every tail term of z-degree < d
        self.tail = {m: (-c * inv) % p for m, c in h.items() if m != (0, 0, d)}
        self._zpow: list[Poly] = [{(0, 0, k): 1} for k in range(d)]

    def z_power(self, k: int) -> Poly:
        while len(self._zpow) <= k:
            e = len(self._zpow) - self.d
            out: Poly = {}
            for (a, b, j), c in self.tail.items():
                for (a2, b2, j2), c2 in self._zpow[e + j].items():
                    key = (a + a2, b + b2, j2)
                    out[key] = (out.get(key, 0) + c * c2) % self.p
            self._zpow.append({m: c for m, c in out.items() if c})
        return self._zpow[k]

    def normal_form(self, f: Poly) -> Poly:
        out: Poly = {}
        p = self.p
        for (a, b, k), c in f.items():
            if k < self.d:
                out[(a, b, k)] = (out.get((a, b, k), 0) + c) % p
                continue
            for (a2, b2, j), c2 in self.z_power(k).items():
                key = (a + a2, b + b2, j)
                out[key] = (out.get(key, 0) + c * c2) % p
        return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=64)
def _rank_setup(ring: RingPresentation, ideal: IdealSpec):
    p = ring.p
    images = _find_monic_substitution(ring.h, p)
    if images is None:
        return None
    h = substitute_linear(ring.h, images, p)
    red = _ZBasisReducer(h, p)
    gens = []
    for g in ideal.polys:
        g2 = substitute_linear(g, images, p)
        e = degree(g2)
        # NF(z^j g) for j < d; x^a y^b times these stay in normal form
        gens.append((e, [red.normal_form({(m[0], m[1], m[2] + j): c for m, c in g2.items()}) for j in range(red.d)]))
    return red.d, gens


def _eliminate_units(rows: list[dict], ncols: int, p: int) -> int:
    """Rank of the row set, clearing single-entry rows before the dense step."""
    covered: set = set()
    rest = rows
    while True:
        new_units = {next(iter(r)) for r in rest if len(r) == 1}
        if not new_units:
            break
        covered |= new_units
        trimmed = []
        for r in rest:
            r2 = {k: v for k, v in r.items() if k not in covered}
            if r2:
                trimmed.append(r2)
        rest = trimmed
    if not rest:
        return len(covered)
    cols = sorted({k for r in rest for k in r})
    index = {c: i for i, c in enumerate(cols)}
    mat = np.zeros((len(rest), len(cols)), dtype=np.int64)
    for i, r in enumerate(rest):
        for k, v in r.items():
            mat[i, index[k]] = v
    return len(covered) + rank_mod_p(mat, p)


def _graded_dim_rank(ring: RingPresentation, ideal: IdealSpec, m: int) -> Optional[int]:
    setup = _rank_setup(ring, ideal)
    if setup is None:
        return None
    d, gens = setup
    basis_size = sum(m - j + 1 for j in range(min(d, m + 1)))
    rows = []
    for e, nfs in gens:
        for j, nf in enumerate(nfs):
            s = m - e - j
            if s < 0 or not nf:
                continue
            for a in range(s + 1):
                b = s - a
                # column of x^A y^B z^K is (K, B)
                rows.append({(k, bb + b): c for (aa, bb, k), c in nf.items()})
    if not rows:
        return basis_size
    return basis_size - _eliminate_units(rows, basis_size, ring.p)


def _graded_dim_dense(ring: RingPresentation, ideal: IdealSpec, m: int) -> int:
    p = ring.p
    monos = list(monomials_of_degree(m))
    index = {mono: i for i, mono in enumerate(monos)}
    rows = []
    for g in [ring.h] + ideal.polys:
        e = degree(g)
        if e > m:
            continue
        for u in monomials_of_degree(m - e):
            row = np.zeros(len(monos), dtype=np.int64)
            for mono, c in g.items():
                row[index[(mono[0] + u[0], mono[1] + u[1], mono[2] + u[2])]] = c
            rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - rank_mod_p(np.array(rows), p)


@lru_cache(maxsize=64)
def _groebner(ring: RingPresentation, ideal: IdealSpec) -> TruncatedGroebner:
    return TruncatedGroebner([ring.h] + ideal.polys, ring.p)


def graded_dim(ring: RingPresentation, ideal: IdealSpec, m: int, backend: str = "rank") -> int:
    """``dim_{F_p} (R/I)_m``.

    The ``rank`` backend falls back to ``dense`` when no coordinate change
    over F_p makes ``h`` monic in ``z``.
    """
    if m < 0:
        raise ValidationError(f"degree must be >= 0, got {m}")
    if backend == "rank":
        val = _graded_dim_rank(ring, ideal, m)
        return _graded_dim_dense(ring, ideal, m) if val is None else val
    if backend == "dense":
        return _graded_dim_dense(ring, ideal, m)
    if backend == "groebner":
        return _groebner(ring, ideal).standard_count(m)
    raise ValidationError(f"unknown backend {backend!r}; choose from {BACKENDS}")


def check_finite_colength(ring: RingPresentation, ideal: IdealSpec, max_degree: int = 200) -> int:
    """Smallest ``D`` with ``(R/I)_D = 0``; raises if none up to ``max_degree``."""
    for m in range(max_degree + 1):
        if graded_dim(ring, ideal, m) == 0:
            return m
    raise ValidationError(f"(R/I)_m is nonzero for all m <= {max_degree}; is I of finite colength?")


# ---------------------------------------------------------------------------
# empirical densities and thresholds


@dataclass(frozen=True)
class EmpiricalDensity:
    """Samples ``(m, l(R/I^[q])_m / q)`` at Frobenius level ``n``."""

    n: int
    q: int
    samples: tuple[tuple[int, Fraction], ...]
    lengths: tuple[int, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if any(v < 0 for _, v in self.samples):
            raise InvariantViolation("negative graded length")

    def value(self, m: int) -> Fraction:
        for k, v in self.samples:
            if k == m:
                return v
        return Fraction(0)

    @property
    def last_nonzero(self) -> int:
        nz = [m for m, v in self.samples if v]
        return nz[-1] if nz else -1

    @property
    def support_endpoint(self) -> Fraction:
        """``(last m with nonzero length) / q``."""
        return Fraction(self.last_nonzero, self.q)

    @property
    def total_length(self) -> int:
        return sum(int(v * self.q) for _, v in self.samples)

    @property
    def hk_estimate(self) -> Fraction:
        """``l(R/I^[q]) / q^2``."""
        return Fraction(self.total_length, self.q * self.q)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "q", "value_num", "value_den"])
        for m, v in self.samples:
            w.writerow([m, self.q, v.numerator, v.denominator])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, n: int | None = None, p: int | None = None) -> "EmpiricalDensity":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise ValidationError("empty density CSV")
        q = int(rows[0]["q"])
        samples = tuple((int(r["m"]), Fraction(int(r["value_num"]), int(r["value_den"]))) for r in rows)
        if n is None:
            n = round(math.log(q, p)) if p else 0
        return cls(n, q, samples)

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "samples": [[m, str(v)] for m, v in self.samples],
            "support_endpoint": str(self.support_endpoint),
            "total_length": self.total_length,
            "hk_estimate": str(self.hk_estimate),
        }


def empirical_density(
    ring: RingPresentation,
    ideal: IdealSpec,
    n: int,
    max_degree: int | None = None,
    backend: str = "rank",
) -> EmpiricalDensity:
    """Sample ``l(R/I^[q])_m / q`` for ``m = 0, 1, ...`` until two zeros in a row."""
    if n < 0:
        raise ValidationError(f"level n must be >= 0, got {n}")
    q = ring.p**n
    J = frobenius_power(ideal, q, ring.p)
    horizon = min(ideal.degrees) * q
    samples = []
    zeros = 0
    m = 0
    while zeros < 2 or m <= horizon:
        if max_degree is not None and m > max_degree:
            raise BudgetExceededError(
                f"degree budget {max_degree} exhausted at q = {q}",
                partial=EmpiricalDensity(n, q, tuple(samples)),
            )
        length = graded_dim(ring, J, m, backend)
        samples.append((m, Fraction(length, q)))
        zeros = zeros + 1 if length == 0 else 0
        m += 1
    return EmpiricalDensity(n, q, tuple(samples))


def first_vanishing_degree(
    ring: RingPresentation,
    ideal: IdealSpec,
    seed: int = 1,
    max_degree: int | None = None,
    backend: str = "rank",
) -> int:
    """Smallest ``m`` with ``(R/I)_m = 0``; vanishing is inherited upward."""
    cache: dict = {}

    def zero(m: int) -> bool:
        if max_degree is not None and m > max_degree:
            raise BudgetExceededError(f"degree budget {max_degree} exceeded while searching for vanishing")
        if m not in cache:
            cache[m] = graded_dim(ring, ideal, m, backend) == 0
        return cache[m]

    hi = max(seed, 1)
    if max_degree is not None:
        hi = min(hi, max_degree)
    while not zero(hi):
        # doubling stops at the budget so a reachable answer is never skipped
        hi = 2 * hi if max_degree is None or 2 * hi <= max_degree or hi == max_degree else max_degree
    lo = -1
    # a few probes just below the seed usually bracket the answer
    step = 1
    while hi - step > lo:
        probe = hi - step
        if zero(probe):
            hi = probe
            step *= 2
        else:
            lo = probe
            break
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if zero(mid):
            hi = mid
        else:
            lo = mid
    return hi


def f_threshold_index(
    ring: RingPresentation,
    ideal: IdealSpec,
    q: int,
    prediction=None,
    max_degree: int | None = None,
    backend: str = "rank",
) -> int:
    """``r_q = min{r : m^(r+1) in (h) + I^[q]}``."""
    if not is_power_of(q, ring.p):
        raise ValidationError(f"q = {q} is not a power of p = {ring.p}")
    J = frobenius_power(ideal, q, ring.p)
    seed = 1 if prediction is None else max(1, math.ceil(Fraction(prediction) * q) + 1)
    return first_vanishing_degree(ring, J, seed, max_degree, backend) - 1


def empirical_f_threshold(
    ring: RingPresentation,
    ideal: IdealSpec,
    q: int,
    prediction=None,
    max_degree: int | None = None,
    backend: str = "rank",
) -> Fraction:
    """``r_q / q`` (see :func:`f_threshold_index`)."""
    return Fraction(f_threshold_index(ring, ideal, q, prediction, max_degree, backend), q)


# ---------------------------------------------------------------------------
# comparison with a closed form


@dataclass(frozen=True)
class ComparisonReport:
    q: int
    max_deviation: Fraction
    worst_m: int
    max_deviation_outside_windows: Fraction
    violations: tuple[tuple[int, Fraction, Fraction, Fraction], ...]
    empirical_support: Fraction
    closed_support: Fraction

    @property
    def within_envelope(self) -> bool:
        return not self.violations

    def to_json_obj(self) -> dict:
        return {
            "q": self.q,
            "max_deviation": str(self.max_deviation),
            "worst_m": self.worst_m,
            "max_deviation_outside_windows": str(self.max_deviation_outside_windows),
            "within_envelope": self.within_envelope,
            "violations": [
                {"m": m, "value": str(v), "lower": str(lo), "upper": str(hi)} for m, v, lo, hi in self.violations
            ],
            "empirical_support": str(self.empirical_support),
            "closed_support": str(self.closed_support),
        }


def compare_to_closed_form(emp: EmpiricalDensity, closed: PiecewiseLinear, env: Optional[EnvelopePair]) -> ComparisonReport:
    """Deviation of the samples from ``closed`` at ``x = m/q`` and envelope breaches."""
    if env is not None and env.big_q != emp.q:
        raise ValidationError(f"envelope is for q = {env.big_q}, samples are for q = {emp.q}")
    worst, worst_m, worst_out = Fraction(0), -1, Fraction(0)
    violations = []
    for m, v in emp.samples:
        x = Fraction(m, emp.q)
        dev = abs(v - closed(x))
        if dev > worst or worst_m < 0:
            worst, worst_m = dev, m
        if env is not None:
            if not env.in_window(x):
                worst_out = max(worst_out, dev)
            lo, hi = env.lower(x), env.upper(x)
            if not lo <= v <= hi:
                violations.append((m, v, lo, hi))
        else:
            worst_out = max(worst_out, dev)
    return ComparisonReport(
        emp.q,
        worst,
        worst_m,
        worst_out,
        tuple(violations),
        emp.support_endpoint,
        closed.support_endpoint(),
    )
