"""Plane-curve rings ``F_p[x, y, z]/(h)`` and homogeneous ideals in them."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import sympy

from hkdensity.errors import ValidationError
from hkdensity.polynomials import (
    VARIABLES,
    Poly,
    degree,
    derivative,
    evaluate,
    format_poly,
    freeze,
    frobenius,
    is_homogeneous,
    parse_poly,
)

# exhaustive point search is skipped above this many projective points
_SMOOTHNESS_POINT_LIMIT = 200_000


def projective_points(p: int):
    """Representatives of the points of P^2(F_p)."""
    yield (1, 0, 0)
    for a in range(p):
        yield (a, 1, 0)
    for a, b in itertools.product(range(p), repeat=2):
        yield (a, b, 1)


@dataclass(frozen=True)
class RingPresentation:
    """``R = F_p[x, y, z]/(h)`` for a homogeneous plane curve ``h``."""

    characteristic: int
    defining_poly: tuple
    variables: tuple[str, str, str] = VARIABLES
    check_smooth: bool = True

    def __post_init__(self):
        p = self.characteristic
        if not sympy.isprime(p):
            raise ValidationError(f"characteristic must be prime, got {p!r}")
        h = self.h
        if not h:
            raise ValidationError("defining polynomial is zero mod p")
        if not is_homogeneous(h):
            raise ValidationError(f"defining polynomial is not homogeneous: {format_poly(h)}")
        if degree(h) < 1:
            raise ValidationError("defining polynomial must have positive degree")
        if self.check_smooth:
            bad = self.singular_point()
            if bad is not None:
                warnings.warn(f"curve {format_poly(h)} is singular at {bad} over F_{p}", stacklevel=3)

    @classmethod
    def from_text(cls, text: str, p: int, check_smooth: bool = True) -> "RingPresentation":
        return cls(p, freeze(parse_poly(text, p)), VARIABLES, check_smooth)

    @classmethod
    def fermat(cls, d: int, p: int) -> "RingPresentation":
        return cls.from_text(f"x^{d} + y^{d} + z^{d}", p)

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def h(self) -> Poly:
        return dict(self.defining_poly)

    @property
    def polarization_degree(self) -> int:
        return degree(self.h)

    @property
    def genus(self) -> int:
        d = self.polarization_degree
        return (d - 1) * (d - 2) // 2

    def singular_point(self):
        """An F_p-rational point where ``h`` and its partials all vanish, if any.

        Only rational points are searched, so ``None`` is evidence of
        smoothness, not a proof.
        """
        p = self.p
        if p * p + p + 1 > _SMOOTHNESS_POINT_LIMIT:
            return None
        h = self.h
        polys = [h] + [derivative(h, i, p) for i in range(3)]
        for pt in projective_points(p):
            if all(evaluate(f, pt, p) == 0 for f in polys):
                return pt
        return None

    def __str__(self):
        return f"F_{self.p}[x,y,z]/({format_poly(self.h)})"


@dataclass(frozen=True)
class IdealSpec:
    """Homogeneous generators of an ideal of ``R``."""

    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise ValidationError("an ideal needs at least one generator")
        for g in self.generators:
            poly = dict(g)
            if not poly:
                raise ValidationError("zero generator")
            if not is_homogeneous(poly):
                raise ValidationError(f"generator {format_poly(poly)} is not homogeneous")

    @classmethod
    def from_polys(cls, polys) -> "IdealSpec":
        return cls(tuple(freeze(g) for g in polys))

    @classmethod
    def from_text(cls, texts, p: int) -> "IdealSpec":
        return cls.from_polys([parse_poly(t, p) for t in texts])

    @classmethod
    def maximal(cls) -> "IdealSpec":
        return cls.from_polys([{(1, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): 1}])

    @property
    def polys(self) -> list[Poly]:
        return [dict(g) for g in self.generators]

    @property
    def degrees(self) -> list[int]:
        return [degree(g) for g in self.polys]

    def __str__(self):
        return "(" + ", ".join(format_poly(g) for g in self.polys) + ")"


def is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def frobenius_power(ideal: IdealSpec, q: int, p: int) -> IdealSpec:
    """``I^[q]``: generators raised to the ``q``-th power (exponents times ``q`` over F_p)."""
    if not is_power_of(q, p):
        raise ValidationError(f"q = {q} is not a power of p = {p}")
    return IdealSpec.from_polys([frobenius(g, q) for g in ideal.polys])
