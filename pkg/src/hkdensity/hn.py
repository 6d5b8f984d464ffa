"""Harder-Narasimhan data of vector bundles on a smooth projective curve.

Slopes are exact :class:`fractions.Fraction` values throughout.  Two tagged
containers share one shape:

* :class:`HNData` -- HN data in characteristic 0 (slopes ``mu_i``, ranks ``r_i``);
* :class:`StrongHNData` -- strong HN data in characteristic ``p`` (slopes
  ``a_i`` normalised by ``p**frobenius_level``), together with the prime and
  the Frobenius level at which the strong filtration is reached.

Operations that only make sense in one characteristic check the tag.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from hkdensity.errors import InconsistentHNError, ValidationError

__all__ = [
    "as_fraction",
    "CurveData",
    "HNData",
    "StrongHNData",
    "GeneratorDegrees",
    "SyzygyInput",
    "BundleStats",
    "hn_of_generator_degrees",
    "bundle_stats",
    "frobenius_pullback",
    "validate_syzygy_hn",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are rejected: every quantity here is rational by construction and
    a float would silently carry binary rounding into exact comparisons.
    """
    if isinstance(value, bool):
        raise ValidationError(f"not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational number: {value!r}") from exc
    raise ValidationError(f"not an exact rational (floats are refused): {value!r}")


@dataclass(frozen=True)
class CurveData:
    """Genus ``g`` of the curve and degree ``d`` of the polarization O_X(1)."""

    genus: int
    polarization_degree: int

    def __post_init__(self):
        if int(self.genus) != self.genus or self.genus < 0:
            raise ValidationError(f"genus must be a nonnegative integer, got {self.genus!r}")
        if int(self.polarization_degree) != self.polarization_degree or self.polarization_degree < 1:
            raise ValidationError(
                f"polarization degree must be a positive integer, got {self.polarization_degree!r}"
            )

    @property
    def d(self) -> int:
        return self.polarization_degree

    @property
    def g(self) -> int:
        return self.genus

    @classmethod
    def plane(cls, degree: int) -> "CurveData":
        """Smooth plane curve of the given degree with O(1) from P^2."""
        return cls((degree - 1) * (degree - 2) // 2, degree)


Piece = tuple[Fraction, int]


def _normalise_pieces(pieces: Iterable) -> tuple[Piece, ...]:
    out = []
    for item in pieces:
        try:
            slope, rank = item
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"HN piece must be a (slope, rank) pair, got {item!r}") from exc
        slope = as_fraction(slope)
        if isinstance(rank, bool) or int(rank) != rank or rank < 1:
            raise ValidationError(f"HN rank must be a positive integer, got {rank!r}")
        out.append((slope, int(rank)))
    if not out:
        raise ValidationError("HN data needs at least one piece")
    for (s1, _), (s2, _) in zip(out, out[1:]):
        if not s1 > s2:
            raise ValidationError(f"HN slopes must be strictly decreasing, got {s1} then {s2}")
    return tuple(out)


@dataclass(frozen=True)
class _SlopeData:
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", _normalise_pieces(self.pieces))

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(s for s, _ in self.pieces)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(r for _, r in self.pieces)

    @property
    def rank(self) -> int:
        return sum(self.ranks)

    @property
    def degree(self) -> Fraction:
        return sum((s * r for s, r in self.pieces), Fraction(0))

    @property
    def mu_max(self) -> Fraction:
        return self.pieces[0][0]

    @property
    def mu_min(self) -> Fraction:
        return self.pieces[-1][0]

    @property
    def slope(self) -> Fraction:
        return self.degree / self.rank

    def with_pieces(self, pieces):
        """Same characteristic tag and level, new pieces."""
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {
            "slopes": [str(s) for s in self.slopes],
            "ranks": list(self.ranks),
        }


@dataclass(frozen=True)
class HNData(_SlopeData):
    """HN data ``({mu_1 > ... > mu_k}, {r_1, ..., r_k})`` in characteristic 0."""

    characteristic = 0

    def with_pieces(self, pieces) -> "HNData":
        return HNData(tuple(pieces))

    def to_dict(self) -> dict:
        return {**super().to_dict(), "strong": False}


@dataclass(frozen=True)
class StrongHNData(_SlopeData):
    """Strong HN data in characteristic ``p``.

    ``frobenius_level`` is the ``m`` for which ``F^{m*}V`` carries the strong
    HN filtration; slopes are already divided by ``p**m``, so each
    ``slope * p**m * rank`` is the (integral) degree of a graded piece of
    ``F^{m*}V``.
    """

    characteristic: int = 0
    frobenius_level: int = 0

    def __post_init__(self):
        super().__post_init__()
        p = self.characteristic
        if isinstance(p, bool) or int(p) != p or p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise ValidationError(f"strong HN data needs a prime characteristic, got {p!r}")
        m = self.frobenius_level
        if isinstance(m, bool) or int(m) != m or m < 0:
            raise ValidationError(f"frobenius_level must be a nonnegative integer, got {m!r}")
        scale = p**m
        for slope, rank in self.pieces:
            if (slope * scale * rank).denominator != 1:
                raise ValidationError(
                    f"piece ({slope}, {rank}) has non-integral degree {slope * scale * rank} "
                    f"at Frobenius level {m}"
                )

    def with_pieces(self, pieces) -> "StrongHNData":
        return StrongHNData(tuple(pieces), self.characteristic, self.frobenius_level)

    def to_dict(self) -> dict:
        return {
            **super().to_dict(),
            "strong": True,
            "characteristic": self.characteristic,
            "frobenius_level": self.frobenius_level,
        }


SlopeData = Union[HNData, StrongHNData]


def slope_data_from_dict(obj: dict) -> SlopeData:
    """Inverse of ``to_dict``; also the CLI's ``v0_hn`` reader."""
    try:
        slopes = obj["slopes"]
        ranks = obj["ranks"]
    except (KeyError, TypeError) as exc:
        raise ValidationError("HN data needs 'slopes' and 'ranks'") from exc
    if len(slopes) != len(ranks):
        raise ValidationError("'slopes' and 'ranks' have different lengths")
    pieces = list(zip(slopes, ranks))
    if obj.get("strong", False):
        if "characteristic" not in obj:
            raise ValidationError("strong HN data needs 'characteristic'")
        return StrongHNData(tuple(pieces), int(obj["characteristic"]), int(obj.get("frobenius_level", 0)))
    return HNData(tuple(pieces))


@dataclass(frozen=True)
class GeneratorDegrees:
    """Degrees ``d_1 <= ... <= d_mu`` of homogeneous generators of the ideal."""

    degrees: tuple[int, ...]
    distinct: tuple[int, ...] = field(init=False, repr=False)
    multiplicities: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        degs = tuple(sorted(int(x) for x in self.degrees))
        if not degs:
            raise ValidationError("generator degree list is empty")
        if len(degs) < 2:
            raise ValidationError(f"need at least two generators (mu >= 2), got {len(degs)}")
        if degs[0] < 1:
            raise ValidationError(f"generator degrees must be >= 1, got {degs}")
        counts = Counter(degs)
        object.__setattr__(self, "degrees", degs)
        object.__setattr__(self, "distinct", tuple(sorted(counts)))
        object.__setattr__(self, "multiplicities", tuple(counts[k] for k in sorted(counts)))

    @property
    def mu(self) -> int:
        return len(self.degrees)

    @property
    def l1(self) -> int:
        return len(self.distinct)


class BundleStats(NamedTuple):
    rank: int
    degree: Fraction
    mu_max: Fraction
    mu_min: Fraction


def bundle_stats(data: SlopeData) -> BundleStats:
    return BundleStats(data.rank, data.degree, data.mu_max, data.mu_min)


def hn_of_generator_degrees(degrees: GeneratorDegrees | Sequence[int], curve: CurveData) -> HNData:
    """HN data of ``M_0 = sum_i O_X(1 - d_i)``.

    Sums of line bundles are strongly semistable piecewise, so this is also
    the strong HN data in any characteristic.
    """
    if not isinstance(degrees, GeneratorDegrees):
        degrees = GeneratorDegrees(tuple(degrees))
    d = curve.d
    return HNData(tuple((Fraction((1 - e) * d), s) for e, s in zip(degrees.distinct, degrees.multiplicities)))


def frobenius_pullback(data: StrongHNData, extra_level: int) -> StrongHNData:
    """Strong HN data of ``F^{e*}V``: slopes scale by ``p**e``, ranks unchanged."""
    if not isinstance(data, StrongHNData):
        raise ValidationError("Frobenius pullback needs characteristic-p (strong) HN data")
    if int(extra_level) != extra_level or extra_level < 0:
        raise ValidationError(f"extra_level must be a nonnegative integer, got {extra_level!r}")
    scale = data.characteristic**extra_level
    return StrongHNData(
        tuple((s * scale, r) for s, r in data.pieces),
        data.characteristic,
        data.frobenius_level + extra_level,
    )


@dataclass(frozen=True)
class SyzygyInput:
    """Generator degrees, curve, and HN data of the syzygy bundle ``V_0`` in
    ``0 -> V_0 -> M_0 = sum O_X(1-d_i) -> O_X(1) -> 0``.

    Construct through :func:`validate_syzygy_hn`, which enforces additivity of
    rank and degree along the sequence.
    """

    degrees: GeneratorDegrees
    curve: CurveData
    v0: SlopeData

    @property
    def m0(self) -> HNData:
        return hn_of_generator_degrees(self.degrees, self.curve)

    @property
    def is_strong(self) -> bool:
        return isinstance(self.v0, StrongHNData)


def validate_syzygy_hn(v0: SlopeData, degrees: GeneratorDegrees | Sequence[int], curve: CurveData) -> SyzygyInput:
    if not isinstance(degrees, GeneratorDegrees):
        degrees = GeneratorDegrees(tuple(degrees))
    if not isinstance(v0, (HNData, StrongHNData)):
        raise ValidationError(f"v0 must be HNData or StrongHNData, got {type(v0).__name__}")
    want_rank = degrees.mu - 1
    if v0.rank != want_rank:
        raise InconsistentHNError(
            f"rank mismatch: rank(V_0) = {v0.rank} but mu - 1 = {want_rank}"
        )
    d = curve.d
    want_degree = sum((1 - e) * d for e in degrees.degrees) - d
    if v0.degree != want_degree:
        raise InconsistentHNError(
            f"degree mismatch: deg(V_0) = {v0.degree} but sum(1 - d_i) d - d = {want_degree}"
        )
    # a semistable piece maps to zero in M_0 unless its slope is at most mu_max(M_0)
    top = (1 - degrees.distinct[0]) * d
    if v0.mu_max > top:
        raise InconsistentHNError(
            f"mu_max(V_0) = {v0.mu_max} exceeds mu_max(M_0) = {top}; V_0 cannot sit inside M_0"
        )
    return SyzygyInput(degrees, curve, v0)
