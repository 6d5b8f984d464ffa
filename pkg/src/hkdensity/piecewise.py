"""Exact-rational continuous piecewise-affine functions on the real line.

A function with breakpoints ``b_1 < ... < b_k`` has ``k + 1`` affine pieces
``slope * x + intercept``: piece 0 lives on ``(-inf, b_1)``, piece ``i`` on
``[b_i, b_{i+1})`` and piece ``k`` on ``[b_k, inf)``.  Instances are always
canonical (collinear neighbours merged), so ``==`` is equality of functions.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from hkdensity.errors import ValidationError
from hkdensity.hn import as_fraction

__all__ = ["PiecewiseLinear", "CSV_COLUMNS"]

Affine = tuple[Fraction, Fraction]

CSV_COLUMNS = (
    "breakpoint_num",
    "breakpoint_den",
    "slope_num",
    "slope_den",
    "intercept_num",
    "intercept_den",
)


def _eval(piece: Affine, x: Fraction) -> Fraction:
    return piece[0] * x + piece[1]


def _canonical(breakpoints, pieces, floor):
    if floor is not None:
        # pieces entirely left of the floor are invisible on the domain
        while breakpoints and breakpoints[0] <= floor:
            breakpoints = breakpoints[1:]
            pieces = pieces[1:]
    out_b, out_p = [], [pieces[0]]
    for b, piece in zip(breakpoints, pieces[1:]):
        if piece != out_p[-1]:
            out_b.append(b)
            out_p.append(piece)
    return tuple(out_b), tuple(out_p)


@dataclass(frozen=True)
class PiecewiseLinear:
    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Affine, ...]
    domain_floor: Optional[Fraction] = None

    def __post_init__(self):
        bps = tuple(as_fraction(b) for b in self.breakpoints)
        pieces = tuple((as_fraction(s), as_fraction(c)) for s, c in self.pieces)
        floor = None if self.domain_floor is None else as_fraction(self.domain_floor)
        if len(pieces) != len(bps) + 1:
            raise ValidationError(
                f"{len(bps)} breakpoints need {len(bps) + 1} pieces, got {len(pieces)}"
            )
        for a, b in zip(bps, bps[1:]):
            if not a < b:
                raise ValidationError(f"breakpoints must be strictly increasing: {a} then {b}")
        for b, left, right in zip(bps, pieces, pieces[1:]):
            if _eval(left, b) != _eval(right, b):
                raise ValidationError(
                    f"discontinuity at x = {b}: {_eval(left, b)} vs {_eval(right, b)}"
                )
        bps, pieces = _canonical(bps, pieces, floor)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "domain_floor", floor)

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, value=0) -> "PiecewiseLinear":
        return cls((), ((Fraction(0), as_fraction(value)),))

    @classmethod
    def affine(cls, slope, intercept) -> "PiecewiseLinear":
        return cls((), ((as_fraction(slope), as_fraction(intercept)),))

    @classmethod
    def from_points(cls, points: Sequence[tuple], left_slope=0, right_slope=0) -> "PiecewiseLinear":
        """Interpolate ``(x, y)`` points; outside them continue with the given slopes."""
        pts = [(as_fraction(x), as_fraction(y)) for x, y in points]
        if not pts:
            raise ValidationError("need at least one point")
        left_slope, right_slope = as_fraction(left_slope), as_fraction(right_slope)
        pieces = [(left_slope, pts[0][1] - left_slope * pts[0][0])]
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            s = (y1 - y0) / (x1 - x0)
            pieces.append((s, y0 - s * x0))
        pieces.append((right_slope, pts[-1][1] - right_slope * pts[-1][0]))
        return cls(tuple(x for x, _ in pts), tuple(pieces))

    # -- evaluation --------------------------------------------------------

    def piece_at(self, x) -> Affine:
        x = as_fraction(x)
        idx = 0
        for b in self.breakpoints:
            if x >= b:
                idx += 1
            else:
                break
        return self.pieces[idx]

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        return _eval(self.piece_at(x), x)

    @property
    def left(self) -> Affine:
        return self.pieces[0]

    @property
    def right(self) -> Affine:
        return self.pieces[-1]

    def intervals(self):
        """Yield ``(lo, hi, piece)`` with ``None`` for an unbounded end."""
        edges = [None, *self.breakpoints, None]
        for lo, hi, piece in zip(edges, edges[1:], self.pieces):
            yield lo, hi, piece

    # -- arithmetic --------------------------------------------------------

    def _combine(self, other: "PiecewiseLinear", op: Callable[[Affine, Affine], Affine]) -> "PiecewiseLinear":
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        probes = _probes(bps)
        pieces = tuple(op(self.piece_at(x), other.piece_at(x)) for x in probes)
        return PiecewiseLinear(tuple(bps), pieces, _meet_floor(self.domain_floor, other.domain_floor))

    def __add__(self, other):
        if not isinstance(other, PiecewiseLinear):
            other = PiecewiseLinear.constant(other)
        return self._combine(other, lambda a, b: (a[0] + b[0], a[1] + b[1]))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, PiecewiseLinear):
            other = PiecewiseLinear.constant(other)
        return self._combine(other, lambda a, b: (a[0] - b[0], a[1] - b[1]))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor) -> "PiecewiseLinear":
        c = as_fraction(factor)
        return PiecewiseLinear(self.breakpoints, tuple((s * c, i * c) for s, i in self.pieces), self.domain_floor)

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def compose_affine(self, slope, intercept) -> "PiecewiseLinear":
        """``x -> self(slope * x + intercept)`` for ``slope > 0``."""
        a, c = as_fraction(slope), as_fraction(intercept)
        if a <= 0:
            raise ValidationError("only increasing affine substitutions are supported")
        bps = tuple((b - c) / a for b in self.breakpoints)
        pieces = tuple((s * a, s * c + i) for s, i in self.pieces)
        return PiecewiseLinear(bps, pieces)

    def _extremum(self, other: "PiecewiseLinear", pick_max: bool) -> "PiecewiseLinear":
        if not isinstance(other, PiecewiseLinear):
            other = PiecewiseLinear.constant(other)
        bps = set(self.breakpoints) | set(other.breakpoints)
        edges = [None, *sorted(bps), None]
        for lo, hi in zip(edges, edges[1:]):
            probe = _probe(lo, hi)
            (s1, c1), (s2, c2) = self.piece_at(probe), other.piece_at(probe)
            if s1 != s2:
                x = (c2 - c1) / (s1 - s2)
                if (lo is None or x > lo) and (hi is None or x < hi):
                    bps.add(x)
        bps = sorted(bps)
        pieces = []
        for x in _probes(bps):
            a, b = self.piece_at(x), other.piece_at(x)
            va, vb = _eval(a, x), _eval(b, x)
            if va == vb:
                # identical on a whole interval only if the pieces coincide
                pieces.append(max(a, b) if pick_max else min(a, b))
            elif (va > vb) == pick_max:
                pieces.append(a)
            else:
                pieces.append(b)
        return PiecewiseLinear(tuple(bps), tuple(pieces), _meet_floor(self.domain_floor, other.domain_floor))

    def maximum(self, other) -> "PiecewiseLinear":
        return self._extremum(other, True)

    def minimum(self, other) -> "PiecewiseLinear":
        return self._extremum(other, False)

    def restrict(self, floor) -> "PiecewiseLinear":
        """Same function viewed on ``[floor, inf)``; left pieces collapse."""
        return PiecewiseLinear(self.breakpoints, self.pieces, as_fraction(floor))

    # -- analysis ----------------------------------------------------------

    def is_compactly_supported_right(self) -> bool:
        return self.right == (0, 0)

    def support_endpoint(self) -> Fraction:
        """``sup {x : f(x) != 0}``; requires the right-unbounded piece to be zero."""
        if not self.is_compactly_supported_right():
            raise ValidationError("function does not vanish on a right-unbounded interval")
        if not self.breakpoints:
            raise ValidationError("function is identically zero")
        return self.breakpoints[-1]

    def integrate(self, lo=0) -> Fraction:
        """Exact integral over ``[lo, inf)``."""
        lo = as_fraction(lo)
        if not self.is_compactly_supported_right():
            raise ValidationError("unbounded support: integral diverges")
        total = Fraction(0)
        for a, b, (s, c) in self.intervals():
            if b is None or b <= lo:
                continue
            a = lo if a is None or a < lo else a
            total += s * (b * b - a * a) / 2 + c * (b - a)
        return total

    def min_on(self, lo, hi=None) -> Fraction:
        """Minimum over ``[lo, hi]`` (``hi=None`` means up to infinity)."""
        lo = as_fraction(lo)
        pts = [lo] + [b for b in self.breakpoints if b > lo and (hi is None or b < hi)]
        if hi is not None:
            pts.append(as_fraction(hi))
        elif self.right[0] < 0:
            raise ValidationError("function is unbounded below on the interval")
        return min(self(x) for x in pts)

    # -- serialisation -----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "breakpoints": [str(b) for b in self.breakpoints],
            "pieces": [{"slope": str(s), "intercept": str(c)} for s, c in self.pieces],
            "domain_floor": None if self.domain_floor is None else str(self.domain_floor),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PiecewiseLinear":
        floor = obj.get("domain_floor")
        return cls(
            tuple(Fraction(b) for b in obj["breakpoints"]),
            tuple((Fraction(p["slope"]), Fraction(p["intercept"])) for p in obj["pieces"]),
            None if floor is None else Fraction(floor),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PiecewiseLinear":
        return cls.from_json_obj(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.domain_floor is not None:
            buf.write(f"# domain_floor={self.domain_floor}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        edges = [None, *self.breakpoints]
        for b, (s, c) in zip(edges, self.pieces):
            bn, bd = ("", "") if b is None else (b.numerator, b.denominator)
            w.writerow([bn, bd, s.numerator, s.denominator, c.numerator, c.denominator])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "PiecewiseLinear":
        floor = None
        lines = []
        for line in text.splitlines():
            if line.startswith("# domain_floor="):
                floor = Fraction(line.split("=", 1)[1])
            elif line and not line.startswith("#"):
                lines.append(line)
        rows = list(csv.DictReader(lines))
        bps, pieces = [], []
        for i, row in enumerate(rows):
            if i > 0:
                bps.append(Fraction(int(row["breakpoint_num"]), int(row["breakpoint_den"])))
            pieces.append(
                (
                    Fraction(int(row["slope_num"]), int(row["slope_den"])),
                    Fraction(int(row["intercept_num"]), int(row["intercept_den"])),
                )
            )
        return cls(tuple(bps), tuple(pieces), floor)

    def __str__(self):
        parts = []
        for a, b, (s, c) in self.intervals():
            if a is None and self.domain_floor is not None:
                a = self.domain_floor
            span = f"[{'-inf' if a is None else a}, {'inf' if b is None else b})"
            parts.append(f"{span}: {s}*x + {c}")
        return "; ".join(parts)


def _probe(lo, hi) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    return (lo + hi) / 2


def _probes(bps: Sequence[Fraction]) -> list[Fraction]:
    edges = [None, *bps, None]
    return [_probe(lo, hi) for lo, hi in zip(edges, edges[1:])]


def _meet_floor(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)
