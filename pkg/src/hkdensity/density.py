"""Hilbert-Kunz density functions of bundles on curves and of graded pairs.

For a bundle ``V`` with (strong) HN data ``(a_i, r_i)`` and polarization of
degree ``d`` the limit density is

    f_V(x) = -sum_{k > i} r_k (a_k + d (x - 1))   on [1 - a_i/d, 1 - a_{i+1}/d),

vanishing from ``1 - a_min/d`` on.  For a pair ``(R, I)`` with syzygy
sequence ``0 -> V_0 -> M_0 -> O_X(1) -> 0`` the density is ``f_{V_0} - f_{M_0}``.

Finite Frobenius levels are handled through :class:`EnvelopePair`: rigorous
lower/upper bounds for ``f_n`` built from Riemann-Roch below each HN slope,
the Clifford bound for semistable bundles inside the transition windows, and
vanishing above ``2g - 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Union

from hkdensity.errors import InconsistentHNError, ValidationError
from hkdensity.hn import (
    CurveData,
    HNData,
    StrongHNData,
    SyzygyInput,
    as_fraction,
)
from hkdensity.piecewise import PiecewiseLinear

__all__ = [
    "EnvelopePair",
    "density_of_bundle",
    "support_endpoint",
    "pair_density",
    "pair_density_of",
    "integrate",
    "finite_level_envelope",
    "pair_envelope",
    "h1_semistable",
    "h1_upper_profile",
]

SlopeData = Union[HNData, StrongHNData]


def density_of_bundle(data: SlopeData, curve: CurveData) -> PiecewiseLinear:
    """Limit HK density ``f_{V, O_X(1)}`` from (strong) HN data.

    Given characteristic-0 :class:`HNData` this is the ``p -> infinity``
    limit density of the reductions.
    """
    d = curve.d
    slopes, ranks = data.slopes, data.ranks
    bps = tuple(1 - a / d for a in slopes)
    pieces = []
    for i in range(len(slopes) + 1):
        tail = list(zip(slopes[i:], ranks[i:]))
        rank = sum(r for _, r in tail)
        deg = sum((a * r for a, r in tail), Fraction(0))
        # -sum r_k (a_k + d (x - 1)) = -d*rank*x + (d*rank - deg)
        pieces.append((Fraction(-d * rank), d * rank - deg))
    return PiecewiseLinear(bps, tuple(pieces))


def support_endpoint(data: SlopeData, curve: CurveData) -> Fraction:
    return 1 - data.mu_min / curve.d


def pair_density_of(v: SlopeData, m: SlopeData, curve: CurveData) -> PiecewiseLinear:
    """``f_V - f_M`` on ``[0, inf)``, checked to be nonnegative there."""
    diff = (density_of_bundle(v, curve) - density_of_bundle(m, curve)).restrict(0)
    if not diff.is_compactly_supported_right():
        raise InconsistentHNError("f_V - f_M does not vanish for large x")
    lo = diff.min_on(0)
    if lo < 0:
        raise InconsistentHNError(f"f_V - f_M takes the negative value {lo} on [0, inf)")
    return diff


def pair_density(inp: SyzygyInput) -> PiecewiseLinear:
    """HK density ``f_{R,I} = f_{V_0} - f_{M_0}`` of the pair.

    The difference formula is extended below ``x = 1``; there it equals
    ``d * x`` up to the first breakpoint, which the oracle confirms.
    """
    return pair_density_of(inp.v0, inp.m0, inp.curve)


def integrate(f: PiecewiseLinear) -> Fraction:
    """Exact ``int_0^inf f``; this is ``e_HK`` when ``f`` is a pair density."""
    return f.integrate(0)


def h1_semistable(mu, rank: int, twist: int, curve: CurveData):
    """``h^1(E(m))`` for a semistable ``E`` of slope ``mu`` and given rank.

    Returns an ``int`` when the value is forced and a ``(lo, hi)`` tuple of
    ints inside the transition window ``0 <= mu + d m <= 2g - 2``:

    * ``mu + d m < 0``: ``h^0 = 0``, so ``h^1 = -chi = rank (g - 1) - deg``;
    * window: ``max(0, -chi) <= h^1 <= rank g - deg/2`` (Clifford);
    * ``mu + d m > 2g - 2``: Serre duality gives ``h^1 = 0``.
    """
    mu = as_fraction(mu)
    g, d = curve.g, curve.d
    t = mu + d * twist
    deg = rank * t
    if t < 0:
        val = rank * (g - 1) - deg
        if val.denominator != 1:
            raise ValidationError(f"non-integral degree {deg} for rank {rank}")
        return int(val)
    if t > 2 * g - 2:
        return 0
    return (int(max(0, rank * (g - 1) - deg)), floor(rank * g - deg / 2))


def h1_upper_profile(rank: int, genus: int) -> PiecewiseLinear:
    """Per-rank upper bound ``u(t)`` for ``h^1/rank`` of a semistable bundle of slope ``t``.

    Exact below ``-1/rank`` and above ``2g - 2 + 1/rank`` (no lattice point of
    ``rank * t in Z`` lies strictly between those and the window), Clifford in
    between, linearly bridged so the profile is continuous.
    """
    g = genus
    if g == 0:
        return PiecewiseLinear.from_points([(-1, 0)], left_slope=-1, right_slope=0)
    e = Fraction(1, rank)
    pts = [(-e, g - 1 + e), (0, g)]
    if 2 * g - 2 > 0:
        pts.append((2 * g - 2, 1))
    pts.append((2 * g - 2 + e, 0))
    return PiecewiseLinear.from_points(pts, left_slope=-1, right_slope=0)


def _raw_bounds(data: SlopeData, curve: CurveData, Q: int, origin=1):
    """Rigorous bounds on ``h^1(F^{N*}V(m - origin*Q)) / Q`` as functions of ``x = m/Q``.

    ``Q = p**N`` with ``N`` at or above the strong-HN level, so each graded
    piece pulls back to a semistable bundle of slope ``a_i * Q``.
    Returns ``(lower, upper, windows)``.
    """
    g, d = curve.g, curve.d
    zero = PiecewiseLinear.constant(0)
    upper = zero
    partials = []
    windows = []
    tail = zero
    for a, r in reversed(data.pieces):
        # twisted slope t(x) = Q (a + d (x - origin)); h^1 = r (g - 1 - t) below the window
        t_slope, t_icpt = Q * d, Q * (a - d * origin)
        rr = PiecewiseLinear.affine(-r * t_slope, r * (g - 1) - r * t_icpt).scale(Fraction(1, Q))
        tail = tail + rr
        partials.append(tail)
        upper = upper + h1_upper_profile(r, g).compose_affine(t_slope, t_icpt).scale(Fraction(r, Q))
        if g >= 1:
            lo_t, hi_t = -Fraction(1, r), 2 * g - 2 + Fraction(1, r)
            windows.append(((lo_t - t_icpt) / t_slope, (hi_t - t_icpt) / t_slope))
    lower = zero
    for part in partials:
        lower = lower.maximum(part)
    return lower, upper, sorted(windows)


@dataclass(frozen=True)
class EnvelopePair:
    """Bounds ``lower <= f_{n+n1} <= upper`` at the sample points ``x = m/(q q1)``.

    The band is widened by ``rank |g - 1| / (q q1)`` on both sides so it also
    contains the limit density outside the transition ``windows``.
    """

    lower: PiecewiseLinear
    upper: PiecewiseLinear
    level: tuple[int, int]
    characteristic: int
    windows: tuple[tuple[Fraction, Fraction], ...]
    window_width: Fraction

    @property
    def q(self) -> int:
        return self.characteristic ** self.level[0]

    @property
    def q1(self) -> int:
        return self.characteristic ** self.level[1]

    @property
    def big_q(self) -> int:
        return self.q * self.q1

    def in_window(self, x) -> bool:
        x = as_fraction(x)
        return any(lo < x < hi for lo, hi in self.windows)

    def contains(self, x, value) -> bool:
        return self.lower(x) <= value <= self.upper(x)

    def width_at(self, x) -> Fraction:
        return self.upper(x) - self.lower(x)


def _require_strong(data, what="finite-level envelopes"):
    if not isinstance(data, StrongHNData):
        raise ValidationError(f"{what} need characteristic-p strong HN data")


def finite_level_envelope(data: StrongHNData, curve: CurveData, n: int) -> EnvelopePair:
    """Envelope for ``f_{n+n1}(V, O_X(1))`` with ``n1 = data.frobenius_level``."""
    _require_strong(data)
    if n < 0:
        raise ValidationError(f"level n must be >= 0, got {n}")
    p, n1 = data.characteristic, data.frobenius_level
    Q = p ** (n + n1)
    lower, upper, windows = _raw_bounds(data, curve, Q)
    slack = Fraction(data.rank * abs(curve.g - 1), Q)
    return EnvelopePair(
        lower - slack,
        upper + slack,
        (n, n1),
        p,
        tuple(windows),
        Fraction(2 * curve.g - 2, curve.d * Q),
    )


def pair_envelope(inp: SyzygyInput, n: int) -> EnvelopePair:
    """Envelope for the pair's ``f_{n+n1}(R, I)`` on a projectively normal curve.

    Uses ``l(R/I^[Q])_m = h^1(V_0(m-Q)) - h^1(M_0(m-Q)) + h^1(O_X(m))`` with
    ``Q = p^(n+n1)``, bounding each term separately.
    """
    _require_strong(inp.v0)
    if n < 0:
        raise ValidationError(f"level n must be >= 0, got {n}")
    v0 = inp.v0
    p, n1 = v0.characteristic, v0.frobenius_level
    Q = p ** (n + n1)
    curve = inp.curve
    lv, uv, wv = _raw_bounds(v0, curve, Q)
    lm, um, wm = _raw_bounds(inp.m0, curve, Q)
    structure = HNData(((Fraction(0), 1),))
    _, uo, wo = _raw_bounds(structure, curve, Q, origin=0)
    slack = Fraction((v0.rank + inp.m0.rank) * abs(curve.g - 1), Q)
    lower = lv - um - slack
    upper = uv - lm + uo + slack
    return EnvelopePair(
        lower,
        upper,
        (n, n1),
        p,
        tuple(sorted(wv + wm + wo)),
        Fraction(2 * curve.g - 2, curve.d * Q),
    )
