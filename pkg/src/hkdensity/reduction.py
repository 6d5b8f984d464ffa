"""Peeling of syzygy HN data, the threshold alpha, and denominator analysis.

Given ``0 -> V_0 -> M_0 -> O_X(1) -> 0`` with ``M_0 = sum O_X(1 - d_i)``, the
filtration ``M_i`` (drop the summands of the ``i`` largest distinct degrees)
induces ``V_i = V_0 cap M_i``.  Whenever ``mu_min(V_i) = mu_min(M_i)`` the
quotient ``V_i / V_{i+1}`` is the bottom piece of ``M_i`` itself, so on HN data
stepping from ``V_i`` to ``V_{i+1}`` removes that rank from the bottom of
``V_i``.  The first ``V_t`` with ``mu_min(V_t) < mu_min(M_t)`` controls the
right end of the density's support.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import sympy

from hkdensity.density import pair_density_of
from hkdensity.errors import InconsistentHNError, ValidationError
from hkdensity.hn import HNData, StrongHNData, SyzygyInput, as_fraction
from hkdensity.piecewise import PiecewiseLinear

__all__ = [
    "CASE_EQUAL",
    "CASE_STRICT",
    "PeelResult",
    "peel_mu_reduction",
    "reduced_pair_density",
    "threshold_alpha",
    "AlphaInfinityReport",
    "alpha_infinity_report",
    "DenominatorReport",
    "check_threshold_denominator",
    "verify_theorem_e",
    "klein_threshold",
    "klein_modulus",
    "klein_primes",
    "KLEIN_LIMIT",
]

CASE_EQUAL = "W_equals_Vt"
CASE_STRICT = "W_strict_in_Vt"

SlopeData = Union[HNData, StrongHNData]


@dataclass(frozen=True)
class PeelResult:
    """Outcome of peeling.

    ``case_tag`` describes the last peel: the bottom piece of ``V_{t-1}``
    was used up (``W_equals_Vt``) or a remainder of the same slope survived
    (``W_strict_in_Vt``).  It is ``None`` when ``t = 0``.
    """

    t: int
    vt_data: SlopeData
    mt_data: HNData
    a_min_vt: Fraction
    case_tag: Optional[str]
    previous: Optional[SlopeData] = None
    sigmas: tuple[Fraction, ...] = field(default=())

    def to_json_obj(self) -> dict:
        return {
            "t": self.t,
            "vt": self.vt_data.to_dict(),
            "mt": self.mt_data.to_dict(),
            "a_min_vt": str(self.a_min_vt),
            "case_tag": self.case_tag,
            "sigmas": [str(s) for s in self.sigmas],
        }


def peel_mu_reduction(inp: SyzygyInput) -> PeelResult:
    degs, d = inp.degrees, inp.curve.d
    l1 = degs.l1
    pieces = list(inp.v0.pieces)
    previous = None
    case = None
    sigmas = []
    for i in range(l1):
        j = l1 - 1 - i
        sigma = Fraction((1 - degs.distinct[j]) * d)
        s = degs.multiplicities[j]
        sigmas.append(sigma)
        if not pieces:
            raise InconsistentHNError(f"V_{i} vanished before the peeling stopped")
        bottom, rank = pieces[-1]
        if bottom < sigma:
            mt = HNData(tuple((Fraction((1 - e) * d), m) for e, m in zip(degs.distinct[: j + 1], degs.multiplicities[: j + 1])))
            vt = inp.v0.with_pieces(pieces)
            return PeelResult(i, vt, mt, bottom, case, previous, tuple(sigmas))
        if bottom > sigma:
            raise InconsistentHNError(
                f"step {i}: mu_min(V_{i}) = {bottom} exceeds mu_min(M_{i}) = {sigma}"
            )
        if rank < s:
            raise InconsistentHNError(
                f"step {i}: bottom HN piece of V_{i} has rank {rank} < {s}, the rank of M_{i}/M_{i + 1}"
            )
        previous = inp.v0.with_pieces(pieces)
        if rank == s:
            pieces.pop()
            case = CASE_EQUAL
        else:
            pieces[-1] = (bottom, rank - s)
            case = CASE_STRICT
    # the remaining rank/degree force a stop at the last step
    raise InconsistentHNError("peeling ran past the last distinct degree")


def reduced_pair_density(inp: SyzygyInput, peel: Optional[PeelResult] = None) -> PiecewiseLinear:
    """``f_{V_t} - f_{M_t}`` on ``[0, inf)``; agrees with :func:`pair_density`."""
    peel = peel or peel_mu_reduction(inp)
    return pair_density_of(peel.vt_data, peel.mt_data, inp.curve)


def threshold_alpha(inp: SyzygyInput) -> Fraction:
    """``1 - a_min(V_{t0})/d`` for strong HN input; equals the F-threshold of ``m`` w.r.t. ``I``."""
    if not isinstance(inp.v0, StrongHNData):
        raise ValidationError("threshold_alpha needs strong HN data; use alpha_infinity_report in characteristic 0")
    peel = peel_mu_reduction(inp)
    return 1 - peel.a_min_vt / inp.curve.d


@dataclass(frozen=True)
class AlphaInfinityReport:
    alpha_inf: Fraction
    t: int
    controlling_index: int
    strict: bool
    peel: PeelResult

    @property
    def predicted_cp_form(self) -> str:
        k = self.controlling_index
        return (
            f"for p >> 0: c^I(m) = 1 - a_min(V_{k} mod p)/d >= {self.alpha_inf}, "
            f"converging to {self.alpha_inf} as p grows"
        )

    def to_json_obj(self) -> dict:
        return {
            "alpha_inf": str(self.alpha_inf),
            "t": self.t,
            "controlling_index": self.controlling_index,
            "mu_min_strictly_increases": self.strict,
            "predicted_cp_form": self.predicted_cp_form,
            "lower_bound": f"c^I(m) >= {self.alpha_inf} for all large p",
            "peel": self.peel.to_json_obj(),
        }


def alpha_infinity_report(inp: SyzygyInput) -> AlphaInfinityReport:
    if isinstance(inp.v0, StrongHNData):
        raise ValidationError("alpha_infinity_report needs characteristic-0 HN data")
    peel = peel_mu_reduction(inp)
    alpha = 1 - peel.a_min_vt / inp.curve.d
    if peel.t == 0:
        return AlphaInfinityReport(alpha, 0, 0, True, peel)
    strict = peel.previous.mu_min < peel.a_min_vt
    return AlphaInfinityReport(alpha, peel.t, peel.t if strict else peel.t - 1, strict, peel)


def _p_valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class DenominatorReport:
    c_p: Fraction
    c_inf: Fraction
    p: int
    residual: Fraction
    equal: bool
    a: Optional[int] = None
    b: Optional[int] = None
    gcd_ok: bool = True
    bound: Optional[Fraction] = None
    bound_ok: bool = True
    denominator_of_cp: int = 1
    denominator_valuation: int = 0

    @property
    def denominator_divisible_by_p(self) -> bool:
        return self.denominator_valuation > 0

    @property
    def denominator_pure_p_power(self) -> bool:
        return self.denominator_of_cp == self.p**self.denominator_valuation

    @property
    def passed(self) -> bool:
        if self.equal:
            return True
        return (
            self.gcd_ok
            and self.bound_ok
            and self.denominator_divisible_by_p
            and not self.denominator_pure_p_power
        )

    def to_json_obj(self) -> dict:
        return {
            "c_p": str(self.c_p),
            "c_inf": str(self.c_inf),
            "p": self.p,
            "residual": str(self.residual),
            "equal": self.equal,
            "a": self.a,
            "b": self.b,
            "gcd_ok": self.gcd_ok,
            "bound": None if self.bound is None else str(self.bound),
            "bound_ok": self.bound_ok,
            "denominator_of_cp": self.denominator_of_cp,
            "denominator_valuation": self.denominator_valuation,
            "denominator_divisible_by_p": self.denominator_divisible_by_p,
            "denominator_pure_p_power": self.denominator_pure_p_power,
            "passed": self.passed,
        }


def check_threshold_denominator(c_p, c_inf, p: int, g: int, r: int) -> DenominatorReport:
    """Check the shape ``c_p = c_inf + a/(p b)`` with ``gcd(a, p) = 1`` and ``0 < a/b <= 4(g-1)(r-1)``.

    ``r + 1`` is the number of generators.  When ``p`` does not divide the
    reduced denominator of the residual, ``a`` picks up a factor ``p`` and
    ``gcd_ok`` is false.
    """
    c_p, c_inf = as_fraction(c_p), as_fraction(c_inf)
    if not sympy.isprime(p):
        raise ValidationError(f"p = {p} is not prime")
    if r < 1 or g < 0:
        raise ValidationError(f"need r >= 1 and g >= 0, got r={r}, g={g}")
    residual = c_p - c_inf
    den = c_p.denominator
    val = _p_valuation(den, p)
    if residual == 0:
        return DenominatorReport(c_p, c_inf, p, residual, True, denominator_of_cp=den, denominator_valuation=val)
    if residual < 0:
        raise InconsistentHNError(f"c_p = {c_p} is below the characteristic-0 threshold {c_inf}")
    num, rden = residual.numerator, residual.denominator
    if rden % p == 0:
        a, b = num, rden // p
    else:
        a, b = num * p, rden
    bound = Fraction(4 * (g - 1) * (r - 1))
    return DenominatorReport(
        c_p,
        c_inf,
        p,
        residual,
        False,
        a,
        b,
        a % p != 0,
        bound,
        0 < Fraction(a, b) <= bound,
        den,
        val,
    )


verify_theorem_e = check_threshold_denominator

KLEIN_LIMIT = Fraction(3, 2)


def klein_modulus(d: int) -> int:
    return d * d - 3 * d + 3


def _klein_conditions(d: int, p: int) -> list[str]:
    bad = []
    if d < 17 or d % 2 == 0:
        bad.append(f"d = {d} must be odd and >= 17")
    if not sympy.isprime(p):
        bad.append(f"p = {p} is not prime")
    if p < d * d:
        bad.append(f"p = {p} < d^2 = {d * d}")
    mod = klein_modulus(d)
    if p % mod not in (2 % mod, (-2) % mod):
        bad.append(f"p = {p} is not +-2 mod {mod}")
    return bad


def klein_threshold(d: int, p: int, strict: bool = True) -> Fraction:
    """Threshold ``(3pd + d^2 - 9d + 15) / (2pd)`` of the Klein-type family.

    Outside the valid range of ``(d, p)`` this raises, or with
    ``strict=False`` warns and returns the formula's value anyway.
    """
    bad = _klein_conditions(d, p)
    if bad:
        msg = "; ".join(bad)
        if strict:
            raise ValidationError(msg)
        warnings.warn(f"klein_threshold outside its valid range: {msg}", stacklevel=2)
    return Fraction(3 * p * d + d * d - 9 * d + 15, 2 * p * d)


def klein_primes(d: int, count: int) -> list[int]:
    """The first ``count`` primes ``p >= d^2`` with ``p = +-2 mod (d^2 - 3d + 3)``."""
    mod = klein_modulus(d)
    out = []
    # candidates run through the two residue classes in increasing order
    k = (d * d) // mod
    while len(out) < count:
        for c in (k * mod - 2, k * mod + 2):
            if c >= d * d and sympy.isprime(c) and c not in out:
                out.append(c)
                if len(out) == count:
                    break
        k += 1
    return sorted(out)
