"""Ready-made job configurations for the standard examples.

Each preset returns a plain dict in the config-file schema, so presets and
hand-written configs go through the same validation.
"""

from __future__ import annotations

from fractions import Fraction

from hkdensity.errors import ValidationError


def fermat_worked(d: int = 4, p: int = 3) -> dict:
    """``x^d + y^d + z^d`` with ``I = (x^2, y^2, z^5)``; ``V_0`` has strong data ``({-3d, -4d}, {1, 1})``."""
    d, p = int(d), int(p)
    return {
        "name": f"fermat{d}_x2y2z5_p{p}",
        "pair": {"plane_curve": {"poly": f"x^{d} + y^{d} + z^{d}", "char": p}},
        "ideal": {"generators": ["x^2", "y^2", "z^5"]},
        "v0_hn": {
            "slopes": [str(-3 * d), str(-4 * d)],
            "ranks": [1, 1],
            "strong": True,
            "characteristic": p,
            "frobenius_level": 0,
        },
        "oracle": {"enabled": True, "max_n": 3, "max_degree": 600},
    }


# strong HN data of the syzygy bundle of (x, y, z) on the Fermat curve, read off
# from oracle runs (thresholds and densities at q = 3 ... 81)
_FERMAT_MAXIMAL = {
    (4, 3): ([("-4/3", 1), ("-8/3", 1)], 1),
    (5, 3): ([("-5/2", 2)], 0),
}


def fermat_maximal(d: int = 4, p: int = 3) -> dict:
    """``x^d + y^d + z^d`` with the homogeneous maximal ideal."""
    d, p = int(d), int(p)
    job = {
        "name": f"fermat{d}_maximal_p{p}",
        "pair": {"plane_curve": {"poly": f"x^{d} + y^{d} + z^{d}", "char": p}},
        "ideal": {"generators": ["x", "y", "z"]},
        "oracle": {"enabled": True, "max_n": 3, "max_degree": 600},
    }
    known = _FERMAT_MAXIMAL.get((d, p))
    if known is not None:
        pieces, level = known
        job["v0_hn"] = {
            "slopes": [s for s, _ in pieces],
            "ranks": [r for _, r in pieces],
            "strong": True,
            "characteristic": p,
            "frobenius_level": level,
        }
    return job


def equal_degree(k: int = 2, count: int = 3, d: int = 4, p: int | None = None) -> dict:
    """``count`` generators of degree ``k`` with a semistable syzygy bundle."""
    k, count, d = int(k), int(count), int(d)
    if count < 2:
        raise ValidationError("equal_degree needs at least two generators")
    slope = Fraction(count * (1 - k) * d - d, count - 1)
    hn = {"slopes": [str(slope)], "ranks": [count - 1], "strong": p is not None}
    if p is not None:
        hn.update({"characteristic": int(p), "frobenius_level": 0})
    return {
        "name": f"equal_degree_{count}x{k}_d{d}" + (f"_p{p}" if p else ""),
        "pair": {"curve": {"genus": (d - 1) * (d - 2) // 2, "degree": d}},
        "ideal": {"degrees": [k] * count},
        "v0_hn": hn,
    }


def klein(degrees=(17, 19, 21), primes_per_degree: int = 3) -> dict:
    return {
        "name": "klein",
        "klein": {"degrees": [int(x) for x in degrees], "primes_per_degree": int(primes_per_degree)},
    }


PRESETS = {
    "fermat_worked": fermat_worked,
    "fermat_maximal": fermat_maximal,
    "equal_degree": equal_degree,
    "klein": klein,
}


def expand_preset(spec) -> dict:
    """``{"name": "fermat_worked", "d": 5}`` or ``"fermat_worked:d=5,p=3"`` to a job dict."""
    if isinstance(spec, str):
        name, _, rest = spec.partition(":")
        params = {}
        for item in filter(None, rest.split(",")):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValidationError(f"preset parameter {item!r} is not key=value")
            params[key.strip()] = val.strip()
        spec = {"name": name, **params}
    if not isinstance(spec, dict) or "name" not in spec:
        raise ValidationError("preset needs a 'name'")
    spec = dict(spec)
    name = spec.pop("name")
    if name not in PRESETS:
        raise ValidationError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")
    if name == "klein" and isinstance(spec.get("degrees"), str):
        spec["degrees"] = [int(x) for x in spec["degrees"].split("+")]
    try:
        return PRESETS[name](**spec)
    except TypeError as exc:
        raise ValidationError(f"bad parameters for preset {name!r}: {exc}") from exc
