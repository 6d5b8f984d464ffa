"""Job configuration files (YAML; JSON is accepted as a subset).

A file holds one job mapping or ``{"jobs": [...]}``.  Each job may start from
``preset: {name: ..., params...}`` and override keys.  Rationals are
``"num/den"`` strings or integers; floats are refused.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import yaml

from hkdensity.errors import ValidationError
from hkdensity.hn import (
    CurveData,
    GeneratorDegrees,
    SyzygyInput,
    slope_data_from_dict,
    validate_syzygy_hn,
)
from hkdensity.presets import expand_preset
from hkdensity.rings import IdealSpec, RingPresentation

_NAME = re.compile(r"[A-Za-z0-9_.+-]+")


@dataclass(frozen=True)
class OracleOptions:
    enabled: bool = False
    max_n: int = 2
    max_degree: Optional[int] = None
    cross_check: bool = True


@dataclass(frozen=True)
class KleinGrid:
    degrees: tuple[int, ...]
    primes_per_degree: int = 3
    primes: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class JobConfig:
    name: str
    curve: Optional[CurveData] = None
    ring: Optional[RingPresentation] = None
    degrees: Optional[GeneratorDegrees] = None
    ideal: Optional[IdealSpec] = None
    v0_raw: Optional[dict] = None
    oracle: OracleOptions = field(default_factory=OracleOptions)
    formats: tuple[str, ...] = ("json",)
    klein: Optional[KleinGrid] = None

    def syzygy_input(self) -> SyzygyInput:
        """Validated closed-form input; ``v0_hn`` is mandatory here."""
        if self.v0_raw is None:
            raise ValidationError(f"job {self.name!r}: field 'v0_hn' is required for closed-form commands")
        if self.degrees is None or self.curve is None:
            raise ValidationError(f"job {self.name!r}: needs a curve and generator degrees")
        return validate_syzygy_hn(slope_data_from_dict(self.v0_raw), self.degrees, self.curve)


def _merge(base: dict, over: dict) -> dict:
    out = dict(base)
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


def _int(value, what: str) -> int:
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise ValidationError(f"{what} must be an integer, got {value!r}")


def parse_job(raw: dict, index: int = 0) -> JobConfig:
    if not isinstance(raw, dict):
        raise ValidationError(f"job #{index} is not a mapping")
    if "preset" in raw:
        raw = _merge(expand_preset(raw["preset"]), {k: v for k, v in raw.items() if k != "preset"})
    name = str(raw.get("name", f"job{index}"))
    if not _NAME.fullmatch(name):
        raise ValidationError(f"job name {name!r} must match {_NAME.pattern} (it becomes a directory)")

    if "klein" in raw:
        k = raw["klein"] or {}
        degs = tuple(_int(x, "klein.degrees[]") for x in k.get("degrees", [17, 19, 21]))
        primes = k.get("primes")
        return JobConfig(
            name,
            klein=KleinGrid(
                degs,
                _int(k.get("primes_per_degree", 3), "klein.primes_per_degree"),
                None if primes is None else tuple(_int(p, "klein.primes[]") for p in primes),
            ),
            formats=tuple(raw.get("outputs", {}).get("formats", ["json"])),
        )

    pair = raw.get("pair")
    if not isinstance(pair, dict):
        raise ValidationError(f"job {name!r}: missing 'pair'")
    has_curve, has_plane = "curve" in pair, "plane_curve" in pair
    if has_curve == has_plane:
        raise ValidationError(f"job {name!r}: 'pair' needs exactly one of 'curve' or 'plane_curve'")
    ring = None
    if has_plane:
        pc = pair["plane_curve"]
        if not isinstance(pc, dict) or "poly" not in pc or "char" not in pc:
            raise ValidationError(f"job {name!r}: plane_curve needs 'poly' and 'char'")
        ring = RingPresentation.from_text(str(pc["poly"]), _int(pc["char"], "plane_curve.char"))
        curve = CurveData(ring.genus, ring.polarization_degree)
    else:
        c = pair["curve"]
        if not isinstance(c, dict) or "genus" not in c or "degree" not in c:
            raise ValidationError(f"job {name!r}: curve needs 'genus' and 'degree'")
        curve = CurveData(_int(c["genus"], "curve.genus"), _int(c["degree"], "curve.degree"))

    ideal_raw = raw.get("ideal")
    if not isinstance(ideal_raw, dict):
        raise ValidationError(f"job {name!r}: missing 'ideal'")
    ideal = None
    if "generators" in ideal_raw:
        if ring is None:
            raise ValidationError(f"job {name!r}: generator polynomials need a plane_curve")
        ideal = IdealSpec.from_text([str(g) for g in ideal_raw["generators"]], ring.p)
        degrees = GeneratorDegrees(tuple(ideal.degrees))
    elif "degrees" in ideal_raw:
        degrees = GeneratorDegrees(tuple(_int(x, "ideal.degrees[]") for x in ideal_raw["degrees"]))
    else:
        raise ValidationError(f"job {name!r}: ideal needs 'degrees' or 'generators'")

    o = raw.get("oracle") or {}
    oracle = OracleOptions(
        bool(o.get("enabled", False)),
        _int(o.get("max_n", 2), "oracle.max_n"),
        None if o.get("max_degree") is None else _int(o["max_degree"], "oracle.max_degree"),
        bool(o.get("cross_check", True)),
    )
    formats = tuple(raw.get("outputs", {}).get("formats", ["json"]))
    for f in formats:
        if f not in ("json", "csv"):
            raise ValidationError(f"job {name!r}: unknown output format {f!r}")
    v0 = raw.get("v0_hn")
    if v0 is not None and not isinstance(v0, dict):
        raise ValidationError(f"job {name!r}: 'v0_hn' must be a mapping")
    return JobConfig(name, curve, ring, degrees, ideal, v0, oracle, formats)


def load_config(path) -> list[JobConfig]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text)


def parse_config_text(text: str) -> list[JobConfig]:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ValidationError(f"config is not valid YAML/JSON: {exc}") from exc
    if isinstance(data, dict) and "jobs" in data:
        jobs = data["jobs"]
    else:
        jobs = [data]
    if not isinstance(jobs, list) or not jobs:
        raise ValidationError("config holds no jobs")
    parsed = [parse_job(j, i) for i, j in enumerate(jobs)]
    names = [j.name for j in parsed]
    if len(set(names)) != len(names):
        raise ValidationError(f"duplicate job names: {names}")
    return parsed
