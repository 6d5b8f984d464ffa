"""Command-line front end.

    hkdensity {density,threshold,oracle-compare,klein} --config JOB.yaml --out DIR

Exit codes: 0 success, 2 invalid input, 3 oracle budget exceeded, 4 a
cross-check failed (envelope breach, backend disagreement, Klein check).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from hkdensity.config import JobConfig, load_config, parse_job
from hkdensity.density import density_of_bundle, integrate, pair_density, pair_envelope
from hkdensity.errors import BudgetExceededError, HKError, InvariantViolation, ValidationError
from hkdensity.hn import StrongHNData
from hkdensity.oracle import (
    compare_to_closed_form,
    empirical_density,
    f_threshold_index,
    graded_dim,
)
from hkdensity.reduction import (
    KLEIN_LIMIT,
    alpha_infinity_report,
    klein_primes,
    klein_threshold,
    peel_mu_reduction,
    threshold_alpha,
    check_threshold_denominator,
)

COMMANDS = ("density", "threshold", "oracle-compare", "klein")


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


class _Writer:
    def __init__(self, root: Path, job: JobConfig, fmt: str | None):
        self.dir = root / job.name
        self.fmt = fmt or job.formats[0]
        self.written: list[str] = []

    def json(self, name: str, obj) -> None:
        write_atomic(self.dir / f"{name}.json", dump_json(obj))
        self.written.append(f"{name}.json")

    def function(self, name: str, f) -> None:
        if self.fmt == "csv":
            write_atomic(self.dir / f"{name}.csv", f.to_csv())
            self.written.append(f"{name}.csv")
        else:
            self.json(name, f.to_json_obj())

    def samples(self, name: str, emp) -> None:
        if self.fmt == "csv":
            write_atomic(self.dir / f"{name}.csv", emp.to_csv())
            self.written.append(f"{name}.csv")
        else:
            self.json(name, emp.to_json_obj())


def run_density(job: JobConfig, out: _Writer, opts) -> None:
    inp = job.syzygy_input()
    f = pair_density(inp)
    out.function("pair_density", f)
    out.function("v0_density", density_of_bundle(inp.v0, inp.curve))
    out.function("m0_density", density_of_bundle(inp.m0, inp.curve))
    out.json(
        "summary",
        {
            "job": job.name,
            "support_endpoint": str(f.support_endpoint()),
            "e_hk": str(integrate(f)),
            "strong": inp.is_strong,
        },
    )


def run_threshold(job: JobConfig, out: _Writer, opts) -> None:
    inp = job.syzygy_input()
    if isinstance(inp.v0, StrongHNData):
        peel = peel_mu_reduction(inp)
        out.json(
            "threshold",
            {
                "job": job.name,
                "alpha": str(threshold_alpha(inp)),
                "characteristic": inp.v0.characteristic,
                "peel": peel.to_json_obj(),
            },
        )
    else:
        out.json("threshold", {"job": job.name, **alpha_infinity_report(inp).to_json_obj()})


def _cross_check(ring, J, degrees) -> None:
    for m in degrees:
        a = graded_dim(ring, J, m, "rank")
        b = graded_dim(ring, J, m, "groebner")
        if a != b:
            raise InvariantViolation(f"backends disagree at degree {m}: rank {a}, groebner {b}")


def run_oracle_compare(job: JobConfig, out: _Writer, opts) -> None:
    from hkdensity.rings import frobenius_power

    if job.ring is None or job.ideal is None:
        raise ValidationError(f"job {job.name!r}: oracle-compare needs a plane_curve and generator polynomials")
    ring, ideal = job.ring, job.ideal
    max_n = opts.max_n if opts.max_n is not None else job.oracle.max_n
    max_degree = opts.max_degree if opts.max_degree is not None else job.oracle.max_degree
    inp = job.syzygy_input() if job.v0_raw is not None else None
    closed = alpha = None
    if inp is not None:
        if not inp.is_strong:
            raise ValidationError(f"job {job.name!r}: oracle comparison needs strong HN data")
        closed = pair_density(inp)
        alpha = threshold_alpha(inp)
    K = ring.polarization_degree - 3
    levels = []
    breaches = []
    for n in range(max_n + 1):
        q = ring.p**n
        try:
            emp = empirical_density(ring, ideal, n, max_degree)
            out.samples(f"empirical_n{n}", emp)
            r_q = f_threshold_index(ring, ideal, q, alpha, max_degree)
        except BudgetExceededError as exc:
            if exc.partial is not None:
                out.samples(f"empirical_n{n}", exc.partial)
            out.json("oracle_summary", {"job": job.name, "levels": levels, "budget_exceeded_at_n": n})
            raise
        if job.oracle.cross_check:
            J = frobenius_power(ideal, q, ring.p)
            degs = sorted({m for m, _ in emp.samples[:: max(1, len(emp.samples) // 8)]} | {emp.last_nonzero + 1})
            _cross_check(ring, J, degs)
        level = {
            "n": n,
            "q": q,
            "r_q": r_q,
            "threshold": str(Fraction(r_q, q)),
            "empirical_support": str(emp.support_endpoint),
            "total_length": emp.total_length,
            "hk_estimate": str(emp.hk_estimate),
        }
        if closed is not None:
            level["prediction"] = str(alpha)
            level["deviation"] = str(abs(Fraction(r_q, q) - alpha))
            level["K"] = K
            level["within_K"] = abs(Fraction(r_q, q) - alpha) <= Fraction(K, q)
            n1 = inp.v0.frobenius_level
            env = pair_envelope(inp, n - n1) if n >= n1 else None
            rep = compare_to_closed_form(emp, closed, env)
            out.json(f"compare_n{n}", rep.to_json_obj())
            level["envelope_checked"] = env is not None
            level["within_envelope"] = rep.within_envelope
            level["max_deviation"] = str(rep.max_deviation)
            if env is not None and not rep.within_envelope:
                breaches.append(n)
        levels.append(level)
    summary = {"job": job.name, "ring": str(ring), "ideal": str(ideal), "K": K, "levels": levels}
    if closed is not None:
        summary["alpha"] = str(alpha)
        summary["e_hk"] = str(integrate(closed))
    out.json("oracle_summary", summary)
    if breaches:
        raise InvariantViolation(f"empirical density leaves the envelope at levels {breaches}")


def run_klein(job: JobConfig, out: _Writer, opts) -> None:
    if job.klein is None:
        raise ValidationError(f"job {job.name!r}: the klein command needs a 'klein' section")
    grid = job.klein
    rows = []
    for d in grid.degrees:
        primes = list(grid.primes) if grid.primes else klein_primes(d, grid.primes_per_degree)
        g = (d - 1) * (d - 2) // 2
        for p in primes:
            c_p = klein_threshold(d, p)
            rep = check_threshold_denominator(c_p, KLEIN_LIMIT, p, g, 2)
            rows.append({"d": d, "genus": g, **rep.to_json_obj()})
    out.json("klein", {"job": job.name, "c_inf": str(KLEIN_LIMIT), "results": rows})
    failed = [(r["d"], r["p"]) for r in rows if not r["passed"]]
    if failed:
        raise InvariantViolation(f"denominator checks failed for {failed}")


RUNNERS = {
    "density": run_density,
    "threshold": run_threshold,
    "oracle-compare": run_oracle_compare,
    "klein": run_klein,
}


def _error_obj(job: str, exc: BaseException) -> dict:
    code = getattr(exc, "exit_code", 2 if isinstance(exc, (ValueError, TypeError)) else 1)
    return {"error": {"job": job, "type": type(exc).__name__, "exit_code": code, "message": str(exc)}}


def run_job(command: str, job: JobConfig, out_root: str, opts) -> tuple[int, dict]:
    writer = _Writer(Path(out_root), job, opts.format)
    try:
        RUNNERS[command](job, writer, opts)
    except (HKError, ValueError, TypeError) as exc:
        err = _error_obj(job.name, exc)
        write_atomic(writer.dir / "error.json", dump_json(err))
        return err["error"]["exit_code"], err
    return 0, {"job": job.name, "written": writer.written}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hkdensity", description=__doc__.split("\n\n")[0])
    ap.add_argument("command", choices=COMMANDS)
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", metavar="PATH", help="YAML/JSON job file")
    src.add_argument("--preset", metavar="SPEC", help='built-in job, e.g. "fermat_worked:d=4"')
    ap.add_argument("--out", metavar="DIR", default="hk_out")
    ap.add_argument("--format", choices=("csv", "json"), default=None)
    ap.add_argument("--max-n", type=int, default=None)
    ap.add_argument("--max-degree", type=int, default=None)
    ap.add_argument("--jobs", type=int, default=1, metavar="N", help="run independent jobs in N processes")
    return ap


def main(argv=None) -> int:
    opts = build_parser().parse_args(argv)
    try:
        jobs = load_config(opts.config) if opts.config else [parse_job({"preset": opts.preset})]
    except (HKError, ValueError, TypeError) as exc:
        err = _error_obj(None, exc)
        print(dump_json(err), end="", file=sys.stderr)
        return err["error"]["exit_code"]
    if opts.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            futures = [pool.submit(run_job, opts.command, j, opts.out, opts) for j in jobs]
            results = [f.result() for f in futures]
    else:
        results = [run_job(opts.command, j, opts.out, opts) for j in jobs]
    status = 0
    for code, payload in results:
        if code:
            print(dump_json(payload), end="", file=sys.stderr)
            status = max(status, code)
        else:
            print(dump_json(payload), end="")
    return status


if __name__ == "__main__":
    sys.exit(main())
