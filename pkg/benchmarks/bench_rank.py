"""Time the compiled and numpy rank kernels on random and oracle-shaped matrices.

    python3 benchmarks/bench_rank.py [--repeat N]
"""

import argparse
import time

import numpy as np

from hkdensity import _rank_py

try:
    from hkdensity._rank_ext import rank_mod_p as compiled_rank
except ImportError:
    compiled_rank = None


def best_of(fn, a, p, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        r = fn(a, p)
        times.append(time.perf_counter() - t)
    return r, min(times)


def oracle_matrix(q: int):
    """The largest dense block the rank backend meets for the worked Fermat quartic at this q."""
    import hkdensity.oracle as oracle
    from hkdensity.rings import IdealSpec, RingPresentation, frobenius_power

    ring = RingPresentation.fermat(4, 3)
    J = frobenius_power(IdealSpec.from_text(["x + y", "y + z", "z^2 + x*y"], 3), q, 3)
    captured = []
    original = oracle.rank_mod_p

    def spy(a, p):
        captured.append(np.array(a, copy=True))
        return original(a, p)

    oracle.rank_mod_p = spy
    try:
        for m in range(q, 3 * q):
            oracle.graded_dim(ring, J, m, "rank")
    finally:
        oracle.rank_mod_p = original
    return max(captured, key=lambda a: a.size) if captured else None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    cases = [
        (f"random {r}x{c} mod {p}", rng.integers(0, p, size=(r, c)).astype(np.int64), p)
        for r, c, p in ((100, 100, 3), (400, 300, 3), (800, 600, 2), (600, 600, 5))
    ]
    for q in (27, 81):
        m = oracle_matrix(q)
        if m is not None:
            cases.append((f"oracle block q={q} {m.shape[0]}x{m.shape[1]}", m, 3))
    print(f"{'case':<36}{'rank':>6}{'numpy s':>12}{'compiled s':>12}{'speedup':>9}")
    for name, a, p in cases:
        r_py, t_py = best_of(_rank_py.rank_mod_p, a, p, args.repeat)
        if compiled_rank is None:
            print(f"{name:<36}{r_py:>6}{t_py:>12.4f}{'n/a':>12}{'':>9}")
            continue
        r_c, t_c = best_of(compiled_rank, a, p, args.repeat)
        assert r_c == r_py, (name, r_c, r_py)
        print(f"{name:<36}{r_c:>6}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
