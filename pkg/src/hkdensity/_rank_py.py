"""Numpy fallback for Gaussian elimination over F_p."""

import numpy as np


def rank_mod_p(a, p: int) -> int:
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r, c:] = m[r, c:] * pow(int(m[r, c]), p - 2, p) % p
        below = m[r + 1 :, c]
        hit = np.flatnonzero(below)
        if hit.size:
            idx = r + 1 + hit
            m[idx, c:] = (m[idx, c:] - np.outer(m[idx, c], m[r, c:])) % p
        r += 1
    return int(r)
