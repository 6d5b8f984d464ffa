# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gaussian elimination over F_p on int64 matrices."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef i64 _inverse(i64 a, i64 p):
    cdef i64 result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rank_mod_p(a, i64 p):
    """Rank of ``a`` over F_p.  Works on a private copy."""
    cdef cnp.ndarray[i64, ndim=2] buf = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    cdef i64[:, ::1] m = buf
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f, t
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        inv = _inverse(m[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                m[r, j] = m[r, j] * inv % p
        for i in range(r + 1, rows):
            f = m[i, c]
            if f != 0:
                f = p - f
                for j in range(c, cols):
                    if m[r, j] != 0:
                        m[i, j] = (m[i, j] + f * m[r, j]) % p
        r += 1
    return int(r)
