import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF, ZZ
from sympy.polys.matrices import DomainMatrix

from hkdensity import _rank_py, kernels


def sympy_rank(rows, p):
    m = DomainMatrix([[ZZ(int(v)) for v in row] for row in rows], (len(rows), len(rows[0])), ZZ)
    return m.convert_to(GF(p)).rank()


@st.composite
def matrices(draw):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    r, c = draw(st.integers(1, 9)), draw(st.integers(1, 9))
    rows = draw(st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r))
    return rows, p


@settings(max_examples=300)
@given(matrices())
def test_kernels_agree_with_sympy(case):
    rows, p = case
    expected = sympy_rank(rows, p)
    assert _rank_py.rank_mod_p(rows, p) == expected
    assert kernels.rank_mod_p(np.array(rows, dtype=np.int64), p) == expected


def test_kernel_does_not_modify_input():
    a = np.array([[1, 2], [3, 4]], dtype=np.int64)
    kernels.rank_mod_p(a, 5)
    _rank_py.rank_mod_p(a, 5)
    assert a.tolist() == [[1, 2], [3, 4]]


def test_large_random_matrix():
    rng = np.random.default_rng(7)
    a = rng.integers(0, 3, size=(120, 90))
    # low-rank product has rank <= 40
    b = (rng.integers(0, 3, size=(120, 40)) @ rng.integers(0, 3, size=(40, 90))) % 3
    for m in (a, b):
        assert kernels.rank_mod_p(m.astype(np.int64), 3) == _rank_py.rank_mod_p(m, 3) == sympy_rank(m.tolist(), 3)


def _backend_in_subprocess(env_value):
    env = dict(os.environ)
    env.pop("HKDENSITY_PURE_PYTHON", None)
    if env_value is not None:
        env["HKDENSITY_PURE_PYTHON"] = env_value
    out = subprocess.run(
        [sys.executable, "-c", "from hkdensity import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    return out.stdout.strip()


def test_pure_python_switch():
    assert _backend_in_subprocess("1") == "python"


def test_compiled_backend_selected_when_built():
    pytest.importorskip("hkdensity._rank_ext")
    assert _backend_in_subprocess(None) == "compiled"
