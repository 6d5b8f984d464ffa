from hypothesis import given, settings
from hypothesis import strategies as st

from hkdensity.groebner import TruncatedGroebner
from hkdensity.polynomials import parse_poly
from oracles import sympy_graded_dim


def test_fermat_quartic_with_worked_ideal():
    gens = [parse_poly(t, 3) for t in ("x^4 + y^4 + z^4", "x^2", "y^2", "z^5")]
    G = TruncatedGroebner(gens, 3).extend(12)
    assert G.self_check()
    dims = [G.standard_count(m) for m in range(10)]
    assert dims == [sympy_graded_dim("x^4 + y^4 + z^4", ["x^2", "y^2", "z^5"], m, 3) for m in range(10)]


def test_extension_is_incremental():
    gens = [parse_poly(t, 5) for t in ("x^3 + y^3 + z^3", "x*y", "z^2")]
    a = TruncatedGroebner(gens, 5)
    counts = [a.standard_count(m) for m in range(12)]
    b = TruncatedGroebner(gens, 5).extend(11)
    assert counts == [b.standard_count(m) for m in range(12)]
    assert a.self_check(11)


HOMOG = st.sampled_from(
    ["x^3 + y^3 + z^3", "x^2*y + y^2*z + z^2*x", "x^4 + y^4 + z^4", "x^2 + y*z", "x*y*z + x^3 + y^3"]
)
GENS = st.lists(st.sampled_from(["x^2", "y^2", "z^3", "x*y", "x*z + y^2", "y*z^2 + x^3", "x + y + z", "x^2 + 2*z^2"]), min_size=1, max_size=3, unique=True)


@settings(max_examples=25, deadline=None)
@given(HOMOG, GENS, st.sampled_from([2, 3, 5]))
def test_matches_sympy(h, gens, p):
    polys = [parse_poly(h, p)] + [parse_poly(g, p) for g in gens]
    polys = [f for f in polys if f]
    G = TruncatedGroebner(polys, p)
    for m in range(9):
        assert G.standard_count(m) == sympy_graded_dim(h, gens, m, p)
