from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkdensity.density import (
    density_of_bundle,
    finite_level_envelope,
    h1_semistable,
    h1_upper_profile,
    integrate,
    pair_density,
    pair_envelope,
    support_endpoint,
)
from hkdensity.errors import InconsistentHNError, ValidationError
from hkdensity.hn import CurveData, HNData, StrongHNData, validate_syzygy_hn
from hkdensity.piecewise import PiecewiseLinear
from oracles import hinge_density, hinge_pair_density
from strategies import peel_scenarios, slope_data

C4 = CurveData(3, 4)


def worked(d=4, p=3):
    v0 = StrongHNData(((-3 * d, 1), (-4 * d, 1)), p, 0)
    return validate_syzygy_hn(v0, [2, 2, 5], CurveData.plane(d))


def test_bundle_density_of_a_line_bundle():
    f = density_of_bundle(HNData(((-8, 1),)), C4)
    assert f == PiecewiseLinear.from_points([(3, 0)], left_slope=-4, right_slope=0)
    assert support_endpoint(HNData(((-8, 1),)), C4) == 3


@given(slope_data(), st.integers(1, 7), st.fractions(-3, 8, max_denominator=10))
def test_bundle_density_matches_hinge_sum(data, d, x):
    f = density_of_bundle(data, CurveData(2, d))
    assert f(x) == hinge_density(data.pieces, d, x)


def test_pair_density_of_worked_example():
    f = pair_density(worked())
    assert f(0) == 0 and f(1) == 4
    assert f.support_endpoint() == 4
    assert integrate(f) == 16


def test_pair_density_rejects_negative_difference():
    # support of f_V ends at 19/4, before that of f_M at 5
    bad = validate_syzygy_hn(StrongHNData(((-13, 1), (-15, 1)), 3, 0), [2, 2, 5], C4)
    with pytest.raises(InconsistentHNError):
        pair_density(bad)


@settings(max_examples=200)
@given(peel_scenarios())
def test_pair_density_matches_hinge_route(scenario):
    inp, _ = scenario
    d = inp.curve.d
    try:
        f = pair_density(inp)
    except InconsistentHNError:
        lo = min(hinge_pair_density(inp.v0.pieces, inp.degrees.degrees, d, x)
                 for x in [Fraction(k, 4 * d) for k in range(0, 40 * d)])
        assert lo < 0
        return
    for k in range(0, 12 * d):
        x = Fraction(k, 2 * d)
        assert f(x) == hinge_pair_density(inp.v0.pieces, inp.degrees.degrees, d, x)


def test_h1_semistable_regimes():
    assert h1_semistable(-4, 1, 0, C4) == 6
    assert h1_semistable(8, 1, 0, C4) == 0
    assert h1_semistable(2, 1, 0, C4) == (0, 2)
    assert h1_semistable(0, 2, 0, C4) == (4, 6)
    with pytest.raises(ValidationError):
        h1_semistable(Fraction(-1, 3), 1, 0, C4)
    # the structure sheaf of an elliptic curve has h^1 = 1, so degree 0 allows 0 or 1
    assert h1_semistable(0, 1, 0, CurveData(1, 3)) == (0, 1)


def test_h1_upper_profile_contains_exact_values():
    for r in (1, 2, 3):
        u = h1_upper_profile(r, 3)
        for deg in range(-3 * r, 6 * r):
            t = Fraction(deg, r)
            val = h1_semistable(t, r, 0, C4)
            hi = val if isinstance(val, int) else val[1]
            assert hi <= r * u(t)
    assert h1_upper_profile(1, 0)(-3) == 2


def test_envelope_requires_strong_data():
    with pytest.raises(ValidationError):
        finite_level_envelope(HNData(((-3, 1),)), C4, 0)
    with pytest.raises(ValidationError):
        pair_envelope(worked(), -1)


def test_envelopes_contain_the_limit_outside_windows():
    inp = worked()
    f = pair_density(inp)
    for n in (1, 2, 3):
        env = pair_envelope(inp, n)
        assert env.big_q == 3**n
        assert env.window_width == Fraction(1, 3**n)
        for k in range(0, 6 * env.big_q):
            x = Fraction(k, env.big_q)
            if not env.in_window(x):
                assert env.contains(x, f(x)), x
    env = finite_level_envelope(inp.v0, C4, 2)
    fv = density_of_bundle(inp.v0, C4)
    for k in range(0, 60):
        x = Fraction(k, 9)
        if not env.in_window(x):
            assert env.contains(x, fv(x))
