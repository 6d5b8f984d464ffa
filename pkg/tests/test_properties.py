"""Hypothesis checks of the module invariants."""

from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hkdensity.density import (
    density_of_bundle,
    finite_level_envelope,
    integrate,
    pair_density,
    support_endpoint,
)
from hkdensity.errors import InconsistentHNError
from hkdensity.hn import CurveData, HNData, StrongHNData, frobenius_pullback, validate_syzygy_hn
from hkdensity.oracle import graded_dim
from hkdensity.piecewise import PiecewiseLinear
from hkdensity.reduction import peel_mu_reduction, threshold_alpha
from hkdensity.rings import IdealSpec, RingPresentation
from strategies import peel_scenarios, slope_data

curves = st.builds(CurveData, st.integers(0, 8), st.integers(1, 7))


@given(slope_data(), curves)
def test_bundle_density_shape(data, curve):
    f = density_of_bundle(data, curve)
    assert f.breakpoints == tuple(sorted(1 - a / curve.d for a in data.slopes))
    ranks = data.ranks
    for i, (slope, _) in enumerate(f.pieces[:-1]):
        assert slope == -curve.d * sum(ranks[i:]) < 0
    assert f.pieces[-1] == (0, 0)
    assert support_endpoint(data, curve) == f.breakpoints[-1] == f.support_endpoint()


@given(slope_data(), slope_data(), st.fractions(0, 5, max_denominator=7), curves)
def test_integral_linear_and_monotone(a, b, c, curve):
    fa = density_of_bundle(a, curve).restrict(0)
    fb = density_of_bundle(b, curve).restrict(0)
    assert integrate(fa + fb * c) == integrate(fa) + c * integrate(fb)
    assert integrate(fa.maximum(fb)) >= max(integrate(fa), integrate(fb))


@given(slope_data(), st.sampled_from([2, 3, 5]), st.integers(0, 2), st.integers(0, 2))
def test_pullback_rescales_density_argument(data, p, level, extra):
    strong = StrongHNData(tuple((a * 60, r) for a, r in data.pieces), p, level)
    up = frobenius_pullback(strong, extra)
    assert up.ranks == strong.ranks
    assert up.slopes == tuple(a * p**extra for a in strong.slopes)
    assert up.frobenius_level == level + extra


@settings(max_examples=300)
@given(peel_scenarios())
def test_threshold_is_support_endpoint(scenario):
    inp, _ = scenario
    assume(isinstance(inp.v0, StrongHNData))
    try:
        f = pair_density(inp)
    except InconsistentHNError:
        assume(False)
    assert threshold_alpha(inp) == f.support_endpoint()


@given(st.lists(st.integers(1, 6), min_size=2, max_size=6), st.integers(1, 6), st.integers(0, 6), st.sampled_from([2, 3, 5]))
def test_single_piece_threshold(degrees, d, g, p):
    mu = len(degrees)
    slope = Fraction(sum((1 - e) * d for e in degrees) - d, mu - 1)
    inp = validate_syzygy_hn(StrongHNData(((slope, mu - 1),), p, 0), degrees, CurveData(g, d))
    try:
        alpha = threshold_alpha(inp)
    except InconsistentHNError:
        return
    assert alpha == Fraction(sum(degrees), mu - 1)


@settings(max_examples=300)
@given(peel_scenarios())
def test_pair_density_near_zero_is_linear(scenario):
    inp, _ = scenario
    try:
        f = pair_density(inp)
    except InconsistentHNError:
        assume(False)
    # below the smallest generator degree nothing is cut out
    d, e = inp.curve.d, min(inp.degrees.degrees)
    for k in range(0, 8):
        x = Fraction(k * e, 8)
        assert f(x) == d * x


@settings(max_examples=200)
@given(slope_data(), st.sampled_from([2, 3]), st.integers(0, 4), st.integers(0, 8), st.integers(1, 6))
def test_envelope_brackets_bundle_density(data, p, n, g, d):
    strong = StrongHNData(tuple((a, r) for a, r in data.pieces if True), p, 0) if all(
        (a * r).denominator == 1 for a, r in data.pieces
    ) else None
    assume(strong is not None)
    curve = CurveData(g, d)
    env = finite_level_envelope(strong, curve, n)
    f = density_of_bundle(strong, curve)
    Q = env.big_q
    slack = Fraction(strong.rank * abs(g - 1), Q)
    hi = f.support_endpoint() + 2
    for k in range(0, int(hi * Q) + 1, max(1, Q // 9)):
        x = Fraction(k, Q)
        assert env.lower(x) <= env.upper(x)
        if not env.in_window(x):
            assert env.contains(x, f(x))
            assert env.width_at(x) <= 2 * slack


@given(st.fractions(-30, 30, max_denominator=5), st.integers(1, 6))
def test_piecewise_json_round_trip(c, d):
    f = PiecewiseLinear.from_points([(0, c), (Fraction(1, d), 0)], left_slope=-d)
    assert PiecewiseLinear.from_json(f.to_json()) == f
    assert PiecewiseLinear.from_csv(f.to_csv()) == f


F4 = RingPresentation.fermat(4, 3)
GEN_POOL = ["x^2", "y^2", "z^5", "x*y", "x*z^2 + y^3", "z^3"]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(GEN_POOL), min_size=1, max_size=4, unique=True), st.sampled_from(GEN_POOL), st.integers(0, 12))
def test_graded_dim_drops_when_generators_are_added(gens, extra, m):
    small = IdealSpec.from_text(gens, 3)
    big = IdealSpec.from_text(gens + [extra], 3)
    assert graded_dim(F4, big, m) <= graded_dim(F4, small, m)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([3, 4, 5]), st.sampled_from([2, 3, 5, 7]), st.integers(0, 25))
def test_riemann_roch_for_the_curve(d, p, m):
    ring = RingPresentation.from_text(f"x^{d} + y^{d} + z^{d}", p, check_smooth=False)
    g = (d - 1) * (d - 2) // 2
    val = graded_dim(ring, IdealSpec.from_text(["x^40"], p), m)
    if m > d - 3:
        assert val == d * m + 1 - g


@given(st.lists(st.integers(1, 6), min_size=2, max_size=6), st.integers(1, 6), st.integers(0, 6))
def test_peel_never_passes_the_last_degree(degrees, d, g):
    # semistable V_0 always validates; peeling must stop inside the range
    mu = len(degrees)
    slope = Fraction(sum((1 - e) * d for e in degrees) - d, mu - 1)
    inp = validate_syzygy_hn(HNData(((slope, mu - 1),)), degrees, CurveData(g, d))
    try:
        peel = peel_mu_reduction(inp)
    except InconsistentHNError:
        return
    assert peel.t < inp.degrees.l1
    assert peel.a_min_vt == slope
