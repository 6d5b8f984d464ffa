"""Hypothesis strategies for random syzygy inputs.

Inputs are built backwards from the peeling: pick generator degrees and an
index ``t``, draw HN data for ``V_t`` whose bottom slope sits in the window the
peeling requires, then append the pieces of ``M`` that step ``t-1, ..., 0``
would strip off.  Every draw therefore passes rank/degree validation.
"""

from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from hkdensity.hn import CurveData, GeneratorDegrees, HNData, StrongHNData, validate_syzygy_hn


def _sigmas(degs: GeneratorDegrees, d: int):
    l1 = degs.l1
    return [(Fraction((1 - degs.distinct[l1 - 1 - i]) * d), degs.multiplicities[l1 - 1 - i]) for i in range(l1)]


@st.composite
def peel_scenarios(draw, strong_primes=(2, 3, 5), char0_only=False):
    """``(SyzygyInput, t)`` where ``t`` is the index the peeling must return."""
    d = draw(st.integers(1, 6))
    g = draw(st.integers(0, 6))
    degrees = draw(st.lists(st.integers(1, 5), min_size=2, max_size=6))
    degs = GeneratorDegrees(tuple(degrees))
    l1 = degs.l1
    t = draw(st.integers(0, l1 - 1))
    sig = _sigmas(degs, d)
    # M_t keeps the l1 - t smallest distinct degrees
    kept = list(zip(degs.distinct[: l1 - t], degs.multiplicities[: l1 - t]))
    rank = sum(s for _, s in kept) - 1
    assume(rank >= 1)
    degree = sum(s * (1 - e) * d for e, s in kept) - d

    if char0_only:
        p, level = None, 0
    else:
        p = draw(st.sampled_from((None,) + tuple(strong_primes)))
        level = draw(st.integers(0, 2)) if p else 0
    unit = p**level if p else 1

    k = draw(st.integers(1, min(rank, 3)))
    cuts = sorted(draw(st.lists(st.integers(1, rank - 1), min_size=k - 1, max_size=k - 1, unique=True))) if k > 1 else []
    ranks = [b - a for a, b in zip([0] + cuts, cuts + [rank])]

    upper = sig[t][0]
    lower = sig[t - 1][0] if t >= 1 else upper - draw(st.integers(1, 3 * d))
    if k == 1:
        slopes = [Fraction(degree, rank)]
    else:
        den = unit * ranks[-1]
        if t >= 1 and draw(st.booleans()):
            bottom = lower
        else:
            lo_n = int(lower * den) if (lower * den).denominator == 1 else int(lower * den) + 1
            hi_n = -int(-upper * den) - 1
            assume(lo_n <= hi_n)
            bottom = Fraction(draw(st.integers(lo_n, hi_n)), den)
        slopes = [bottom]
        for r in reversed(ranks[1:-1]):
            step = draw(st.integers(1, 4 * d * unit * r))
            slopes.insert(0, slopes[0] + Fraction(step, unit * r))
        rest = sum(s * r for s, r in zip(slopes, ranks[1:]))
        slopes.insert(0, (degree - rest) / ranks[0])
        assume(slopes[0] > slopes[1])
    assume(slopes[-1] < upper and (t == 0 or slopes[-1] >= lower))

    assume(slopes[0] <= (1 - degs.distinct[0]) * d)
    pieces = list(zip(slopes, ranks))
    for i in range(t - 1, -1, -1):
        s_val, s_rank = sig[i]
        if pieces[-1][0] == s_val:
            pieces[-1] = (s_val, pieces[-1][1] + s_rank)
        else:
            pieces.append((s_val, s_rank))
    if p:
        try:
            v0 = StrongHNData(tuple(pieces), p, level)
        except ValueError:
            assume(False)
    else:
        v0 = HNData(tuple(pieces))
    return validate_syzygy_hn(v0, degs, CurveData(g, d)), t


@st.composite
def refinement_pairs(draw):
    """``(char-0 input, t, strong input)`` with the strong data refining the char-0 data."""
    inp, t = draw(peel_scenarios(char0_only=True))
    p = draw(st.sampled_from((2, 3, 5)))
    level = draw(st.integers(0, 2))
    unit = p**level
    out = []
    for idx, (mu, r) in enumerate(inp.v0.pieces):
        split = r >= 2 and draw(st.booleans())
        if not split:
            out.append([(mu, r)])
            continue
        r1 = draw(st.integers(1, r - 1))
        r2 = r - r1
        # keep the average, push the two parts apart symmetrically in degree
        eps = Fraction(draw(st.integers(1, 3)), unit * r1 * r2)
        out.append([(mu + eps * r2, r1), (mu - eps * r1, r2)])
    flat = [pc for group in out for pc in group]
    assume(all(a[0] > b[0] for a, b in zip(flat, flat[1:])))
    try:
        v0 = StrongHNData(tuple(flat), p, level)
    except ValueError:
        assume(False)
    try:
        strong = validate_syzygy_hn(v0, inp.degrees, inp.curve)
    except ValueError:
        assume(False)
    return inp, t, strong


@st.composite
def slope_data(draw, max_pieces=4):
    k = draw(st.integers(1, max_pieces))
    ranks = draw(st.lists(st.integers(1, 4), min_size=k, max_size=k))
    steps = draw(st.lists(st.fractions(min_value=Fraction(1, 6), max_value=5, max_denominator=6), min_size=k, max_size=k))
    top = draw(st.fractions(min_value=-20, max_value=5, max_denominator=6))
    slopes = []
    s = top
    for step in steps:
        slopes.append(s)
        s -= step
    return HNData(tuple(zip(slopes, ranks)))
