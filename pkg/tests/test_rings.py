import pytest

from hkdensity.errors import ValidationError
from hkdensity.rings import IdealSpec, RingPresentation, frobenius_power, is_power_of, projective_points


def test_projective_points_count():
    for p in (2, 3, 5):
        pts = list(projective_points(p))
        assert len(pts) == len(set(pts)) == p * p + p + 1


def test_fermat_ring():
    r = RingPresentation.fermat(4, 3)
    assert r.polarization_degree == 4 and r.genus == 3 and r.p == 3
    assert str(r) == "F_3[x,y,z]/(x^4 + y^4 + z^4)"
    assert r.singular_point() is None


def test_ring_validation():
    with pytest.raises(ValidationError):
        RingPresentation.from_text("x^2 + y", 3)
    with pytest.raises(ValidationError):
        RingPresentation.from_text("x^3 + y^3", 4)
    with pytest.raises(ValidationError):
        RingPresentation.from_text("3*x", 3)
    with pytest.warns(UserWarning, match="singular"):
        RingPresentation.from_text("x^3 + x*y*z + y^3", 5)


def test_ideals_and_frobenius_powers():
    m = IdealSpec.maximal()
    assert m.degrees == [1, 1, 1]
    J = frobenius_power(IdealSpec.from_text(["x^2", "y*z"], 3), 9, 3)
    assert J.polys == [{(18, 0, 0): 1}, {(0, 9, 9): 1}]
    assert str(J) == "(x^18, y^9*z^9)"
    assert is_power_of(27, 3) and is_power_of(1, 3) and not is_power_of(6, 3) and not is_power_of(0, 3)
    with pytest.raises(ValidationError):
        frobenius_power(m, 6, 3)
    with pytest.raises(ValidationError):
        IdealSpec(())
    with pytest.raises(ValidationError):
        IdealSpec.from_text(["x + y^2"], 3)
