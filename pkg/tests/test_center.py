import pytest

from weyltype import presets
from weyltype.algebra.weyltype import specialize_y
from weyltype.center import (CapExceeded, CenterError, centralizer_basis,
                             weyltype_center_check)


def P_(name):
    return presets.load(name).presentation


def test_weyl_center_is_scalars():
    r = centralizer_basis(P_("weyl"), 5)
    assert r.as_strings() == ["1"]
    assert r.candidates == 21


def test_polynomial_ring_is_commutative():
    r = centralizer_basis(P_("poly2"), 3)
    assert len(r.basis) == 10


def test_so3_casimir_appears_in_degree_two():
    P = P_("so3")
    r = centralizer_basis(P, 2)
    assert r.basis == [P.one(), P.element("x^2 + y^2 + z^2")]


def test_weyltype_r1_center():
    P = P_("weyltype-r1")
    check = weyltype_center_check(P, 4)
    assert check.passed
    assert sorted(map(str, check.basis)) == sorted(
        ["1", "y", "y^2", "y^3", "y^4", "y^-1", "y^-2", "y^-3", "y^-4"])


def test_weyltype_r2_center():
    check = weyltype_center_check(P_("weyltype-r2-sqrt2"), 3)
    assert check.passed and len(check.basis) == 7


def test_center_check_mode_mismatch():
    check = weyltype_center_check(P_("na-example-31"), 1)
    assert not check.passed and "mode mismatch" in check.reason
    assert not weyltype_center_check(P_("weyl"), 2).passed


def test_fiber_center_collapses_to_scalars():
    F = specialize_y(P_("weyltype-r1"), 3)
    assert centralizer_basis(F, 2).as_strings() == ["1"]


def test_caps_and_bounds():
    with pytest.raises(CapExceeded):
        centralizer_basis(P_("poly3"), 3, cap=5)
    with pytest.raises(CenterError):
        centralizer_basis(P_("weyl"), -1)
