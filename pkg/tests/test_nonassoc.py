from fractions import Fraction

import pytest

from weyltype import presets
from weyltype.nonassoc import (KappaForm, LEFT_NORMED, NAAlgebra, NonAssocError,
                               flexibility_defect, flexibility_report, left_mult_injectivity,
                               na_center_superset, na_growth_table)

from oracles import quotient_mult_kernel


def N_(name, kappa=None):
    d = presets.load(name)
    P = d.presentation
    if kappa == "default":
        return NAAlgebra(P, KappaForm.default(P))
    return d.na_algebra() if kappa is None else NAAlgebra(P, kappa)


def test_jordan_product_with_zero_form():
    N = N_("weyl")
    P = N.P
    assert N.multiply("x", "d") == P.element("x*d + 1/2")
    assert N.multiply("x", "d") == N.multiply("d", "x")


def test_default_form_is_antisymmetric_on_seed():
    P = presets.load("weyl").presentation
    k = KappaForm.default(P)
    assert not k.is_symmetric()
    assert k(P.one(), P.generator("x")) == 1
    assert k(P.generator("x"), P.one()) == -1
    assert KappaForm.zero().is_symmetric()


def test_scalar_exclusion():
    N = N_("na-example-31")
    P = N.P
    one = P.one()
    for g in P.generators():
        assert N.multiply(one, g) - N.multiply(g, one) == 2


def test_na_center_superset_is_zero():
    r = na_center_superset(N_("na-example-31"), 3, 3)
    assert r.certified_zero and r.basis == []


def test_na_center_with_zero_form_keeps_commutative_candidates():
    # kappa = 0 on a commutative ring: the product is associative, every candidate survives
    r = na_center_superset(N_("poly1"), 2, 2)
    assert len(r.basis) == 3


def test_flexibility():
    N = N_("weyl", "default")
    P = N.P
    assert flexibility_defect(N, P.generator("x"), P.generator("d")) == P.element("2*x + 1")
    assert not flexibility_report(N, 1).flexible
    # the plain Jordan product is flexible
    assert flexibility_report(N_("weyl"), 2).flexible


def test_injectivity_on_weyl():
    v = left_mult_injectivity("x", N_("weyl"), 3)
    assert v.injective and v.rank == v.candidates == 10


def test_injectivity_fails_with_zero_divisors():
    v = left_mult_injectivity("x", N_("poly2-xy"), 3)
    assert not v.injective
    assert [str(k) for k in v.kernel] == ["y", "y^2", "y^3"]
    assert len(v.kernel) == quotient_mult_kernel(["x", "y"], ["x*y"], "x", 3)


def test_na_growth():
    N = N_("weyl")
    assert na_growth_table(N, n_max=3).dims == [3, 6, 10]
    assert na_growth_table(N, n_max=3, bracketing=LEFT_NORMED).dims[0] == 3
    with pytest.raises(NonAssocError):
        na_growth_table(N, n_max=7)


def test_kappa_table_bilinear():
    P = presets.load("poly1").presentation
    x = P.generator("x")
    k = KappaForm({(next(iter(x.terms)), next(iter(x.terms))): Fraction(3)})
    assert k(x * 2, x + 1) == 6
