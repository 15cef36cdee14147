import pytest
from hypothesis import given, settings, strategies as st

from weyltype import presets
from weyltype.exponents import ModuleAutomorphism
from weyltype.morphisms import (AutomorphismSpec, MorphismError, UnsupportedCase, compose,
                                iso_decide, verify_endomorphism)


def P_(name):
    return presets.load(name).presentation


def test_torus_rescaling_passes_when_product_is_one():
    r = verify_endomorphism(AutomorphismSpec({"x": 2, "d": "1/2"}), P_("weyl"))
    assert r.passed and not r.notes


def test_torus_rescaling_fails_with_witness():
    P = P_("weyl")
    r = verify_endomorphism(AutomorphismSpec({"x": 2, "d": 1}), P)
    assert not r.passed
    (label, residue), = r.witnesses
    assert label == "d x -> x*d + 1" and residue == 1
    assert r.notes


def test_involution_and_its_square():
    P = P_("weyl")
    phi = AutomorphismSpec(involution=True)
    assert verify_endomorphism(phi, P).passed
    x = P.generator("x")
    assert phi.apply(x) == P.generator("d")
    assert compose(phi, phi).apply(x) == -x


def test_involution_unsupported_on_builtin():
    with pytest.raises(UnsupportedCase):
        AutomorphismSpec(involution=True).apply(P_("weyltype-r1").generator("x"))


def test_builtin_character_rescaling():
    P = P_("weyltype-r1")
    assert verify_endomorphism(AutomorphismSpec({"y": 7}), P, 3).passed
    # [d, E] = E pins the d scale to 1, so the Weyl torus does not survive
    bad = verify_endomorphism(AutomorphismSpec({"x": 3, "d": "1/3"}), P)
    assert not bad.passed
    assert any(label == "[E, d]" for label, _ in bad.witnesses)
    assert any("forces the d scale" in n for n in bad.notes)


def test_builtin_exponent_swap_on_rank_two():
    P = P_("weyltype-r2-sqrt2")
    sigma = ModuleAutomorphism(((0, 1), (1, 0)))
    # swapping coordinates does not fix the unit, so d no longer differentiates x
    r = verify_endomorphism(AutomorphismSpec(sigma=sigma), P)
    assert not r.passed


def test_zero_scale_rejected():
    with pytest.raises(MorphismError):
        AutomorphismSpec({"x": 0})


def test_iso_decisions():
    assert iso_decide((2,), "T", (-2,), "T").iso
    assert not iso_decide((2,), "T1", (2,), "T2").iso
    v = iso_decide((2, 0), "T", (0, 2), "T", rank=2)
    assert v.iso and v.sigma((2, 0)) == (0, 2)
    assert not iso_decide((2, 0), "T", (1, 1), "T").iso
    with pytest.raises(MorphismError):
        iso_decide((0,), "T", (1,), "T")


vec = st.lists(st.integers(-9, 9), min_size=3, max_size=3).filter(any)


@given(vec, vec)
@settings(max_examples=300, deadline=None)
def test_iso_witness_always_verifies(p1, p2):
    v = iso_decide(p1, "t", p2, "t")
    from math import gcd
    g1, g2 = gcd(*p1), gcd(*p2)
    assert v.iso == (g1 == g2)
    if v.iso:
        assert v.sigma(tuple(p1)) == tuple(p2) and abs(v.sigma.det) == 1
