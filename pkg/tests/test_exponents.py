import pytest
from hypothesis import given, settings, strategies as st

from weyltype.exponents import (ExponentError, ExponentModule, ModuleAutomorphism, content,
                                content_reduce, determinant, inverse_unimodular)
from weyltype.scalars import ALGEBRAIC, ConstantSpec, ScalarField

from oracles import int_det

small = st.integers(-6, 6)


def test_integers_module_embeds():
    M = ExponentModule.integers()
    assert M.embed((5,)) == 5


def test_rank_two_sqrt2_embedding():
    F = ScalarField([ConstantSpec("theta", ALGEBRAIC, ("-2", "0", "1"), "0")])
    M = ExponentModule(2, (1, F.constant("theta")), (1, 0), F)
    v = M.embed((1, 1))
    assert (v - 1) * (v - 1) == 2


def test_dependent_embeddings_rejected():
    with pytest.raises(ExponentError):
        ExponentModule(2, (1, 2), (1, 0))
    F = ScalarField([ConstantSpec("theta", ALGEBRAIC, ("-2", "0", "1"), "0")])
    th = F.constant("theta")
    with pytest.raises(ExponentError):
        ExponentModule(3, (1, th, 1 + th), (1, 0, 0), F)


def test_automorphism_requires_unimodular():
    with pytest.raises(ExponentError):
        ModuleAutomorphism(((2, 0), (0, 1)))
    sw = ModuleAutomorphism([[0, 1], [1, 0]])
    assert sw.det == -1
    assert sw((2, 0)) == (0, 2)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=200, deadline=None)
def test_bareiss_matches_sympy(rows):
    assert determinant(rows) == int_det(rows)


@given(st.lists(small, min_size=1, max_size=4).filter(any))
@settings(max_examples=300, deadline=None)
def test_content_reduce_normal_form(v):
    g, sigma = content_reduce(v)
    assert g == content(v) > 0
    assert sigma(tuple(v)) == (g,) + (0,) * (len(v) - 1)
    assert abs(sigma.det) == 1


@given(st.lists(small, min_size=2, max_size=2), st.lists(small, min_size=2, max_size=2))
@settings(max_examples=200, deadline=None)
def test_inverse_unimodular(r1, r2):
    rows = [r1, r2]
    if abs(determinant(rows)) != 1:
        return
    inv = inverse_unimodular(rows)
    A = ModuleAutomorphism(rows)
    assert A.compose(ModuleAutomorphism(inv)).matrix == ModuleAutomorphism.identity(2).matrix
