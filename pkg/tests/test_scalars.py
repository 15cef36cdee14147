from fractions import Fraction

import pytest

from weyltype._text import ParseError
from weyltype.scalars import (ALGEBRAIC, ConstantSpec, RATIONALS, Scalar, ScalarError,
                              ScalarField, UndeclaredDerivativeError, hyperbolic_constants)


@pytest.fixture
def theta_field():
    return ScalarField([ConstantSpec("theta", ALGEBRAIC, ("-2", "0", "1"), "0")])


def test_rationals_parse_to_fractions():
    assert RATIONALS.parse("3/4") == Fraction(3, 4)
    assert RATIONALS.parse("-(1/2)^3 + 1") == Fraction(7, 8)
    assert isinstance(RATIONALS.parse("6/3"), Fraction)


def test_parse_error_reports_column():
    with pytest.raises(ParseError) as info:
        RATIONALS.parse("1 + * 2")
    assert info.value.column == 5


def test_unknown_constant_is_rejected():
    with pytest.raises(ParseError):
        RATIONALS.parse("q + 1")


def test_algebraic_reduction(theta_field):
    th = theta_field.constant("theta")
    assert th * th == 2
    assert isinstance(th * th, Fraction)
    assert (1 + th) * (1 - th) == -1
    assert 1 / th == th / 2


def test_transcendental_arithmetic_is_exact():
    F = hyperbolic_constants()
    s, c = F.constant("s"), F.constant("c")
    q = (s + c) / (s - c)
    assert q * (s - c) == s + c
    assert isinstance(q, Scalar)
    assert s / s == 1


def test_t_derivative_follows_declarations():
    F = hyperbolic_constants()
    s, c = F.constant("s"), F.constant("c")
    assert F.t_derivative(s) == c
    assert F.t_derivative(c) == s
    assert F.t_derivative(s * c) == s * s + c * c
    assert F.t_derivative(Fraction(5)) == 0


def test_undeclared_derivative_raises():
    F = ScalarField([ConstantSpec("u")])
    with pytest.raises(UndeclaredDerivativeError):
        F.t_derivative(F.constant("u"))


def test_specialization_checks_relations():
    F = hyperbolic_constants()
    assert F.check_relations({"s": "3/4", "c": "5/4"})
    assert not F.check_relations({"s": "1/2", "c": "1/2"})
    with pytest.raises(ScalarError):
        F.specialize({"s": "1/2", "c": "1/2"})
    _, sub = F.specialize({"s": "3/4", "c": "5/4"})
    assert sub(F.parse("s*c + 1")) == Fraction(31, 16)


def test_non_monic_minpoly_rejected():
    with pytest.raises(ScalarError):
        ScalarField([ConstantSpec("a", ALGEBRAIC, ("1", "2"))])


def test_mixed_fields_do_not_combine(theta_field):
    F = hyperbolic_constants()
    with pytest.raises(ScalarError):
        F.constant("s") + theta_field.constant("theta")


def test_format_round_trips(theta_field):
    F = hyperbolic_constants()
    for text in ("s^2/c", "3/4*s - 1", "c"):
        a = F.parse(text)
        assert F.parse(str(a)) == a
    a = theta_field.parse("1/3 + 2*theta")
    assert theta_field.parse(str(a)) == a
