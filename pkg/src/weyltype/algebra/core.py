"""Elements and the presentation interface shared by all algebra backends."""

from __future__ import annotations

from fractions import Fraction

from .._text import ParseError, parse_terms
from ..scalars import RATIONALS, Scalar, ScalarField, as_fraction


class AlgebraError(ValueError):
    pass


def _is_scalar(value):
    return isinstance(value, (int, Fraction, Scalar))


class Element:
    """A finite linear combination of canonical monomials (immutable)."""

    __slots__ = ("P", "terms")

    def __init__(self, P, terms=None):
        self.P = P
        self.terms = {k: c for k, c in (terms or {}).items() if c != 0}

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other):
        if other.P is not self.P:
            raise AlgebraError("elements belong to different presentations")

    def _lift(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        if _is_scalar(other):
            return self.P.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Element(self.P, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.P, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return self.P.multiply(self, other)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(1 / other if isinstance(other, Scalar) else 1 / as_fraction(other))
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise AlgebraError("negative powers of elements are not defined")
        result = self.P.one()
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c):
        if c == 0:
            return Element(self.P)
        return Element(self.P, {k: v * c for k, v in self.terms.items()})

    # -- inspection ---------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.P is other.P and self.terms == other.terms
        if _is_scalar(other):
            return self == self.P.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset((k, hash(c)) for k, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Largest monomial degree; -1 for zero."""
        return max((self.P.degree(k) for k in self.terms), default=-1)

    def coefficient(self, key):
        return self.terms.get(key, 0)

    def scalar_part(self):
        return self.terms.get(self.P.one_key, 0)

    def is_scalar(self):
        return all(k == self.P.one_key for k in self.terms)

    def __str__(self):
        return self.P.format(self)

    def __repr__(self):
        return f"Element({self.P.format(self)})"


def format_coefficient(c):
    text = str(c)
    if isinstance(c, Scalar) and not text.isidentifier():
        return f"({text})"
    return text


class Presentation:
    """Common interface; subclasses define monomial keys and products."""

    kind = "abstract"
    one_key = None

    def __init__(self, field: ScalarField = RATIONALS, name=""):
        self.field = field
        self.name = name

    # subclasses provide: multiply_terms, degree, format_key, factor, generator_names,
    # generator_keys, monomials_up_to

    def scalar(self, c):
        c = self.field.coerce(c)
        return Element(self, {self.one_key: c})

    def one(self):
        return self.scalar(1)

    def zero(self):
        return Element(self)

    def monomial(self, key, coeff=1):
        return Element(self, {key: coeff})

    def generators(self):
        return [self.generator(n) for n in self.generator_names()]

    def generator(self, name):
        return self.factor(name, 1)

    def multiply(self, a, b):
        if a.P is not self or b.P is not self:
            raise AlgebraError("elements belong to different presentations")
        out = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                for k, c in self.multiply_terms(ka, ca, kb, cb).items():
                    out[k] = out.get(k, 0) + c
        return Element(self, out)

    def commutator(self, a, b):
        return self.multiply(a, b) - self.multiply(b, a)

    def sort_key(self, key):
        return (self.degree(key), key)

    def format(self, element):
        if not element.terms:
            return "0"
        parts = []
        for key in sorted(element.terms, key=self.sort_key, reverse=True):
            c = element.terms[key]
            mono = self.format_key(key)
            if not mono:
                parts.append(format_coefficient(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_coefficient(c)}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def is_constant_name(self, name):
        return name in self.field._spec

    def element(self, text):
        """Parse an element string in the canonical notation."""
        if isinstance(text, Element):
            return text
        if _is_scalar(text):
            return self.scalar(text)
        terms = parse_terms(str(text), self.is_constant_name, self.field.constant)
        total = self.zero()
        for coeff, factors in terms:
            value = self.scalar(coeff)
            for name, exponent in factors:
                try:
                    value = value * self.factor(name, exponent)
                except AlgebraError as exc:
                    raise ParseError(str(exc), str(text)) from None
            total = total + value
        return total

    def monomial_elements_up_to(self, d):
        return [self.monomial(k) for k in self.monomials_up_to(d)]

    def default_subspace(self):
        return [self.one()] + self.generators()
