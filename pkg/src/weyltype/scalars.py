"""Exact coefficient fields: the rationals extended by named constants.

A :class:`ScalarField` is a tower over Q.  Transcendental constants generate a
rational function field (backed by :mod:`sympy.polys.fields`, which keeps
fractions reduced); algebraic constants are adjoined through monic minimal
polynomials with rational coefficients and are reduced eagerly, so every value
has a unique normal form.

Values that happen to be rational are returned as :class:`fractions.Fraction`;
everything else is a :class:`Scalar`.  Both support the usual operators and
may be mixed freely.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from sympy import QQ
from sympy.polys.fields import field as frac_field

from ._text import parse_scalar

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

TRANSCENDENTAL = "transcendental"
ALGEBRAIC = "algebraic"


class ScalarError(ArithmeticError):
    pass


class UndeclaredDerivativeError(ScalarError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"constant {name!r} has no declared t-derivative")


@dataclass(frozen=True)
class ConstantSpec:
    """A named constant.

    ``minpoly`` lists rational coefficients from the constant term upwards and
    must be monic.  ``t_derivative`` names the constant that is this one's
    derivative in t, or ``"0"`` for a t-independent constant; ``None`` leaves
    it undeclared.
    """

    name: str
    kind: str = TRANSCENDENTAL
    minpoly: tuple = ()
    t_derivative: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "minpoly", tuple(Fraction(c) for c in self.minpoly))


def as_fraction(value):
    """Convert ints, Fractions, gmpy/sympy rationals to ``Fraction``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    num = getattr(value, "numerator", None)
    den = getattr(value, "denominator", None)
    if num is not None and den is not None:
        return Fraction(int(num), int(den))
    raise TypeError(f"not a rational value: {value!r}")


def _ground(k):
    if hasattr(k, "numer"):
        if k.numer == 0:
            return Fraction(0)
        return as_fraction(k.numer.LC) / as_fraction(k.denom.LC)
    return as_fraction(k)


def _kstr(k):
    return str(k).replace("**", "^")


def _wrap(text):
    body = text[1:] if text.startswith("-") else text
    if any(ch in body for ch in "+-/ "):
        return f"({text})"
    return text


def is_rational(value):
    return isinstance(value, (int, Fraction))


class ScalarField:
    """Q(transcendentals)[algebraics] with a formal t-derivation."""

    def __init__(self, constants=(), relations=()):
        self.constants = tuple(constants)
        names = [c.name for c in self.constants]
        if len(set(names)) != len(names):
            raise ScalarError("constant names must be unique")
        for spec in self.constants:
            if not _NAME.match(spec.name):
                raise ScalarError(f"invalid constant name {spec.name!r}")
            if spec.kind not in (TRANSCENDENTAL, ALGEBRAIC):
                raise ScalarError(f"unknown constant kind {spec.kind!r}")
            if spec.kind == ALGEBRAIC:
                if len(spec.minpoly) < 2 or spec.minpoly[-1] != 1:
                    raise ScalarError(
                        f"minimal polynomial of {spec.name!r} must be monic of degree >= 1")
                if spec.t_derivative not in (None, "0"):
                    raise ScalarError(
                        f"algebraic constant {spec.name!r} is t-independent; "
                        "its derivative must be 0")
            elif spec.t_derivative not in (None, "0") and spec.t_derivative not in names:
                raise ScalarError(
                    f"t-derivative {spec.t_derivative!r} of {spec.name!r} is not declared")

        self.transcendentals = [c.name for c in self.constants if c.kind == TRANSCENDENTAL]
        self.algebraics = [c for c in self.constants if c.kind == ALGEBRAIC]
        self._spec = {c.name: c for c in self.constants}
        if self.transcendentals:
            built = frac_field(",".join(self.transcendentals), QQ)
            self._K = built[0]
            self._kgens = dict(zip(self.transcendentals, built[1:]))
        else:
            self._K = None
            self._kgens = {}
        self._degrees = tuple(len(a.minpoly) - 1 for a in self.algebraics)
        self._zero_exp = (0,) * len(self.algebraics)
        self._basis = list(itertools.product(*(range(d) for d in self._degrees)))
        # powers theta^e for e < 2d-1 written in the basis 1..theta^(d-1)
        self._power_tables = [self._power_table(a) for a in self.algebraics]
        self.relations = tuple(self.parse(r) if isinstance(r, str) else r for r in relations)

    @staticmethod
    def _power_table(spec):
        d = len(spec.minpoly) - 1
        table = []
        for e in range(2 * d - 1):
            if e < d:
                vec = [Fraction(0)] * d
                vec[e] = Fraction(1)
            else:
                prev = table[e - 1]
                vec = [Fraction(0)] + prev[:-1]
                top = prev[-1]
                if top:
                    for k in range(d):
                        vec[k] -= top * spec.minpoly[k]
            table.append(vec)
        return table

    # -- construction -------------------------------------------------------

    @property
    def is_rational(self):
        return not self.constants

    def constant(self, name):
        if name not in self._spec:
            raise KeyError(name)
        spec = self._spec[name]
        if spec.kind == TRANSCENDENTAL:
            return Scalar(self, {self._zero_exp: self._kgens[name]})
        idx = self.algebraics.index(spec)
        exp = tuple(1 if i == idx else 0 for i in range(len(self.algebraics)))
        if self._degrees[idx] == 1:
            return self._make({self._zero_exp: -spec.minpoly[0]})
        return self._make({exp: Fraction(1)})

    def parse(self, text):
        """Evaluate a scalar string such as ``"3/4"``, ``"1 + theta"``, ``"s^2/c"``."""
        return parse_scalar(str(text), self.constant)

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field is not self:
                raise ScalarError("scalars from different fields")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return as_fraction(value)

    def _make(self, data):
        data = {e: c for e, c in data.items() if c != 0}
        if not data:
            return Fraction(0)
        if len(data) == 1 and self._zero_exp in data:
            c = data[self._zero_exp]
            if isinstance(c, (int, Fraction)):
                return Fraction(c)
            if c.numer.is_ground and c.denom.is_ground:
                return _ground(c)
        return Scalar(self, data)

    def _data(self, value):
        if isinstance(value, Scalar):
            if value.field is not self:
                raise ScalarError("scalars from different fields")
            return value.data
        value = as_fraction(value)
        return {self._zero_exp: value} if value else {}

    # -- arithmetic ------------------------------------------------------------

    def add(self, a, b):
        out = dict(self._data(a))
        for e, c in self._data(b).items():
            out[e] = out.get(e, 0) + c
        return self._make(out)

    def neg(self, a):
        return self._make({e: -c for e, c in self._data(a).items()})

    def mul(self, a, b):
        da, db = self._data(a), self._data(b)
        out = {}
        for ea, ca in da.items():
            for eb, cb in db.items():
                prod = ca * cb
                for e, w in self._reduce_exponent(tuple(x + y for x, y in zip(ea, eb))):
                    out[e] = out.get(e, 0) + prod * w
        return self._make(out)

    def _reduce_exponent(self, exp):
        if all(x < d for x, d in zip(exp, self._degrees)):
            return [(exp, 1)]
        per_coord = []
        for x, table in zip(exp, self._power_tables):
            per_coord.append([(k, w) for k, w in enumerate(table[x]) if w])
        result = []
        for combo in itertools.product(*per_coord):
            w = Fraction(1)
            for _, wk in combo:
                w *= wk
            result.append((tuple(k for k, _ in combo), w))
        return result

    def inv(self, a):
        data = self._data(a)
        if not data:
            raise ZeroDivisionError("division by zero scalar")
        if list(data) == [self._zero_exp]:
            return self._make({self._zero_exp: 1 / data[self._zero_exp]})
        # solve a*b = 1 in the basis of algebraic monomials, over Q(transcendentals)
        n = len(self._basis)
        index = {e: i for i, e in enumerate(self._basis)}
        cols = []
        for e in self._basis:
            prod = self._data(self.mul(a, self._make({e: Fraction(1)})))
            cols.append(prod)
        rows = [[cols[j].get(self._basis[i], 0) for j in range(n)] + [1 if i == index[self._zero_exp] else 0]
                for i in range(n)]
        solution = _solve_dense(rows, n)
        if solution is None:
            raise ScalarError(
                "element is not invertible; the declared minimal polynomials are reducible")
        return self._make({self._basis[i]: solution[i] for i in range(n)})

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, k):
        if k < 0:
            return self.power(self.inv(a), -k)
        result = Fraction(1)
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    # -- derivation and evaluation ------------------------------------------

    def _mentions(self, c, i):
        return c.numer.degree(i) > 0 or c.denom.degree(i) > 0

    def t_derivative(self, a):
        """Apply the formal derivation d/dt (constants map to declared derivatives)."""
        out = {}
        for e, c in self._data(a).items():
            if isinstance(c, (int, Fraction)):
                continue
            for i, name in enumerate(self.transcendentals):
                if not self._mentions(c, i):
                    continue
                target = self._spec[name].t_derivative
                if target is None:
                    raise UndeclaredDerivativeError(name)
                if target == "0":
                    continue
                partial = c.diff(self._kgens[name])
                for e2, c2 in self._data(self.constant(target)).items():
                    key = tuple(x + y for x, y in zip(e, e2))
                    for e3, w in self._reduce_exponent(key):
                        out[e3] = out.get(e3, 0) + partial * c2 * w
        return self._make(out)

    def evaluate(self, a, values):
        """Substitute rationals for every constant occurring in ``a``."""
        values = {k: as_fraction(v) for k, v in values.items()}
        total = Fraction(0)
        for e, c in self._data(a).items():
            if isinstance(c, (int, Fraction)):
                term = Fraction(c)
            else:
                subs = []
                for i, name in enumerate(self.transcendentals):
                    if self._mentions(c, i):
                        if name not in values:
                            raise ScalarError(f"no value given for {name!r}")
                        v = values[name]
                        subs.append((self._kgens[name], QQ(v.numerator, v.denominator)))
                term = _ground(c.subs(subs))
            for x, spec in zip(e, self.algebraics):
                if x:
                    if spec.name not in values:
                        raise ScalarError(f"no value given for {spec.name!r}")
                    term *= values[spec.name] ** x
            total += term
        return total

    def specialize(self, values):
        """Return ``(field, substitute)`` replacing the given constants by rationals.

        Declared relations and minimal polynomials are verified at the values.
        """
        values = {k: as_fraction(v) for k, v in values.items()}
        for name in values:
            if name not in self._spec:
                raise ScalarError(f"unknown constant {name!r}")
        for spec in self.algebraics:
            if spec.name in values:
                x = values[spec.name]
                if sum(c * x ** k for k, c in enumerate(spec.minpoly)) != 0:
                    raise ScalarError(f"{spec.name} = {x} is not a root of its minimal polynomial")
        remaining = [c for c in self.constants if c.name not in values]
        for spec in remaining:
            if spec.t_derivative in values:
                raise ScalarError(
                    f"cannot specialize {spec.t_derivative!r}: it is the t-derivative of {spec.name!r}")
        if remaining:
            raise ScalarError("partial specialization is not supported; give every constant a value")
        for rel in self.relations:
            if self.evaluate(rel, values) != 0:
                raise ScalarError(f"relation {rel} = 0 fails at {values}")
        target = ScalarField()

        def substitute(a):
            return self.evaluate(a, values)

        return target, substitute

    def check_relations(self, values):
        return all(self.evaluate(rel, values) == 0 for rel in self.relations)

    def format(self, a):
        if not isinstance(a, Scalar):
            return str(as_fraction(a))
        parts = []
        for e in sorted(a.data, reverse=True):
            cs = _kstr(a.data[e])
            mono = "*".join(
                spec.name if x == 1 else f"{spec.name}^{x}"
                for spec, x in zip(self.algebraics, e) if x)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{_wrap(cs)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ScalarField({[c.name for c in self.constants]})"


def _solve_dense(rows, n):
    """Gaussian elimination on an n x (n+1) augmented matrix; None if singular."""
    rows = [list(r) for r in rows]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


class Scalar:
    """A non-rational element of a :class:`ScalarField` (immutable)."""

    __slots__ = ("field", "data")

    def __init__(self, field, data):
        self.field = field
        self.data = data

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ScalarError("scalars from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return other
        if hasattr(other, "numerator") and hasattr(other, "denominator"):
            return as_fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.field.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.field.add(self, self.field.neg(other))

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.field.add(other, self.field.neg(self))

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.field.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.field.div(self, other)

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.field.div(other, self)

    def __neg__(self):
        return self.field.neg(self)

    def __pos__(self):
        return self

    def __pow__(self, k):
        return self.field.power(self, int(k))

    def __eq__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return False
        diff = self.field.add(self, self.field.neg(other))
        return isinstance(diff, Fraction) and diff == 0

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(tuple(sorted((e, str(c)) for e, c in self.data.items())))

    def __bool__(self):
        return bool(self.data)

    def __str__(self):
        return self.field.format(self)

    def __repr__(self):
        return f"Scalar({self.field.format(self)})"


RATIONALS = ScalarField()


def hyperbolic_constants(with_relation=True):
    """The field Q(s, c) with s' = c, c' = s (s = sinh t, c = cosh t)."""
    constants = [
        ConstantSpec("s", TRANSCENDENTAL, t_derivative="c"),
        ConstantSpec("c", TRANSCENDENTAL, t_derivative="s"),
    ]
    relations = ["c^2 - s^2 - 1"] if with_relation else []
    return ScalarField(constants, relations)


def binomial(n, k):
    return comb(n, k)
