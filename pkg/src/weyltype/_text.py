"""Tokenizer and recursive-descent parsers for scalar and element strings.

Element grammar::

    element := ["+"|"-"] term (("+"|"-") term)*
    term    := item (("*"|"/") item)*
    item    := number | constant ["^" int] | "(" scalar-expr ")"
             | name ["^" int] | name "^" "(" int ("," int)* ")"

Which names are constants (scalars) and which are algebra factors is decided
by the caller through ``is_constant``.
"""

from __future__ import annotations

import re
from fractions import Fraction

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))"
)


class ParseError(ValueError):
    """Malformed scalar or element string; ``column`` is 1-based."""

    def __init__(self, message, text="", column=None):
        self.text = text
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}: {text!r}")


def tokenize(text):
    tokens = []
    pos = 0
    text_len = len(text)
    while pos < text_len:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError("unexpected character", text, col)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start + 1))
        pos = m.end()
    tokens.append(("end", "", text_len + 1))
    return tokens


class _Cursor:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, value):
        if self.peek()[1] == value and self.peek()[0] == "op":
            self.i += 1
            return True
        return False

    def expect(self, value):
        tok = self.next()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}", self.text, tok[2])
        return tok

    def error(self, message):
        raise ParseError(message, self.text, self.peek()[2])


def _parse_int(cur):
    sign = -1 if cur.accept("-") else 1
    kind, value, col = cur.next()
    if kind != "num":
        raise ParseError("expected integer", cur.text, col)
    return sign * int(value)


# -- scalar expressions -------------------------------------------------------

def parse_scalar(text, constant):
    """Evaluate a scalar expression; ``constant(name)`` returns its value."""
    cur = _Cursor(text)
    value = _scalar_sum(cur, constant)
    if cur.peek()[0] != "end":
        cur.error("trailing input")
    return value


def _scalar_sum(cur, constant):
    if cur.accept("-"):
        value = -_scalar_product(cur, constant)
    else:
        cur.accept("+")
        value = _scalar_product(cur, constant)
    while True:
        if cur.accept("+"):
            value = value + _scalar_product(cur, constant)
        elif cur.accept("-"):
            value = value - _scalar_product(cur, constant)
        else:
            return value


def _scalar_product(cur, constant):
    value = _scalar_power(cur, constant)
    while True:
        if cur.accept("*"):
            value = value * _scalar_power(cur, constant)
        elif cur.accept("/"):
            col = cur.peek()[2]
            divisor = _scalar_power(cur, constant)
            if divisor == 0:
                raise ParseError("division by zero", cur.text, col)
            value = value / divisor
        else:
            return value


def _scalar_power(cur, constant):
    base = _scalar_atom(cur, constant)
    if cur.accept("^"):
        exp = _parse_int(cur)
        if exp < 0:
            return 1 / base ** (-exp)
        return base ** exp
    return base


def _scalar_atom(cur, constant):
    kind, value, col = cur.next()
    if kind == "num":
        return Fraction(int(value))
    if kind == "name":
        try:
            return constant(value)
        except KeyError:
            raise ParseError(f"unknown constant {value!r}", cur.text, col) from None
    if value == "(":
        inner = _scalar_sum(cur, constant)
        cur.expect(")")
        return inner
    if value == "-":
        return -_scalar_atom(cur, constant)
    raise ParseError("expected scalar", cur.text, col)


# -- elements -------------------------------------------------------------------

def parse_terms(text, is_constant, constant):
    """Parse an element string into ``[(coeff, [(name, exponent), ...]), ...]``.

    ``exponent`` is an ``int`` or, for the ``name^(a,b,...)`` form, a tuple.
    """
    cur = _Cursor(text)
    terms = []
    sign = 1
    if cur.accept("-"):
        sign = -1
    else:
        cur.accept("+")
    while True:
        coeff, factors = _term(cur, is_constant, constant)
        terms.append((sign * coeff, factors))
        if cur.accept("+"):
            sign = 1
        elif cur.accept("-"):
            sign = -1
        elif cur.peek()[0] == "end":
            return terms
        else:
            cur.error("expected '+', '-' or end of input")


def _term(cur, is_constant, constant):
    coeff = Fraction(1)
    factors = []
    first = True
    while True:
        if not first:
            if cur.accept("*"):
                divide = False
            elif cur.accept("/"):
                divide = True
            else:
                return coeff, factors
        else:
            divide = False
        first = False
        kind, value, col = cur.peek()
        if kind == "num" or value == "(" or (kind == "name" and is_constant(value)):
            s = _scalar_power(cur, constant)
            if divide:
                if s == 0:
                    raise ParseError("division by zero", cur.text, col)
                coeff = coeff / s
            else:
                coeff = coeff * s
            continue
        if divide:
            raise ParseError("only scalars may follow '/'", cur.text, col)
        if kind != "name":
            raise ParseError("expected factor", cur.text, col)
        cur.next()
        exponent = 1
        if cur.accept("^"):
            if cur.accept("("):
                coords = [_parse_int(cur)]
                while cur.accept(","):
                    coords.append(_parse_int(cur))
                cur.expect(")")
                exponent = tuple(coords)
            else:
                exponent = _parse_int(cur)
        factors.append((value, exponent))
