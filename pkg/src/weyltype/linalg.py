"""Exact sparse elimination over Q or a :class:`~weyltype.scalars.ScalarField`.

Vectors are dicts ``key -> coefficient`` with comparable keys.  Rows whose
entries are all rational are kept as primitive integer rows and eliminated
without division (cross-multiplication followed by content removal); rows
with symbolic entries are made monic instead.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _rational(c):
    return isinstance(c, (int, Fraction))


def _primitive(vec, tag):
    """Scale an all-rational row to coprime integers with a positive leading entry."""
    den = 1
    for c in vec.values():
        den = lcm(den, Fraction(c).denominator)
    for c in tag.values():
        den = lcm(den, Fraction(c).denominator)
    vec = {k: int(c * den) for k, c in vec.items()}
    tag = {k: int(c * den) for k, c in tag.items()}
    g = 0
    for c in vec.values():
        g = gcd(g, c)
    for c in tag.values():
        g = gcd(g, c)
    lead = vec[max(vec)] if vec else tag[max(tag)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        vec = {k: c // g for k, c in vec.items()}
        tag = {k: c // g for k, c in tag.items()}
    return vec, tag


def _axpy(target, alpha, source):
    """target += alpha * source, dropping zeros (in place)."""
    for k, c in source.items():
        v = target.get(k, 0) + alpha * c
        if v == 0:
            target.pop(k, None)
        else:
            target[k] = v


def _div(a, b):
    if _rational(a) and _rational(b):
        return Fraction(a) / Fraction(b)
    return a / b


def _scale(vec, alpha):
    return {k: alpha * c for k, c in vec.items()}


class Echelon:
    """Incremental row echelon basis; the pivot of a row is its largest key.

    An optional ``tag`` dict rides along with each vector and undergoes the
    same row operations, which is how kernel vectors are recovered.
    """

    def __init__(self):
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec, tag=None):
        vec = {k: c for k, c in vec.items() if c != 0}
        tag = dict(tag or {})
        while vec:
            hits = [k for k in vec if k in self.rows]
            if not hits:
                break
            p = max(hits)
            row, rtag = self.rows[p]
            a = vec[p]
            lead = row[p]
            if _rational(a) and lead == 1:
                _axpy(vec, -a, row)
                _axpy(tag, -a, rtag)
            elif _rational(a) and _rational(lead) and all(_rational(c) for c in vec.values()):
                # fraction-free step: lead*vec - a*row
                vec = _scale(vec, lead)
                tag = _scale(tag, lead)
                _axpy(vec, -a, row)
                _axpy(tag, -a, rtag)
                vec.pop(p, None)
                if vec and all(_rational(c) for c in vec.values()) and \
                        all(_rational(c) for c in tag.values()):
                    vec, tag = _primitive(vec, tag)
            else:
                f = _div(a, lead)
                _axpy(vec, -f, row)
                _axpy(tag, -f, rtag)
                vec.pop(p, None)
        return vec, tag

    def insert(self, vec, tag=None):
        """Add ``vec`` to the span; return True if the rank grew.

        On failure the reduced tag (a relation among inserted tags) is kept in
        :attr:`last_relation`.
        """
        vec, tag = self.reduce(vec, tag)
        if not vec:
            self.last_relation = tag
            return False
        self.last_relation = None
        p = max(vec)
        if all(_rational(c) for c in vec.values()) and all(_rational(c) for c in tag.values()):
            vec, tag = _primitive(vec, tag)
        else:
            inv = _div(1, vec[p])
            vec, tag = _scale(vec, inv), _scale(tag, inv)
            vec[p] = Fraction(1)
        self.rows[p] = (vec, tag)
        return True

    def contains(self, vec):
        return not self.reduce(vec)[0]


def rank(vectors):
    ech = Echelon()
    for v in vectors:
        ech.insert(v)
    return ech.rank


def kernel(columns):
    """Basis of ``{c : sum_i c[i] * columns[i] == 0}`` as dicts ``index -> coeff``.

    ``columns`` is a sequence of sparse vectors (the images of basis vectors).
    """
    ech = Echelon()
    basis = []
    for i, col in enumerate(columns):
        if not ech.insert(col, {i: Fraction(1)}):
            rel = ech.last_relation
            if rel:
                basis.append(_normalize(rel))
    return basis


def _normalize(tag):
    """Scale a kernel vector so that its largest index has coefficient 1."""
    lead = tag[max(tag)]
    if lead == 1:
        return dict(tag)
    inv = _div(1, lead)
    return {k: c * inv for k, c in tag.items()}


def combine(coeffs, vectors):
    """sum coeffs[i] * vectors[i] for sparse vectors."""
    out = {}
    for i, c in coeffs.items():
        _axpy(out, c, vectors[i])
    return out
