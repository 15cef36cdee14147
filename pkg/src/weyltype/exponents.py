"""The exponent lattice: a free Z-module of rank r embedded in the scalars."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .linalg import rank
from .scalars import RATIONALS, Scalar, ScalarField


class ExponentError(ValueError):
    pass


@dataclass(frozen=True)
class ExponentModule:
    """Z^r together with field values of its basis vectors.

    ``unit`` is the coordinate vector that embeds to 1 (the exponent of
    ``x`` itself).  Q-linear independence of the embeddings is checked when
    they lie in the algebraic part of the field and taken on trust otherwise.
    """

    rank: int
    embeddings: tuple
    unit: tuple
    field: ScalarField = RATIONALS

    def __post_init__(self):
        if self.rank < 1:
            raise ExponentError("rank must be at least 1")
        emb = tuple(self.field.coerce(e) for e in self.embeddings)
        object.__setattr__(self, "embeddings", emb)
        object.__setattr__(self, "unit", tuple(int(u) for u in self.unit))
        if len(emb) != self.rank or len(self.unit) != self.rank:
            raise ExponentError("embeddings and unit must have length equal to the rank")
        if self.embed(self.unit) != 1:
            raise ExponentError(f"unit {self.unit} does not embed to 1")
        coords = [_rational_coordinates(e, self.field._zero_exp) for e in emb]
        if None not in coords and rank(coords) < self.rank:
            raise ExponentError("embeddings are linearly dependent over Q")

    @classmethod
    def integers(cls, field=RATIONALS):
        return cls(1, (1,), (1,), field)

    def vec(self, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ExponentError(f"expected {self.rank} coordinates, got {len(coords)}")
        return coords

    def zero(self):
        return (0,) * self.rank

    def embed(self, v):
        total = Fraction(0)
        for c, e in zip(v, self.embeddings):
            if c:
                total = total + c * e
        return total


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(k, v):
    return tuple(k * a for a in v)


def norm1(v):
    return sum(abs(a) for a in v)


# -- unimodular matrices --------------------------------------------------------

def identity(r):
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def matmul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a)))


def apply(matrix, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in matrix)


def determinant(matrix):
    """Exact determinant by fraction-free elimination (Bareiss)."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_unimodular(matrix):
    """Integer inverse of a determinant +-1 matrix (Gauss-Jordan, exact)."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    inv = tuple(tuple(int(x) for x in row[n:]) for row in aug)
    return inv


def _rational_coordinates(value, zero):
    """Coordinates over the power basis of the algebraic constants, or None."""
    if isinstance(value, Scalar):
        if not all(isinstance(c, (int, Fraction)) for c in value.data.values()):
            return None
        return dict(value.data)
    return {zero: Fraction(value)} if value else {}


@dataclass(frozen=True)
class ModuleAutomorphism:
    """An element of GL(r, Z) acting on column vectors."""

    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if any(len(row) != len(m) for row in m):
            raise ExponentError("automorphism matrix must be square")
        if determinant(m) not in (1, -1):
            raise ExponentError(f"matrix {m} is not unimodular")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, r):
        return cls(identity(r))

    @property
    def rank(self):
        return len(self.matrix)

    @property
    def det(self):
        return determinant(self.matrix)

    def __call__(self, v):
        return apply(self.matrix, v)

    def compose(self, other):
        """``self`` after ``other``."""
        return ModuleAutomorphism(matmul(self.matrix, other.matrix))

    def inverse(self):
        return ModuleAutomorphism(inverse_unimodular(self.matrix))


def _egcd(a, b):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def content(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def content_reduce(v):
    """Return ``(g, sigma)`` with ``sigma(v) == (g, 0, ..., 0)`` and g = gcd > 0."""
    v = tuple(int(a) for a in v)
    r = len(v)
    if not any(v):
        raise ExponentError("exponent must be nonzero")
    current = identity(r)
    w = v
    if w[0] == 0:
        k = next(i for i, a in enumerate(w) if a)
        perm = [list(row) for row in identity(r)]
        perm[0], perm[k] = perm[k], perm[0]
        perm = tuple(tuple(row) for row in perm)
        current = matmul(perm, current)
        w = apply(perm, w)
    for i in range(1, r):
        if w[i] == 0:
            continue
        a, b = w[0], w[i]
        g, x, y = _egcd(a, b)
        step = [list(row) for row in identity(r)]
        step[0][0], step[0][i] = x, y
        step[i][0], step[i][i] = -b // g, a // g
        step = tuple(tuple(row) for row in step)
        current = matmul(step, current)
        w = apply(step, w)
    if w[0] < 0:
        flip = [list(row) for row in identity(r)]
        flip[0][0] = -1
        flip = tuple(tuple(row) for row in flip)
        current = matmul(flip, current)
        w = apply(flip, w)
    sigma = ModuleAutomorphism(current)
    assert sigma(v) == (w[0],) + (0,) * (r - 1)
    return w[0], sigma
