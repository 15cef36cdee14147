"""Bounded-degree centralizers and the center check for the Weyl-type family."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.core import Element
from .algebra.weyltype import CENTRAL, WeylTypePresentation
from .linalg import Echelon, _div, kernel

DEFAULT_CANDIDATE_CAP = 200_000


class CenterError(ValueError):
    pass


class CapExceeded(CenterError):
    pass


@dataclass
class CentralizerResult:
    degree: int
    basis: list
    candidates: int = 0
    rank: int = 0
    stats: dict = field(default_factory=dict)

    def as_strings(self):
        return [str(b) for b in self.basis]


def _sorted_basis(P, vectors):
    """Echelonize kernel vectors so the printed basis is canonical."""
    ech = Echelon()
    for v in vectors:
        ech.insert(v)
    rows = [vec for vec, _ in ech.rows.values()]
    out = []
    for vec in rows:
        lead = vec[max(vec)]
        out.append(Element(P, {k[1]: _div(c, lead) for k, c in vec.items()}))
    out.sort(key=lambda e: max(P.sort_key(k) for k in e.terms))
    return out


def centralizer_basis(P, d, generators=None, cap=DEFAULT_CANDIDATE_CAP):
    """Basis of {z : deg z <= d, [z, g] = 0 for every generator g}."""
    if d < 0:
        raise CenterError("degree bound must be nonnegative")
    keys = P.monomials_up_to(d)
    if len(keys) > cap:
        raise CapExceeded(f"{len(keys)} candidate monomials exceed the cap {cap}")
    gens = list(generators) if generators is not None else P.generators()
    columns = []
    for key in keys:
        z = P.monomial(key)
        col = {}
        for gi, g in enumerate(gens):
            for k, c in P.commutator(z, g).terms.items():
                col[(gi, P.sort_key(k), k)] = c
        columns.append(col)
    rels = kernel(columns)
    # order index i by the canonical order of its monomial so leading terms are stable
    vectors = [{(P.sort_key(keys[i]), keys[i]): c for i, c in rel.items()} for rel in rels]
    basis = _sorted_basis(P, vectors)
    for z in basis:
        for g in gens:
            if P.commutator(z, g):
                raise CenterError(f"internal error: {z} does not commute with {g}")
    return CentralizerResult(d, basis, len(keys), len(keys) - len(basis),
                             {"generators": len(gens)})


@dataclass
class CenterCheck:
    passed: bool
    reason: str
    basis: list = field(default_factory=list)
    expected: list = field(default_factory=list)

    def lines(self):
        out = [f"{'PASS' if self.passed else 'FAIL'}: {self.reason}"]
        if self.basis:
            out.append("basis: " + ", ".join(str(b) for b in self.basis))
        return out


def weyltype_center_check(P, d):
    """Pass iff the truncated center is span{y^k : |k| <= d} and is bigger than the scalars."""
    if not isinstance(P, WeylTypePresentation) or P.mode != CENTRAL:
        mode = getattr(P, "mode", P.kind)
        return CenterCheck(False, f"mode mismatch: the check needs a central-mode Weyl-type "
                                  f"presentation, got {mode}")
    result = centralizer_basis(P, d)
    expected = [P.monomial(P.key(h=k)) for k in range(-d, d + 1)]
    ech = Echelon()
    for b in result.basis:
        ech.insert(b.terms)
    spans_expected = all(ech.contains(e.terms) for e in expected)
    same_dim = len(result.basis) == len(expected)
    nonscalar = any(not b.is_scalar() for b in result.basis)
    if spans_expected and same_dim and nonscalar:
        reason = (f"center in degree <= {d} is spanned by y^k, |k| <= {d} "
                  f"({len(expected)} elements); strictly larger than the scalars")
        return CenterCheck(True, reason, result.basis, expected)
    if not nonscalar:
        reason = "center is only the scalars"
    else:
        reason = (f"center has dimension {len(result.basis)} in degree <= {d}, "
                  f"expected {len(expected)} powers of y")
    return CenterCheck(False, reason, result.basis, expected)
