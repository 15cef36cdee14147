"""The Jordan product corrected by a bilinear form: a * b = (ab + ba)/2 + kappa(a, b)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.core import AlgebraError, Element
from .growth import GrowthTable, GeneratingSubspace
from .linalg import Echelon, combine, kernel

HALF = Fraction(1, 2)
ALL = "all"
LEFT_NORMED = "left_normed"


class NonAssocError(ValueError):
    pass


class KappaForm:
    """A bilinear form given by a finite table on pairs of monomial keys."""

    def __init__(self, table=None, description="table"):
        self.table = {pair: c for pair, c in (table or {}).items() if c != 0}
        self.description = description

    @classmethod
    def zero(cls):
        return cls({}, "zero")

    @classmethod
    def default(cls, P, seed=None):
        """+1 on seed pairs in canonical order, -1 on reversed pairs."""
        if seed is None:
            seed = [P.one()] + P.generators()
        keys = []
        for e in seed:
            e = P.element(e)
            if len(e.terms) != 1 or next(iter(e.terms.values())) != 1:
                raise NonAssocError(f"seed element {e} is not a monomial")
            k = next(iter(e.terms))
            if k not in keys:
                keys.append(k)
        keys.sort(key=P.sort_key)
        table = {}
        for i, a in enumerate(keys):
            for b in keys[i + 1:]:
                table[(a, b)] = Fraction(1)
                table[(b, a)] = Fraction(-1)
        form = cls(table, "default")
        form.seed = keys
        return form

    def __call__(self, a: Element, b: Element):
        total = Fraction(0)
        if not self.table:
            return total
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                v = self.table.get((ka, kb))
                if v is not None:
                    total = total + ca * cb * v
        return total

    def is_symmetric(self):
        return all(self.table.get((b, a), 0) == c for (a, b), c in self.table.items())


class NAAlgebra:
    def __init__(self, P, kappa=None):
        self.P = P
        self.kappa = kappa if kappa is not None else KappaForm.zero()

    def multiply(self, a, b):
        P = self.P
        a, b = P.element(a), P.element(b)
        sym = (P.multiply(a, b) + P.multiply(b, a)) * HALF
        k = self.kappa(a, b)
        return sym + k if k != 0 else sym

    __call__ = multiply


def na_multiply(a, b, N: NAAlgebra):
    return N.multiply(a, b)


# -- center superset -------------------------------------------------------------

@dataclass
class NACenterResult:
    basis: list
    candidates: int
    tests: int
    constraints_used: int
    certified_zero: bool

    def lines(self):
        if self.certified_zero:
            head = "superset = {0}: the truncated center is trivial"
        else:
            head = f"superset has dimension {len(self.basis)}"
        out = [head, f"candidates: {self.candidates}, test monomials: {self.tests}, "
                     f"constraint batches used: {self.constraints_used}"]
        out += [f"  {b}" for b in self.basis]
        return out


def _restrict(basis, images):
    """Kernel of z -> images(z) within span(basis); returns new basis coefficient dicts."""
    rels = kernel(images)
    return [combine(rel, basis) for rel in rels]


def na_center_superset(N: NAAlgebra, d_candidates=3, d_tests=3, chunk=8):
    """Candidates z of degree <= d_candidates with z*n = n*z and (z*n)*m = z*(n*m)
    for all test monomials n, m of degree <= d_tests.

    Constraints are applied in small batches in canonical order of (n, m), and
    the computation stops as soon as the solution space is zero.
    """
    if d_candidates < 0 or d_tests < 0:
        raise NonAssocError("bounds must be nonnegative")
    P = N.P
    cand_keys = P.monomials_up_to(d_candidates)
    test_elems = [P.monomial(k) for k in P.monomials_up_to(d_tests)]
    # basis vectors are coefficient dicts over candidate keys
    basis = [{k: Fraction(1)} for k in cand_keys]
    used = 0

    def elem(vec):
        return Element(P, vec)

    def batches():
        for n in test_elems:
            yield n, None
            for start in range(0, len(test_elems), chunk):
                yield n, test_elems[start:start + chunk]

    for n, ms in batches():
        if not basis:
            break
        images = []
        for z in (elem(v) for v in basis):
            col = {}
            if ms is None:
                comm = N.kappa(z, n) - N.kappa(n, z)
                if comm != 0:
                    col[("comm",)] = comm
            else:
                zn = N.multiply(z, n)
                for mi, m in enumerate(ms):
                    diff = N.multiply(zn, m) - N.multiply(z, N.multiply(n, m))
                    for k, c in diff.terms.items():
                        col[(mi, P.sort_key(k), k)] = c
            images.append(col)
        basis = _restrict(basis, images)
        used += 1
    result = [elem(v) for v in basis]
    return NACenterResult(result, len(cand_keys), len(test_elems), used, not result)


# -- flexibility ------------------------------------------------------------------

@dataclass
class FlexibilityReport:
    pairs: int
    witnesses: list = field(default_factory=list)

    @property
    def flexible(self):
        return not self.witnesses

    def lines(self):
        out = [f"pairs checked: {self.pairs}, nonzero: {len(self.witnesses)}"]
        for a, b, v in self.witnesses:
            out.append(f"  a={a}, b={b}: (a*b)*a - a*(b*a) = {v}")
        return out


def flexibility_defect(N, a, b):
    return N.multiply(N.multiply(a, b), a) - N.multiply(a, N.multiply(b, a))


def flexibility_report(N: NAAlgebra, sample_degree=2, pairs=None):
    P = N.P
    if pairs is None:
        monos = [P.monomial(k) for k in P.monomials_up_to(sample_degree)]
        pairs = [(a, b) for a in monos for b in monos]
    else:
        pairs = [(P.element(a), P.element(b)) for a, b in pairs]
    report = FlexibilityReport(len(pairs))
    for a, b in pairs:
        v = flexibility_defect(N, a, b)
        if v:
            report.witnesses.append((a, b, v))
    return report


# -- injectivity ----------------------------------------------------------------------

@dataclass
class InjectivityVerdict:
    injective: bool
    rank: int
    candidates: int
    kernel: list = field(default_factory=list)

    def lines(self):
        verdict = "injective on truncation" if self.injective else "NOT injective"
        out = [f"{verdict}: rank {self.rank} of {self.candidates}"]
        out += [f"  kernel element: {k}" for k in self.kernel]
        return out


def left_mult_injectivity(u, N: NAAlgebra, d=3):
    """Rank of v -> u * v on candidates of degree <= d."""
    P = N.P
    u = P.element(u)
    if not u:
        raise NonAssocError("u must be nonzero")
    keys = P.monomials_up_to(d)
    images = []
    for k in keys:
        img = N.multiply(u, P.monomial(k))
        images.append({(P.sort_key(kk), kk): c for kk, c in img.terms.items()})
    rels = kernel(images)
    ker = [Element(P, {keys[i]: c for i, c in rel.items()}) for rel in rels]
    return InjectivityVerdict(not ker, len(keys) - len(ker), len(keys), ker)


# -- growth ---------------------------------------------------------------------------

def na_growth_table(N: NAAlgebra, V=None, n_max=4, bracketing=ALL, cap=200_000):
    """dim of the span of all products of at most n factors from V."""
    if bracketing not in (ALL, LEFT_NORMED):
        raise NonAssocError(f"unknown bracketing {bracketing!r}")
    if bracketing == ALL and n_max > 6:
        raise NonAssocError("all-bracketings growth is limited to n_max <= 6")
    P = N.P
    V = GeneratingSubspace(V if V is not None else P.default_subspace(), P)
    total = Echelon()
    # exact[k] holds a basis of the span of products with exactly k factors
    exact = {1: []}
    ech1 = Echelon()
    for v in V:
        if ech1.insert(v.terms):
            exact[1].append(v)
        total.insert(v.terms)
    dims = [total.rank]
    seen = 0
    truncated = False
    for k in range(2, n_max + 1):
        ech = Echelon()
        layer = []
        splits = [(i, k - i) for i in range(1, k)] if bracketing == ALL else [(k - 1, 1)]
        for i, j in splits:
            for a in exact[i]:
                for b in exact[j]:
                    prod = N.multiply(a, b)
                    seen += 1
                    if ech.insert(prod.terms):
                        layer.append(prod)
                        total.insert(prod.terms)
            if seen > cap:
                truncated = True
                break
        exact[k] = layer
        if truncated:
            break
        dims.append(total.rank)
    return GrowthTable(dims, n_max, V.fingerprint(), f"na:{bracketing}", truncated)


__all__ = [
    "ALL", "AlgebraError", "FlexibilityReport", "InjectivityVerdict", "KappaForm",
    "LEFT_NORMED", "NACenterResult", "NAAlgebra", "NonAssocError", "flexibility_defect",
    "flexibility_report", "left_mult_injectivity", "na_center_superset", "na_growth_table",
    "na_multiply",
]
