"""Growth of filtered spans V^n and the detected GK degree."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.core import AlgebraError, Element
from .algebra.pbw import PBWPresentation, deglex
from .algebra.weyltype import ANALYTIC
from .linalg import Echelon

DEFAULT_CAP = 10 ** 6


class GrowthError(ValueError):
    pass


class GeneratingSubspace:
    """A finite list of elements whose span contains 1 (adjoined if missing)."""

    def __init__(self, elements, P=None, label=""):
        elements = list(elements)
        if not elements and P is None:
            raise GrowthError("a generating subspace needs at least one element")
        self.P = P if P is not None else elements[0].P
        elements = [self.P.element(e) for e in elements]
        for e in elements:
            if e.P is not self.P:
                raise GrowthError("subspace elements belong to different presentations")
        ech = Echelon()
        for e in elements:
            ech.insert(e.terms)
        if not ech.contains(self.P.one().terms):
            elements = [self.P.one()] + elements
        self.elements = elements
        self.label = label

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def fingerprint(self):
        text = "|".join([repr(self.P), self.P.name] + [str(e) for e in self.elements])
        return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class GrowthTable:
    dims: list
    n_max: int
    fingerprint: str = ""
    label: str = ""
    truncated: bool = False
    degenerate: bool = False
    monomials: int = 0

    def rows(self):
        return list(enumerate(self.dims, start=1))

    def to_csv(self):
        lines = ["n,dim"] + [f"{n},{d}" for n, d in self.rows()]
        return "\n".join(lines) + "\n"

    def as_dict(self):
        return {
            "dims": list(self.dims),
            "n_max": self.n_max,
            "fingerprint": self.fingerprint,
            "label": self.label,
            "truncated": self.truncated,
            "degenerate": self.degenerate,
            "monomials": self.monomials,
        }


def _as_subspace(V, P=None):
    if isinstance(V, GeneratingSubspace):
        return V
    return GeneratingSubspace(V, P)


def growth_table(V, n_max=8, cap=DEFAULT_CAP, P=None):
    """dim V^1, ..., dim V^n_max, using V^n = V^(n-1) + N * V with N the new part."""
    V = _as_subspace(V, P)
    if n_max < 1:
        raise GrowthError("n_max must be at least 1")
    gens = [g for g in V if not g.is_scalar()]
    ech = Echelon()
    seen = set()
    new = []
    for v in V:
        seen.update(v.terms)
        if ech.insert(v.terms):
            new.append(v)
    dims = [ech.rank]
    truncated = False
    for _ in range(2, n_max + 1):
        added = []
        for a in new:
            for g in gens:
                prod = a * g
                seen.update(prod.terms)
                if ech.insert(prod.terms):
                    added.append(prod)
            if len(seen) > cap:
                truncated = True
                break
        if truncated:
            break
        new = added
        dims.append(ech.rank)
    return GrowthTable(dims, n_max, V.fingerprint(), V.label, truncated, monomials=len(seen))


# -- modules -------------------------------------------------------------------

class ModuleRules:
    """Rules for a cyclic left module A/J: a normal word ending in ``lhs`` is
    replaced by the same prefix times ``rhs``.  An empty left side means J = A."""

    def __init__(self, P, rules=()):
        if not isinstance(P, PBWPresentation):
            raise GrowthError("module rules need a PBW presentation")
        self.P = P
        self.rules = []
        for lhs, rhs in rules:
            lhs_w = P._word(lhs)
            rhs_d = P._rhs(rhs)
            for w in rhs_d:
                if deglex(w) >= deglex(lhs_w):
                    raise GrowthError(
                        f"module rule on {P.word_label(lhs_w)!r} is not decreasing")
            self.rules.append((lhs_w, rhs_d))

    @property
    def degenerate(self):
        return any(not lhs for lhs, _ in self.rules)

    def reduce(self, terms):
        if self.degenerate:
            return {}
        P = self.P
        terms = dict(terms)
        changed = True
        while changed:
            changed = False
            for w in sorted(terms, key=deglex, reverse=True):
                for lhs, rhs in self.rules:
                    n = len(lhs)
                    if len(w) >= n and w[len(w) - n:] == lhs:
                        c = terms.pop(w)
                        prefix = w[:len(w) - n]
                        for word, a in rhs.items():
                            for v, b in P._times_word({prefix: Fraction(1)}, word).items():
                                val = terms.get(v, 0) + c * a * b
                                if val == 0:
                                    terms.pop(v, None)
                                else:
                                    terms[v] = val
                        changed = True
                        break
                if changed:
                    break
        return terms


def module_growth_table(P, module_rules, V, n_max=8, module_generators=None, cap=DEFAULT_CAP):
    """dim W_n for W_n = span(V^n V_M) inside A/J (V_M defaults to the cyclic generator 1)."""
    rules = module_rules if isinstance(module_rules, ModuleRules) else ModuleRules(P, module_rules)
    V = _as_subspace(V, P)
    if n_max < 1:
        raise GrowthError("n_max must be at least 1")
    if rules.degenerate:
        return GrowthTable([0] * n_max, n_max, V.fingerprint(), V.label, degenerate=True)
    gens = [g for g in V if not g.is_scalar()]
    start = [P.element(m) for m in (module_generators or [P.one()])]
    ech = Echelon()
    seen = set()
    new = []
    for m in start:
        terms = rules.reduce(m.terms)
        if ech.insert(terms):
            new.append(Element(P, terms))
    # W_0 = V_M; W_1 = V V_M
    dims = []
    truncated = False
    for _ in range(1, n_max + 1):
        added = []
        for w in new:
            for g in gens:
                terms = rules.reduce((g * w).terms)
                seen.update(terms)
                if ech.insert(terms):
                    added.append(Element(P, terms))
            if len(seen) > cap:
                truncated = True
                break
        if truncated:
            break
        new = added
        dims.append(ech.rank)
    return GrowthTable(dims, n_max, V.fingerprint(), V.label, truncated,
                       degenerate=ech.rank == 0, monomials=len(seen))


# -- estimates -------------------------------------------------------------------

@dataclass
class GKEstimate:
    value: float
    method: str
    exact: bool
    stabilized: bool
    window: tuple = ()
    local_slope: float = None
    note: str = ""
    polynomial: list = field(default_factory=list)

    def as_dict(self):
        return {
            "value": self.value,
            "method": self.method,
            "exact": self.exact,
            "stabilized": self.stabilized,
            "window": list(self.window),
            "local_slope": self.local_slope,
            "note": self.note,
        }

    def __str__(self):
        flag = "exact" if self.exact else ("stabilized" if self.stabilized else "non-stabilized")
        return f"{self.value} ({self.method}, {flag})"


def differences(seq, k):
    out = list(seq)
    for _ in range(k):
        out = [b - a for a, b in zip(out, out[1:])]
    return out


def _window(dims, window):
    n = len(dims)
    lo, hi = (1, n) if window is None else window
    if lo < 1 or hi > n or lo > hi:
        raise GrowthError(f"window {window} is outside 1..{n}")
    return lo, hi, list(dims[lo - 1:hi])


def gk_estimate(T, method="finite_difference", window=None):
    """Detected polynomial degree over a window (exact), or a log-ratio reading."""
    dims = T.dims if isinstance(T, GrowthTable) else list(T)
    if method not in ("finite_difference", "log_ratio"):
        raise GrowthError(f"unknown method {method!r}")
    if method == "finite_difference":
        lo, hi, seq = _window(dims, window)
        if len(seq) < 4:
            raise GrowthError("finite_difference needs a table of length at least 4")
        for k in range(len(seq) - 1):
            diff = differences(seq, k)
            if len(diff) >= 2 and all(v == diff[0] for v in diff):
                return GKEstimate(k, method, True, True, (lo, hi), _local_slope(dims),
                                  polynomial=newton_coefficients(seq, k))
        est = log_ratio(dims)
        return GKEstimate(est, method, False, False, (lo, hi), _local_slope(dims),
                          note="no constant difference sequence in the window")
    if len(dims) < 2:
        raise GrowthError("log_ratio needs a table of length at least 2")
    return GKEstimate(log_ratio(dims), method, False, False, (1, len(dims)), _local_slope(dims))


def log_ratio(dims):
    n = len(dims)
    if dims[-1] <= 0:
        return 0.0
    return math.log(dims[-1]) / math.log(n) if n > 1 else 0.0


def _local_slope(dims):
    n = len(dims)
    if n < 2 or dims[-1] <= 0 or dims[-2] <= 0:
        return None
    return math.log(dims[-1] / dims[-2]) / math.log(n / (n - 1))


def newton_coefficients(seq, k):
    """Leading forward differences d_0..d_k of ``seq`` (the interpolating polynomial)."""
    return [Fraction(differences(seq, j)[0]) for j in range(k + 1)]


def extrapolate(estimate: GKEstimate, n):
    """Evaluate the detected polynomial at n (n counted like table positions)."""
    lo = estimate.window[0]
    t = n - lo
    total = Fraction(0)
    for j, d in enumerate(estimate.polynomial):
        total += d * math.comb(t, j) if t >= 0 else d * _gen_binom(t, j)
    return total


def _gen_binom(t, j):
    out = Fraction(1)
    for i in range(j):
        out = out * (t - i) / (i + 1)
    return out


def asymptotic_log_slope(estimate: GKEstimate, n=10 ** 9):
    """log(P(2n)/P(n)) / log 2 for the detected polynomial P; tends to its degree."""
    if not estimate.exact:
        raise GrowthError("asymptotic slope needs an exact finite-difference estimate")
    a, b = extrapolate(estimate, n), extrapolate(estimate, 2 * n)
    if a <= 0 or b <= 0:
        return 0.0
    return math.log(b / a) / math.log(2)


def in_dichotomy_set(value, tol=1e-9):
    """True if value lies in {0, 1} or [2, infinity)."""
    return abs(value) < tol or abs(value - 1) < tol or value >= 2 - tol


# -- property suite ------------------------------------------------------------

@dataclass
class PropertyLine:
    name: str
    passed: bool
    measured: dict

    def __str__(self):
        vals = ", ".join(f"{k}={v}" for k, v in self.measured.items())
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {vals}"


def _est(table):
    e = gk_estimate(table, "finite_difference")
    return e.value if e.exact else None


def gk_property_report(n_max=8, presets=None, builtin_n_max=6, analytic_n_max=4,
                       cap=DEFAULT_CAP):
    """Check the GK-dimension properties on the shipped presets.

    The dichotomy line only judges estimates whose differences stabilized in
    the window; the others are listed as not stabilized.
    """
    from . import presets as preset_mod
    from .algebra.constructions import tensor_product

    lines = []

    def load(name):
        return preset_mod.load(name)

    def table(doc, subspace="V", n=n_max):
        return growth_table(doc.subspace(subspace), n, cap)

    so3 = load("so3")
    e1, e2 = _est(table(so3, "V")), _est(table(so3, "V2"))
    lines.append(PropertyLine("invariance", e1 is not None and e1 == e2,
                              {"so3 V": e1, "so3 V2": e2}))

    poly3 = load("poly3")
    a = _est(table(poly3))
    b = _est(growth_table(GeneratingSubspace(["x", "y"], poly3.presentation), n_max, cap))
    lines.append(PropertyLine("subalgebra", None not in (a, b) and b <= a,
                              {"Q[x,y] in Q[x,y,z]": b, "Q[x,y,z]": a}))

    p1, p2 = load("poly1"), load("poly2")
    t = tensor_product(p1.presentation, p2.presentation)
    e_t = _est(growth_table(GeneratingSubspace(t.default_subspace(), t), n_max, cap))
    e_1, e_2 = _est(table(p1)), _est(table(p2))
    weyl = load("weyl")
    ww = tensor_product(weyl.presentation, weyl.presentation)
    e_ww = _est(growth_table(GeneratingSubspace(ww.default_subspace(), ww), n_max, cap))
    e_w = _est(table(weyl))
    ok = None not in (e_t, e_1, e_2, e_ww, e_w) and e_t == e_1 + e_2 and e_ww == 2 * e_w
    lines.append(PropertyLine("additivity", ok, {
        "Q[x](x)Q[y,z]": e_t, "Q[x]": e_1, "Q[y,z]": e_2, "weyl(x)weyl": e_ww, "weyl": e_w}))

    mod = load("module-x2y2")
    mt = module_growth_table(mod.presentation, mod.module_rules, mod.subspace("V"), n_max, cap=cap)
    e_m, e_a = _est(mt), _est(table(mod))
    lines.append(PropertyLine("module bound", None not in (e_m, e_a) and e_m <= e_a,
                              {"M": e_m, "A": e_a}))

    sphere = load("sphere-quotient")
    e_b = _est(table(sphere))
    e_poly = a
    ideal_gen = poly3.presentation.element("x^2 + y^2 + z^2 - 1")
    it = module_growth_table(poly3.presentation, [], poly3.subspace("V"), n_max,
                             module_generators=[ideal_gen], cap=cap)
    e_i = _est(it)
    ok = None not in (e_b, e_poly, e_i) and e_b <= e_poly <= e_i + e_b
    lines.append(PropertyLine("subadditivity", ok, {"B": e_b, "A": e_poly, "I": e_i}))

    ore, solv = load("ore-paper"), load("solvable2")
    e_o, e_s = _est(table(ore)), _est(table(solv))
    lines.append(PropertyLine("ore", None not in (e_o, e_s) and e_o == e_s + 1,
                              {"A[z;sigma,delta]": e_o, "A": e_s}))

    names = presets if presets is not None else preset_mod.names()
    measured, ok = {}, True
    for name in names:
        doc = load(name)
        if not doc.subspaces and doc.presentation is None:
            continue
        n = n_max
        if doc.builtin:
            n = analytic_n_max if doc.presentation.mode == ANALYTIC else builtin_n_max
        est = gk_estimate(growth_table(doc.subspace(doc.default_subspace_name), n, cap))
        if est.exact:
            measured[name] = est.value
            ok = ok and in_dichotomy_set(est.value)
        else:
            measured[name] = "not stabilized"
    lines.append(PropertyLine("dichotomy", ok, measured))
    return lines


__all__ = [
    "AlgebraError", "DEFAULT_CAP", "GKEstimate", "GeneratingSubspace", "GrowthError",
    "GrowthTable", "ModuleRules", "PropertyLine", "asymptotic_log_slope", "differences",
    "extrapolate", "gk_estimate", "gk_property_report", "growth_table", "in_dichotomy_set",
    "log_ratio", "module_growth_table",
]
