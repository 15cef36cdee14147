"""Finitely presented algebras with ordered (PBW) normal forms.

Generators carry a total order g_0 < g_1 < ...  Every descending pair g_j g_i
(j > i) has a swap rule, defaulting to plain commutation; extra reduction
rules with nondecreasing left sides present quotients.  Words are compared
by degree and then lexicographically by generator index (deglex), which is
compatible with concatenation, so a rule set whose right sides are all
deglex-smaller than their left sides terminates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .._text import parse_terms
from ..scalars import RATIONALS
from .core import AlgebraError, Element, Presentation


class TerminationError(AlgebraError):
    pass


def deglex(word):
    return (len(word), word)


def _add_into(out, word, c):
    v = out.get(word, 0) + c
    if v == 0:
        out.pop(word, None)
    else:
        out[word] = v


class PBWPresentation(Presentation):
    kind = "pbw"
    one_key = ()

    def __init__(self, generators, swaps=None, reductions=(), field=RATIONALS, name="",
                 confluence_asserted=False):
        super().__init__(field, name)
        self.gens = list(generators)
        if len(set(self.gens)) != len(self.gens):
            raise AlgebraError("generator names must be unique")
        for g in self.gens:
            if not g.isidentifier():
                raise AlgebraError(f"invalid generator name {g!r}")
            if g in field._spec:
                raise AlgebraError(f"generator {g!r} clashes with a constant")
        self.index = {g: i for i, g in enumerate(self.gens)}
        self.confluence_asserted = confluence_asserted

        # explicit swap rules, keyed by (j, i) with j > i
        self.swaps = {}
        for lhs, rhs in (swaps or {}).items():
            lhs_w = self._word(lhs)
            if len(lhs_w) != 2 or lhs_w[0] <= lhs_w[1]:
                raise AlgebraError(
                    f"swap rule left side {self._word_str(lhs_w)!r} must be a descending pair")
            if lhs_w in self.swaps:
                raise AlgebraError(f"duplicate rule for {self._word_str(lhs_w)!r}")
            self.swaps[lhs_w] = self._rhs(rhs)
        self.reductions = []
        for lhs, rhs in reductions:
            lhs_w = self._word(lhs)
            if any(a > b for a, b in zip(lhs_w, lhs_w[1:])):
                raise AlgebraError(
                    f"reduction left side {self._word_str(lhs_w)!r} must be nondecreasing")
            if any(lhs_w == r[0] for r in self.reductions):
                raise AlgebraError(f"duplicate reduction for {self._word_str(lhs_w)!r}")
            self.reductions.append((lhs_w, self._rhs(rhs)))
        for lhs, rhs in self.rules():
            for w in rhs:
                if deglex(w) >= deglex(lhs):
                    raise TerminationError(
                        f"rule {self._word_str(lhs)} -> ... is not decreasing: right side word "
                        f"{self._word_str(w) or '1'} is not smaller than the left side")
        self._memo = {}
        self._by_last = {}
        for lhs, rhs in self.reductions:
            if lhs:
                self._by_last.setdefault(lhs[-1], []).append((lhs, rhs))

    # -- construction helpers -------------------------------------------------

    def _word(self, spec):
        if isinstance(spec, str):
            spec = [spec] if spec in self.index else spec.split()
        try:
            return tuple(g if isinstance(g, int) else self.index[g] for g in spec)
        except KeyError as exc:
            raise AlgebraError(f"unknown generator {exc.args[0]!r}") from None

    def _rhs(self, rhs):
        """Right sides as {raw word: coeff}; words need not be normal."""
        if isinstance(rhs, Element):
            return dict(rhs.terms)
        if isinstance(rhs, dict):
            return {self._word(w): self.field.coerce(c) for w, c in rhs.items() if c != 0}
        out = {}
        for coeff, factors in parse_terms(str(rhs), self.is_constant_name, self.field.constant):
            word = []
            for name, exp in factors:
                if name not in self.index:
                    raise AlgebraError(f"unknown generator {name!r} in {rhs!r}")
                if isinstance(exp, tuple) or exp < 0:
                    raise AlgebraError(f"invalid exponent on {name!r} in {rhs!r}")
                word.extend([self.index[name]] * exp)
            _add_into(out, tuple(word), coeff)
        return out

    def _word_str(self, word):
        return "".join(self.gens[i] if len(self.gens[i]) == 1 else f"[{self.gens[i]}]"
                       for i in word)

    def word_label(self, word):
        return " ".join(self.gens[i] for i in word)

    def rules(self):
        """All rewriting rules (lhs word, rhs dict), swaps first."""
        out = []
        k = len(self.gens)
        for j in range(k):
            for i in range(j):
                out.append(((j, i), self.swap_rhs(j, i)))
        out.extend(self.reductions)
        return out

    def swap_rhs(self, j, i):
        return self.swaps.get((j, i), {(i, j): Fraction(1)})

    # -- normal forms ------------------------------------------------------------

    def _append(self, w, g):
        """Normal form of (normal word w) * g as {normal word: coeff}."""
        key = (w, g)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if w and w[-1] > g:
            prefix = w[:-1]
            result = {}
            for word, c in self.swap_rhs(w[-1], g).items():
                for v, d in self._times_word({prefix: Fraction(1)}, word).items():
                    _add_into(result, v, c * d)
        else:
            new = w + (g,)
            result = None
            for lhs, rhs in self._by_last.get(g, ()):
                n = len(lhs)
                if new[-n:] == lhs:
                    prefix = new[:-n]
                    result = {}
                    for word, c in rhs.items():
                        for v, d in self._times_word({prefix: Fraction(1)}, word).items():
                            _add_into(result, v, c * d)
                    break
            if result is None:
                result = {new: Fraction(1)}
        self._memo[key] = result
        return result

    def _times_word(self, terms, word):
        current = terms
        for g in word:
            nxt = {}
            for u, c in current.items():
                for v, d in self._append(u, g).items():
                    _add_into(nxt, v, c * d)
            current = nxt
        return current

    def normal_form(self, word):
        return self._times_word({(): Fraction(1)}, self._word(word))

    def reduce_word(self, word):
        """Reduce a word (names, indices, or a space separated string) to normal form."""
        if isinstance(word, str) and word and word not in self.index and " " not in word:
            word = list(word)
        return Element(self, self.normal_form(word))

    # -- Presentation interface ------------------------------------------------

    def multiply_terms(self, ka, ca, kb, cb):
        result = self._times_word({ka: Fraction(1)}, kb)
        c = ca * cb
        return {k: v * c for k, v in result.items()}

    def degree(self, key):
        return len(key)

    def sort_key(self, key):
        return deglex(key)

    def format_key(self, key):
        parts = []
        i = 0
        while i < len(key):
            j = i
            while j < len(key) and key[j] == key[i]:
                j += 1
            name = self.gens[key[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def generator_names(self):
        return list(self.gens)

    def factor(self, name, exponent):
        if name not in self.index:
            raise AlgebraError(f"unknown generator {name!r}")
        if isinstance(exponent, tuple) or exponent < 0:
            raise AlgebraError(f"invalid exponent {exponent!r} on {name!r}")
        return Element(self, self.normal_form([self.index[name]] * exponent))

    def is_normal(self, word):
        if any(a > b for a, b in zip(word, word[1:])):
            return False
        return not any(
            word[k:k + len(lhs)] == lhs
            for lhs, _ in self.reductions for k in range(len(word) - len(lhs) + 1))

    def monomials_up_to(self, d):
        if any(not lhs for lhs, _ in self.reductions):
            return []
        out = [()]
        frontier = [()]
        for _ in range(d):
            nxt = []
            for w in frontier:
                start = w[-1] if w else 0
                for g in range(start, len(self.gens)):
                    v = w + (g,)
                    if self.is_normal(v):
                        nxt.append(v)
            out.extend(nxt)
            frontier = nxt
        return out

    def quotient(self, reductions, name=None):
        """A new presentation with extra reduction rules."""
        return PBWPresentation(
            self.gens, self.explicit_swaps(),
            [(lhs, rhs) for lhs, rhs in self.reductions] + list(reductions),
            self.field, name or self.name, self.confluence_asserted)

    def explicit_swaps(self):
        return {lhs: dict(rhs) for lhs, rhs in self.swaps.items()}

    def rhs_string(self, rhs):
        """Right side in element notation (words printed as written)."""
        return str(Element(self, rhs))

    def __repr__(self):
        return f"PBWPresentation({self.name or self.gens})"


# -- local confluence -------------------------------------------------------------

@dataclass
class ConfluenceReport:
    degree_bound: int
    checked: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def confluent(self):
        return not self.failures

    def lines(self):
        out = [f"ambiguities checked: {self.checked} (words of degree <= {self.degree_bound})"]
        for word, left, right in self.failures:
            out.append(f"failure at {word}: {left} != {right}")
        out.append("confluent" if self.confluent else "NOT confluent")
        return out


def check_local_confluence(P: PBWPresentation, degree_bound=6):
    """Reduce every overlap and inclusion ambiguity of degree <= bound both ways."""
    if not isinstance(P, PBWPresentation):
        raise AlgebraError("confluence checks need a PBW presentation")
    report = ConfluenceReport(degree_bound)
    rules = P.rules()
    one = Fraction(1)

    def reduce_terms(terms):
        out = {}
        for w, c in terms.items():
            for v, d in P._times_word({(): one}, w).items():
                _add_into(out, v, c * d)
        return out

    def substitute(prefix, rhs, suffix):
        return {prefix + w + suffix: c for w, c in rhs.items()}

    seen = set()
    for lhs1, rhs1 in rules:
        for lhs2, rhs2 in rules:
            # overlaps: a proper suffix of lhs1 equals a proper prefix of lhs2
            for k in range(1, min(len(lhs1), len(lhs2))):
                if lhs1[-k:] != lhs2[:k]:
                    continue
                word = lhs1 + lhs2[k:]
                if len(word) > degree_bound or (word, lhs1, lhs2) in seen:
                    continue
                seen.add((word, lhs1, lhs2))
                left = reduce_terms(substitute((), rhs1, lhs2[k:]))
                right = reduce_terms(substitute(lhs1[:-k], rhs2, ()))
                report.checked += 1
                if left != right:
                    report.failures.append(
                        (P._word_str(word), Element(P, left), Element(P, right)))
            # inclusions: lhs2 occurs inside lhs1 (and differs from it)
            if lhs1 != lhs2 and len(lhs2) <= len(lhs1) <= degree_bound:
                for k in range(len(lhs1) - len(lhs2) + 1):
                    if lhs1[k:k + len(lhs2)] != lhs2:
                        continue
                    left = reduce_terms(dict(rhs1))
                    right = reduce_terms(substitute(lhs1[:k], rhs2, lhs1[k + len(lhs2):]))
                    report.checked += 1
                    if left != right:
                        report.failures.append(
                            (P._word_str(lhs1), Element(P, left), Element(P, right)))
    return report
