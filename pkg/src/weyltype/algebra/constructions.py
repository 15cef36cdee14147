"""Ore extensions and tensor products of PBW presentations."""

from __future__ import annotations

from fractions import Fraction

from .core import AlgebraError, Element
from .pbw import PBWPresentation


class OreValidationError(AlgebraError):
    pass


def _images(P, spec, default):
    out = {}
    for g in P.gens:
        value = spec.get(g, default(g)) if spec else default(g)
        out[g] = P.element(value) if not isinstance(value, Element) else value
    return out


def _apply_hom(P, images, word):
    result = P.one()
    for i in word:
        result = result * images[P.gens[i]]
    return result


def _apply_hom_terms(P, images, terms):
    total = P.zero()
    for w, c in terms.items():
        total = total + _apply_hom(P, images, w) * c
    return total


def _delta_word(P, sigma, delta, word):
    """delta of a word via delta(ab) = sigma(a) delta(b) + delta(a) b."""
    if not word:
        return P.zero()
    head, tail = word[0], word[1:]
    g = P.gens[head]
    tail_elem = Element(P, P.normal_form(tail))
    return sigma[g] * _delta_word(P, sigma, delta, tail) + delta[g] * tail_elem


def _delta_terms(P, sigma, delta, terms):
    total = P.zero()
    for w, c in terms.items():
        total = total + _delta_word(P, sigma, delta, w) * c
    return total


def _fresh(name, taken):
    if name not in taken:
        return name
    k = 2
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def _linear_part_invertible(P, images):
    n = len(P.gens)
    rows = []
    for g in P.gens:
        row = [Fraction(0)] * n
        for w, c in images[g].terms.items():
            if len(w) == 1:
                row[w[0]] = c
        rows.append(row)
    # Gaussian elimination over the coefficient field
    rows = [list(r) for r in rows]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return False
        rows[col], rows[piv] = rows[piv], rows[col]
        for r in range(col + 1, n):
            if rows[r][col] != 0:
                f = rows[r][col] / rows[col][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return True


def ore_extend(P: PBWPresentation, sigma=None, delta=None, name="z", new_name=None):
    """A[z; sigma, delta] with swap rules z g -> sigma(g) z + delta(g).

    ``sigma`` and ``delta`` map generator names to element strings (or
    Elements of ``P``); unspecified generators default to sigma(g) = g and
    delta(g) = 0.  Relation preservation by sigma and the sigma-Leibniz rule
    for delta are checked on every defining rule of ``P``.
    """
    if not isinstance(P, PBWPresentation):
        raise AlgebraError("Ore extensions are built over PBW presentations")
    sig = _images(P, sigma, lambda g: g)
    dlt = _images(P, delta, lambda g: 0)
    if all(e.degree() <= 1 for e in sig.values()) and not _linear_part_invertible(P, sig):
        raise OreValidationError("sigma is not invertible on the generators")
    for lhs, rhs in P.rules():
        label = f"{P.word_label(lhs)} -> {P.rhs_string(rhs)}"
        lhs_terms = {lhs: Fraction(1)}
        diff = _apply_hom_terms(P, sig, lhs_terms) - _apply_hom_terms(P, sig, rhs)
        if diff:
            raise OreValidationError(f"sigma does not preserve the relation {label}: residue {diff}")
        diff = _delta_terms(P, sig, dlt, lhs_terms) - _delta_terms(P, sig, dlt, rhs)
        if diff:
            raise OreValidationError(
                f"delta violates the sigma-Leibniz rule on the relation {label}: residue {diff}")
    z = _fresh(name, set(P.gens) | set(P.field._spec))
    gens = P.gens + [z]
    zi = len(P.gens)
    swaps = {lhs: dict(rhs) for lhs, rhs in P.explicit_swaps().items()}
    for i, g in enumerate(P.gens):
        rhs = {}
        for w, c in sig[g].terms.items():
            rhs[w + (zi,)] = rhs.get(w + (zi,), 0) + c
        for w, c in dlt[g].terms.items():
            rhs[w] = rhs.get(w, 0) + c
        swaps[(zi, i)] = {w: c for w, c in rhs.items() if c != 0}
    Q = PBWPresentation(gens, swaps, list(P.reductions), P.field,
                        new_name or (f"{P.name}[{z}]" if P.name else ""),
                        P.confluence_asserted)
    Q.ore_data = {"base": P, "sigma": sig, "delta": dlt, "variable": z}
    return Q


def tensor_product(P1: PBWPresentation, P2: PBWPresentation, name=None):
    """P1 (x) P2: generators of P1 then P2 (renamed on clashes), cross pairs commute."""
    if not isinstance(P1, PBWPresentation) or not isinstance(P2, PBWPresentation):
        raise AlgebraError("tensor products are built from PBW presentations")
    if P1.field is not P2.field and not (P1.field.is_rational and P2.field.is_rational):
        raise AlgebraError("tensor factors must share a scalar field")
    taken = set(P1.gens) | set(P1.field._spec)
    renamed = []
    for g in P2.gens:
        new = _fresh(g, taken)
        taken.add(new)
        renamed.append(new)
    shift = len(P1.gens)
    gens = P1.gens + renamed

    def move(word):
        return tuple(i + shift for i in word)

    swaps = P1.explicit_swaps()
    for lhs, rhs in P2.swaps.items():
        swaps[move(lhs)] = {move(w): c for w, c in rhs.items()}
    reductions = list(P1.reductions)
    reductions += [(move(lhs), {move(w): c for w, c in rhs.items()}) for lhs, rhs in P2.reductions]
    label = name or (f"{P1.name} (x) {P2.name}" if P1.name or P2.name else "")
    Q = PBWPresentation(gens, swaps, reductions, P1.field, label,
                        P1.confluence_asserted and P2.confluence_asserted)
    Q.tensor_renaming = dict(zip(P2.gens, renamed))
    return Q
