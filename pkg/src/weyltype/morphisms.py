"""Torus rescalings, exponent automorphisms, the Fourier involution, and the
isomorphism test for the Weyl-type family."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra.core import AlgebraError, Element
from .algebra.pbw import PBWPresentation
from .algebra.weyltype import WeylTypePresentation
from .exponents import ExponentError, ModuleAutomorphism, content_reduce


class MorphismError(ValueError):
    pass


class UnsupportedCase(MorphismError):
    pass


def _power(c, k):
    if k >= 0:
        return c ** k
    return 1 / c ** (-k)


@dataclass
class AutomorphismSpec:
    """Generator rescalings, an exponent-module automorphism, and an optional
    involution x -> d, d -> -x.

    For PBW presentations ``scales`` is keyed by generator name.  For the
    Weyl-type family the keys are ``"x"`` and ``"E"`` (one scalar per module
    coordinate, acting as characters), and ``"d"``, ``"dt"``, ``"y"``, ``"h"``.
    """

    scales: dict = field(default_factory=dict)
    sigma: ModuleAutomorphism = None
    involution: bool = False

    def __post_init__(self):
        for name, value in self.scales.items():
            values = value if isinstance(value, (list, tuple)) else [value]
            if any(v == 0 or (isinstance(v, str) and v.strip() in ("0", "-0")) for v in values):
                raise MorphismError(f"scale for {name!r} must be nonzero")

    def scale(self, name, default=1):
        return self.scales.get(name, default)

    def apply(self, a, P=None):
        return apply_automorphism(self, a, P)


@dataclass
class ComposedMap:
    """``outer`` after ``inner``."""

    outer: object
    inner: object

    def apply(self, a, P=None):
        return self.outer.apply(self.inner.apply(a, P), P)


def compose(outer, inner):
    return ComposedMap(outer, inner)


def identity_spec():
    return AutomorphismSpec()


# -- application ------------------------------------------------------------------

def _involution_pairs(P):
    pairs = {}
    for g in P.gens:
        if g.startswith("x"):
            partner = "d" + g[1:]
            if partner in P.index:
                pairs[g] = partner
    return pairs


def pbw_generator_images(phi, P: PBWPresentation):
    images = {}
    pairs = _involution_pairs(P) if phi.involution else {}
    if phi.involution and not pairs:
        raise UnsupportedCase("the involution needs generator pairs named x, d")
    inverse = {d: x for x, d in pairs.items()}
    for g in P.gens:
        c = P.field.coerce(phi.scale(g))
        if g in pairs:
            base = P.generator(pairs[g])
        elif g in inverse:
            base = -P.generator(inverse[g])
        else:
            base = P.generator(g)
        images[g] = base * c
    return images


def _apply_pbw(phi, a, P):
    images = pbw_generator_images(phi, P)
    total = P.zero()
    for word, c in a.terms.items():
        value = P.one()
        for i in word:
            value = value * images[P.gens[i]]
        total = total + value * c
    return total


def _apply_weyltype(phi, a, P: WeylTypePresentation):
    if phi.involution:
        raise UnsupportedCase(
            "the involution is only supported on presentations without hyperbolic families")
    sigma = phi.sigma or ModuleAutomorphism.identity(P.r)
    if sigma.rank != P.r:
        raise MorphismError("sigma rank does not match the exponent module")
    lam = [P.field.coerce(v) for v in _per_coord(phi.scale("x"), P.r)]
    nu = [P.field.coerce(v) for v in _per_coord(phi.scale("E"), P.r)]
    mu = P.field.coerce(phi.scale("d"))
    tau = P.field.coerce(phi.scale("dt"))
    xi = P.field.coerce(phi.scale(P.hyper_name)) if P.hyper_name else 1
    out = {}
    for (h, beta, gamma, m, n), c in a.terms.items():
        w = c * _power(xi, h) * _power(mu, m) * _power(tau, n)
        for l, b in zip(lam, beta):
            w = w * _power(l, b)
        for v, g in zip(nu, gamma):
            w = w * _power(v, g)
        key = (h, sigma(beta), sigma(gamma), m, n)
        out[key] = out.get(key, 0) + w
    return Element(P, out)


def _per_coord(value, r):
    if isinstance(value, (list, tuple)):
        if len(value) != r:
            raise MorphismError(f"expected {r} per-coordinate scales")
        return list(value)
    return [value] * r


def apply_automorphism(phi, a, P=None):
    P = P or a.P
    a = P.element(a)
    if isinstance(P, PBWPresentation):
        if phi.sigma is not None and phi.sigma.rank and phi.sigma.matrix != \
                ModuleAutomorphism.identity(phi.sigma.rank).matrix:
            raise UnsupportedCase("exponent automorphisms act on Weyl-type presentations only")
        return _apply_pbw(phi, a, P)
    if isinstance(P, WeylTypePresentation):
        return _apply_weyltype(phi, a, P)
    raise MorphismError(f"unsupported presentation {P!r}")


# -- verification ------------------------------------------------------------------

@dataclass
class EndomorphismReport:
    passed: bool
    checked: int
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def lines(self):
        out = [f"{'PASS' if self.passed else 'FAIL'}: {self.checked} relations checked"]
        for label, residue in self.witnesses:
            out.append(f"  witness {label}: residue {residue}")
        out += [f"  note: {n}" for n in self.notes]
        return out


def _torus_notes(phi, P):
    notes = []
    if isinstance(P, PBWPresentation):
        for x, d in _involution_pairs(P).items():
            lam, mu = P.field.coerce(phi.scale(x)), P.field.coerce(phi.scale(d))
            if lam * mu != 1:
                notes.append(f"scales {x}:{lam}, {d}:{mu} have product {lam * mu}; "
                             f"[{d}, {x}] = 1 is preserved only when the product is 1")
    elif isinstance(P, WeylTypePresentation):
        lam = [P.field.coerce(v) for v in _per_coord(phi.scale("x"), P.r)]
        mu = P.field.coerce(phi.scale("d"))
        for i, u in enumerate(P.module.unit):
            if u and _power(lam[i], u) * mu != 1:
                notes.append("the x and d scales do not satisfy lambda^unit * mu = 1, "
                             "which [d, x] = 1 requires")
                break
        if mu != 1:
            notes.append("[d, E^g] = g E^g forces the d scale to be 1, so x and d cannot be "
                         "rescaled here; only y (and dt) carry a free torus")
    return notes


def verify_endomorphism(phi, P, degree=2):
    """Check that phi preserves every defining relation of degree <= ``degree``."""
    witnesses = []
    checked = 0
    if isinstance(P, PBWPresentation):
        images = {g: phi.apply(P.generator(g), P) for g in P.gens}

        def image_of(word):
            value = P.one()
            for i in word:
                value = value * images[P.gens[i]]
            return value

        for lhs, rhs in P.rules():
            if len(lhs) > degree:
                continue
            checked += 1
            residue = image_of(lhs) - sum((image_of(w) * c for w, c in rhs.items()), P.zero())
            if residue:
                witnesses.append((f"{P.word_label(lhs)} -> {P.rhs_string(rhs)}", residue))
    elif isinstance(P, WeylTypePresentation):
        gens = P.generator_items()
        for i, (la, a) in enumerate(gens):
            for lb, b in gens[i + 1:]:
                checked += 1
                fa, fb = phi.apply(a, P), phi.apply(b, P)
                residue = (fa * fb - fb * fa) - phi.apply(P.commutator(a, b), P)
                if residue:
                    witnesses.append((f"[{la}, {lb}]", residue))
        # multiplicativity on monomials up to the degree bound
        if degree > 2:
            monos = [P.monomial(k) for k in P.monomials_up_to(degree // 2)]
            for a, b in product(monos, repeat=2):
                checked += 1
                residue = phi.apply(a * b, P) - phi.apply(a, P) * phi.apply(b, P)
                if residue:
                    witnesses.append((f"phi({a} * {b})", residue))
    else:
        raise MorphismError(f"unsupported presentation {P!r}")
    notes = _torus_notes(phi, P) if isinstance(phi, AutomorphismSpec) else []
    return EndomorphismReport(not witnesses, checked, witnesses, notes)


# -- isomorphism ------------------------------------------------------------------------

@dataclass
class IsoVerdict:
    iso: bool
    reason: str
    sigma: ModuleAutomorphism = None
    content: tuple = ()

    def lines(self):
        out = [("ISO" if self.iso else "NOT ISO") + f": {self.reason}"]
        if self.sigma is not None:
            out.append(f"  sigma = {[list(r) for r in self.sigma.matrix]}")
        return out


def iso_decide(p1, t1, p2, t2, rank=None):
    """Decide whether A(p1, t1) and A(p2, t2) are isomorphic over the same module."""
    p1 = tuple(int(a) for a in p1)
    p2 = tuple(int(a) for a in p2)
    if rank is not None and (len(p1) != rank or len(p2) != rank):
        raise MorphismError(f"p vectors must have {rank} coordinates")
    if len(p1) != len(p2):
        raise MorphismError("p vectors have different ranks")
    if not any(p1) or not any(p2):
        raise MorphismError("p must be nonzero")
    if str(t1) != str(t2):
        return IsoVerdict(False, f"t differs ({t1} vs {t2})")
    g1, s1 = content_reduce(p1)
    g2, s2 = content_reduce(p2)
    if g1 != g2:
        return IsoVerdict(False, f"no module automorphism maps p1 to +-p2 "
                                 f"(contents {g1} and {g2})", content=(g1, g2))
    sigma = s2.inverse().compose(s1)
    if sigma(p1) != p2:
        raise MorphismError("internal error: witness does not map p1 to p2")
    return IsoVerdict(True, f"contents agree ({g1}); sigma maps p1 to p2", sigma, (g1, g2))


__all__ = [
    "AutomorphismSpec", "ComposedMap", "EndomorphismReport", "ExponentError", "IsoVerdict",
    "MorphismError", "UnsupportedCase", "AlgebraError", "apply_automorphism", "compose",
    "identity_spec", "iso_decide", "verify_endomorphism",
]
