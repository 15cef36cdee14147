"""The Weyl-type family with power, exponential and hyperbolic generators.

A canonical monomial is ``H^h * x^beta * E^gamma * d^m * dt^n`` stored as the
key ``(h, beta, gamma, m, n)``:

* ``x^beta`` is a power of x with exponent in the exponent module,
* ``E^gamma`` is ``exp(gamma x)``, so ``sinh`` and ``cosh`` are sums of two keys,
* ``d`` and ``dt`` are the derivations in x and t,
* ``H`` depends on the mode.  In central mode it is a central Laurent variable
  ``y``; in analytic mode it is ``h = exp(x^p s)`` for a constant ``s`` whose
  t-derivative is declared in the scalar field; in mode ``none`` it is absent.

Products move derivations to the right with the Leibniz rule
``D^m f = sum_a C(m, a) D^a(f) D^(m - a)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from ..exponents import ExponentModule, add, norm1, scale, sub
from ..scalars import RATIONALS, Scalar
from .core import AlgebraError, Element, Presentation

CENTRAL = "central"
ANALYTIC = "analytic"
NONE = "none"
MODES = (CENTRAL, ANALYTIC, NONE)


def _acc(out, key, c):
    v = out.get(key, 0) + c
    if v == 0:
        out.pop(key, None)
    else:
        out[key] = v


@lru_cache(maxsize=None)
def lattice_ball(rank, radius):
    """All integer vectors of the given rank with 1-norm <= radius."""
    if rank == 0:
        return ((),)
    out = []
    for first in range(-radius, radius + 1):
        for rest in lattice_ball(rank - 1, radius - abs(first)):
            out.append((first,) + rest)
    return tuple(out)


class WeylTypePresentation(Presentation):
    """Builtin multiplication for the Weyl-type family."""

    kind = "weyltype"

    def __init__(self, module: ExponentModule, p=None, mode=CENTRAL, with_dt=False,
                 hyper_constant="s", t_tag="t", name="", fiber_value=None):
        super().__init__(module.field, name)
        if mode not in MODES:
            raise AlgebraError(f"unknown mode {mode!r}")
        self.module = module
        self.r = module.rank
        self.mode = mode
        self.t_tag = str(t_tag)
        self.fiber_value = fiber_value
        if p is None:
            p = module.unit
        self.p = module.vec(p)
        if not any(self.p):
            raise AlgebraError("p must be nonzero")
        if with_dt and mode != ANALYTIC:
            raise AlgebraError("the t-derivation is only available in analytic mode")
        self.with_dt = bool(with_dt)
        self.hyper_constant = hyper_constant
        zero = module.zero()
        self.one_key = (0, zero, zero, 0, 0)
        self._zero = zero
        self._eps = {}
        self._dcache = {}
        if mode == ANALYTIC:
            try:
                s = self.field.constant(hyper_constant)
            except KeyError:
                raise AlgebraError(
                    f"analytic mode needs the constant {hyper_constant!r} in the scalar field"
                ) from None
            self._s = s
            self._ds = self.field.t_derivative(s) if self.with_dt else None
        for name in ("x", "E", "d", "dt", "y", "h"):
            if name in self.field._spec:
                raise AlgebraError(f"constant name {name!r} clashes with a generator name")

    # -- helpers ---------------------------------------------------------------

    @property
    def hyper_name(self):
        return {CENTRAL: "y", ANALYTIC: "h"}.get(self.mode)

    def eps(self, v):
        hit = self._eps.get(v)
        if hit is None:
            hit = self._eps[v] = self.module.embed(v)
        return hit

    def key(self, h=0, beta=None, gamma=None, m=0, n=0):
        beta = self.module.vec(beta) if beta is not None else self._zero
        gamma = self.module.vec(gamma) if gamma is not None else self._zero
        if h and self.mode == NONE:
            raise AlgebraError("this presentation has no hyperbolic generator")
        if n and not self.with_dt:
            raise AlgebraError("this presentation has no t-derivation")
        if m < 0 or n < 0:
            raise AlgebraError("derivation powers must be nonnegative")
        return (h, beta, gamma, m, n)

    # -- derivatives of function monomials ----------------------------------------

    def _dx_f(self, f):
        h, beta, gamma = f
        out = {}
        u = self.module.unit
        if any(beta):
            _acc(out, (h, sub(beta, u), gamma), self.eps(beta))
        if any(gamma):
            _acc(out, (h, beta, gamma), self.eps(gamma))
        if h and self.mode == ANALYTIC:
            _acc(out, (h, sub(add(beta, self.p), u), gamma), h * self.eps(self.p) * self._s)
        return out

    def _dt(self, terms):
        """d/dt on a function dict, acting on coefficients and on h^j."""
        out = {}
        for f, c in terms.items():
            if isinstance(c, Scalar):
                dc = self.field.t_derivative(c)
                if dc != 0:
                    _acc(out, f, dc)
            h, beta, gamma = f
            if h and self._ds != 0:
                _acc(out, (h, add(beta, self.p), gamma), c * h * self._ds)
        return out

    def _dx(self, terms):
        out = {}
        for f, c in terms.items():
            for g, w in self._dx_f(f).items():
                _acc(out, g, c * w)
        return out

    def _deriv(self, f, a, b):
        """d^a dt^b applied to the function monomial f (coefficient 1)."""
        key = (f, a, b)
        hit = self._dcache.get(key)
        if hit is not None:
            return hit
        if a == 0 and b == 0:
            result = {f: Fraction(1)}
        elif a > 0:
            result = self._dx(self._deriv(f, a - 1, b))
        else:
            result = self._dt(self._deriv(f, 0, b - 1))
        self._dcache[key] = result
        return result

    # -- Presentation interface ----------------------------------------------

    def multiply_terms(self, ka, ca, kb, cb):
        h1, b1, g1, m1, n1 = ka
        h2, b2, g2, m2, n2 = kb
        f2 = (h2, b2, g2)
        out = {}
        # successive t-derivatives of the right coefficient
        cders = [cb]
        for _ in range(n1):
            cders.append(self.field.t_derivative(cders[-1]) if isinstance(cders[-1], Scalar)
                         else Fraction(0))
        for b in range(n1 + 1):
            wb = comb(n1, b)
            for i in range(b + 1):
                ci = cders[i]
                if ci == 0:
                    continue
                wi = ca * wb * comb(b, i) * ci
                for a in range(m1 + 1):
                    wa = wi * comb(m1, a)
                    for (h, beta, gamma), w in self._deriv(f2, a, b - i).items():
                        key = (h1 + h, add(b1, beta), add(g1, gamma), m1 - a + m2, n1 - b + n2)
                        _acc(out, key, wa * w)
        return out

    def degree(self, key):
        h, beta, gamma, m, n = key
        return abs(h) + norm1(beta) + norm1(gamma) + m + n

    def _exp_str(self, name, v):
        u = self.module.unit
        k = None
        for a, b in zip(v, u):
            if b:
                k = a // b if a % b == 0 else None
                break
        if k is not None and scale(k, u) == v:
            return name if k == 1 else f"{name}^{k}"
        return f"{name}^({','.join(str(a) for a in v)})"

    def format_key(self, key):
        h, beta, gamma, m, n = key
        parts = []
        if h:
            parts.append(self.hyper_name if h == 1 else f"{self.hyper_name}^{h}")
        if any(beta):
            parts.append(self._exp_str("x", beta))
        if any(gamma):
            parts.append(self._exp_str("E", gamma))
        if m:
            parts.append("d" if m == 1 else f"d^{m}")
        if n:
            parts.append("dt" if n == 1 else f"dt^{n}")
        return "*".join(parts)

    def factor(self, name, exponent):
        if name in ("x", "E"):
            if isinstance(exponent, tuple):
                v = self.module.vec(exponent)
            else:
                v = scale(exponent, self.module.unit)
            key = self.key(beta=v) if name == "x" else self.key(gamma=v)
            return self.monomial(key)
        if isinstance(exponent, tuple):
            raise AlgebraError(f"{name!r} takes an integer exponent")
        if name in ("y", "h"):
            if name != self.hyper_name:
                raise AlgebraError(f"generator {name!r} is not available in {self.mode} mode")
            return self.monomial(self.key(h=exponent))
        if name == "d":
            return self.monomial(self.key(m=exponent))
        if name == "dt":
            return self.monomial(self.key(n=exponent))
        raise AlgebraError(f"unknown generator {name!r}")

    def generator_items(self):
        """(label, Element) pairs for the algebra generators."""
        items = []
        if self.hyper_name:
            items.append((self.hyper_name, self.monomial(self.key(h=1))))
            items.append((f"{self.hyper_name}^-1", self.monomial(self.key(h=-1))))
        for i in range(self.r):
            e = tuple(int(i == j) for j in range(self.r))
            for sign in (1, -1):
                v = scale(sign, e)
                items.append((self._exp_str("x", v), self.monomial(self.key(beta=v))))
        for i in range(self.r):
            e = tuple(int(i == j) for j in range(self.r))
            for sign in (1, -1):
                v = scale(sign, e)
                items.append((self._exp_str("E", v), self.monomial(self.key(gamma=v))))
        items.append(("d", self.monomial(self.key(m=1))))
        if self.with_dt:
            items.append(("dt", self.monomial(self.key(n=1))))
        return items

    def generator_names(self):
        return [label for label, _ in self.generator_items()]

    def generators(self):
        return [g for _, g in self.generator_items()]

    def generator(self, name):
        for label, g in self.generator_items():
            if label == name:
                return g
        return self.element(name)

    def monomials_up_to(self, d):
        out = []
        hrange = range(-d, d + 1) if self.hyper_name else (0,)
        nrange = range(d + 1) if self.with_dt else (0,)
        for h in hrange:
            rem_h = d - abs(h)
            for n in nrange:
                if n > rem_h:
                    break
                for m in range(rem_h - n + 1):
                    rem = rem_h - n - m
                    for beta in lattice_ball(self.r, rem):
                        for gamma in lattice_ball(self.r, rem - norm1(beta)):
                            out.append((h, beta, gamma, m, n))
        out.sort(key=self.sort_key)
        return out

    # -- hyperbolic helpers ------------------------------------------------------

    def sinh(self, alpha):
        """sinh(alpha x) as (E^alpha - E^-alpha) / 2."""
        alpha = self.module.vec(alpha)
        return (self.monomial(self.key(gamma=alpha))
                - self.monomial(self.key(gamma=scale(-1, alpha)))) * Fraction(1, 2)

    def cosh(self, alpha):
        alpha = self.module.vec(alpha)
        return (self.monomial(self.key(gamma=alpha))
                + self.monomial(self.key(gamma=scale(-1, alpha)))) * Fraction(1, 2)

    def hyper_sinh(self):
        """The hyperbolic generator sinh(x^p s) (analytic) or its central stand-in."""
        if not self.hyper_name:
            raise AlgebraError("this presentation has no hyperbolic generator")
        return (self.monomial(self.key(h=1)) - self.monomial(self.key(h=-1))) * Fraction(1, 2)

    def describe(self):
        return {
            "mode": self.mode,
            "rank": self.r,
            "p": list(self.p),
            "with_dt": self.with_dt,
            "t": self.t_tag,
        }

    def __repr__(self):
        return f"WeylTypePresentation({self.name or self.mode}, rank={self.r}, p={self.p})"


def specialize_y(P: WeylTypePresentation, value):
    """The fiber at y = value: a presentation without y plus a projection."""
    if P.mode != CENTRAL:
        raise AlgebraError("fibers are defined for central-mode presentations")
    value = P.field.coerce(value)
    if value == 0:
        raise AlgebraError("the fiber value must be nonzero")
    fiber = WeylTypePresentation(P.module, P.p, NONE, t_tag=P.t_tag,
                                 name=f"{P.name}|y={value}" if P.name else "", fiber_value=value)
    fiber.parent = P
    return fiber


def project_to_fiber(fiber: WeylTypePresentation, a: Element):
    """Image of an element of the parent presentation under y -> value."""
    if getattr(fiber, "parent", None) is not a.P:
        raise AlgebraError("element does not belong to the parent of this fiber")
    lam = fiber.fiber_value
    out = {}
    for (h, beta, gamma, m, n), c in a.terms.items():
        weight = lam ** h if h >= 0 else 1 / lam ** (-h)
        _acc(out, (0, beta, gamma, m, n), c * weight)
    return Element(fiber, out)


def weyl_type(rank=1, embeddings=None, unit=None, p=None, mode=CENTRAL, field=RATIONALS,
              **kwargs):
    """Convenience constructor."""
    if embeddings is None:
        embeddings = [1] + [0] * (rank - 1) if rank == 1 else None
        if embeddings is None:
            raise AlgebraError("embeddings are required for rank > 1")
    if unit is None:
        unit = (1,) + (0,) * (rank - 1)
    module = ExponentModule(rank, tuple(embeddings), tuple(unit), field)
    return WeylTypePresentation(module, p, mode, **kwargs)


__all__ = [
    "ANALYTIC", "CENTRAL", "NONE", "WeylTypePresentation", "lattice_ball",
    "project_to_fiber", "specialize_y", "weyl_type",
]
