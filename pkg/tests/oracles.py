"""Independent reference computations used to derive frozen test values.

Nothing here imports the package under test.  Each oracle uses a different
route from the implementation: closed normal-ordering formulas, sympy
Groebner bases, differential operators acting on polynomials, or lattice
point counts.
"""

from fractions import Fraction
from itertools import product
from math import comb, factorial

import sympy


# -- Weyl algebra via the normal-ordering formula -----------------------------------
# Elements are dicts (a, b) -> coeff meaning x^a d^b.

def weyl_mul(p, q):
    """d^b x^c = sum_k C(b,k) c!/(c-k)! x^(c-k) d^(b-k)."""
    out = {}
    for (a, b), u in p.items():
        for (c, e), v in q.items():
            for k in range(min(b, c) + 1):
                w = comb(b, k) * factorial(c) // factorial(c - k)
                key = (a + c - k, b - k + e)
                out[key] = out.get(key, 0) + u * v * w
    return {k: c for k, c in out.items() if c}


def weyl_word(word):
    out = {(0, 0): 1}
    for ch in word:
        out = weyl_mul(out, {(1, 0): 1} if ch == "x" else {(0, 1): 1})
    return out


def weyl_growth(n_max):
    """dim span{words of length <= n in 1, x, d} by brute enumeration."""
    dims = []
    for n in range(1, n_max + 1):
        vecs = [weyl_word(w) for k in range(n + 1) for w in product("xd", repeat=k)]
        keys = sorted({k for v in vecs for k in v})
        M = sympy.Matrix([[v.get(k, 0) for k in keys] for v in vecs])
        dims.append(M.rank())
    return dims


def weyl_as_operator(word, f, X):
    """Apply a word in x, d (rightmost letter first) to the polynomial f(X)."""
    for ch in reversed(word):
        f = sympy.expand(X * f) if ch == "x" else sympy.diff(f, X)
    return f


# -- commutative quotients via sympy Groebner bases --------------------------------

def quotient_growth(gens, relations, n_max):
    """dim of the image of polynomials of degree <= n in Q[gens]/(relations)."""
    syms = sympy.symbols(gens)
    G = sympy.groebner([sympy.sympify(r, dict(zip(gens, syms))) for r in relations],
                       *syms, order="grevlex") if relations else None
    dims = []
    for n in range(1, n_max + 1):
        rems = []
        for exps in product(range(n + 1), repeat=len(syms)):
            if sum(exps) > n:
                continue
            m = sympy.Mul(*[s ** e for s, e in zip(syms, exps)])
            rems.append(sympy.expand(G.reduce(m)[1]) if G is not None else m)
        monos = sorted({t for r in rems for t in sympy.Poly(r, *syms).monoms()} if rems else [])
        M = sympy.Matrix([[sympy.Poly(r, *syms).coeff_monomial(m) for m in monos] for r in rems])
        dims.append(M.rank())
    return dims


def quotient_mult_kernel(gens, relations, u, d):
    """Dimension of the kernel of v -> u*v on monomials of degree <= d in the quotient."""
    syms = sympy.symbols(gens)
    loc = dict(zip(gens, syms))
    G = sympy.groebner([sympy.sympify(r, loc) for r in relations], *syms, order="grevlex")
    u = sympy.sympify(u, loc)
    basis = []
    for exps in product(range(d + 1), repeat=len(syms)):
        if sum(exps) <= d:
            m = sympy.Mul(*[s ** e for s, e in zip(syms, exps)])
            if G.reduce(m)[1] == m:
                basis.append(m)
    images = [sympy.expand(G.reduce(sympy.expand(u * m))[1]) for m in basis]
    monos = sorted({t for r in images if r != 0 for t in sympy.Poly(r, *syms).monoms()})
    if not monos:
        return len(basis)
    M = sympy.Matrix([[sympy.Poly(r, *syms).coeff_monomial(m) if r != 0 else 0
                       for m in monos] for r in images])
    return len(basis) - M.rank()


# -- lattice counts ----------------------------------------------------------------

def cross_polytope_points(dim, k):
    """#{v in Z^dim : |v|_1 <= k}."""
    return sum(2 ** i * comb(dim, i) * comb(k, i) for i in range(dim + 1))


def weyltype_key_count(rank, n, with_hyper=True):
    """#{(h, beta, gamma, m) : |h| + |beta| + |gamma| + m <= n, m >= 0}."""
    signed = 2 * rank + (1 if with_hyper else 0)
    return sum(cross_polytope_points(signed, n - m) for m in range(n + 1))


def binomials(top_shift, k, n_max):
    return [comb(n + top_shift, k) for n in range(1, n_max + 1)]


# -- integer matrices ------------------------------------------------------------

def int_det(rows):
    return int(sympy.Matrix(rows).det())


def rational(x):
    return Fraction(x)
