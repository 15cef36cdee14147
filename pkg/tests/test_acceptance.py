"""Acceptance criteria 1-16.  Each test prints one PASS/FAIL line."""

import io
import random
import time
from fractions import Fraction
from math import comb

import pytest

from weyltype import presets
from weyltype.algebra.constructions import tensor_product
from weyltype.algebra.pbw import check_local_confluence
from weyltype.center import centralizer_basis, weyltype_center_check
from weyltype.cli import dispatch
from weyltype.growth import (GeneratingSubspace, differences, gk_estimate, gk_property_report,
                             growth_table, module_growth_table)
from weyltype.morphisms import AutomorphismSpec, iso_decide, verify_endomorphism
from weyltype.nonassoc import KappaForm, NAAlgebra, left_mult_injectivity, na_center_superset
from weyltype.scalars import ALGEBRAIC, ConstantSpec, ScalarField, hyperbolic_constants

CASES = 1000


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return emit


def doc(name):
    return presets.load(name)


def dims(name, n, subspace="V"):
    return growth_table(doc(name).subspace(subspace), n).dims


def estimate_of(P, n=8):
    return gk_estimate(growth_table(GeneratingSubspace(P.default_subspace(), P), n))


def test_01_polynomial_growth(report):
    out = io.StringIO()
    start = time.perf_counter()
    code = dispatch(["growth", "--preset", "poly3", "--n", "10"], out)
    elapsed = time.perf_counter() - start
    got = [int(line.split(": ")[1]) for line in out.getvalue().splitlines()[1:]]
    expected = [4, 10, 20, 35, 56, 84, 120, 165, 220, 286]
    ok = code == 0 and got == expected == [comb(n + 3, 3) for n in range(1, 11)] and elapsed < 10
    report(1, ok, f"poly3 dims {got}, {elapsed:.2f} s")


def test_02_presented_growth(report):
    so3, poly3 = dims("so3", 8), dims("poly3", 8)
    report(2, so3 == poly3, f"so3 {so3} vs poly3 {poly3}")


def test_03_weyl_growth(report):
    d = dims("weyl", 10)
    est = gk_estimate(d, "finite_difference")
    ok = d == [comb(n + 2, 2) for n in range(1, 11)] and est.value == 2 and est.exact
    report(3, ok, f"weyl dims {d}, estimate {est}")


def test_04_ore_example(report):
    d = dims("ore-paper", 8)
    third = differences(d[3:8], 3)
    est = gk_estimate(d)
    base = gk_estimate(dims("solvable2", 8))
    ok = len(set(third)) == 1 and est.exact and est.value == 3 == base.value + 1
    report(4, ok, f"third differences over n=4..8 {third}; estimate {est.value} = {base.value}+1")


def test_05_tensor_additivity(report):
    t1 = tensor_product(doc("poly1").presentation, doc("poly2").presentation)
    W = doc("weyl").presentation
    t2 = tensor_product(W, W)
    e1, e2 = estimate_of(t1), estimate_of(t2, 6)
    ok = e1.exact and e1.value == 3 and e2.exact and e2.value == 4
    report(5, ok, f"Q[x](x)Q[y,z] estimate {e1.value}; weyl(x)weyl estimate {e2.value}")


def test_06_module_growth(report):
    d = doc("module-x2y2")
    T = module_growth_table(d.presentation, d.module_rules, d.subspace(), 12)
    em, ea = gk_estimate(T), gk_estimate(dims("module-x2y2", 8))
    ok = T.dims == [2 * n + 1 for n in range(1, 13)] and em.value == 1 <= 2 == ea.value
    report(6, ok, f"module dims {T.dims}; estimate {em.value} <= algebra {ea.value}")


def test_07_subspace_invariance(report):
    e1, e2 = gk_estimate(dims("so3", 8, "V")), gk_estimate(dims("so3", 8, "V2"))
    ok = e1.exact and e2.exact and e1.value == e2.value
    report(7, ok, f"so3 V1 -> {e1.value}, V2 = (1, x+y, x-y, 2z) -> {e2.value}")


@pytest.fixture(scope="module")
def properties():
    return {line.name: line for line in gk_property_report()}


def test_08_extension_subadditivity(report, properties):
    est = gk_estimate(dims("sphere-quotient", 8))
    line = properties["subadditivity"]
    m = line.measured
    ok = est.value == 2 and est.exact and line.passed and (m["B"], m["A"], m["I"]) == (2, 3, 3)
    report(8, ok, f"sphere estimate {est.value}; {m['B']} <= {m['A']} <= {m['I']}+{m['B']}")


def test_09_dichotomy(report, properties):
    line = properties["dichotomy"]
    stabilized = {k: v for k, v in line.measured.items() if not isinstance(v, str)}
    skipped = sorted(k for k, v in line.measured.items() if isinstance(v, str))
    ok = line.passed and set(presets.names()) == set(line.measured) and len(stabilized) >= 10
    report(9, ok, f"stabilized {stabilized}; not stabilized {skipped}")


def test_10_associative_center(report):
    weyl = centralizer_basis(doc("weyl").presentation, 5).as_strings()
    r1 = weyltype_center_check(doc("weyltype-r1").presentation, 4)
    r2 = weyltype_center_check(doc("weyltype-r2-sqrt2").presentation, 3)
    ok = weyl == ["1"] and r1.passed and len(r1.basis) == 9 and r2.passed and len(r2.basis) == 7
    report(10, ok, f"weyl {weyl}; r1 {len(r1.basis)} powers of y; r2 {len(r2.basis)} powers of y")


def test_11_nonassociative_center(report):
    d = doc("na-example-31")
    N = d.na_algebra()
    P = N.P
    r = na_center_superset(N, 3, 3)
    witnesses = [(g, N.multiply(P.one(), g), N.multiply(g, P.one())) for g in P.generators()]
    witnesses = [w for w in witnesses if w[1] != w[2]]
    ok = r.certified_zero and bool(witnesses) and d.kappa.description == "default"
    g, left, right = witnesses[0] if witnesses else ("-", "-", "-")
    report(11, ok, f"superset {{0}} over {r.candidates} candidates; "
                   f"1*{g} = {left} but {g}*1 = {right}")


def test_12_injectivity(report):
    weyl = NAAlgebra(doc("weyl").presentation, KappaForm.zero())
    quot = NAAlgebra(doc("poly2-xy").presentation, KappaForm.zero())
    a, b = left_mult_injectivity("x", weyl, 3), left_mult_injectivity("x", quot, 3)
    ok = a.injective and not b.injective
    report(12, ok, f"weyl rank {a.rank}/{a.candidates}; Q[x,y]/(xy) kernel "
                   f"{[str(k) for k in b.kernel]}")


def test_13_iso_decisions(report):
    a = iso_decide((2,), "t", (-2,), "t")
    b = iso_decide((2,), "t1", (2,), "t2")
    c = iso_decide((2, 0), "t", (0, 2), "t", rank=2)
    ok = a.iso and not b.iso and c.iso and c.sigma((2, 0)) == (0, 2) and abs(c.sigma.det) == 1
    report(13, ok, f"2 ~ -2: {a.iso}; t1 != t2: {b.iso}; (2,0) ~ (0,2) via {c.sigma.matrix}")


def test_14_automorphisms(report):
    P = doc("weyl").presentation
    good = verify_endomorphism(AutomorphismSpec({"x": 2, "d": Fraction(1, 2)}), P)
    bad = verify_endomorphism(AutomorphismSpec({"x": 2, "d": 1}), P)
    inv = verify_endomorphism(AutomorphismSpec(involution=True), P)
    ok = good.passed and not bad.passed and bad.witnesses and bad.notes and inv.passed
    report(14, ok, f"(2, 1/2) pass; (2, 1) witness {bad.witnesses[0][0]} residue "
                   f"{bad.witnesses[0][1]}; involution pass")


def test_15_confluence(report):
    results = {n: check_local_confluence(doc(n).presentation, 6)
               for n in ("weyl", "so3", "sphere-quotient", "nonconfluent")}
    bad = results.pop("nonconfluent")
    ok = all(r.confluent for r in results.values()) and not bad.confluent
    word, left, right = bad.failures[0] if bad.failures else ("-", "-", "-")
    checked = ", ".join(f"{n} {r.checked}" for n, r in results.items())
    report(15, ok, f"ambiguities resolve ({checked}); counterexample {word}: {left} != {right}")


# -- criterion 16: randomized exactness suite ----------------------------------------

ALGEBRAS = ["weyl", "so3", "sphere-quotient", "ore-paper", "weyltype-r1",
            "weyltype-r2-sqrt2", "na-example-31"]


def _random_scalar(rng, F):
    c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    if F.constants and rng.random() < 0.3:
        c = c + F.constant(rng.choice(F.constants).name) * rng.randint(1, 3)
    return c


def _random_element(rng, P, keys):
    e = P.zero()
    for _ in range(rng.randint(1, 3)):
        e = e + P.monomial(rng.choice(keys)) * _random_scalar(rng, P.field)
    return e


def _cases(seed):
    rng = random.Random(seed)
    pools = {}
    for name in ALGEBRAS:
        P = doc(name).presentation
        pools[name] = (P, P.monomials_up_to(2 if name != "na-example-31" else 3))
    for i in range(CASES):
        P, keys = pools[ALGEBRAS[i % len(ALGEBRAS)]]
        yield P, [_random_element(rng, P, keys) for _ in range(3)]


def _field_cases(seed):
    rng = random.Random(seed)
    fields = [ScalarField(),
              ScalarField([ConstantSpec("theta", ALGEBRAIC, ("-2", "0", "1"), "0")]),
              ScalarField([ConstantSpec("w", ALGEBRAIC, ("1", "1", "1"), "0"),
                           ConstantSpec("r", ALGEBRAIC, ("-5", "0", "1"), "0")]),
              hyperbolic_constants()]
    for i in range(CASES):
        F = fields[i % len(fields)]
        yield F, [_random_scalar(rng, F) + _random_scalar(rng, F) * _random_scalar(rng, F)
                  for _ in range(3)]


def test_16_exactness_suite(report):
    failures = {"associativity": 0, "antisymmetry": 0, "jacobi": 0, "field": 0}
    for P, (a, b, c) in _cases(16):
        if (a * b) * c != a * (b * c):
            failures["associativity"] += 1
    for P, (a, b, c) in _cases(17):
        if P.commutator(a, b) != -P.commutator(b, a):
            failures["antisymmetry"] += 1
    for P, (a, b, c) in _cases(18):
        br = P.commutator
        if br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b)) != 0:
            failures["jacobi"] += 1
    for F, (a, b, c) in _field_cases(19):
        checks = [
            (a + b) + c == a + (b + c), a + b == b + a, (a * b) * c == a * (b * c),
            a * b == b * a, a * (b + c) == a * b + a * c, a + 0 == a, a * 1 == a,
            a + (-a) == 0, a == 0 or a * (1 / a) == 1, b == 0 or (a / b) * b == a,
        ]
        if not all(checks):
            failures["field"] += 1
    ok = not any(failures.values())
    report(16, ok, f"{CASES} cases each, failures {failures}")
