"""Command-line interface: ``python -m weyltype <command> ...``.

Exit codes: 0 success or pass, 1 property failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__, presets
from ._text import ParseError
from .algebra.constructions import ore_extend, tensor_product
from .algebra.core import AlgebraError
from .algebra.pbw import PBWPresentation, check_local_confluence
from .algebra.weyltype import CENTRAL, WeylTypePresentation, specialize_y
from .center import CapExceeded, CenterError, centralizer_basis, weyltype_center_check
from .dsl import DSLError, load_file, serialize_document
from .exponents import ExponentError, ModuleAutomorphism
from .growth import (DEFAULT_CAP, GeneratingSubspace, GrowthError, GrowthTable, gk_estimate,
                     gk_property_report, growth_table, module_growth_table)
from .morphisms import AutomorphismSpec, MorphismError, iso_decide, verify_endomorphism
from .nonassoc import (ALL, LEFT_NORMED, KappaForm, NAAlgebra, NonAssocError,
                       flexibility_report, left_mult_injectivity, na_center_superset,
                       na_growth_table)
from .scalars import ScalarError

SCHEMA = "report_v1"
OK, FAILED, INPUT_ERROR, CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class CommandReport:
    command: str
    source: str = ""
    results: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    csv: str = ""
    exact: bool = True
    status: int = OK
    elapsed: float = 0.0
    argv: list = field(default_factory=list)

    def as_dict(self):
        return {
            "schema": SCHEMA,
            "command": self.command,
            "argv": self.argv,
            "source": self.source,
            "results": _jsonable(self.results),
            "exact": self.exact,
            "exit_code": self.status,
            "elapsed_s": round(self.elapsed, 4),
        }

    def render(self, fmt):
        if fmt == "json":
            return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"
        if fmt == "csv":
            if not self.csv:
                raise InputError(f"{self.command} has no CSV output; use text or json")
            return self.csv
        head = f"# {self.command}" + (f" [{self.source}]" if self.source else "")
        return "\n".join([head] + self.lines) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


# -- inputs ------------------------------------------------------------------------

def _load(args, preset_attr="preset", file_attr="file"):
    name, path = getattr(args, preset_attr, None), getattr(args, file_attr, None)
    if bool(name) == bool(path):
        raise InputError(f"give exactly one of --{preset_attr} or --{file_attr}")
    if path:
        return load_file(path), path
    try:
        return presets.load(name), name
    except KeyError as exc:
        raise InputError(exc.args[0]) from None


def _pairs(items, flag):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"{flag} expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _subspace(doc, args):
    return doc.subspace(args.subspace or doc.default_subspace_name)


def _kappa(doc, args):
    if args.kappa_seed:
        with open(args.kappa_seed, encoding="utf-8") as fh:
            seed = json.load(fh)
        if not isinstance(seed, list):
            raise InputError("the kappa seed file must hold a JSON list of monomials")
        return KappaForm.default(doc.presentation, seed)
    if args.kappa == "doc":
        return doc.kappa or KappaForm.zero()
    if args.kappa == "default":
        return KappaForm.default(doc.presentation)
    return KappaForm.zero()


def _table_report(report, T):
    report.results["table"] = T.as_dict()
    report.csv = T.to_csv()
    report.lines += [f"n={n}: {d}" for n, d in T.rows()]
    if T.truncated:
        report.lines.append(f"truncated: monomial cap reached after n={len(T.dims)}")
        report.status = CAP


# -- commands -------------------------------------------------------------------------

def cmd_growth(args, report):
    doc, report.source = _load(args)
    P = doc.presentation
    if args.module:
        if not doc.module_rules:
            raise InputError("the document has no module_rules")
        T = module_growth_table(P, doc.module_rules, _subspace(doc, args), args.n, cap=args.cap)
    else:
        T = growth_table(_subspace(doc, args), args.n, args.cap)
    _table_report(report, T)


def cmd_gkdim(args, report):
    cmd_growth(args, report)
    if report.status == CAP:
        return
    T = GrowthTable(**{k: v for k, v in report.results["table"].items()})
    est = gk_estimate(T, args.method)
    report.exact = est.exact
    report.results["estimate"] = est.as_dict()
    report.lines.append(f"estimate: {est}")
    if est.note:
        report.lines.append(f"note: {est.note}")


def cmd_properties(args, report):
    lines = gk_property_report(args.n, cap=args.cap)
    report.results["properties"] = {l.name: {"passed": l.passed, "values": l.measured}
                                    for l in lines}
    report.lines += [str(l) for l in lines]
    if not all(l.passed for l in lines):
        report.status = FAILED


def cmd_center(args, report):
    doc, report.source = _load(args)
    P = doc.presentation
    if isinstance(P, WeylTypePresentation) and P.mode == CENTRAL:
        check = weyltype_center_check(P, args.degree)
        report.results.update(passed=check.passed, reason=check.reason,
                              basis=[str(b) for b in check.basis])
        report.lines += check.lines()
        if not check.passed:
            report.status = FAILED
        return
    result = centralizer_basis(P, args.degree, cap=args.cap)
    report.results.update(degree=args.degree, basis=result.as_strings(),
                          candidates=result.candidates)
    report.lines.append(f"candidates: {result.candidates}")
    report.lines.append("basis: {" + ", ".join(result.as_strings()) + "}")


def cmd_na_center(args, report):
    doc, report.source = _load(args)
    N = NAAlgebra(doc.presentation, _kappa(doc, args))
    r = na_center_superset(N, args.degree, args.test_degree)
    report.results.update(certified_zero=r.certified_zero, basis=[str(b) for b in r.basis],
                          candidates=r.candidates, tests=r.tests)
    report.lines += r.lines()
    P = doc.presentation
    one = P.one()
    witnesses = []
    for g in P.generators():
        left, right = N.multiply(one, g), N.multiply(g, one)
        if left != right:
            witnesses.append(f"1*{g} = {left} but {g}*1 = {right}")
    report.results["scalar_exclusion"] = witnesses
    report.lines += [f"scalar exclusion: {w}" for w in witnesses[:3]]


def cmd_na_growth(args, report):
    doc, report.source = _load(args)
    N = NAAlgebra(doc.presentation, _kappa(doc, args))
    try:
        T = na_growth_table(N, _subspace(doc, args), args.n, args.bracketing, args.cap)
    except NonAssocError as exc:
        raise InputError(str(exc)) from None
    _table_report(report, T)


def cmd_flexibility(args, report):
    doc, report.source = _load(args)
    N = NAAlgebra(doc.presentation, _kappa(doc, args))
    r = flexibility_report(N, args.degree)
    report.results.update(flexible=r.flexible, pairs=r.pairs,
                          witnesses=[[str(a), str(b), str(v)] for a, b, v in r.witnesses])
    report.lines += r.lines()[:1 + args.show]


def cmd_injectivity(args, report):
    doc, report.source = _load(args)
    N = NAAlgebra(doc.presentation, _kappa(doc, args))
    v = left_mult_injectivity(args.element, N, args.degree)
    report.results.update(injective=v.injective, rank=v.rank, candidates=v.candidates,
                          kernel=[str(k) for k in v.kernel])
    report.lines += v.lines()


def cmd_ore(args, report):
    doc, report.source = _load(args)
    P = doc.presentation
    sigma, delta = _pairs(args.sigma, "--sigma"), _pairs(args.delta, "--delta")
    if sigma or delta:
        Q = ore_extend(P, sigma, delta, args.var)
    elif hasattr(P, "ore_data"):
        Q, P = P, P.ore_data["base"]
    else:
        raise InputError("give --sigma/--delta, or a document with an ore_extension")
    z = Q.ore_data["variable"]
    zi = Q.index[z]
    rules = [f"{Q.word_label(lhs)} -> {Q.rhs_string(rhs)}"
             for lhs, rhs in sorted(Q.swaps.items()) if lhs[0] == zi]
    ea = gk_estimate(growth_table(GeneratingSubspace(P.default_subspace(), P), args.n, args.cap))
    eb = gk_estimate(growth_table(GeneratingSubspace(Q.default_subspace(), Q), args.n, args.cap))
    ok = ea.exact and eb.exact and eb.value == ea.value + 1
    report.exact = ea.exact and eb.exact
    report.results.update(rules=rules, base_estimate=ea.as_dict(), extension_estimate=eb.as_dict(),
                          passed=ok)
    report.lines += [f"rule: {r}" for r in rules]
    report.lines.append(f"base estimate: {ea}")
    report.lines.append(f"extension estimate: {eb}")
    report.lines.append(("PASS" if ok else "FAIL") + ": extension estimate = base + 1")
    if not ok:
        report.status = FAILED


def cmd_tensor(args, report):
    d1, s1 = _load(args)
    d2, s2 = _load(args, "other", "other_file")
    report.source = f"{s1} (x) {s2}"
    P1, P2 = d1.presentation, d2.presentation
    T = tensor_product(P1, P2)
    est = {}
    for label, P in (("A", P1), ("B", P2), ("A(x)B", T)):
        est[label] = gk_estimate(growth_table(GeneratingSubspace(P.default_subspace(), P),
                                              args.n, args.cap))
    ok = all(e.exact for e in est.values()) and \
        est["A(x)B"].value == est["A"].value + est["B"].value
    report.exact = all(e.exact for e in est.values())
    report.results.update(generators=list(T.gens), renaming=T.tensor_renaming,
                          estimates={k: e.as_dict() for k, e in est.items()}, passed=ok)
    report.lines.append("generators: " + ", ".join(T.gens))
    report.lines += [f"{k} estimate: {e}" for k, e in est.items()]
    report.lines.append(("PASS" if ok else "FAIL") + ": estimates add")
    if not ok:
        report.status = FAILED


def cmd_specialize(args, report):
    doc, report.source = _load(args)
    P = doc.presentation
    if doc.specialization:
        F = P.field
        holds = F.check_relations(doc.specialization)
        report.results["specialization"] = {k: str(v) for k, v in doc.specialization.items()}
        report.results["relations_hold"] = holds
        report.lines.append("specialization: " + ", ".join(
            f"{k} = {v}" for k, v in doc.specialization.items()))
        report.lines.append("relations hold" if holds else "relations fail")
        if not holds:
            report.status = FAILED
    if args.value is not None:
        if not isinstance(P, WeylTypePresentation):
            raise InputError("--value needs a Weyl-type presentation")
        fiber = specialize_y(P, P.field.parse(args.value))
        report.results["fiber"] = fiber.describe()
        report.results["fiber_generators"] = fiber.generator_names()
        report.lines.append(f"fiber at y = {args.value}: generators "
                            + ", ".join(fiber.generator_names()))
        r = centralizer_basis(fiber, args.degree, cap=args.cap)
        report.results["fiber_center"] = r.as_strings()
        report.lines.append(f"fiber center in degree <= {args.degree}: {{"
                            + ", ".join(r.as_strings()) + "}")
    elif not doc.specialization:
        raise InputError("nothing to specialize: give --value or a document with 'specialize'")


def cmd_confluence(args, report):
    doc, report.source = _load(args)
    if not isinstance(doc.presentation, PBWPresentation):
        raise InputError("confluence checks need a pbw-mode document")
    r = check_local_confluence(doc.presentation, args.degree)
    report.results.update(confluent=r.confluent, checked=r.checked,
                          failures=[list(map(str, f)) for f in r.failures])
    report.lines += r.lines()
    if not r.confluent:
        report.status = FAILED


def _int_vector(text, flag):
    try:
        return tuple(int(v) for v in text.replace(",", " ").split())
    except ValueError:
        raise InputError(f"{flag} must be integers, got {text!r}") from None


def cmd_iso(args, report):
    p1, p2 = _int_vector(args.p1, "--p1"), _int_vector(args.p2, "--p2")
    v = iso_decide(p1, args.t1, p2, args.t2, args.rank)
    report.results.update(iso=v.iso, reason=v.reason,
                          sigma=[list(r) for r in v.sigma.matrix] if v.sigma else None)
    report.lines += v.lines()


def cmd_automorphism(args, report):
    doc, report.source = _load(args)
    scales = {}
    for k, v in _pairs(args.scale, "--scale").items():
        parts = [doc.presentation.field.parse(s) for s in v.split(",")]
        scales[k] = parts if len(parts) > 1 else parts[0]
    sigma = None
    if args.sigma_matrix:
        rows = [_int_vector(r, "--sigma-matrix") for r in args.sigma_matrix.split(";")]
        sigma = ModuleAutomorphism(rows)
    phi = AutomorphismSpec(scales, sigma, args.involution)
    r = verify_endomorphism(phi, doc.presentation, args.degree)
    report.results.update(passed=r.passed, checked=r.checked, notes=r.notes,
                          witnesses=[[w, str(res)] for w, res in r.witnesses])
    report.lines += r.lines()
    if not r.passed:
        report.status = FAILED


def cmd_parse(args, report):
    doc, report.source = _load(args)
    P = doc.presentation
    info = {"name": doc.name, "kind": type(P).__name__,
            "generators": P.generator_names(), "subspaces": sorted(doc.subspaces)}
    if isinstance(P, WeylTypePresentation):
        info.update(P.describe())
    else:
        info["rules"] = [f"{P.word_label(l)} -> {P.rhs_string(r)}" for l, r in P.rules()]
    report.results.update(info)
    report.lines += [f"{k}: {v}" for k, v in info.items()]
    if args.emit:
        report.results["document"] = json.loads(serialize_document(doc))
        report.lines.append(serialize_document(doc).rstrip())


COMMANDS = {
    "growth": cmd_growth, "gkdim": cmd_gkdim, "properties": cmd_properties,
    "center": cmd_center, "na-center": cmd_na_center, "na-growth": cmd_na_growth,
    "flexibility": cmd_flexibility, "injectivity": cmd_injectivity, "ore": cmd_ore,
    "tensor": cmd_tensor, "specialize": cmd_specialize, "confluence": cmd_confluence,
    "iso": cmd_iso, "automorphism": cmd_automorphism, "parse": cmd_parse,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="monomial cap; exceeding it exits with code 3")

    doc = argparse.ArgumentParser(add_help=False)
    doc.add_argument("--preset", help=f"one of: {', '.join(presets.names())}")
    doc.add_argument("--file", help="path to a .alg.json document")
    doc.add_argument("--subspace", help="named generating subspace (default V)")

    na = argparse.ArgumentParser(add_help=False)
    na.add_argument("--kappa", choices=("doc", "zero", "default"), default="doc",
                    help="bilinear form: the document's, zero, or the default +-1 form")
    na.add_argument("--kappa-seed", help="JSON file listing seed monomials for the default form")

    parser = argparse.ArgumentParser(prog="weyltype", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *parents):
        return sub.add_parser(name, help=help_text, parents=[common, *parents])

    p = add("growth", "dim V^n for n = 1..N", doc)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--module", action="store_true", help="use the document's module rules")
    p = add("gkdim", "growth table plus a GK-dimension estimate", doc)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--module", action="store_true")
    p.add_argument("--method", choices=("finite_difference", "log_ratio"),
                   default="finite_difference")
    p = add("properties", "GK property suite over the shipped presets")
    p.add_argument("--n", type=int, default=8)
    p = add("center", "centralizer of the generators up to a degree", doc)
    p.add_argument("--degree", type=int, default=3)
    p = add("na-center", "center superset for the Jordan-kappa product", doc, na)
    p.add_argument("--degree", type=int, default=3, help="candidate degree")
    p.add_argument("--test-degree", type=int, default=3)
    p = add("na-growth", "growth of the Jordan-kappa product", doc, na)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--bracketing", choices=(ALL, LEFT_NORMED), default=ALL)
    p = add("flexibility", "check (a*b)*a = a*(b*a) on monomial pairs", doc, na)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--show", type=int, default=5, help="witnesses to print")
    p = add("injectivity", "rank of v -> u*v on a truncation", doc, na)
    p.add_argument("--element", default="x")
    p.add_argument("--degree", type=int, default=3)
    p = add("ore", "Ore extension and its growth", doc)
    p.add_argument("--sigma", action="append", metavar="GEN=EXPR")
    p.add_argument("--delta", action="append", metavar="GEN=EXPR")
    p.add_argument("--var", default="z")
    p.add_argument("--n", type=int, default=8)
    p = add("tensor", "tensor product of two presentations", doc)
    p.add_argument("--other", help="second preset")
    p.add_argument("--other-file", help="second document")
    p.add_argument("--n", type=int, default=8)
    p = add("specialize", "check constant specializations or take a fiber y = value", doc)
    p.add_argument("--value")
    p.add_argument("--degree", type=int, default=2)
    p = add("confluence", "local confluence of the rewriting rules", doc)
    p.add_argument("--degree", type=int, default=6)
    p = add("iso", "isomorphism test for A(p1, t1) and A(p2, t2)")
    p.add_argument("--rank", type=int)
    p.add_argument("--p1", required=True)
    p.add_argument("--t1", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--t2", required=True)
    p = add("automorphism", "verify a rescaling / exponent map / involution", doc)
    p.add_argument("--scale", action="append", metavar="GEN=VALUE",
                   help="per-coordinate values are comma separated")
    p.add_argument("--sigma-matrix", help="rows separated by ';', e.g. '0 1; 1 0'")
    p.add_argument("--involution", action="store_true")
    p.add_argument("--degree", type=int, default=2)
    p = add("parse", "validate a document and print a summary", doc)
    p.add_argument("--emit", action="store_true", help="print the serialized document")
    return parser


INPUT_ERRORS = (InputError, DSLError, ParseError, AlgebraError, ExponentError, ScalarError,
                MorphismError, NonAssocError, GrowthError, OSError, json.JSONDecodeError)


def dispatch(argv=None, out=None):
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report = CommandReport(args.command, argv=argv)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, report)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP
    except CenterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    report.elapsed = time.perf_counter() - start
    try:
        out.write(report.render(args.format))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    return report.status


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
