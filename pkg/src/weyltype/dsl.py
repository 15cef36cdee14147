"""JSON presentation documents (``*.alg.json``): parsing and serialization.

Top-level keys::

    name, description              free text
    constants                      [{name, kind, minpoly, t_derivative}]
    relations                      ["c^2 - s^2 - 1", ...] (scalar strings)
    specialize                     {"s": "3/4", ...} checked against the relations
    mode                           "pbw" | "central" | "analytic" | "none"
    exponent_module                {rank, embeddings, unit}   (builtin modes)
    p, with_dt, hyper_constant, t_tag                          (builtin modes)
    generators, rules, reductions  PBW data; rule = {"lhs": [g, g], "rhs": "..."}
    ore_extension                  {"sigma": {g: str}, "delta": {g: str}, "variable": "z"}
    confluence_asserted            bool
    module_rules                   rules for a cyclic module A/J
    subspaces                      {"V": ["x", "y", ...], ...}
    kappa                          "default" | "zero" | [{"m1", "m2", "value"}]
    kappa_seed                     element strings (monomials) for the default form

Scalars are always exact strings; JSON numbers are accepted only as integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ._text import ParseError
from .algebra.constructions import ore_extend
from .algebra.core import AlgebraError
from .algebra.pbw import PBWPresentation
from .algebra.weyltype import ANALYTIC, CENTRAL, NONE, WeylTypePresentation
from .exponents import ExponentError, ExponentModule
from .growth import GeneratingSubspace
from .nonassoc import KappaForm, NAAlgebra
from .scalars import ConstantSpec, ScalarError, ScalarField

ALLOWED_KEYS = {
    "name", "description", "constants", "relations", "specialize", "mode", "exponent_module",
    "p", "with_dt", "hyper_constant", "t_tag", "generators", "rules", "reductions",
    "ore_extension", "confluence_asserted", "module_rules", "subspaces", "kappa", "kappa_seed",
}
PBW = "pbw"


class DSLError(ValueError):
    """Document error with a field path and, for syntax errors, line and column."""

    def __init__(self, message, path="", line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = []
        if path:
            where.append(path)
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message}" + (f" ({', '.join(where)})" if where else ""))


@dataclass
class PresentationDocument:
    name: str
    presentation: object
    description: str = ""
    subspaces: dict = field(default_factory=dict)
    module_rules: list = field(default_factory=list)
    kappa: KappaForm = None
    specialization: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)

    @property
    def builtin(self):
        return isinstance(self.presentation, WeylTypePresentation)

    @property
    def default_subspace_name(self):
        return "V" if "V" in self.subspaces or not self.subspaces else next(iter(self.subspaces))

    def subspace(self, name="V"):
        if name not in self.subspaces:
            if name == "V" and not self.subspaces:
                return GeneratingSubspace(self.presentation.default_subspace(),
                                          self.presentation, "V")
            raise DSLError(f"unknown subspace {name!r}", "subspaces")
        return GeneratingSubspace(self.subspaces[name], self.presentation, name)

    def na_algebra(self):
        return NAAlgebra(self.presentation, self.kappa or KappaForm.zero())


def _expect(cond, message, path):
    if not cond:
        raise DSLError(message, path)


def _scalar_string(value, path):
    if isinstance(value, bool) or isinstance(value, float):
        raise DSLError("scalars must be exact strings or integers", path)
    if isinstance(value, int):
        return str(value)
    _expect(isinstance(value, str), "expected a scalar string", path)
    return value


def _parse_field(doc):
    specs = []
    for i, c in enumerate(doc.get("constants", [])):
        path = f"constants[{i}]"
        _expect(isinstance(c, dict), "constant must be an object", path)
        unknown = set(c) - {"name", "kind", "minpoly", "t_derivative"}
        _expect(not unknown, f"unknown keys {sorted(unknown)}", path)
        kind = c.get("kind", "transcendental")
        minpoly = tuple(Fraction(_scalar_string(v, f"{path}.minpoly[{k}]"))
                        for k, v in enumerate(c.get("minpoly", [])))
        deriv = c.get("t_derivative")
        specs.append(ConstantSpec(c.get("name", ""), kind, minpoly,
                                  None if deriv is None else str(deriv)))
    try:
        F = ScalarField(specs)
    except ScalarError as exc:
        raise DSLError(str(exc), "constants") from None
    relations = []
    for i, r in enumerate(doc.get("relations", [])):
        try:
            relations.append(F.parse(_scalar_string(r, f"relations[{i}]")))
        except ParseError as exc:
            raise DSLError(str(exc), f"relations[{i}]", column=exc.column) from None
    F.relations = tuple(relations)
    return F


def _parse_rules(doc, key, gens):
    out = []
    for i, rule in enumerate(doc.get(key, [])):
        path = f"{key}[{i}]"
        _expect(isinstance(rule, dict) and set(rule) <= {"lhs", "rhs"} and "lhs" in rule,
                "rule must be an object with lhs and rhs", path)
        lhs = rule["lhs"]
        if isinstance(lhs, str):
            lhs = lhs.split()
        _expect(isinstance(lhs, list) and all(isinstance(g, str) for g in lhs),
                "lhs must be a list of generator names", f"{path}.lhs")
        for g in lhs:
            _expect(g in gens, f"unknown generator {g!r}", f"{path}.lhs")
        rhs = _scalar_string(rule.get("rhs", "0"), f"{path}.rhs")
        out.append((lhs, rhs, path))
    return out


def _build_pbw(doc, F):
    gens = doc.get("generators")
    _expect(isinstance(gens, list) and gens and all(isinstance(g, str) for g in gens),
            "pbw mode needs a nonempty list of generator names", "generators")
    swaps, swap_paths = {}, {}
    for lhs, rhs, path in _parse_rules(doc, "rules", gens):
        _expect(len(lhs) == 2, "swap rules have two-letter left sides", f"{path}.lhs")
        swaps[tuple(lhs)] = rhs
        swap_paths[tuple(lhs)] = path
    reductions = [(lhs, rhs) for lhs, rhs, _ in _parse_rules(doc, "reductions", gens)]
    try:
        P = PBWPresentation(gens, swaps, reductions, F, doc.get("name", ""),
                            bool(doc.get("confluence_asserted", False)))
    except ParseError as exc:
        path = "rules"
        for key in ("rules", "reductions"):
            for i, rule in enumerate(doc.get(key, [])):
                if rule.get("rhs") == exc.text:
                    path = f"{key}[{i}].rhs"
        raise DSLError(str(exc), path, column=exc.column) from None
    except AlgebraError as exc:
        path = "rules"
        for lhs, p in swap_paths.items():
            if "".join(lhs) in str(exc) or " ".join(lhs) in str(exc):
                path = p
        raise DSLError(str(exc), path) from None
    ore = doc.get("ore_extension")
    if ore is not None:
        _expect(isinstance(ore, dict) and set(ore) <= {"sigma", "delta", "variable"},
                "ore_extension must have sigma, delta, variable", "ore_extension")
        try:
            P = ore_extend(P, ore.get("sigma") or {}, ore.get("delta") or {},
                           ore.get("variable", "z"), new_name=doc.get("name", ""))
        except (AlgebraError, ParseError) as exc:
            raise DSLError(str(exc), "ore_extension") from None
    return P


def _build_builtin(doc, F, mode):
    em = doc.get("exponent_module", {"rank": 1, "embeddings": ["1"], "unit": [1]})
    _expect(isinstance(em, dict), "exponent_module must be an object", "exponent_module")
    unknown = set(em) - {"rank", "embeddings", "unit"}
    _expect(not unknown, f"unknown keys {sorted(unknown)}", "exponent_module")
    rank = em.get("rank", 1)
    _expect(isinstance(rank, int) and rank >= 1, "rank must be a positive integer",
            "exponent_module.rank")
    emb = em.get("embeddings", ["1"] + ["0"] * (rank - 1))
    try:
        embeddings = tuple(F.parse(_scalar_string(e, f"exponent_module.embeddings[{i}]"))
                           for i, e in enumerate(emb))
        unit = tuple(em.get("unit", [1] + [0] * (rank - 1)))
        module = ExponentModule(rank, embeddings, unit, F)
    except ParseError as exc:
        raise DSLError(str(exc), "exponent_module.embeddings", column=exc.column) from None
    except (ExponentError, ScalarError, TypeError) as exc:
        raise DSLError(str(exc), "exponent_module") from None
    p = doc.get("p", list(module.unit))
    _expect(isinstance(p, list) and all(isinstance(v, int) for v in p),
            "p must be a list of integers", "p")
    _expect(len(p) == rank, f"p must have {rank} coordinates", "p")
    _expect(any(p), "p must be nonzero", "p")
    try:
        return WeylTypePresentation(
            module, tuple(p), mode, bool(doc.get("with_dt", False)),
            doc.get("hyper_constant", "s"), doc.get("t_tag", "t"), doc.get("name", ""))
    except AlgebraError as exc:
        raise DSLError(str(exc), "mode") from None


def _element(P, text, path):
    try:
        return P.element(_scalar_string(text, path))
    except ParseError as exc:
        raise DSLError(str(exc), path, column=exc.column) from None
    except (AlgebraError, ExponentError, ScalarError) as exc:
        raise DSLError(str(exc), path) from None


def _monomial_key(P, text, path):
    e = _element(P, text, path)
    _expect(len(e.terms) == 1 and next(iter(e.terms.values())) == 1,
            f"{text!r} is not a monomial", path)
    return next(iter(e.terms))


def build_document(doc, source=""):
    """Validate a decoded JSON object and build the presentation document."""
    if not isinstance(doc, dict):
        raise DSLError("document must be a JSON object")
    unknown = set(doc) - ALLOWED_KEYS
    if unknown:
        raise DSLError(f"unknown keys {sorted(unknown)}", sorted(unknown)[0])
    F = _parse_field(doc)
    specialization = {}
    if "specialize" in doc:
        spec = doc["specialize"]
        _expect(isinstance(spec, dict), "specialize must be an object", "specialize")
        try:
            values = {k: Fraction(_scalar_string(v, f"specialize.{k}")) for k, v in spec.items()}
            F.specialize(values)
        except (ValueError, ZeroDivisionError, ScalarError) as exc:
            raise DSLError(str(exc), "specialize") from None
        specialization = values
    mode = doc.get("mode", PBW)
    _expect(mode in (PBW, CENTRAL, ANALYTIC, NONE), f"unknown mode {mode!r}", "mode")
    if mode == PBW:
        builtin_keys = {"exponent_module", "p", "with_dt", "hyper_constant", "t_tag"} & set(doc)
        _expect(not builtin_keys, f"keys {sorted(builtin_keys)} need a builtin mode",
                sorted(builtin_keys)[0] if builtin_keys else "")
        P = _build_pbw(doc, F)
    else:
        pbw_keys = {"generators", "rules", "reductions", "ore_extension"} & set(doc)
        _expect(not pbw_keys, f"keys {sorted(pbw_keys)} need mode pbw",
                sorted(pbw_keys)[0] if pbw_keys else "")
        P = _build_builtin(doc, F, mode)

    subspaces = {}
    raw_sub = doc.get("subspaces", {})
    _expect(isinstance(raw_sub, dict), "subspaces must be an object", "subspaces")
    for name, items in raw_sub.items():
        _expect(isinstance(items, list) and items, "subspace must be a nonempty list",
                f"subspaces.{name}")
        subspaces[name] = [_element(P, t, f"subspaces.{name}[{i}]") for i, t in enumerate(items)]

    module_rules = []
    if "module_rules" in doc:
        _expect(mode == PBW, "module rules need mode pbw", "module_rules")
        module_rules = [(lhs, rhs) for lhs, rhs, _ in _parse_rules(doc, "module_rules", P.gens)]
        for i, (_, rhs) in enumerate(module_rules):
            _element(P, rhs, f"module_rules[{i}].rhs")

    kappa = None
    raw_k = doc.get("kappa")
    if raw_k is not None:
        if raw_k == "default":
            seed = None
            if "kappa_seed" in doc:
                seed = [_element(P, t, f"kappa_seed[{i}]") for i, t in enumerate(doc["kappa_seed"])]
            try:
                kappa = KappaForm.default(P, seed)
            except ValueError as exc:
                raise DSLError(str(exc), "kappa_seed") from None
        elif raw_k == "zero":
            kappa = KappaForm.zero()
        else:
            _expect(isinstance(raw_k, list), "kappa must be 'default', 'zero' or a table", "kappa")
            table = {}
            for i, entry in enumerate(raw_k):
                path = f"kappa[{i}]"
                _expect(isinstance(entry, dict) and set(entry) == {"m1", "m2", "value"},
                        "kappa entries need m1, m2, value", path)
                k1 = _monomial_key(P, entry["m1"], f"{path}.m1")
                k2 = _monomial_key(P, entry["m2"], f"{path}.m2")
                try:
                    table[(k1, k2)] = F.parse(_scalar_string(entry["value"], f"{path}.value"))
                except ParseError as exc:
                    raise DSLError(str(exc), f"{path}.value", column=exc.column) from None
            kappa = KappaForm(table)
    elif "kappa_seed" in doc:
        raise DSLError("kappa_seed needs kappa = 'default'", "kappa_seed")

    return PresentationDocument(doc.get("name", source), P, doc.get("description", ""),
                                subspaces, module_rules, kappa, specialization, doc)


def parse_presentation(text, source=""):
    """Parse document text; returns a :class:`PresentationDocument`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DSLError(f"syntax error: {exc.msg}", source, exc.lineno, exc.colno) from None
    return build_document(doc, source)


def load_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read(), str(path))


# -- serialization ----------------------------------------------------------------

def _field_json(F):
    out = {}
    if F.constants:
        out["constants"] = []
        for c in F.constants:
            entry = {"name": c.name, "kind": c.kind}
            if c.minpoly:
                entry["minpoly"] = [str(v) for v in c.minpoly]
            if c.t_derivative is not None:
                entry["t_derivative"] = c.t_derivative
            out["constants"].append(entry)
    if F.relations:
        out["relations"] = [str(r) for r in F.relations]
    return out


def presentation_to_dict(P, subspaces=None, name=None):
    doc = {}
    if name or P.name:
        doc["name"] = name or P.name
    doc.update(_field_json(P.field))
    if isinstance(P, PBWPresentation):
        doc["mode"] = PBW
        doc["generators"] = list(P.gens)
        doc["rules"] = [{"lhs": [P.gens[i] for i in lhs], "rhs": P.rhs_string(rhs)}
                        for lhs, rhs in sorted(P.swaps.items())]
        if P.reductions:
            doc["reductions"] = [{"lhs": [P.gens[i] for i in lhs], "rhs": P.rhs_string(rhs)}
                                 for lhs, rhs in P.reductions]
        if P.confluence_asserted:
            doc["confluence_asserted"] = True
    elif isinstance(P, WeylTypePresentation):
        doc["mode"] = P.mode
        m = P.module
        doc["exponent_module"] = {"rank": m.rank, "embeddings": [str(e) for e in m.embeddings],
                                  "unit": list(m.unit)}
        doc["p"] = list(P.p)
        if P.with_dt:
            doc["with_dt"] = True
        if P.mode == ANALYTIC:
            doc["hyper_constant"] = P.hyper_constant
        doc["t_tag"] = P.t_tag
    else:
        raise DSLError(f"cannot serialize {P!r}")
    if subspaces:
        doc["subspaces"] = {k: [str(e) for e in v] for k, v in subspaces.items()}
    return doc


def serialize_presentation(P, subspaces=None, name=None):
    return json.dumps(presentation_to_dict(P, subspaces, name), indent=2, ensure_ascii=False) + "\n"


def serialize_document(doc: PresentationDocument):
    """Re-emit a document; extra keys (kappa, module rules, ...) are kept from the source."""
    out = presentation_to_dict(doc.presentation, doc.subspaces, doc.name)
    for key in ("description", "specialize", "module_rules", "kappa", "kappa_seed"):
        if key in doc.raw:
            out[key] = doc.raw[key]
    return json.dumps(out, indent=2, ensure_ascii=False) + "\n"


__all__ = [
    "ALLOWED_KEYS", "DSLError", "PresentationDocument", "build_document", "load_file",
    "parse_presentation", "presentation_to_dict", "serialize_document",
    "serialize_presentation",
]
