"""Reading and writing trimat-doc/1 workspace documents.

A document is a JSON object::

    {
      "format": "trimat-doc/1",
      "field": "rational" | "fp:<p>",
      "algebras":  {name: spec, ...},
      "bimodules": {name: spec, ...},
      "modules":   {name: spec, ...},
      "triplets":  {name: spec, ...},
      "matrices":  {name: [[...], ...], ...},
      "defaults":  {"triplet": name, "tilting": name, "algebra": name, ...}
    }

Scalars are integers or "p/q" strings.  Action matrices may be given as
a list (one per basis element, in basis order) or as a dict keyed by
basis labels; missing labels act as zero.  See README for every object kind.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import linalg as la
from .algebra import (
    Algebra,
    Bimodule,
    RightModule,
    algebra_from_structure_constants,
    bimodule_from_right_module,
    direct_sum,
    dual_bimodule,
    dual_regular_module,
    field_algebra,
    path_algebra,
    product_algebra,
    projective_module,
    regular_bimodule,
    regular_module,
    simple_module,
    truncated_polynomial,
)
from .errors import DocumentError, TrimatError
from .linalg import Field, field_from_spec
from .triangular import TriangularData, build_triangular

FORMAT = "trimat-doc/1"
SECTIONS = ("algebras", "bimodules", "modules", "triplets", "matrices")


def parse_scalar(x, where: str):
    if isinstance(x, bool):
        raise DocumentError(where, "booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(where, f"cannot parse scalar {x!r}") from None
    if isinstance(x, float):
        raise DocumentError(where, "floating-point scalars are not allowed; use \"p/q\"")
    raise DocumentError(where, f"unexpected scalar {x!r}")


def format_scalar(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, la.ModP):
        return x.v
    return x


def to_json_value(obj):
    """Recursively convert exact scalars for JSON output."""
    if isinstance(obj, dict):
        return {str(k): to_json_value(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json_value(v) for v in obj]
    if isinstance(obj, (Fraction, la.ModP)):
        return format_scalar(obj)
    return obj


def _matrix(F: Field, m, where: str, rows: int | None = None, cols: int | None = None):
    if not isinstance(m, list) or any(not isinstance(r, list) for r in m):
        raise DocumentError(where, "matrix must be a list of rows")
    out = [[F(parse_scalar(x, f"{where}[{i}][{j}]")) for j, x in enumerate(r)] for i, r in enumerate(m)]
    if rows is not None and len(out) != rows:
        raise DocumentError(where, f"expected {rows} rows, got {len(out)}")
    if cols is not None and any(len(r) != cols for r in out):
        raise DocumentError(where, f"expected {cols} columns")
    return out


def _vector(F: Field, v, where: str, n: int | None = None):
    if not isinstance(v, list):
        raise DocumentError(where, "vector must be a list")
    out = [F(parse_scalar(x, f"{where}[{i}]")) for i, x in enumerate(v)]
    if n is not None and len(out) != n:
        raise DocumentError(where, f"expected length {n}, got {len(out)}")
    return out


def _element(F: Field, A_labels: list, spec, where: str):
    """Vector from a list or a {label: coefficient} dict."""
    n = len(A_labels)
    if isinstance(spec, dict):
        v = [F.zero] * n
        for lab, c in spec.items():
            if lab not in A_labels:
                raise DocumentError(where, f"unknown basis label {lab!r}")
            v[A_labels.index(lab)] = F(parse_scalar(c, f"{where}.{lab}"))
        return v
    return _vector(F, spec, where, n)


def _actions(F: Field, A: Algebra, spec, dim: int, where: str):
    if isinstance(spec, dict):
        out = [la.zeros(dim, dim, F) for _ in range(A.dim)]
        for lab, m in spec.items():
            if lab not in A.labels:
                raise DocumentError(where, f"unknown basis label {lab!r} of {A.name}")
            out[A.labels.index(lab)] = _matrix(F, m, f"{where}.{lab}", dim, dim)
        # the unit must act as the identity; fill it in when omitted
        if A.unit.count(F.one) == 1 and sum(1 for c in A.unit if c) == 1:
            u = A.unit.index(F.one)
            if A.labels[u] not in spec:
                out[u] = la.identity(dim, F)
        return out
    if not isinstance(spec, list) or len(spec) != A.dim:
        raise DocumentError(where, f"expected {A.dim} action matrices")
    return [_matrix(F, m, f"{where}[{g}]", dim, dim) for g, m in enumerate(spec)]


@dataclass
class Workspace:
    """Lazily built objects of a document."""

    raw: dict
    field: Field
    source: str = "<document>"
    _cache: dict = dc_field(default_factory=dict)
    _building: set = dc_field(default_factory=set)

    # -- lookup -------------------------------------------------------------
    def kind_of(self, name: str) -> str:
        hits = [s for s in SECTIONS if name in self.raw.get(s, {})]
        if not hits:
            raise DocumentError(self.source, f"no object named {name!r}")
        if len(hits) > 1:
            raise DocumentError(self.source, f"name {name!r} is ambiguous ({', '.join(hits)})")
        return hits[0]

    def get(self, name: str, section: str | None = None):
        section = section or self.kind_of(name)
        if name not in self.raw.get(section, {}):
            raise DocumentError(f"{self.source}:{section}", f"no {section[:-1]} named {name!r}")
        key = (section, name)
        if key in self._cache:
            return self._cache[key]
        if key in self._building:
            raise DocumentError(f"{section}.{name}", "circular reference")
        self._building.add(key)
        try:
            spec = self.raw[section][name]
            where = f"{section}.{name}"
            builder = {
                "algebras": self._algebra,
                "bimodules": self._bimodule,
                "modules": self._module,
                "triplets": self._triplet,
                "matrices": self._int_matrix,
            }[section]
            try:
                obj = builder(spec, where, name)
            except DocumentError:
                raise
            except TrimatError as e:
                raise DocumentError(where, f"{type(e).__name__}: {e}") from e
            except (KeyError, TypeError, IndexError, ValueError, ZeroDivisionError) as e:
                raise DocumentError(where, f"malformed spec ({type(e).__name__}: {e})") from e
        finally:
            self._building.discard(key)
        self._cache[key] = obj
        return obj

    def algebra(self, name):
        return self.get(name, "algebras")

    def bimodule(self, name):
        return self.get(name, "bimodules")

    def module(self, name):
        return self.get(name, "modules")

    def triplet(self, name):
        return self.get(name, "triplets")

    def default(self, role: str):
        d = self.raw.get("defaults", {})
        if role in d:
            return d[role]
        section = {"triplet": "triplets", "algebra": "algebras", "tilting": "modules", "matrix": "matrices"}.get(role)
        names = list(self.raw.get(section, {})) if section else []
        if len(names) == 1:
            return names[0]
        return None

    def validate_all(self) -> dict:
        counts = {}
        for s in SECTIONS:
            for name in self.raw.get(s, {}):
                self.get(name, s)
            counts[s] = len(self.raw.get(s, {}))
        return counts

    # -- builders -----------------------------------------------------------
    def _int_matrix(self, spec, where, name):
        m = _matrix(la.QQ, spec, where)
        for i, r in enumerate(m):
            for j, x in enumerate(r):
                if x.denominator != 1:
                    raise DocumentError(f"{where}[{i}][{j}]", "integer matrix expected")
        return [[int(x) for x in r] for r in m]

    def _algebra(self, spec, where, name) -> Algebra:
        F = self.field
        kind = spec.get("kind", "structure")
        if kind == "structure":
            labels = list(spec["labels"])
            n = len(labels)
            table = {}
            for t, p in enumerate(spec.get("products", [])):
                w = f"{where}.products[{t}]"
                if isinstance(p, dict):
                    a, b, res = p["left"], p["right"], p["result"]
                else:
                    a, b, res = p
                for lab in (a, b):
                    if lab not in labels:
                        raise DocumentError(w, f"unknown basis label {lab!r}")
                vec = _element(F, labels, res, w)
                i, j = labels.index(a), labels.index(b)
                if (i, j) in table:
                    raise DocumentError(w, f"product {a}*{b} given twice")
                table[(i, j)] = {k: c for k, c in enumerate(vec) if c}
            unit = _element(F, labels, spec["unit"], f"{where}.unit")
            idem = [_element(F, labels, e, f"{where}.idempotents[{t}]") for t, e in enumerate(spec["idempotents"])]
            return algebra_from_structure_constants(F, labels, table, unit, idem, name=name)
        if kind == "quiver":
            arrows = [tuple(a) for a in spec["arrows"]]
            rels = []
            for t, r in enumerate(spec.get("relations", [])):
                rels.append({k: parse_scalar(c, f"{where}.relations[{t}].{k}") for k, c in r.items()})
            return path_algebra(F, spec["vertices"], arrows, rels, spec.get("bound"), name=name)
        if kind == "truncated_polynomial":
            return truncated_polynomial(F, int(spec["n"]), spec.get("var", "x"), name=name)
        if kind == "field":
            return field_algebra(F, name=name)
        if kind == "product":
            fs = [self.algebra(x) for x in spec["factors"]]
            A = fs[0]
            for B in fs[1:]:
                A = product_algebra(A, B)
            A.name = name
            return A
        if kind == "trivial_extension":
            from .invariants import trivial_extension

            return trivial_extension(self.algebra(spec["algebra"]), self.bimodule(spec["bimodule"]), name=name)
        if kind == "triangular":
            A = build_triangular(self.triplet(spec["triplet"])).algebra
            A.name = name
            return A
        raise DocumentError(where, f"unknown algebra kind {kind!r}")

    def _bimodule(self, spec, where, name) -> Bimodule:
        F = self.field
        kind = spec.get("kind", "explicit")
        if kind == "explicit":
            R, S = self.algebra(spec["left"]), self.algebra(spec["right"])
            dim = int(spec["dim"])
            L = _actions(F, R, spec["left_action"], dim, f"{where}.left_action")
            Ra = _actions(F, S, spec["right_action"], dim, f"{where}.right_action")
            return Bimodule(R, S, L, Ra, dim, name=name)
        if kind == "regular":
            return regular_bimodule(self.algebra(spec["algebra"]))
        if kind == "dual":
            return dual_bimodule(self.bimodule(spec["of"]))
        if kind == "from_right_module":
            X = self.module(spec["module"])
            k = self.algebra(spec["field_algebra"]) if "field_algebra" in spec else None
            return bimodule_from_right_module(X, k)
        raise DocumentError(where, f"unknown bimodule kind {kind!r}")

    def _module(self, spec, where, name) -> RightModule:
        F = self.field
        kind = spec.get("kind", "explicit")
        if kind == "explicit":
            A = self.algebra(spec["algebra"])
            dim = int(spec["dim"])
            return RightModule(A, _actions(F, A, spec["action"], dim, f"{where}.action"), dim, name=name)
        if kind == "regular":
            return regular_module(self.algebra(spec["algebra"]))
        if kind == "dual_regular":
            return dual_regular_module(self.algebra(spec["algebra"]))
        if kind in ("simple", "projective"):
            A = self.algebra(spec["algebra"])
            i = int(spec["vertex"])
            if not 0 <= i < len(A.idempotents):
                raise DocumentError(f"{where}.vertex", f"vertex index out of range (0..{len(A.idempotents) - 1})")
            return simple_module(A, i) if kind == "simple" else projective_module(A, i)
        if kind == "sum":
            parts = [self.module(x) for x in spec["summands"]]
            return direct_sum(parts)
        if kind == "bimodule_right":
            return self.bimodule(spec["bimodule"]).right_module()
        raise DocumentError(where, f"unknown module kind {kind!r}")

    def _triplet(self, spec, where, name) -> TriangularData:
        kind = spec.get("kind", "explicit")
        if kind == "explicit":
            return TriangularData(self.algebra(spec["R"]), self.algebra(spec["S"]), self.bimodule(spec["M"]), name=name)
        if kind in ("one_point_extension", "one_point_coextension"):
            from .mate import module_as_bimodule, one_point_coextension, one_point_extension

            R = self.algebra(spec["algebra"])
            N = module_as_bimodule(self.module(spec["module"]), self.algebra(spec["field_algebra"]) if "field_algebra" in spec else None)
            if N.right_algebra is not R:
                raise DocumentError(where, "module must be over the given algebra")
            f = one_point_extension if kind == "one_point_extension" else one_point_coextension
            d = f(R, N)
            d.name = name
            return d
        raise DocumentError(where, f"unknown triplet kind {kind!r}")


def load_document(data: dict, field_override: str | None = None, source: str = "<document>") -> Workspace:
    if not isinstance(data, dict):
        raise DocumentError(source, "document must be a JSON object")
    fmt = data.get("format", FORMAT)
    if fmt != FORMAT:
        raise DocumentError(f"{source}:format", f"unsupported format {fmt!r} (expected {FORMAT})")
    unknown = set(data) - {"format", "field", "defaults", "description", *SECTIONS}
    if unknown:
        raise DocumentError(source, f"unknown top-level keys {sorted(unknown)}")
    for s in SECTIONS:
        if not isinstance(data.get(s, {}), dict):
            raise DocumentError(f"{source}:{s}", "section must be an object")
    try:
        F = field_from_spec(field_override or data.get("field", "rational"))
    except (ValueError, TrimatError) as e:
        raise DocumentError(f"{source}:field", str(e)) from e
    return Workspace(data, F, source)


def fixture_names() -> list[str]:
    root = resources.files("trimat") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def fixture_data(name: str) -> dict:
    p = resources.files("trimat") / "fixtures" / f"{name}.json"
    if not p.is_file():
        raise DocumentError(f"fixtures:{name}", f"no bundled fixture {name!r} (have {', '.join(fixture_names())})")
    return json.loads(p.read_text())


def read_source(source: str) -> tuple[dict, str]:
    if source.startswith("fixtures:"):
        return fixture_data(source[len("fixtures:"):]), source
    path = Path(source)
    if not path.is_file():
        raise DocumentError(source, "no such file")
    try:
        return json.loads(path.read_text()), source
    except json.JSONDecodeError as e:
        raise DocumentError(f"{source}:{e.lineno}:{e.colno}", f"invalid JSON: {e.msg}") from e


def resolve(ref: str, field_override: str | None = None, cache: dict | None = None) -> tuple[Workspace, str | None]:
    """``source[#name]`` -> (workspace, name or None)."""
    source, _, name = ref.partition("#")
    cache = cache if cache is not None else {}
    key = (source, field_override)
    if key not in cache:
        data, src = read_source(source)
        cache[key] = load_document(data, field_override, src)
    return cache[key], (name or None)


def algebra_to_spec(A: Algebra) -> dict:
    """Structure-constant spec of an algebra (round-trips through the loader)."""
    prods = []
    for i in range(A.dim):
        for j in range(A.dim):
            if A.mult[i][j]:
                prods.append({
                    "left": A.labels[i],
                    "right": A.labels[j],
                    "result": {A.labels[k]: format_scalar(c) for k, c in sorted(A.mult[i][j].items()) if c},
                })
    return {
        "kind": "structure",
        "labels": list(A.labels),
        "products": prods,
        "unit": [format_scalar(c) for c in A.unit],
        "idempotents": [[format_scalar(c) for c in e] for e in A.idempotents],
    }
