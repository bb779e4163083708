"""Versioned run descriptions for the command-line front end.

A spec file is one JSON document naming a coefficient field, a backend
(finite-dimensional algebra or graded polynomial ring), the object itself
(either a bundled fixture by name or an explicit structure-constant payload),
the analyses to run, where to localise, and the budgets that seed every
randomized search.  Parsing is strict by default — unknown keys are errors —
and the lenient mode downgrades them to collected warnings.  emit_spec is the
canonical serializer: parse_spec(emit_spec(s)) == s.
"""

from __future__ import annotations

import json

from .dgcore import DgAlgebra, Element, algebra_from_products
from .dgpoly import GradedPolyRing, SparsePoly, poly_ring_kx
from .errors import SpecError
from .fields import Field, field_from_json, field_to_json, GF, QQ
from . import fixtures

SPEC_VERSION = 1

ANALYSES = (
    "validate",
    "radicals",
    "singular",
    "essential",
    "localise",
    "goldie",
    "homcompare",
)

DEFAULT_BUDGETS = {"budget": 5000, "samples": 200, "seed": 0, "window": 20}

_TOP_KEYS = {
    "version",
    "name",
    "provenance",
    "field",
    "backend",
    "algebra",
    "ring",
    "modules",
    "analyses",
    "localise_at",
    "budgets",
    "expect",
}
_BUDGET_KEYS = set(DEFAULT_BUDGETS)
_LOCALISE_KEYS = {"elements", "mode"}
_MODULE_KEYS = {"kind", "side", "copies"}
_ALGEBRA_KEYS = {"fixture", "args", "names", "degrees", "products", "diff", "unit"}
_RING_KEYS = {"fixture", "args", "gens"}

ALGEBRA_FIXTURES = {
    "endo2x2-dg": fixtures.endo2x2_dg,
    "trunc-poly-dg": fixtures.trunc_poly_dg,
    "dual-numbers": fixtures.dual_numbers,
    "truncated-poly": fixtures.truncated_poly,
    "product-field": fixtures.product_field,
    "triangular2": fixtures.triangular2,
    "exterior2": fixtures.exterior2,
    "group-algebra-c2": fixtures.group_algebra_c2,
    "matrix2-graded": fixtures.matrix2_graded,
    "acyclic-block-plus-dual": fixtures.acyclic_block_plus_dual,
}


def _kx_zero(field, degree=-1, laurent=False):
    return GradedPolyRing(field, [("X", int(degree), bool(laurent))], None)


RING_FIXTURES = {
    "kx-dg": poly_ring_kx,
    "kx-zero": _kx_zero,
}


def _fail(path: str, message: str):
    raise SpecError(f"{path}: {message}")


def _check_keys(path: str, payload: dict, allowed: set, strict: bool, warnings: list):
    for key in payload:
        if key not in allowed:
            if strict:
                _fail(path, f"unknown key {key!r}")
            warnings.append(f"{path}: ignoring unknown key {key!r}")


def _expect_type(path: str, value, kind, label: str):
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        _fail(path, f"expected {label}, got {value!r}")
    return value


def parse_field_tag(tag):
    """Accept the canonical tags ('Q', {'Fp': p}) plus the human spellings
    'QQ', 'F<p>' and 'GF(<p>)'; return the canonical tag."""
    if isinstance(tag, str):
        t = tag.strip()
        if t in ("Q", "QQ"):
            return "Q"
        if t.startswith("GF(") and t.endswith(")"):
            t = "F" + t[3:-1]
        if t.startswith("F") and t[1:].isdigit():
            return {"Fp": int(t[1:])}
    if isinstance(tag, dict) and set(tag) == {"Fp"}:
        return {"Fp": int(tag["Fp"])}
    raise SpecError(f"field: unknown descriptor {tag!r}")


class SpecFile:
    """A normalized run description; equality is semantic (canonical JSON)."""

    __slots__ = (
        "version",
        "name",
        "provenance",
        "field_tag",
        "backend",
        "algebra",
        "ring",
        "modules",
        "analyses",
        "localise_at",
        "budgets",
        "expect",
        "warnings",
    )

    def __init__(
        self,
        field_tag,
        backend: str,
        algebra: dict | None = None,
        ring: dict | None = None,
        modules=None,
        analyses=None,
        localise_at=None,
        budgets=None,
        name: str = "",
        provenance: str = "",
        expect=None,
        version: int = SPEC_VERSION,
        warnings=None,
    ):
        self.version = version
        self.name = name
        self.provenance = provenance
        self.field_tag = parse_field_tag(field_tag)
        self.backend = backend
        self.algebra = algebra
        self.ring = ring
        self.modules = list(modules or [])
        self.analyses = list(analyses or [])
        self.localise_at = list(localise_at or [])
        merged = dict(DEFAULT_BUDGETS)
        merged.update(budgets or {})
        self.budgets = merged
        self.expect = {
            key: {"status": value} if isinstance(value, str) else dict(value)
            for key, value in (expect or {}).items()
        }
        self.warnings = list(warnings or [])

    def field(self) -> Field:
        return field_from_json(self.field_tag)

    @property
    def seed(self) -> int:
        return self.budgets["seed"]

    def to_json(self) -> dict:
        doc = {
            "version": self.version,
            "field": self.field_tag,
            "backend": self.backend,
            "analyses": list(self.analyses),
            "localise_at": [dict(e) for e in self.localise_at],
            "budgets": dict(self.budgets),
        }
        if self.algebra is not None:
            doc["algebra"] = self.algebra
        if self.ring is not None:
            doc["ring"] = self.ring
        if self.name:
            doc["name"] = self.name
        if self.provenance:
            doc["provenance"] = self.provenance
        if self.modules:
            doc["modules"] = [dict(m) for m in self.modules]
        if self.expect:
            doc["expect"] = dict(self.expect)
        return doc

    def __eq__(self, other):
        return isinstance(other, SpecFile) and self.to_json() == other.to_json()

    def __repr__(self):
        what = self.name or (self.algebra or self.ring or {}).get("fixture", "?")
        return f"SpecFile({what!r}, backend={self.backend!r})"


def emit_spec(spec: SpecFile) -> str:
    """Canonical serializer: sorted keys, two-space indent, trailing newline."""
    return json.dumps(spec.to_json(), sort_keys=True, indent=2) + "\n"


def _parse_budgets(raw, strict: bool, warnings: list) -> dict:
    out = dict(DEFAULT_BUDGETS)
    if raw is None:
        return out
    _expect_type("budgets", raw, dict, "an object")
    _check_keys("budgets", raw, _BUDGET_KEYS, strict, warnings)
    for key in _BUDGET_KEYS:
        if key in raw:
            value = raw[key]
            if not isinstance(value, int) or isinstance(value, bool):
                _fail(f"budgets.{key}", f"expected an integer, got {value!r}")
            if key == "seed":
                if value < 0:
                    _fail("budgets.seed", "expected a non-negative integer")
            elif value <= 0:
                _fail(f"budgets.{key}", "expected a positive integer")
            out[key] = value
    return out


def _parse_localise_at(raw, strict: bool, warnings: list) -> list:
    if raw is None:
        return []
    _expect_type("localise_at", raw, list, "a list")
    out = []
    for i, entry in enumerate(raw):
        path = f"localise_at[{i}]"
        _expect_type(path, entry, dict, "an object")
        _check_keys(path, entry, _LOCALISE_KEYS, strict, warnings)
        if "elements" not in entry:
            _fail(path, "missing key 'elements'")
        elements = _expect_type(f"{path}.elements", entry["elements"], list, "a list")
        if not elements:
            _fail(f"{path}.elements", "expected a non-empty list")
        mode = entry.get("mode", "regular")
        if mode not in ("regular", "kernel"):
            _fail(f"{path}.mode", f"expected 'regular' or 'kernel', got {mode!r}")
        out.append({"elements": list(elements), "mode": mode})
    return out


def _parse_modules(raw, strict: bool, warnings: list) -> list:
    if raw is None:
        return []
    _expect_type("modules", raw, list, "a list")
    out = []
    for i, entry in enumerate(raw):
        path = f"modules[{i}]"
        _expect_type(path, entry, dict, "an object")
        _check_keys(path, entry, _MODULE_KEYS, strict, warnings)
        kind = entry.get("kind", "regular")
        if kind != "regular":
            _fail(f"{path}.kind", f"expected 'regular', got {kind!r}")
        side = entry.get("side", "right")
        if side not in ("left", "right", "two"):
            _fail(f"{path}.side", f"expected 'left'/'right'/'two', got {side!r}")
        copies = entry.get("copies", 1)
        if not isinstance(copies, int) or isinstance(copies, bool) or copies < 1:
            _fail(f"{path}.copies", f"expected a positive integer, got {copies!r}")
        out.append({"kind": kind, "side": side, "copies": copies})
    return out


def _parse_expect(raw, strict: bool, warnings: list) -> dict:
    if raw is None:
        return {}
    _expect_type("expect", raw, dict, "an object")
    out = {}
    for name, value in raw.items():
        path = f"expect.{name}"
        if isinstance(value, str):
            value = {"status": value}
        _expect_type(path, value, dict, "a status string or object")
        _check_keys(path, value, {"status", "witness"}, strict, warnings)
        status = value.get("status")
        if status not in ("pass", "fail", "unknown", "skipped"):
            _fail(f"{path}.status", f"expected a status, got {status!r}")
        norm = {"status": status}
        if "witness" in value:
            norm["witness"] = value["witness"]
        out[name] = norm
    return out


def _parse_algebra_payload(raw, strict: bool, warnings: list) -> dict:
    _expect_type("algebra", raw, dict, "an object")
    _check_keys("algebra", raw, _ALGEBRA_KEYS, strict, warnings)
    if "fixture" in raw:
        name = raw["fixture"]
        if name not in ALGEBRA_FIXTURES:
            _fail("algebra.fixture", f"unknown fixture {name!r}")
        out = {"fixture": name}
        if raw.get("args"):
            out["args"] = dict(raw["args"])
        return out
    for key in ("names", "degrees", "products", "unit"):
        if key not in raw:
            _fail("algebra", f"explicit payload is missing key {key!r}")
    names = _expect_type("algebra.names", raw["names"], list, "a list")
    degrees = _expect_type("algebra.degrees", raw["degrees"], list, "a list")
    if len(names) != len(degrees):
        _fail("algebra.degrees", "length differs from algebra.names")
    out = {
        "names": list(names),
        "degrees": [int(d) for d in degrees],
        "products": dict(raw["products"]),
        "diff": dict(raw.get("diff") or {}),
        "unit": raw["unit"],
    }
    return out


def _parse_ring_payload(raw, strict: bool, warnings: list) -> dict:
    _expect_type("ring", raw, dict, "an object")
    _check_keys("ring", raw, _RING_KEYS, strict, warnings)
    if "fixture" in raw:
        name = raw["fixture"]
        if name not in RING_FIXTURES:
            _fail("ring.fixture", f"unknown fixture {name!r}")
        out = {"fixture": name}
        if raw.get("args"):
            out["args"] = dict(raw["args"])
        return out
    if "gens" not in raw:
        _fail("ring", "explicit payload is missing key 'gens'")
    gens = _expect_type("ring.gens", raw["gens"], list, "a list")
    norm = []
    for i, g in enumerate(gens):
        path = f"ring.gens[{i}]"
        if not isinstance(g, list) or len(g) != 3:
            _fail(path, f"expected [name, degree, laurent], got {g!r}")
        name, degree, laurent = g
        if not isinstance(name, str) or not isinstance(degree, int) or not isinstance(laurent, bool):
            _fail(path, f"expected [str, int, bool], got {g!r}")
        norm.append([name, degree, laurent])
    return {"gens": norm}


def parse_spec(source, strict: bool = True) -> SpecFile:
    """Parse a JSON document (text, bytes, or an already-decoded dict)."""
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        try:
            raw = json.loads(source)
        except json.JSONDecodeError as e:
            raise SpecError(
                f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}"
            ) from None
    else:
        raw = source
    _expect_type("spec", raw, dict, "an object")
    warnings: list[str] = []
    _check_keys("spec", raw, _TOP_KEYS, strict, warnings)
    version = raw.get("version")
    if version != SPEC_VERSION:
        _fail("version", f"expected {SPEC_VERSION}, got {version!r}")
    if "field" not in raw:
        _fail("field", "missing")
    if raw.get("backend") not in ("findim", "poly"):
        _fail("backend", f"expected 'findim' or 'poly', got {raw.get('backend')!r}")
    backend = raw["backend"]
    algebra = ring = None
    if backend == "findim":
        if "algebra" not in raw:
            _fail("algebra", "missing (required for the findim backend)")
        if "ring" in raw:
            _fail("ring", "not allowed on the findim backend")
        algebra = _parse_algebra_payload(raw["algebra"], strict, warnings)
    else:
        if "ring" not in raw:
            _fail("ring", "missing (required for the poly backend)")
        if "algebra" in raw:
            _fail("algebra", "not allowed on the poly backend")
        ring = _parse_ring_payload(raw["ring"], strict, warnings)
    analyses = raw.get("analyses") or []
    _expect_type("analyses", analyses, list, "a list")
    for a in analyses:
        if a not in ANALYSES:
            _fail("analyses", f"unknown analysis {a!r}")
    name = raw.get("name", "")
    provenance = raw.get("provenance", "")
    if not isinstance(name, str):
        _fail("name", f"expected a string, got {name!r}")
    if not isinstance(provenance, str):
        _fail("provenance", f"expected a string, got {provenance!r}")
    return SpecFile(
        field_tag=raw["field"],
        backend=backend,
        algebra=algebra,
        ring=ring,
        modules=_parse_modules(raw.get("modules"), strict, warnings),
        analyses=analyses,
        localise_at=_parse_localise_at(raw.get("localise_at"), strict, warnings),
        budgets=_parse_budgets(raw.get("budgets"), strict, warnings),
        name=name,
        provenance=provenance,
        expect=_parse_expect(raw.get("expect"), strict, warnings),
        warnings=warnings,
    )


# ------------------------------------------------------------- realisation


def build_ring(spec: SpecFile):
    """Realize the spec's algebra/ring payload over its field."""
    field = spec.field()
    if spec.backend == "findim":
        payload = spec.algebra
        if "fixture" in payload:
            builder = ALGEBRA_FIXTURES[payload["fixture"]]
            return builder(field, **payload.get("args", {}))
        try:
            return algebra_from_products(
                field,
                payload["names"],
                payload["degrees"],
                {
                    tuple(key.split()): cell
                    for key, cell in payload["products"].items()
                },
                payload["diff"],
                unit_name=payload["unit"] if isinstance(payload["unit"], str) else None,
                unit_coords=None if isinstance(payload["unit"], str) else payload["unit"],
            )
        except KeyError as e:
            raise SpecError(f"algebra: unknown basis name {e.args[0]!r}") from None
    payload = spec.ring
    if "fixture" in payload:
        builder = RING_FIXTURES[payload["fixture"]]
        return builder(field, **payload.get("args", {}))
    return GradedPolyRing(field, [tuple(g) for g in payload["gens"]], None)


def parse_element(ring, expr):
    """Turn a spec-file element expression into a ring element.

    Finite-dimensional backend: a basis name, a {name: coefficient} mapping,
    or a full coordinate row.  Polynomial backend: a monomial expression such
    as 'X', 'X^3' or 'X*Y^2', or a bare exponent list.
    """
    if isinstance(ring, DgAlgebra):
        f = ring.field
        index = {name: i for i, name in enumerate(ring.basis_names)}
        if isinstance(expr, str):
            if expr not in index:
                raise SpecError(f"element: unknown basis name {expr!r}")
            return ring.basis_element(index[expr])
        if isinstance(expr, dict):
            coords = [f.zero] * ring.dim
            for name, coeff in expr.items():
                if name not in index:
                    raise SpecError(f"element: unknown basis name {name!r}")
                coords[index[name]] = f.parse(coeff)
            return ring.element(coords)
        if isinstance(expr, list):
            if len(expr) != ring.dim:
                raise SpecError(
                    f"element: expected {ring.dim} coordinates, got {len(expr)}"
                )
            return ring.element([f.parse(c) for c in expr])
        raise SpecError(f"element: unsupported expression {expr!r}")
    if isinstance(ring, GradedPolyRing):
        if isinstance(expr, list):
            if len(expr) != ring.ngens:
                raise SpecError(
                    f"element: expected {ring.ngens} exponents, got {len(expr)}"
                )
            return ring.monomial([int(e) for e in expr])
        if isinstance(expr, str):
            exps = [0] * ring.ngens
            index = {name: i for i, name in enumerate(ring.gen_names)}
            for factor in expr.split("*"):
                factor = factor.strip()
                name, _, power = factor.partition("^")
                name = name.strip()
                if name not in index:
                    raise SpecError(f"element: unknown generator {name!r}")
                try:
                    k = int(power) if power else 1
                except ValueError:
                    raise SpecError(f"element: bad exponent in {factor!r}") from None
                exps[index[name]] += k
            return ring.monomial(exps)
        raise SpecError(f"element: unsupported expression {expr!r}")
    raise TypeError(f"unsupported ring type: {type(ring).__name__}")


def spec_for_fixture(
    fixture: str,
    field_tag="Q",
    backend: str = "findim",
    **kwargs,
) -> SpecFile:
    """Convenience constructor used by tests and the fixture corpus."""
    payload = {"fixture": fixture}
    if kwargs.get("args"):
        payload["args"] = kwargs.pop("args")
    if backend == "findim":
        return SpecFile(field_tag, "findim", algebra=payload, **kwargs)
    return SpecFile(field_tag, "poly", ring=payload, **kwargs)
