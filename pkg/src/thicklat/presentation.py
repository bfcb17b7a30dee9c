"""Data model for finite combinatorial presentations.

A presentation names finitely many indecomposables (each standing for a
whole shift orbit), lists distinguished triangles whose vertices are formal
sums of indecomposables, and optionally carries a tensor table. Objects are
multisets of indecomposables; the empty multiset is the zero object.

Presentations built by :func:`parse_presentation` or :func:`builtin` are
fully validated; direct construction trusts the caller.
"""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from .bitsets import bits, mask_of
from .errors import InvalidParameter, SchemaError, UnknownFamily, ValidationError

ObjectExpr = tuple[int, ...]

NAME_SEPARATOR = "|"  # joins tensor table keys, so it is banned inside names


def make_expr(indices: Iterable[int]) -> ObjectExpr:
    """Normalize a multiset of indices: sorted, repeats kept."""
    return tuple(sorted(indices))


@dataclass(frozen=True)
class Triangle:
    """One distinguished triangle; rotations are implied, not stored."""

    a: ObjectExpr
    b: ObjectExpr
    c: ObjectExpr

    def masks(self) -> tuple[int, int, int]:
        return mask_of(self.a), mask_of(self.b), mask_of(self.c)


@dataclass(frozen=True)
class TensorTable:
    """Total multiplication table over ordered pairs of indecomposables.

    The unit may be decomposable. Symmetry of component supports is
    validated where tables are built (parsing, builtins), never assumed.
    """

    unit: ObjectExpr
    table: tuple[tuple[ObjectExpr, ...], ...]

    def product(self, x: int, y: int) -> ObjectExpr:
        return self.table[x][y]

    @cached_property
    def absorption_masks(self) -> tuple[int, ...]:
        """Per indecomposable x: union of component masks of g*x over all g."""
        size = len(self.table)
        out = []
        for x in range(size):
            m = 0
            for g in range(size):
                m |= mask_of(self.table[g][x])
            out.append(m)
        return tuple(out)


@dataclass(frozen=True)
class Presentation:
    """Immutable presentation: unique names, triangles, optional tensor."""

    names: tuple[str, ...]
    triangles: tuple[Triangle, ...]
    tensor: TensorTable | None = None

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.names)) - 1

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def triangle_masks(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(t.masks() for t in self.triangles)

    def label(self, mask: int) -> str:
        """Brace-joined member names of a subset mask, in index order."""
        return "{" + ",".join(self.names[i] for i in bits(mask)) + "}"

    def expr_names(self, expr: ObjectExpr) -> list[str]:
        return [self.names[i] for i in expr]


# --------------------------------------------------------------------------
# Document format


def parse_presentation(text: str) -> Presentation:
    """Parse the canonical JSON document into a validated Presentation."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return presentation_from_document(doc)


def presentation_from_document(doc: object) -> Presentation:
    if not isinstance(doc, dict):
        raise SchemaError("presentation document must be a JSON object")
    _require_keys(doc, {"indecomposables", "triangles", "tensor"},
                  {"indecomposables", "triangles"}, "presentation")
    names = _parse_names(doc["indecomposables"])
    index = {name: i for i, name in enumerate(names)}
    raw_triangles = doc["triangles"]
    if not isinstance(raw_triangles, list):
        raise SchemaError("triangles must be a list")
    triangles = []
    for pos, raw in enumerate(raw_triangles):
        if not isinstance(raw, list) or len(raw) != 3:
            raise SchemaError(f"triangle {pos}: expected three object expressions")
        a, b, c = (_parse_expr(v, index, f"triangle {pos}") for v in raw)
        triangles.append(Triangle(a, b, c))
    tensor = None
    if doc.get("tensor") is not None:
        tensor = _parse_tensor(doc["tensor"], names, index)
    return Presentation(names, tuple(triangles), tensor)


def presentation_to_document(pres: Presentation) -> dict:
    doc: dict = {
        "indecomposables": list(pres.names),
        "triangles": [
            [pres.expr_names(t.a), pres.expr_names(t.b), pres.expr_names(t.c)]
            for t in pres.triangles
        ],
    }
    if pres.tensor is not None:
        table = {}
        for x in range(pres.size):
            for y in range(pres.size):
                key = f"{pres.names[x]}{NAME_SEPARATOR}{pres.names[y]}"
                table[key] = pres.expr_names(pres.tensor.table[x][y])
        doc["tensor"] = {"unit": pres.expr_names(pres.tensor.unit), "table": table}
    return doc


def serialize_presentation(pres: Presentation) -> str:
    return json.dumps(presentation_to_document(pres), indent=2) + "\n"


def _require_keys(doc: dict, allowed: set, required: set, where: str) -> None:
    extra = set(doc) - allowed
    if extra:
        raise SchemaError(f"{where}: unexpected keys {sorted(extra)}")
    missing = required - set(doc)
    if missing:
        raise SchemaError(f"{where}: missing keys {sorted(missing)}")


def _parse_names(raw: object) -> tuple[str, ...]:
    if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
        raise SchemaError("indecomposables must be a list of strings")
    seen = set()
    for name in raw:
        if not name:
            raise ValidationError("indecomposable names must be non-empty")
        if NAME_SEPARATOR in name:
            raise ValidationError(
                f"indecomposable name {name!r} contains the reserved {NAME_SEPARATOR!r}")
        if name in seen:
            raise ValidationError(f"duplicate indecomposable name {name!r}")
        seen.add(name)
    return tuple(raw)


def _parse_expr(raw: object, index: dict[str, int], where: str) -> ObjectExpr:
    if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
        raise SchemaError(f"{where}: object expression must be a list of names")
    out = []
    for name in raw:
        if name not in index:
            raise ValidationError(f"{where}: unknown indecomposable {name!r}")
        out.append(index[name])
    return make_expr(out)


def _parse_tensor(raw: object, names: tuple[str, ...], index: dict[str, int]) -> TensorTable:
    if not isinstance(raw, dict):
        raise SchemaError("tensor must be a JSON object")
    _require_keys(raw, {"unit", "table"}, {"unit", "table"}, "tensor")
    unit = _parse_expr(raw["unit"], index, "tensor unit")
    table_raw = raw["table"]
    if not isinstance(table_raw, dict):
        raise SchemaError("tensor table must be a JSON object")
    n = len(names)
    cells: list[list[ObjectExpr | None]] = [[None] * n for _ in range(n)]
    for key, value in table_raw.items():
        if not isinstance(key, str) or key.count(NAME_SEPARATOR) != 1:
            raise SchemaError(f"tensor table key {key!r} must look like 'A{NAME_SEPARATOR}B'")
        left, right = key.split(NAME_SEPARATOR)
        for part in (left, right):
            if part not in index:
                raise ValidationError(f"tensor table: unknown indecomposable {part!r}")
        cells[index[left]][index[right]] = _parse_expr(value, index, f"tensor table {key!r}")
    for x in range(n):
        for y in range(n):
            if cells[x][y] is None:
                raise ValidationError(
                    f"tensor table is missing the pair {names[x]}{NAME_SEPARATOR}{names[y]}")
    for x in range(n):
        for y in range(x + 1, n):
            if set(cells[x][y]) != set(cells[y][x]):
                raise ValidationError(
                    f"tensor table is not symmetric at ({names[x]}, {names[y]})")
    return TensorTable(unit, tuple(tuple(row) for row in cells))


# --------------------------------------------------------------------------
# Builtin families

FAMILIES = ("a2", "an", "point", "product")


def builtin(family: str, n: int | None = None) -> Presentation:
    """Construct a builtin example family.

    a2          three indecomposables P1, P2, S2 and the single triangle
                (P1, P2, S2); its closed-set lattice is the diamond.
    an(n)       intervals [i,j] over 0..n with one triangle per i < j < k:
                ([i,j], [i,k], [j,k]); closed sets match set partitions.
    point       one indecomposable k with k*k = k and unit k.
    product(n)  orthogonal idempotents e1..en, unit e1 + ... + en.
    """
    if family == "a2":
        _no_parameter(family, n)
        return Presentation(("P1", "P2", "S2"), (Triangle((0,), (1,), (2,)),))
    if family == "an":
        size = _require_parameter(family, n)
        pairs = [(i, j) for i in range(size + 1) for j in range(i + 1, size + 1)]
        index = {p: k for k, p in enumerate(pairs)}
        names = tuple(f"[{i},{j}]" for i, j in pairs)
        triangles = tuple(
            Triangle((index[(i, j)],), (index[(i, k)],), (index[(j, k)],))
            for i in range(size + 1)
            for j in range(i + 1, size + 1)
            for k in range(j + 1, size + 1)
        )
        return Presentation(names, triangles)
    if family == "point":
        _no_parameter(family, n)
        return Presentation(("k",), (), TensorTable((0,), (((0,),),)))
    if family == "product":
        size = _require_parameter(family, n)
        names = tuple(f"e{i + 1}" for i in range(size))
        table = tuple(
            tuple((x,) if x == y else () for y in range(size)) for x in range(size)
        )
        return Presentation(names, (), TensorTable(tuple(range(size)), table))
    raise UnknownFamily(f"unknown builtin family {family!r}")


def _require_parameter(family: str, n: int | None) -> int:
    if n is None or n < 1:
        raise InvalidParameter(f"family {family!r} needs a parameter n >= 1")
    return n


def _no_parameter(family: str, n: int | None) -> None:
    if n is not None:
        raise InvalidParameter(f"family {family!r} does not take a parameter")
