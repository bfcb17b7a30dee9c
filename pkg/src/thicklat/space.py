"""Finite spaces of closed sets, support data, and the universal construction.

The universal support space has one point per thick subset and assigns each
indecomposable the set of points (subcategories) that miss it. Those
assignments generate the closed-set family, every support datum maps into
the space uniquely, and both directions of that statement are checkable
here: axiom verification, the canonical morphism, and morphism checking.
"""

from __future__ import annotations

import random
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from .bitsets import bits
from .closure import ThickLattice
from .errors import InvalidParameter, NotThick, SchemaError, TooLarge, ValidationError
from .presentation import ObjectExpr, Presentation

DEFAULT_FAMILY_LIMIT = 1 << 16


@dataclass(frozen=True)
class FinSpace:
    """Finite space described by generators of its closed-set family.

    The closed family consists of the generators, the empty set, and the
    whole space, closed under pairwise union and intersection. Membership
    is decided without materializing the family: a candidate fails to be
    closed exactly when it fits inside the union of generators avoiding
    one of its points, and the smallest closed superset falls out of the
    same characterization.
    """

    points: tuple[str, ...]
    generators: tuple[int, ...]

    @classmethod
    def generate(cls, points: Iterable[str], generators: Iterable[int]) -> FinSpace:
        pts = tuple(points)
        full = (1 << len(pts)) - 1
        # the empty set is closed by fiat, so it is dropped as a generator
        gens = tuple(sorted({g & full for g in generators} - {0}))
        return cls(pts, gens)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    @cached_property
    def _avoiding_union(self) -> tuple[int, ...]:
        """Per point x: the union of all generators that avoid x."""
        out = []
        for x in range(len(self.points)):
            u = 0
            for g in self.generators:
                if not (g >> x) & 1:
                    u |= g
            out.append(u)
        return tuple(out)

    def closed_closure(self, mask: int) -> int:
        """Smallest closed superset of the given point set."""
        if mask == 0:
            return 0
        avoid = self._avoiding_union
        out = 0
        for x in range(len(self.points)):
            if mask & ~avoid[x]:
                out |= 1 << x
        return out

    def is_closed(self, mask: int) -> bool:
        return mask == 0 or self.closed_closure(mask) == mask

    def closed_sets(self, limit: int = DEFAULT_FAMILY_LIMIT) -> frozenset[int]:
        """Materialize the closed family (inspection and tests; can be large)."""
        start = {0, self.full_mask, *self.generators}
        members: list[int] = []
        queue = list(start)
        seen = set(start)
        while queue:
            w = queue.pop()
            for v in members:
                for u in (w | v, w & v):
                    if u not in seen:
                        seen.add(u)
                        queue.append(u)
                        if len(seen) > limit:
                            raise TooLarge(f"closed family exceeds {limit} sets")
            members.append(w)
        return frozenset(seen)

    def point_labels(self, mask: int) -> list[str]:
        return [self.points[i] for i in bits(mask)]


@dataclass(frozen=True)
class SupportSpace:
    """The space of all thick subsets with its canonical supports."""

    lattice: ThickLattice
    space: FinSpace
    sup: tuple[int, ...]

    def sup_of(self, expr: ObjectExpr) -> int:
        m = 0
        for i in set(expr):
            m |= self.sup[i]
        return m

    def as_datum(self) -> SupportDatum:
        return SupportDatum(self.space, self.sup)


def build_sp(lattice: ThickLattice) -> SupportSpace:
    """Universal support space: one point per thick subset, supports by omission."""
    pres = lattice.presentation
    sup = []
    for a in range(pres.size):
        bit = 1 << a
        m = 0
        for pos, elem in enumerate(lattice.elements):
            if not elem & bit:
                m |= 1 << pos
        sup.append(m)
    space = FinSpace.generate(lattice.labels(), sup)
    return SupportSpace(lattice, space, tuple(sup))


@dataclass(frozen=True)
class SupportDatum:
    """Closed support sets per indecomposable over a finite space.

    Supports extend to arbitrary objects by union over components. That
    extension makes the zero object's support empty and direct sums
    additive by construction, and shift invariance holds because
    indecomposables already stand for shift orbits; only the triangle
    axiom and closedness carry actual content to check.
    """

    space: FinSpace
    sigma: tuple[int, ...]
    origin_map: tuple[int, ...] | None = None

    def sigma_of(self, expr: ObjectExpr) -> int:
        m = 0
        for i in set(expr):
            m |= self.sigma[i]
        return m


STRUCTURAL_AXIOMS: tuple[tuple[str, str], ...] = (
    ("zero", "the zero object has empty support: empty union over no components"),
    ("sums", "supports extend over direct sums by union"),
    ("shift", "indecomposables stand for whole shift orbits"),
)

ROTATIONS = ("a vs b,c", "b vs c,a", "c vs a,b")


@dataclass(frozen=True)
class TriangleViolation:
    triangle: int
    rotation: int
    excess: int  # points of the head support outside the union of the others


@dataclass(frozen=True)
class DatumReport:
    structural: tuple[tuple[str, str], ...]
    triangle_violations: tuple[TriangleViolation, ...]
    unclosed: tuple[int, ...]

    @property
    def valid(self) -> bool:
        return not self.triangle_violations and not self.unclosed


def check_support_datum(datum: SupportDatum, pres: Presentation) -> DatumReport:
    """Verify the support axioms; violations are report content, not errors.

    The triangle containment is checked in all three rotations of every
    stored triangle, and every per-indecomposable support must be closed.
    """
    if len(datum.sigma) != pres.size:
        raise InvalidParameter("datum must assign a support to every indecomposable")
    tri_violations = []
    for t_idx, tri in enumerate(pres.triangles):
        sa = datum.sigma_of(tri.a)
        sb = datum.sigma_of(tri.b)
        sc = datum.sigma_of(tri.c)
        for rot, (head, rest) in enumerate(
                ((sa, sb | sc), (sb, sc | sa), (sc, sa | sb))):
            excess = head & ~rest
            if excess:
                tri_violations.append(TriangleViolation(t_idx, rot, excess))
    unclosed = tuple(
        a for a in range(pres.size) if not datum.space.is_closed(datum.sigma[a]))
    return DatumReport(STRUCTURAL_AXIOMS, tuple(tri_violations), unclosed)


@dataclass(frozen=True)
class SupportMorphism:
    """Point map into a support space, as positions of lattice elements."""

    mapping: tuple[int, ...]


def preimage(morphism: SupportMorphism, target_mask: int) -> int:
    m = 0
    for x, t in enumerate(morphism.mapping):
        if (target_mask >> t) & 1:
            m |= 1 << x
    return m


def universal_morphism(datum: SupportDatum, sp: SupportSpace) -> SupportMorphism:
    """Send each point to the set of objects whose support avoids it.

    That set must be a thick subset, i.e. a point of the universal space;
    when it is not, the datum violated an axiom and NotThick is raised.
    """
    pres = sp.lattice.presentation
    position = sp.lattice.position
    sigma = datum.sigma
    mapping = []
    for x in range(len(datum.space.points)):
        image = 0
        for a in range(pres.size):
            if not (sigma[a] >> x) & 1:
                image |= 1 << a
        pos = position.get(image)
        if pos is None:
            raise NotThick(
                f"point {datum.space.points[x]!r} maps to {pres.label(image)}, "
                "which is not closed under the triangle rule")
        mapping.append(pos)
    morphism = SupportMorphism(tuple(mapping))
    for a in range(pres.size):
        # the pullback identity must come out set-exact for every generator
        assert preimage(morphism, sp.sup[a]) == sigma[a]
    return morphism


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    pullback_failure: str | None = None
    continuity_failure: str | None = None


def check_morphism(datum: SupportDatum, sp: SupportSpace,
                   morphism: SupportMorphism) -> MorphismReport:
    """Pullback identity and continuity; diagnostics stop at the first failure.

    Continuity is decided on the generating closed sets of the target:
    preimages commute with union and intersection and the source family is
    closed under both, so the generators decide the whole family.
    """
    if len(morphism.mapping) != len(datum.space.points):
        raise InvalidParameter("morphism must map every point of the datum's space")
    count = len(sp.lattice.elements)
    for t in morphism.mapping:
        if not 0 <= t < count:
            raise InvalidParameter(f"morphism target position {t} is out of range")
    names = sp.lattice.presentation.names
    for a in range(len(names)):
        pre = preimage(morphism, sp.sup[a])
        if pre != datum.sigma[a]:
            return MorphismReport(False, pullback_failure=names[a])
        if not datum.space.is_closed(pre):
            return MorphismReport(
                False, continuity_failure=f"preimage of sup({names[a]})")
    return MorphismReport(True)


def random_support_datum(sp: SupportSpace, num_points: int, seed: int) -> SupportDatum:
    """Pull the canonical supports back along a seeded random point map.

    Pullbacks of support data along arbitrary maps are support data, so the
    result is always valid; the drawn map is retained on the result so
    round trips through the universal morphism can be checked pointwise.
    """
    if num_points < 0:
        raise InvalidParameter("num_points must be >= 0")
    rng = random.Random(seed)
    count = len(sp.lattice.elements)
    origin = tuple(rng.randrange(count) for _ in range(num_points))
    sigma = []
    for a in range(len(sp.sup)):
        sup_a = sp.sup[a]
        m = 0
        for x, target in enumerate(origin):
            if (sup_a >> target) & 1:
                m |= 1 << x
        sigma.append(m)
    points = tuple(f"x{i}" for i in range(num_points))
    space = FinSpace.generate(points, sigma)
    return SupportDatum(space, tuple(sigma), origin_map=origin)


# --------------------------------------------------------------------------
# Document formats


def datum_from_document(doc: object, pres: Presentation) -> SupportDatum:
    """Parse a support datum document.

    ``closed`` is optional; when present its sets generate the closed
    family, otherwise the family is generated from the supports themselves.
    """
    if not isinstance(doc, dict):
        raise SchemaError("support datum document must be a JSON object")
    extra = set(doc) - {"points", "closed", "sigma"}
    if extra:
        raise SchemaError(f"support datum: unexpected keys {sorted(extra)}")
    if "points" not in doc or "sigma" not in doc:
        raise SchemaError("support datum needs 'points' and 'sigma'")
    raw_points = doc["points"]
    if not isinstance(raw_points, list) or not all(isinstance(p, str) and p for p in raw_points):
        raise SchemaError("points must be a list of non-empty strings")
    if len(set(raw_points)) != len(raw_points):
        raise ValidationError("point names must be unique")
    points = tuple(raw_points)
    point_index = {p: i for i, p in enumerate(points)}

    def point_mask(raw: object, where: str) -> int:
        if not isinstance(raw, list) or not all(isinstance(p, str) for p in raw):
            raise SchemaError(f"{where}: expected a list of point names")
        m = 0
        for p in raw:
            if p not in point_index:
                raise ValidationError(f"{where}: unknown point {p!r}")
            m |= 1 << point_index[p]
        return m

    raw_sigma = doc["sigma"]
    if not isinstance(raw_sigma, dict):
        raise SchemaError("sigma must be a JSON object")
    for name in raw_sigma:
        if name not in pres.index:
            raise ValidationError(f"sigma: unknown indecomposable {name!r}")
    sigma = []
    for name in pres.names:
        if name not in raw_sigma:
            raise ValidationError(f"sigma is missing indecomposable {name!r}")
        sigma.append(point_mask(raw_sigma[name], f"sigma[{name}]"))

    if doc.get("closed") is not None:
        raw_closed = doc["closed"]
        if not isinstance(raw_closed, list):
            raise SchemaError("closed must be a list of point lists")
        gens = [point_mask(c, f"closed[{i}]") for i, c in enumerate(raw_closed)]
    else:
        gens = list(sigma)
    space = FinSpace.generate(points, gens)
    return SupportDatum(space, tuple(sigma))


def datum_to_document(datum: SupportDatum, pres: Presentation) -> dict:
    return {
        "points": list(datum.space.points),
        "closed": [datum.space.point_labels(g) for g in datum.space.generators],
        "sigma": {
            pres.names[a]: datum.space.point_labels(datum.sigma[a])
            for a in range(pres.size)
        },
    }


def morphism_from_document(doc: object, datum: SupportDatum,
                           sp: SupportSpace) -> SupportMorphism:
    if not isinstance(doc, dict) or set(doc) != {"map"} or not isinstance(doc["map"], dict):
        raise SchemaError("morphism document must be {\"map\": {...}}")
    raw = doc["map"]
    target_index = {p: i for i, p in enumerate(sp.space.points)}
    mapping = []
    for p in datum.space.points:
        if p not in raw:
            raise ValidationError(f"morphism is missing source point {p!r}")
        dest = raw[p]
        if not isinstance(dest, str) or dest not in target_index:
            raise ValidationError(f"morphism target {dest!r} is not a point of the space")
        mapping.append(target_index[dest])
    for p in raw:
        if p not in datum.space.points:
            raise ValidationError(f"morphism names unknown source point {p!r}")
    return SupportMorphism(tuple(mapping))


def morphism_to_document(morphism: SupportMorphism, datum: SupportDatum,
                         sp: SupportSpace) -> dict:
    return {
        "map": {
            datum.space.points[x]: sp.space.points[t]
            for x, t in enumerate(morphism.mapping)
        }
    }
