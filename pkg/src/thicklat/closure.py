"""Closure engine for the triangle rule and enumeration of all closed subsets.

A subset of indecomposables is closed ("thick") when, for every triangle and
every choice of two vertices whose component supports it contains, it also
contains the support of the third vertex. Summand closure is built into
component-wise membership and shift closure is automatic because
indecomposables are shift orbits, so the triangle rule is the whole story.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from functools import cached_property

from .bitsets import canonical_key, is_subset, mask_of
from .errors import TooLarge
from .presentation import ObjectExpr, Presentation

BRUTE_FORCE_LIMIT = 20


def object_in(thick: int, expr: ObjectExpr) -> bool:
    """Membership of a formal sum: every component must lie in the subset.

    The zero object (empty expression) belongs to every subset.
    """
    return is_subset(mask_of(expr), thick)


def thick_closure(pres: Presentation, members: int) -> int:
    """Least superset of ``members`` closed under the two-out-of-three rule.

    The rule fires on any two contained vertices because rotating a stored
    triangle is always permitted. Extensive, monotone, and idempotent.
    """
    cur = members
    full = pres.full_mask
    tris = pres.triangle_masks
    changed = True
    while changed and cur != full:
        changed = False
        for ma, mb, mc in tris:
            ina = ma & ~cur == 0
            inb = mb & ~cur == 0
            inc = mc & ~cur == 0
            if ina and inb and not inc:
                cur |= mc
                changed = True
            elif inb and inc and not ina:
                cur |= ma
                changed = True
            elif inc and ina and not inb:
                cur |= mb
                changed = True
    return cur


def iter_closed(n: int, close: Callable[[int], int]) -> Iterator[int]:
    """All fixed points of a closure operator on subsets of range(n).

    Lectic-order enumeration: each closed set is produced exactly once and
    only one working set is held in memory, so the cost is proportional to
    the output rather than to 2**n.
    """
    full = (1 << n) - 1
    current = close(0)
    yield current
    while current != full:
        successor = None
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if current & bit:
                current &= ~bit
            else:
                candidate = close(current | bit)
                if not candidate & ~current & (bit - 1):
                    successor = candidate
                    break
        if successor is None:  # unreachable: the full set ends the order
            break
        current = successor
        yield current


@dataclass(frozen=True)
class ThickLattice:
    """Every closed subset of a presentation, in canonical order.

    Canonical order sorts by cardinality with ties broken by the member
    sequence, so positions and serialized listings are byte-stable.
    """

    presentation: Presentation
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, mask: int) -> bool:
        return mask in self.position

    @cached_property
    def position(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @property
    def bottom(self) -> int:
        return self.elements[0]

    @property
    def top(self) -> int:
        return self.elements[-1]

    def labels(self) -> tuple[str, ...]:
        return tuple(self.presentation.label(e) for e in self.elements)


def enumerate_thick(pres: Presentation) -> ThickLattice:
    """All thick subsets via lectic enumeration, canonically ordered."""
    found = iter_closed(pres.size, lambda m: thick_closure(pres, m))
    return ThickLattice(pres, tuple(sorted(found, key=canonical_key)))


def brute_force_thick(pres: Presentation) -> ThickLattice:
    """Oracle enumeration: sweep every subset, keep the closure fixed points."""
    n = pres.size
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(
            f"{n} indecomposables exceed the brute-force guard of {BRUTE_FORCE_LIMIT}")
    found = [s for s in range(1 << n) if thick_closure(pres, s) == s]
    return ThickLattice(pres, tuple(sorted(found, key=canonical_key)))
