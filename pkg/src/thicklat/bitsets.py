"""Subsets of range(n) stored as plain int bitmasks."""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits(mask: int) -> Iterator[int]:
    """Indices present in the mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key fixing the canonical order: cardinality, then member sequence."""
    return (mask.bit_count(), tuple(bits(mask)))
