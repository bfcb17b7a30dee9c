"""Shared helpers for the test suite."""

import random

from thicklat.presentation import Presentation, Triangle, make_expr


def random_presentation(seed, max_indecs=12, max_triangles=10):
    """Deterministic random presentation for oracle-equivalence sweeps."""
    rng = random.Random(seed)
    n = rng.randint(1, max_indecs)
    names = tuple(f"g{i}" for i in range(n))
    triangles = []
    for _ in range(rng.randint(0, max_triangles)):
        vertices = tuple(
            make_expr(rng.choices(range(n), k=rng.randint(0, 3))) for _ in range(3)
        )
        triangles.append(Triangle(*vertices))
    return Presentation(names, tuple(triangles))


def bell_numbers(count):
    """B(0)..B(count) by the Bell-triangle recurrence, independent of the engine."""
    values = [1, 1]
    row = [1]
    while len(values) <= count:
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
        values.append(row[-1])
    return values[: count + 1]


def triangle_rule_closed(pres, subset):
    """Direct reading of the closedness condition, bypassing the engine."""
    for ma, mb, mc in pres.triangle_masks:
        ina = ma & ~subset == 0
        inb = mb & ~subset == 0
        inc = mc & ~subset == 0
        if (ina and inb and not inc) or (inb and inc and not ina) or (inc and ina and not inb):
            return False
    return True


def closure_by_sweep(pres, subset):
    """Oracle closure: intersect every directly-closed superset (n <= ~12)."""
    n = pres.size
    result = (1 << n) - 1
    for candidate in range(1 << n):
        if subset & ~candidate == 0 and triangle_rule_closed(pres, candidate):
            result &= candidate
    return result
