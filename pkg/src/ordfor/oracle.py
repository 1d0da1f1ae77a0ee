"""Independent brute-force oracles.

Nothing here calls the production validators or generators.  The checks
are phrased directly in terms of the raw order-theoretic definitions and
are meant to be slow and obviously correct.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from ordfor import _kernels

__all__ = [
    "is_ordered_forest",
    "forests",
    "parent_function_forests",
    "hom_oracle",
    "reduced_oracle",
]


def _closure(size, covers):
    leq = {(x, x) for x in range(size)} | set(covers)
    for k in range(size):
        for i in range(size):
            if (i, k) in leq:
                for j in range(size):
                    if (k, j) in leq:
                        leq.add((i, j))
    return leq


def is_ordered_forest(size, covers) -> bool:
    """Raw-definition check of an ordered forest with Hasse covers ``covers``.

    The total order is the rank order.  Tests: reflexive-transitive closure
    is antisymmetric, ``x <= y`` implies ``x`` precedes ``y``, ``covers`` is
    exactly the covering relation of the closure, and every principal lower
    set ``L(x)`` is an interval of the total order.
    """
    covers = set(map(tuple, covers))
    if any(not (0 <= a < size and 0 <= b < size) or a == b for a, b in covers):
        return False
    leq = _closure(size, covers)
    if any((y, x) in leq and x != y for x, y in leq):
        return False
    if any(x > y for x, y in leq):
        return False
    strict = {(x, y) for x, y in leq if x != y}
    hasse = {
        (x, y) for x, y in strict
        if not any((x, z) in strict and (z, y) in strict for z in range(size))
    }
    if hasse != covers:
        return False
    for x in range(size):
        lower = {y for y in range(size) if (y, x) in leq}
        for a in lower:
            for b in lower:
                if a <= b:
                    between = {y for y in range(size) if a <= y <= b}
                    if not between <= lower:
                        return False
    return True


@lru_cache(maxsize=None)
def forests(size: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Cover sets of all ordered forests on ``size`` ranks by exhaustive scan.

    Every subset of the pairs ``a < b`` is tried (pairs with ``a >= b`` can
    never be covers of an ordered quiver).  Sizes above 7 need numba to
    finish in reasonable time.
    """
    return tuple(_kernels.mask_to_covers(size, m) for m in _kernels.forest_masks(size))


@lru_cache(maxsize=None)
def parent_function_forests(size: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Ordered forests found among Hasse diagrams with at most one upper cover.

    Cheaper than :func:`forests`; only trustworthy where the two have been
    shown to agree.
    """
    out = []
    choices = [[None] + list(range(x + 1, size)) for x in range(size)]
    for parents in product(*choices):
        down = [0] * size
        for x in range(size):
            down[x] |= 1 << x
            p = parents[x]
            if p is not None:
                down[p] |= down[x]
        if all(((d & -d) + d) & d == 0 for d in down):
            out.append(tuple(sorted((x, p) for x, p in enumerate(parents) if p is not None)))
    return tuple(sorted(out))


def _strata(size, covers):
    has_up = {a for a, _ in covers}
    has_down = {b for _, b in covers}
    mins = [x for x in range(size) if x not in has_down]
    maxs = [x for x in range(size) if x not in has_up]
    return mins, maxs


def reduced_oracle(size, covers) -> bool:
    """No element outside both strata has exactly one cover below and above."""
    mins, maxs = _strata(size, covers)
    for v in range(size):
        if v in mins or v in maxs:
            continue
        below = sum(1 for a, b in covers if b == v)
        above = sum(1 for a, b in covers if a == v)
        if below == 1 and above == 1:
            return False
    return True


def hom_oracle(m: int, n: int, max_size: int, source=forests):
    """Cover sets of reduced forests with ``m + 1`` maxima and ``n + 1`` minima."""
    found = set()
    for size in range(1, max_size + 1):
        for covers in source(size):
            mins, maxs = _strata(size, covers)
            if len(maxs) == m + 1 and len(mins) == n + 1 and reduced_oracle(size, covers):
                found.add((size, covers))
    return found
