"""Ordered quivers and ordered forests in rank-canonical form.

An element is identified with its rank in the total order, so the total
order never has to be stored: ``i`` precedes ``j`` iff ``i < j``.  The
partial order is stored through its Hasse diagram as a set of
``(child, parent)`` covers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Sequence

from ordfor.errors import (
    CoverOrderViolation,
    IntervalViolation,
    MalformedInput,
    RankOutOfBounds,
    RedundantCover,
)

__all__ = [
    "OrderedForest",
    "TreeDecomposition",
    "validate",
    "point",
    "discrete",
    "chain",
    "lower_set",
    "upper_set",
    "minima",
    "maxima",
    "height",
    "decompose",
    "ordinal_sum",
    "forest_maps",
    "is_forest_map",
    "decomposition_failures",
    "structural_failures",
    "enumerate_forests",
    "to_dot",
]


def _contiguous(mask: int) -> bool:
    low = mask & -mask
    return (mask + low) & mask == 0


@dataclass(frozen=True)
class OrderedForest:
    """A finite ordered quiver stored by size and Hasse covers.

    Construct through :func:`validate` unless the input is known to satisfy
    the ordered-forest axioms; the constructor only normalises the cover
    list.
    """

    size: int
    covers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "covers", tuple(sorted({(int(a), int(b)) for a, b in self.covers}))
        )

    @cached_property
    def down(self) -> tuple[int, ...]:
        """Bitmask of the lower set of every element."""
        below = [[] for _ in range(self.size)]
        for a, b in self.covers:
            below[b].append(a)
        down = [0] * self.size
        for x in range(self.size):
            m = 1 << x
            for a in below[x]:
                m |= down[a]
            down[x] = m
        return tuple(down)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        below = [[] for _ in range(self.size)]
        for a, b in self.covers:
            below[b].append(a)
        return tuple(tuple(sorted(c)) for c in below)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        above = [[] for _ in range(self.size)]
        for a, b in self.covers:
            above[a].append(b)
        return tuple(tuple(sorted(c)) for c in above)

    @cached_property
    def minima(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.size) if not self.lower_covers[x])

    @cached_property
    def maxima(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.size) if not self.upper_covers[x])

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def __len__(self):
        return self.size


def validate(size: int, covers: Iterable[Sequence[int]]) -> OrderedForest:
    """Check the ordered-forest axioms and return the forest.

    Raises the first violated axiom, checked in the order: rank bounds,
    compatibility of each cover with the total order, irredundancy of the
    covers, and the interval condition on lower sets.
    """
    try:
        size = int(size)
        pairs = [(int(a), int(b)) for a, b in covers]
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"covers must be pairs of integers: {exc}") from None
    if size < 1:
        raise MalformedInput("an ordered forest has at least one element")
    pairs = sorted(set(pairs))
    for a, b in pairs:
        if not (0 <= a < size and 0 <= b < size):
            raise RankOutOfBounds(f"cover {(a, b)} outside ranks 0..{size - 1}")
    for a, b in pairs:
        if a >= b:
            raise CoverOrderViolation((a, b))

    below = [[] for _ in range(size)]
    for a, b in pairs:
        below[b].append(a)
    down = [0] * size
    for x in range(size):
        m = 1 << x
        for a in below[x]:
            m |= down[a]
        down[x] = m
    for b in range(size):
        for a in below[b]:
            if any(c != a and down[c] >> a & 1 for c in below[b]):
                raise RedundantCover((a, b))
    for x in range(size):
        if not _contiguous(down[x]):
            raise IntervalViolation(x)
    return OrderedForest(size, tuple(pairs))


def point() -> OrderedForest:
    return OrderedForest(1, ())


def discrete(n: int) -> OrderedForest:
    """The height-zero forest ``[n]`` with ``n + 1`` incomparable elements."""
    return OrderedForest(n + 1, ())


def chain(k: int) -> OrderedForest:
    """Totally ordered forest with ``k`` elements."""
    return OrderedForest(k, tuple((i, i + 1) for i in range(k - 1)))


def _check_rank(F: OrderedForest, x: int):
    if not 0 <= x < F.size:
        raise RankOutOfBounds(f"rank {x} outside 0..{F.size - 1}")


def lower_set(F: OrderedForest, x: int) -> range:
    _check_rank(F, x)
    m = F.down[x]
    lo = (m & -m).bit_length() - 1
    return range(lo, x + 1)


def upper_set(F: OrderedForest, x: int) -> tuple[int, ...]:
    _check_rank(F, x)
    return tuple(y for y in range(x, F.size) if F.down[y] >> x & 1)


def minima(F: OrderedForest) -> tuple[int, ...]:
    return F.minima


def maxima(F: OrderedForest) -> tuple[int, ...]:
    return F.maxima


def height(F: OrderedForest) -> int:
    """Length, counted in covers, of the longest chain."""
    depth = [0] * F.size
    for x in range(F.size):
        for a in F.lower_covers[x]:
            depth[x] = max(depth[x], depth[a] + 1)
    return max(depth, default=0)


@dataclass(frozen=True)
class TreeDecomposition:
    """Components as ``(root, lo, hi)`` rank intervals, roots increasing."""

    components: tuple[tuple[int, int, int], ...]

    def trees(self, F: OrderedForest) -> list[OrderedForest]:
        return [restrict(F, range(lo, hi + 1)) for _, lo, hi in self.components]


def restrict(F: OrderedForest, ranks: Sequence[int]) -> OrderedForest:
    """Full subquiver on ``ranks``, re-indexed, with covers recomputed."""
    ranks = sorted(ranks)
    index = {r: i for i, r in enumerate(ranks)}
    rel = [(index[a], index[b]) for a in ranks for b in ranks if a != b and F.leq(a, b)]
    return OrderedForest(len(ranks), _hasse(len(ranks), rel))


def _hasse(size: int, relation: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Hasse covers of a strict order given as a transitively closed set."""
    rel = set(relation)
    covers = []
    for a, b in rel:
        if not any((a, c) in rel and (c, b) in rel for c in range(size)):
            covers.append((a, b))
    return tuple(sorted(covers))


def decompose(F: OrderedForest) -> TreeDecomposition:
    comps = []
    for root in F.maxima:
        r = lower_set(F, root)
        comps.append((root, r.start, r.stop - 1))
    return TreeDecomposition(tuple(comps))


def ordinal_sum(forests: Iterable[OrderedForest]) -> OrderedForest:
    size = 0
    covers = []
    for T in forests:
        covers.extend((a + size, b + size) for a, b in T.covers)
        size += T.size
    return OrderedForest(size, tuple(covers))


def decomposition_failures(F: OrderedForest) -> list[str]:
    """Names of the decomposition clauses that fail for ``F``."""
    dec = decompose(F)
    failures = []
    blocks = [set(lower_set(F, r)) for r, _, _ in dec.components]
    trees = dec.trees(F)
    if not all(len(T.maxima) == 1 for T in trees):
        failures.append("i")
    if sum(len(b) for b in blocks) != len(set().union(*blocks)):
        failures.append("ii")
    if set().union(*blocks) != set(range(F.size)):
        failures.append("iii")
    for (_, lo, hi), b in zip(dec.components, blocks):
        if b != set(range(lo, hi + 1)):
            failures.append("iv")
            break
    roots = [r for r, _, _ in dec.components]
    if roots != sorted(roots) or ordinal_sum(trees) != F:
        failures.append("v")
    return failures


def structural_failures(F: OrderedForest) -> list[str]:
    """Check the derived facts: unique parent and post-order ranks."""
    failures = []
    if any(len(up) > 1 for up in F.upper_covers):
        failures.append("parent")
    order = []

    def visit(x):
        for c in F.lower_covers[x]:
            visit(c)
        order.append(x)

    for r in F.maxima:
        visit(r)
    if order != list(range(F.size)):
        failures.append("post-order")
    if not all(_contiguous(m) for m in F.down):
        failures.append("interval")
    return failures


def is_forest_map(F: OrderedForest, Q: OrderedForest, f: Sequence[int]) -> bool:
    """``f`` preserves the total order and the partial order."""
    if len(f) != F.size or any(not 0 <= v < Q.size for v in f):
        return False
    if any(f[i] > f[i + 1] for i in range(F.size - 1)):
        return False
    return all(Q.leq(f[a], f[b]) for a, b in F.covers)


def forest_maps(F: OrderedForest, Q: OrderedForest) -> list[tuple[int, ...]]:
    """All maps ``F -> Q`` monotone for both orders, in lexicographic order."""
    out = []
    for f in combinations_with_replacement(range(Q.size), F.size):
        if all(Q.leq(f[a], f[b]) for a, b in F.covers):
            out.append(f)
    return out


@lru_cache(maxsize=None)
def _plane_forests(n: int) -> tuple[tuple[tuple[tuple[int, int], ...], tuple[int, ...]], ...]:
    # (covers, roots) for every plane forest on n nodes laid out in post-order
    if n == 0:
        return (((), ()),)
    out = []
    for k in range(1, n + 1):
        root = k - 1
        for child_covers, child_roots in _plane_forests(k - 1):
            tree = child_covers + tuple((c, root) for c in child_roots)
            for rest_covers, rest_roots in _plane_forests(n - k):
                shifted = tuple((a + k, b + k) for a, b in rest_covers)
                out.append((tree + shifted, (root,) + tuple(r + k for r in rest_roots)))
    return tuple(out)


def enumerate_forests(size: int) -> Iterator[OrderedForest]:
    """Every ordered forest with ``size`` elements, as plane forests."""
    for covers, _ in _plane_forests(size):
        yield OrderedForest(size, covers)


def enumerate_trees(size: int) -> Iterator[OrderedForest]:
    for F in enumerate_forests(size):
        if len(F.maxima) == 1:
            yield F


def to_dot(F: OrderedForest, name: str = "forest") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f'  {x} [label="{x}"];' for x in range(F.size)]
    lines += [f"  {a} -> {b};" for a, b in F.covers]
    lines.append("}")
    return "\n".join(lines) + "\n"
