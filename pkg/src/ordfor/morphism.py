"""Boundary-labelled forests, raw grafting, and unary-vertex reduction.

Boundary labels are order isomorphisms onto the strata, and the strata
carry the rank order, so a labelled forest is determined by its underlying
rank-canonical forest.  Isomorphism of labelled forests is therefore plain
equality of :class:`~ordfor.forest.OrderedForest` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from ordfor.errors import (
    BoundaryMismatch,
    ForestError,
    IntervalViolationAfterContraction,
    NotACocone,
    NotUnary,
)
from ordfor.forest import (
    OrderedForest,
    _hasse,
    discrete,
    forest_maps,
    is_forest_map,
    lower_set,
    validate,
)

__all__ = [
    "ForestMorphism",
    "GraftResult",
    "from_forest",
    "is_isomorphic",
    "isomorphic_by_search",
    "raw_graft",
    "is_cocone",
    "boundary_cocones",
    "factor_cocone",
    "unary_vertices",
    "contract",
    "reduce",
    "normal_forms",
    "confluence_check",
]


@dataclass(frozen=True)
class ForestMorphism:
    """A boundary-labelled ordered forest ``[dom] -> [cod]``.

    ``dom + 1`` is the number of maximal elements and ``cod + 1`` the
    number of minimal ones.
    """

    forest: OrderedForest

    @property
    def dom(self) -> int:
        return len(self.forest.maxima) - 1

    @property
    def cod(self) -> int:
        return len(self.forest.minima) - 1

    @property
    def reduced(self) -> bool:
        return not unary_vertices(self.forest)

    @property
    def size(self) -> int:
        return self.forest.size

    def __repr__(self):
        return f"ForestMorphism([{self.dom}]->[{self.cod}], size={self.size}, covers={list(self.forest.covers)})"


def from_forest(F: OrderedForest) -> ForestMorphism:
    return ForestMorphism(F)


def is_isomorphic(a: ForestMorphism, b: ForestMorphism) -> bool:
    return a.dom == b.dom and a.cod == b.cod and a.forest == b.forest


def isomorphic_by_search(a: ForestMorphism, b: ForestMorphism) -> bool:
    """Search for a bijection preserving both orders and both labellings."""
    F, G = a.forest, b.forest
    if F.size != G.size or a.dom != b.dom or a.cod != b.cod:
        return False
    for alpha in permutations(range(G.size)):
        if any(alpha[x] >= alpha[y] for x in range(F.size) for y in range(x + 1, F.size)):
            continue
        if any(F.leq(x, y) != G.leq(alpha[x], alpha[y]) for x in range(F.size) for y in range(F.size)):
            continue
        if [alpha[x] for x in F.maxima] != list(G.maxima):
            continue
        if [alpha[x] for x in F.minima] != list(G.minima):
            continue
        return True
    return False


@dataclass(frozen=True)
class GraftResult:
    """The raw graft ``H = F . G`` with its structure maps.

    ``j_f`` and ``j_g`` embed ``F`` and ``G`` into ``H``; ``collapse`` sends
    each inserted tree ``F_i`` back to the minimum ``y_i`` of ``G`` it
    replaced.
    """

    h: OrderedForest
    j_f: tuple[int, ...]
    j_g: tuple[int, ...]
    collapse: tuple[int, ...]
    f: ForestMorphism
    g: ForestMorphism

    @property
    def morphism(self) -> ForestMorphism:
        return ForestMorphism(self.h)


def raw_graft(f: ForestMorphism, g: ForestMorphism) -> GraftResult:
    """Graft the trees of ``f`` onto the minima of ``g``.

    ``f: [m] -> [n]`` and ``g: [l] -> [m]``; the result represents
    ``[l] -> [n]``.
    """
    if f.dom != g.cod:
        raise BoundaryMismatch(
            f"cannot graft [{f.dom}]->[{f.cod}] onto [{g.dom}]->[{g.cod}]"
        )
    F, G = f.forest, g.forest
    xs, ys = F.maxima, G.minima
    slot = {y: i for i, y in enumerate(ys)}
    blocks = [lower_set(F, x) for x in xs]

    j_f = [0] * F.size
    j_g = [0] * G.size
    collapse = []
    for z in range(G.size):
        if z in slot:
            i = slot[z]
            for a in blocks[i]:
                j_f[a] = len(collapse)
                collapse.append(z)
            j_g[z] = j_f[xs[i]]
        else:
            j_g[z] = len(collapse)
            collapse.append(z)

    upper = [z for z in range(G.size) if z not in slot]
    rel = set()
    for i, blk in enumerate(blocks):
        for a in blk:
            for b in blk:
                if a != b and F.leq(a, b):
                    rel.add((j_f[a], j_f[b]))
            for z in upper:
                if G.leq(ys[i], z):
                    rel.add((j_f[a], j_g[z]))
    for a in upper:
        for b in upper:
            if a != b and G.leq(a, b):
                rel.add((j_g[a], j_g[b]))
    size = len(collapse)
    h = validate(size, _hasse(size, rel))
    return GraftResult(h, tuple(j_f), tuple(j_g), tuple(collapse), f, g)


def is_cocone(f: ForestMorphism, g: ForestMorphism, Q: OrderedForest,
              f_map: Sequence[int], g_map: Sequence[int]) -> bool:
    """Boundary-compatible cocone test for the span underlying ``(f, g)``."""
    F, G = f.forest, g.forest
    if not (is_forest_map(F, Q, f_map) and is_forest_map(G, Q, g_map)):
        return False
    xs, ys = F.maxima, G.minima
    if len(xs) != len(ys):
        return False
    if any(f_map[x] != g_map[y] for x, y in zip(xs, ys)):
        return False
    for x, y in zip(xs, ys):
        for z in range(y):
            for a in lower_set(F, x):
                if g_map[z] > f_map[a]:
                    return False
    return True


def boundary_cocones(f: ForestMorphism, g: ForestMorphism, Q: OrderedForest):
    """All boundary-compatible cocones ``(F -> Q, G -> Q)``."""
    if f.dom != g.cod:
        raise BoundaryMismatch("span is not composable")
    F, G = f.forest, g.forest
    xs, ys = F.maxima, G.minima
    by_key = {}
    for gm in forest_maps(G, Q):
        by_key.setdefault(tuple(gm[y] for y in ys), []).append(gm)
    out = []
    for fm in forest_maps(F, Q):
        for gm in by_key.get(tuple(fm[x] for x in xs), ()):
            if is_cocone(f, g, Q, fm, gm):
                out.append((fm, gm))
    return out


def factor_cocone(result: GraftResult, f_map, g_map, Q: OrderedForest) -> tuple[int, ...]:
    """The unique ``u: H -> Q`` with ``u j_f = f_map`` and ``u j_g = g_map``."""
    if not is_cocone(result.f, result.g, Q, f_map, g_map):
        raise NotACocone("maps do not form a boundary-compatible cocone")
    u = [None] * result.h.size
    for a, h in enumerate(result.j_f):
        u[h] = f_map[a]
    for z, h in enumerate(result.j_g):
        if u[h] is not None and u[h] != g_map[z]:
            raise NotACocone(f"cocone legs disagree at {h}")
        u[h] = g_map[z]
    u = tuple(u)
    if not is_forest_map(result.h, Q, u):
        raise NotACocone("induced map does not preserve both orders")
    return u


def unary_vertices(F: OrderedForest) -> list[int]:
    """Internal elements with exactly one lower and one upper cover."""
    return [
        v for v in range(F.size)
        if len(F.lower_covers[v]) == 1 and len(F.upper_covers[v]) == 1
    ]


def contract(F: OrderedForest, v: int) -> OrderedForest:
    """Remove a unary vertex, joining its lower and upper covers."""
    if not (0 <= v < F.size) or v not in unary_vertices(F):
        raise NotUnary(f"{v} is not a unary internal vertex")
    (u,) = F.lower_covers[v]
    (w,) = F.upper_covers[v]
    covers = [c for c in F.covers if v not in c] + [(u, w)]

    def shift(x):
        return x - 1 if x > v else x

    try:
        return validate(F.size - 1, [(shift(a), shift(b)) for a, b in covers])
    except ForestError as exc:
        raise IntervalViolationAfterContraction(v, exc) from exc


def reduce(F: OrderedForest) -> OrderedForest:
    while True:
        vs = unary_vertices(F)
        if not vs:
            return F
        F = contract(F, vs[-1])


def normal_forms(F: OrderedForest, _memo=None) -> frozenset:
    """Every normal form reachable by some maximal contraction sequence."""
    memo = {} if _memo is None else _memo
    if F in memo:
        return memo[F]
    vs = unary_vertices(F)
    if not vs:
        res = frozenset([F])
    else:
        res = frozenset().union(*(normal_forms(contract(F, v), memo) for v in vs))
    memo[F] = res
    return res


def confluence_check(F: OrderedForest) -> bool:
    return len(normal_forms(F)) == 1


def identity_forest(n: int) -> OrderedForest:
    return discrete(n)
