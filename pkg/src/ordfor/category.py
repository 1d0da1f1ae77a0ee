"""The category of reduced boundary-labelled ordered forests."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ordfor.forest import OrderedForest, discrete, ordinal_sum
from ordfor.morphism import ForestMorphism, raw_graft, reduce

__all__ = [
    "HomSet",
    "identity",
    "compose",
    "size_bound",
    "enumerate_hom",
    "reduced_trees",
    "check_category_axioms",
]


@dataclass(frozen=True)
class HomSet:
    dom: int
    cod: int
    morphisms: tuple[ForestMorphism, ...]

    def __len__(self):
        return len(self.morphisms)

    def __iter__(self):
        return iter(self.morphisms)

    def __contains__(self, f):
        return f in self.morphisms


def identity(n: int) -> ForestMorphism:
    if n < 0:
        raise ValueError("objects are [n] with n >= 0")
    return ForestMorphism(discrete(n))


@lru_cache(maxsize=None)
def compose(f: ForestMorphism, g: ForestMorphism) -> ForestMorphism:
    """``f o g`` for ``f: [m] -> [n]`` and ``g: [l] -> [m]``."""
    return ForestMorphism(reduce(raw_graft(f, g).h))


def size_bound(m: int, n: int) -> int:
    return (m + 1) + (n + 1) + max(0, n - m)


# A plane tree is a tuple of child subtrees; () is a single vertex.

@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _branching(leaves: int) -> tuple[tuple, ...]:
    # subtrees below a root: a leaf, or a vertex with at least two children
    if leaves == 1:
        return ((),)
    out = []
    for k in range(2, leaves + 1):
        for split in _compositions(leaves, k):
            out.extend(product(*(_branching(p) for p in split)))
    return tuple(out)


@lru_cache(maxsize=None)
def _reduced_tree_shapes(leaves: int) -> tuple[tuple, ...]:
    out = [()] if leaves == 1 else []
    for k in range(1, leaves + 1):
        for split in _compositions(leaves, k):
            out.extend(product(*(_branching(p) for p in split)))
    return tuple(out)


def _to_forest(shape) -> OrderedForest:
    covers = []

    def emit(node, counter):
        kids = [emit(c, counter) for c in node]
        me = counter[0]
        counter[0] += 1
        covers.extend((k, me) for k in kids)
        return me

    counter = [0]
    emit(shape, counter)
    return OrderedForest(counter[0], tuple(covers))


def reduced_trees(leaves: int) -> tuple[OrderedForest, ...]:
    """Reduced ordered trees with ``leaves`` minimal elements."""
    return tuple(_to_forest(s) for s in _reduced_tree_shapes(leaves))


@lru_cache(maxsize=None)
def enumerate_hom(m: int, n: int) -> HomSet:
    """All reduced forests with ``m + 1`` roots and ``n + 1`` leaves."""
    found = set()
    if 0 <= m <= n:
        for split in _compositions(n + 1, m + 1):
            for trees in product(*(reduced_trees(p) for p in split)):
                found.add(ForestMorphism(ordinal_sum(trees)))
    ordered = tuple(sorted(found, key=lambda f: (f.size, f.forest.covers)))
    return HomSet(m, n, ordered)


def check_category_axioms(max_object: int, assoc_max: int | None = None,
                          limit: int = 20) -> dict:
    """Exhaustive unit and associativity check on objects ``[0..max_object]``.

    Associativity is checked on objects up to ``assoc_max`` (default
    ``max_object``).  Counterexamples are collected up to ``limit``.
    """
    if assoc_max is None:
        assoc_max = max_object
    objs = range(max_object + 1)
    counterexamples = []
    units = assoc = 0
    for m, n in product(objs, objs):
        for f in enumerate_hom(m, n):
            units += 1
            if not f.reduced:
                counterexamples.append({"law": "reduced", "f": f})
            if compose(f, identity(m)) != f:
                counterexamples.append({"law": "right-unit", "f": f})
            if compose(identity(n), f) != f:
                counterexamples.append({"law": "left-unit", "f": f})
    aobjs = range(assoc_max + 1)
    for r, l, m, n in product(aobjs, repeat=4):
        for K in enumerate_hom(r, l):
            for G in enumerate_hom(l, m):
                GK = compose(G, K)
                for F in enumerate_hom(m, n):
                    assoc += 1
                    if compose(compose(F, G), K) != compose(F, GK):
                        counterexamples.append({"law": "associativity", "F": F, "G": G, "K": K})
    return {
        "pass": not counterexamples,
        "unit_morphisms": units,
        "associativity_triples": assoc,
        "counterexamples": counterexamples[:limit],
        "counterexample_count": len(counterexamples),
    }
