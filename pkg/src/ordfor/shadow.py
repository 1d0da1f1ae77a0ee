"""Order-preserving surjections and the shadow of a forest morphism.

A morphism ``[m] -> [n]`` of the opposite surjection category is stored as
its underlying surjection ``[n] ->> [m]``; composition is always written in
the surjection category itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product

from ordfor.category import compose as compose_morphisms
from ordfor.category import enumerate_hom, identity
from ordfor.errors import IndexMismatch, InvalidSurjection
from ordfor.forest import OrderedForest, height, ordinal_sum, restrict
from ordfor.morphism import ForestMorphism

__all__ = [
    "Surjection",
    "Injection",
    "identity_surjection",
    "compose",
    "enumerate_surjections",
    "sigma_of",
    "height_one_subposet",
    "forest_of",
    "is_height_one",
    "duality",
    "from_cuts",
    "compose_injections",
    "check_pi_functor",
]


@dataclass(frozen=True)
class Surjection:
    """Order-preserving surjection ``[n] ->> [m]`` given by its values."""

    n: int
    m: int
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.n + 1:
            raise InvalidSurjection(f"expected {self.n + 1} values, got {len(vals)}")
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise InvalidSurjection(f"{vals} is not weakly increasing")
        if set(vals) != set(range(self.m + 1)):
            raise InvalidSurjection(f"{vals} is not onto [{self.m}]")

    def __call__(self, j: int) -> int:
        return self.values[j]

    def fiber(self, i: int) -> range:
        lo = self.values.index(i)
        return range(lo, lo + self.values.count(i))


@dataclass(frozen=True)
class Injection:
    """Strictly increasing map from ``m + 1`` points into ``[n]``.

    ``m = -1`` encodes the empty source.
    """

    m: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.m + 1 or any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError(f"{vals} is not an injection of size {self.m + 1}")
        if any(not 0 <= v <= self.n for v in vals):
            raise ValueError(f"{vals} leaves [{self.n}]")


def identity_surjection(n: int) -> Surjection:
    return Surjection(n, n, tuple(range(n + 1)))


def compose(sigma: Surjection, tau: Surjection) -> Surjection:
    """``tau o sigma`` for ``sigma: [n] ->> [k]`` and ``tau: [k] ->> [m]``."""
    if sigma.m != tau.n:
        raise IndexMismatch(f"cannot follow [{sigma.n}]->>[{sigma.m}] by [{tau.n}]->>[{tau.m}]")
    return Surjection(sigma.n, tau.m, tuple(tau.values[v] for v in sigma.values))


def enumerate_surjections(n: int, m: int) -> list[Surjection]:
    """All order-preserving surjections ``[n] ->> [m]``, lexicographically."""
    if m > n or m < 0:
        return []
    out = []
    for cuts in combinations(range(1, n + 1), m):
        vals, level = [], 0
        for j in range(n + 1):
            if level < m and j == cuts[level]:
                level += 1
            vals.append(level)
        out.append(Surjection(n, m, tuple(vals)))
    return out


def count_monotone_surjections(n: int, m: int) -> int:
    """Brute-force count over every weakly increasing map ``[n] -> [m]``."""
    if m < 0:
        return 0
    return sum(
        1 for vals in combinations_with_replacement(range(m + 1), n + 1)
        if set(vals) == set(range(m + 1))
    )


def sigma_of(f: ForestMorphism) -> Surjection:
    """Send each minimum to the index of the root above it."""
    F = f.forest
    roots = F.maxima
    vals = []
    for leaf in F.minima:
        above = [i for i, r in enumerate(roots) if F.leq(leaf, r)]
        vals.append(above[0])
    return Surjection(f.cod, f.dom, tuple(vals))


def height_one_subposet(f: ForestMorphism) -> ForestMorphism:
    F = f.forest
    keep = sorted(set(F.minima) | set(F.maxima))
    return ForestMorphism(restrict(F, keep))


def is_height_one(f: ForestMorphism) -> bool:
    """Every component is a root strictly above its leaves, nothing between."""
    F = f.forest
    if height(F) != 1:
        return False
    return not (set(F.minima) & set(F.maxima))


def forest_of(sigma: Surjection) -> ForestMorphism:
    """Ordinal sum over fibers of one root above ``|fiber|`` leaves."""
    trees = []
    for i in range(sigma.m + 1):
        k = len(sigma.fiber(i))
        trees.append(OrderedForest(k + 1, tuple((j, k) for j in range(k))))
    return ForestMorphism(ordinal_sum(trees))


def duality(sigma: Surjection) -> Injection:
    """Cut positions: the largest element of each fiber except the last."""
    cuts = tuple(sigma.fiber(i)[-1] for i in range(sigma.m))
    return Injection(sigma.m - 1, sigma.n - 1, cuts)


def from_cuts(inj: Injection) -> Surjection:
    n = inj.n + 1
    vals = tuple(sum(1 for c in inj.values if c < j) for j in range(n + 1))
    return Surjection(n, inj.m + 1, vals)


def compose_injections(first: Injection, second: Injection) -> Injection:
    """``second o first``."""
    if first.n != second.m:
        raise IndexMismatch("injections are not composable")
    return Injection(first.m, second.n, tuple(second.values[v] for v in first.values))


def check_pi_functor(max_object: int, limit: int = 20) -> dict:
    """Identities, functoriality, fullness, and the height-one bijection."""
    objs = range(max_object + 1)
    problems = []
    checked = {"identities": 0, "composites": 0, "surjections": 0, "height_one": 0}

    for n in objs:
        checked["identities"] += 1
        if sigma_of(identity(n)) != identity_surjection(n):
            problems.append({"check": "identity", "n": n})

    for l, m, n in product(objs, repeat=3):
        for G in enumerate_hom(l, m):
            sG = sigma_of(G)
            for F in enumerate_hom(m, n):
                checked["composites"] += 1
                if sigma_of(compose_morphisms(F, G)) != compose(sigma_of(F), sG):
                    problems.append({"check": "functoriality", "F": F, "G": G})

    for m, n in product(objs, objs):
        hom = enumerate_hom(m, n)
        hit = {sigma_of(f) for f in hom}
        for s in enumerate_surjections(n, m):
            checked["surjections"] += 1
            if s not in hit:
                problems.append({"check": "fullness", "sigma": s})
            if sigma_of(forest_of(s)) != s:
                problems.append({"check": "sigma-of-forest", "sigma": s})
        for f in hom:
            if is_height_one(f):
                checked["height_one"] += 1
                if forest_of(sigma_of(f)) != f:
                    problems.append({"check": "forest-of-sigma", "f": f})

    return {
        "pass": not problems,
        "checked": checked,
        "counterexamples": problems[:limit],
        "counterexample_count": len(problems),
    }

