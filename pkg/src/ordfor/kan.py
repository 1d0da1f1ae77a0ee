"""Truncated arboreal presheaves and the right Kan extension along the shadow.

A presheaf assigns to each reduced forest ``F: [m] -> [n]`` a matrix
``X(F): X[n] -> X[m]``.  The right Kan extension at ``[n]`` is the limit of
``X`` over the comma category whose objects are surjections
``s: [n] ->> [k]`` and whose arrows ``(k, s) -> (k', s')`` are forests
``h: [k'] -> [k]`` with ``shadow(h) o s = s'``.  The limit is solved as a
homogeneous linear system, one block per object and one equation per arrow.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from ordfor.category import compose, enumerate_hom, identity
from ordfor.errors import FunctorLawViolation, NotACone, NotNatural
from ordfor.linalg import LinearConstraintSystem, Matrix, is_isomorphism, solve, solve_limit, vstack
from ordfor.morphism import ForestMorphism
from ordfor.normalization import (
    EpiFunctor,
    EpiMap,
    epi_squares,
    from_epi_map,
    is_fibration,
    is_weak_equivalence,
    natural_maps,
    random_epi_functor,
)
from ordfor.shadow import Surjection, enumerate_surjections, identity_surjection, sigma_of
from ordfor.shadow import compose as compose_surjections

__all__ = [
    "TruncatedPresheaf",
    "PresheafMap",
    "CommaDiagram",
    "KanLimit",
    "pullback_presheaf",
    "pullback_map",
    "representable_presheaf",
    "build_comma",
    "pushforward",
    "pushforward_functor",
    "pushforward_map",
    "unit_check",
    "counit_check",
    "detect_weak_equivalence",
    "detect_fibration",
    "random_natural_map",
]


def _morphisms(N: int):
    for m, n in product(range(N + 1), repeat=2):
        for F in enumerate_hom(m, n):
            yield F


@dataclass(frozen=True)
class TruncatedPresheaf:
    dims: tuple[int, ...]
    maps: dict = field(hash=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def truncation(self) -> int:
        return len(self.dims) - 1

    def __call__(self, F: ForestMorphism) -> Matrix:
        return self.maps[F]

    def check(self) -> "TruncatedPresheaf":
        """Shapes, identities, and ``X(F o G) = X(G) X(F)`` on the truncation."""
        N = self.truncation
        for F in _morphisms(N):
            M = self.maps.get(F)
            if M is None or M.shape != (self.dims[F.dom], self.dims[F.cod]):
                raise FunctorLawViolation(f"missing or misshapen value on {F}")
        for n in range(N + 1):
            if self.maps[identity(n)] != Matrix.identity(self.dims[n]):
                raise FunctorLawViolation(f"identity of [{n}] not sent to identity")
        for l, m, n in product(range(N + 1), repeat=3):
            for G in enumerate_hom(l, m):
                for F in enumerate_hom(m, n):
                    if self.maps[compose(F, G)] != self.maps[G] @ self.maps[F]:
                        raise FunctorLawViolation(f"composite of {F} and {G}")
        return self


@dataclass(frozen=True)
class PresheafMap:
    source: TruncatedPresheaf
    target: TruncatedPresheaf
    components: tuple[Matrix, ...]

    def check(self) -> "PresheafMap":
        X, Y = self.source, self.target
        if X.truncation != Y.truncation or len(self.components) != X.truncation + 1:
            raise NotNatural("truncations differ")
        for F in _morphisms(X.truncation):
            if self.components[F.dom] @ X(F) != Y(F) @ self.components[F.cod]:
                raise NotNatural(f"square at {F} does not commute")
        return self


def pullback_presheaf(A: EpiFunctor) -> TruncatedPresheaf:
    """Precompose with the shadow: ``X(F) = A(shadow F)``."""
    maps = {F: A(sigma_of(F)) for F in _morphisms(A.truncation)}
    return TruncatedPresheaf(A.dims, maps)


def pullback_map(u: EpiMap) -> PresheafMap:
    return PresheafMap(pullback_presheaf(u.source), pullback_presheaf(u.target), u.components)


def representable_presheaf(k: int, N: int) -> TruncatedPresheaf:
    """Free vector space on ``Hom([m], [k])``, acted on by precomposition."""
    if not 0 <= k <= N:
        raise ValueError("need 0 <= k <= N")
    homs = [enumerate_hom(m, k).morphisms for m in range(N + 1)]
    index = [{g: i for i, g in enumerate(h)} for h in homs]
    maps = {}
    for F in _morphisms(N):
        src, tgt = homs[F.cod], homs[F.dom]
        rows = [[0] * len(src) for _ in tgt]
        for j, g in enumerate(src):
            rows[index[F.dom][compose(g, F)]][j] = 1
        maps[F] = Matrix(len(tgt), len(src), tuple(map(tuple, rows)))
    return TruncatedPresheaf(tuple(len(h) for h in homs), maps)


@dataclass(frozen=True)
class CommaDiagram:
    """Objects ``(k, s)`` with ``s: [n] ->> [k]``; arrows ``(src, tgt, h)``."""

    n: int
    objects: tuple[tuple[int, Surjection], ...]
    arrows: tuple[tuple[int, int, ForestMorphism], ...]

    def index(self, k: int, s: Surjection) -> int:
        return self.objects.index((k, s))

    def check(self) -> "CommaDiagram":
        arrows = set(self.arrows)
        for i, (k, _) in enumerate(self.objects):
            if (i, i, identity(k)) not in arrows:
                raise FunctorLawViolation(f"identity missing at object {i}")
        outgoing = {}
        for a, b, h in self.arrows:
            outgoing.setdefault(a, []).append((b, h))
        for a, b, h1 in self.arrows:
            for c, h2 in outgoing.get(b, ()):
                if (a, c, compose(h1, h2)) not in arrows:
                    raise FunctorLawViolation("comma arrows not closed under composition")
        return self


def build_comma(n: int) -> CommaDiagram:
    objects = tuple((k, s) for k in range(n + 1) for s in enumerate_surjections(n, k))
    arrows = []
    for (a, (k, s)), (b, (k2, s2)) in product(enumerate(objects), repeat=2):
        for h in enumerate_hom(k2, k):
            if compose_surjections(s, sigma_of(h)) == s2:
                arrows.append((a, b, h))
    return CommaDiagram(n, objects, tuple(arrows))


@dataclass(frozen=True)
class KanLimit:
    """Limit at ``[n]``: basis columns in the product and per-object projections."""

    comma: CommaDiagram
    basis: Matrix
    projections: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return self.basis.cols

    def projection(self, k: int, s: Surjection) -> Matrix:
        return self.projections[self.comma.index(k, s)]

    def coordinates(self, stacked: Matrix) -> Matrix:
        """Express product-space columns in the limit basis."""
        coords = solve(self.basis, stacked)
        if coords is None:
            raise NotACone("family does not satisfy the limit equations")
        return coords


def pushforward(X: TruncatedPresheaf, n: int) -> KanLimit:
    if not 0 <= n <= X.truncation:
        raise ValueError("degree outside the truncation")
    comma = build_comma(n)
    if not comma.objects:
        raise AssertionError("comma categories always contain (n, id)")
    sys = LinearConstraintSystem([X.dims[k] for k, _ in comma.objects])
    for a, b, h in comma.arrows:
        if a == b and h == identity(comma.objects[a][0]):
            continue
        k2 = comma.objects[b][0]
        sys.add([(a, X(h)), (b, -Matrix.identity(X.dims[k2]))])
    basis, projections = solve_limit(sys)
    return KanLimit(comma, basis, tuple(projections))


def pushforward_functor(X: TruncatedPresheaf) -> tuple[EpiFunctor, list[KanLimit]]:
    """Assemble the limits into a functor on surjections.

    For ``t: [n] ->> [n']`` the structure map sends a family ``x`` to the
    family ``(k, s') -> x_(k, s' o t)``.
    """
    N = X.truncation
    limits = [pushforward(X, n) for n in range(N + 1)]
    maps = {}
    for n, n2 in product(range(N + 1), repeat=2):
        src, tgt = limits[n], limits[n2]
        for t in enumerate_surjections(n, n2):
            blocks = [src.projection(k, compose_surjections(t, s2)) for k, s2 in tgt.comma.objects]
            maps[t] = tgt.coordinates(vstack(blocks, cols=src.dim))
    return EpiFunctor(tuple(L.dim for L in limits), maps), limits


def pushforward_map(f: PresheafMap, source_limits=None, target_limits=None) -> list[Matrix]:
    """Components of the induced map between Kan extensions, degree by degree."""
    X, Y = f.source, f.target
    N = X.truncation
    source_limits = source_limits or [pushforward(X, n) for n in range(N + 1)]
    target_limits = target_limits or [pushforward(Y, n) for n in range(N + 1)]
    comps = []
    for n in range(N + 1):
        src, tgt = source_limits[n], target_limits[n]
        blocks = [f.components[k] @ src.projections[i] for i, (k, _) in enumerate(src.comma.objects)]
        comps.append(tgt.coordinates(vstack(blocks, cols=src.dim)))
    return comps


def unit_check(A: EpiFunctor) -> dict:
    """Unit ``A -> pushforward(pullback A)``: a cone, natural, and invertible."""
    A.check()
    X = pullback_presheaf(A)
    P, limits = pushforward_functor(X)
    units, iso = [], []
    for n, lim in enumerate(limits):
        stacked = vstack([A(s) for _, s in lim.comma.objects], cols=A.dims[n])
        eta = lim.coordinates(stacked)
        units.append(eta)
        iso.append(is_isomorphism(eta))
    natural = all(
        P(t) @ units[n] == units[n2] @ A(t)
        for n, n2 in product(range(A.truncation + 1), repeat=2)
        for t in enumerate_surjections(n, n2)
    )
    return {
        "pass": all(iso) and natural,
        "iso": iso,
        "natural": natural,
        "dims": list(A.dims),
        "pushforward_dims": list(P.dims),
    }


def counit_check(X: TruncatedPresheaf) -> dict:
    """Counit ``pullback(pushforward X) -> X`` and its pushforward."""
    X.check()
    P, limits = pushforward_functor(X)
    Y = pullback_presheaf(P)
    eps = [lim.projection(k, identity_surjection(k)) for k, lim in enumerate(limits)]
    naturality_failures = [
        F for F in _morphisms(X.truncation)
        if X(F) @ eps[F.cod] != eps[F.dom] @ Y(F)
    ]
    counit = PresheafMap(Y, X, tuple(eps))
    pushed = pushforward_map(counit, target_limits=limits)
    return {
        "pass": not naturality_failures and all(is_isomorphism(c) for c in pushed),
        "natural": not naturality_failures,
        "naturality_failures": len(naturality_failures),
        "counit_iso": [is_isomorphism(e) for e in eps],
        "pushforward_counit_iso": [is_isomorphism(c) for c in pushed],
        "dims": list(X.dims),
        "pushforward_dims": list(P.dims),
    }


def _pushed_epi_map(f: PresheafMap) -> EpiMap:
    f.check()
    PX, lx = pushforward_functor(f.source)
    PY, ly = pushforward_functor(f.target)
    comps = pushforward_map(f, lx, ly)
    return EpiMap(PX, PY, tuple(comps)).check()


def detect_weak_equivalence(f: PresheafMap) -> bool:
    return is_weak_equivalence(from_epi_map(_pushed_epi_map(f)))


def detect_fibration(f: PresheafMap) -> bool:
    return is_fibration(from_epi_map(_pushed_epi_map(f)))


def random_natural_map(rng: random.Random, A: EpiFunctor, B: EpiFunctor) -> EpiMap:
    """Random integer combination of a basis of natural maps ``A -> B``."""
    basis = natural_maps(A.dims, B.dims, epi_squares(A, B))
    comps = [Matrix.zeros(b, a) for a, b in zip(A.dims, B.dims)]
    for vec in basis:
        c = rng.randint(-2, 2)
        comps = [acc + v.scale(c) for acc, v in zip(comps, vec)]
    return EpiMap(A, B, tuple(comps)).check()


def random_epi_pair(rng: random.Random, max_dim: int = 3):
    dims = lambda: tuple(rng.randint(0, max_dim) for _ in range(3))
    A = random_epi_functor(rng, dims())
    B = A if rng.random() < 0.4 else random_epi_functor(rng, dims())
    return A, B
