"""Semisimplicial modules, normalized chains, and functors on surjections.

A functor ``A`` on surjections truncated at ``N`` is translated into face
data by ``X_n = A[n + 1]`` with ``d_i = A(s_i)``, where ``s_i: [n+1] ->> [n]``
merges ``i`` and ``i + 1``.  The bottom level ``A[0]`` becomes an
augmentation ``X_0 -> A[0]`` which normalization never looks at.  This is the
only place that convention lives.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from ordfor.errors import FunctorLawViolation, NotNatural, SimplicialIdentityViolation
from ordfor.linalg import (
    ChainComplex,
    ChainMap,
    LinearConstraintSystem,
    Matrix,
    is_quasi_iso,
    is_surjective,
    kernel,
    solve,
    solve_limit,
    vstack,
)
from ordfor.shadow import Surjection, enumerate_surjections, identity_surjection

__all__ = [
    "SemisimplicialModule",
    "SSMap",
    "EpiFunctor",
    "EpiMap",
    "validate_ssm",
    "normalize",
    "normalized_bases",
    "normalize_map",
    "gamma",
    "is_weak_equivalence",
    "is_fibration",
    "elementary",
    "to_epi_functor",
    "from_epi_functor",
    "from_epi_map",
    "natural_maps",
    "random_complex",
    "random_epi_functor",
    "constant_epi_functor",
]


@dataclass(frozen=True)
class SemisimplicialModule:
    """Face-map data ``d_i: X_n -> X_(n-1)`` keyed by ``(n, i)``.

    ``augmentation`` is an optional map ``X_0 -> X_(-1)`` with
    ``aug_dim`` rows; it is carried along but ignored by normalization.
    """

    dims: tuple[int, ...]
    faces: dict = field(hash=False)
    aug_dim: int = 0
    augmentation: Matrix | None = field(default=None, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if self.augmentation is None:
            object.__setattr__(self, "augmentation", Matrix.zeros(self.aug_dim, self.dims[0]))

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def d(self, n: int, i: int) -> Matrix:
        if n == 0:
            return self.augmentation
        return self.faces[(n, i)]

    def __eq__(self, other):
        if not isinstance(other, SemisimplicialModule):
            return NotImplemented
        return (self.dims == other.dims and self.aug_dim == other.aug_dim
                and self.augmentation == other.augmentation
                and set(self.faces) == set(other.faces)
                and all(self.faces[k] == other.faces[k] for k in self.faces))


def validate_ssm(X: SemisimplicialModule) -> SemisimplicialModule:
    """Check shapes and every identity ``d_i d_j = d_(j-1) d_i`` for ``i < j``."""
    for n in range(1, X.top + 1):
        for i in range(n + 1):
            M = X.faces.get((n, i))
            if M is None or M.shape != (X.dims[n - 1], X.dims[n]):
                raise SimplicialIdentityViolation(n, i, i)
    if X.augmentation.shape != (X.aug_dim, X.dims[0]):
        raise SimplicialIdentityViolation(0, 0, 0)
    for n in range(1, X.top + 1):
        for j in range(1, n + 1):
            for i in range(j):
                if X.d(n - 1, i) @ X.d(n, j) != X.d(n - 1, j - 1) @ X.d(n, i):
                    raise SimplicialIdentityViolation(n, i, j)
    return X


def normalized_bases(X: SemisimplicialModule) -> list[Matrix]:
    """Column bases of ``N_n = intersection of ker d_i, i < n``."""
    bases = [Matrix.identity(X.dims[0])]
    for n in range(1, X.top + 1):
        stacked = vstack([X.faces[(n, i)] for i in range(n)], cols=X.dims[n])
        bases.append(kernel(stacked))
    return bases


def normalize(X: SemisimplicialModule) -> ChainComplex:
    """Normalized chains with differential ``(-1)^n d_n`` restricted."""
    bases = normalized_bases(X)
    diffs = []
    for n in range(1, X.top + 1):
        image = X.faces[(n, n)] @ bases[n]
        coords = solve(bases[n - 1], image)
        if coords is None:
            raise SimplicialIdentityViolation(n, 0, n)
        diffs.append(coords.scale((-1) ** n))
    return ChainComplex(tuple(b.cols for b in bases), tuple(diffs)).check()


def gamma(C: ChainComplex) -> SemisimplicialModule:
    faces = {}
    for n in range(1, C.top + 1):
        for i in range(n):
            faces[(n, i)] = Matrix.zeros(C.dims[n - 1], C.dims[n])
        faces[(n, n)] = C.d(n).scale((-1) ** n)
    return SemisimplicialModule(C.dims, faces)


@dataclass(frozen=True)
class SSMap:
    source: SemisimplicialModule
    target: SemisimplicialModule
    components: tuple[Matrix, ...]
    augmentation: Matrix | None = None

    def check(self) -> "SSMap":
        X, Y = self.source, self.target
        if X.top != Y.top or len(self.components) != X.top + 1:
            raise NotNatural("map needs one component per degree")
        for n, f in enumerate(self.components):
            if f.shape != (Y.dims[n], X.dims[n]):
                raise NotNatural(f"component {n} has shape {f.shape}")
        for n in range(1, X.top + 1):
            for i in range(n + 1):
                if self.components[n - 1] @ X.faces[(n, i)] != Y.faces[(n, i)] @ self.components[n]:
                    raise NotNatural(f"face d_{i} on degree {n} does not commute")
        if self.augmentation is not None:
            if self.augmentation @ X.augmentation != Y.augmentation @ self.components[0]:
                raise NotNatural("augmentation square does not commute")
        return self


def normalize_map(f: SSMap) -> ChainMap:
    f.check()
    bx = normalized_bases(f.source)
    by = normalized_bases(f.target)
    comps = []
    for n, g in enumerate(f.components):
        coords = solve(by[n], g @ bx[n])
        if coords is None:
            raise NotNatural(f"map does not preserve normalized chains in degree {n}")
        comps.append(coords)
    return ChainMap(normalize(f.source), normalize(f.target), tuple(comps)).check()


def is_weak_equivalence(f: SSMap) -> bool:
    return is_quasi_iso(normalize_map(f))


def is_fibration(f: SSMap) -> bool:
    return all(is_surjective(g) for g in normalize_map(f).components)


# functors on the truncated surjection category

@dataclass(frozen=True)
class EpiFunctor:
    """Covariant functor on surjections among ``[0..N]``: ``A(s): A[n] -> A[m]``."""

    dims: tuple[int, ...]
    maps: dict = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def truncation(self) -> int:
        return len(self.dims) - 1

    def __call__(self, s: Surjection) -> Matrix:
        return self.maps[s]

    def check(self) -> "EpiFunctor":
        N = self.truncation
        for n, m in product(range(N + 1), repeat=2):
            for s in enumerate_surjections(n, m):
                M = self.maps.get(s)
                if M is None or M.shape != (self.dims[m], self.dims[n]):
                    raise FunctorLawViolation(f"missing or misshapen value on {s.values}")
        for n in range(N + 1):
            if self.maps[identity_surjection(n)] != Matrix.identity(self.dims[n]):
                raise FunctorLawViolation(f"identity of [{n}] not sent to identity")
        for n, k, m in product(range(N + 1), repeat=3):
            for s in enumerate_surjections(n, k):
                for t in enumerate_surjections(k, m):
                    st = Surjection(n, m, tuple(t.values[v] for v in s.values))
                    if self.maps[st] != self.maps[t] @ self.maps[s]:
                        raise FunctorLawViolation(f"composition {s.values} then {t.values}")
        return self

    def __eq__(self, other):
        if not isinstance(other, EpiFunctor):
            return NotImplemented
        return (self.dims == other.dims and set(self.maps) == set(other.maps)
                and all(self.maps[k] == other.maps[k] for k in self.maps))


@dataclass(frozen=True)
class EpiMap:
    source: EpiFunctor
    target: EpiFunctor
    components: tuple[Matrix, ...]

    def check(self) -> "EpiMap":
        A, B = self.source, self.target
        N = A.truncation
        if B.truncation != N or len(self.components) != N + 1:
            raise NotNatural("truncations differ")
        for n, m in product(range(N + 1), repeat=2):
            for s in enumerate_surjections(n, m):
                if self.components[m] @ A(s) != B(s) @ self.components[n]:
                    raise NotNatural(f"square at {s.values} does not commute")
        return self


@lru_cache(maxsize=None)
def elementary(n: int, i: int) -> Surjection:
    """``[n + 1] ->> [n]`` identifying ``i`` and ``i + 1``."""
    return Surjection(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 2)))


def from_epi_functor(A: EpiFunctor) -> SemisimplicialModule:
    A.check()
    N = A.truncation
    if N < 1:
        raise FunctorLawViolation("need truncation at least 1 to have a degree-0 level")
    faces = {(n, i): A(elementary(n, i)) for n in range(1, N) for i in range(n + 1)}
    return validate_ssm(SemisimplicialModule(A.dims[1:], faces, A.dims[0], A(elementary(0, 0))))


def _factor(s: Surjection) -> list[Surjection]:
    """Elementary factors of ``s``, first-applied first."""
    factors = []
    while s.n > s.m:
        j = next(j for j in range(s.n) if s.values[j] == s.values[j + 1])
        factors.append(elementary(s.n - 1, j))
        s = Surjection(s.n - 1, s.m, s.values[: j + 1] + s.values[j + 2:])
    return factors


def to_epi_functor(X: SemisimplicialModule) -> EpiFunctor:
    validate_ssm(X)
    dims = (X.aug_dim,) + X.dims
    N = len(dims) - 1

    def face(e: Surjection) -> Matrix:
        # e: [p + 1] ->> [p] acts on X_p
        p = e.m
        i = next(j for j in range(e.n) if e.values[j] == e.values[j + 1])
        return X.d(p, i)

    maps = {}
    for n, m in product(range(N + 1), repeat=2):
        for s in enumerate_surjections(n, m):
            M = Matrix.identity(dims[n])
            for e in _factor(s):
                M = face(e) @ M
            maps[s] = M
    return EpiFunctor(dims, maps).check()


def from_epi_map(u: EpiMap) -> SSMap:
    u.check()
    return SSMap(from_epi_functor(u.source), from_epi_functor(u.target),
                 u.components[1:], u.components[0]).check()


def natural_maps(dims_a, dims_b, squares) -> list[tuple[Matrix, ...]]:
    """Basis of natural maps ``u`` with ``u_m A_f = B_f u_n`` for each square.

    ``squares`` lists ``(n, m, A_f, B_f)`` with ``A_f: A[n] -> A[m]`` and
    ``B_f: B[n] -> B[m]``.
    """
    blocks = [a * b for a, b in zip(dims_a, dims_b)]
    sys = LinearConstraintSystem(blocks)
    for n, m, Af, Bf in squares:
        rows = dims_b[m] * dims_a[n]
        left = [[0] * blocks[m] for _ in range(rows)]
        right = [[0] * blocks[n] for _ in range(rows)]
        for i in range(dims_b[m]):
            for j in range(dims_a[n]):
                r = i * dims_a[n] + j
                for k in range(dims_a[m]):
                    left[r][i * dims_a[m] + k] += Af.entries[k][j]
                for q in range(dims_b[n]):
                    right[r][q * dims_a[n] + j] -= Bf.entries[i][q]
        sys.add([(m, Matrix(rows, blocks[m], tuple(map(tuple, left)))),
                 (n, Matrix(rows, blocks[n], tuple(map(tuple, right))))])
    basis, projections = solve_limit(sys)
    out = []
    for c in range(basis.cols):
        comps = []
        for k, P in enumerate(projections):
            vec = P.column(c)
            comps.append(Matrix(dims_b[k], dims_a[k], tuple(
                tuple(vec[i * dims_a[k]: (i + 1) * dims_a[k]]) for i in range(dims_b[k]))))
        out.append(tuple(comps))
    return out


def epi_squares(A: EpiFunctor, B: EpiFunctor):
    N = A.truncation
    return [
        (n, m, A(s), B(s))
        for n, m in product(range(N + 1), repeat=2)
        for s in enumerate_surjections(n, m)
        if n != m
    ]


# random instances; entries are kept in {-2, ..., 2}

def _rand_matrix(rng: random.Random, rows: int, cols: int, lo=-2, hi=2) -> Matrix:
    return Matrix(rows, cols, tuple(tuple(rng.randint(lo, hi) for _ in range(cols)) for _ in range(rows)))


def random_matrix(rng, rows, cols, lo=-2, hi=2):
    return _rand_matrix(rng, rows, cols, lo, hi)


def random_complex(rng: random.Random, top: int, max_dim: int = 3) -> ChainComplex:
    """Random complex; each differential lands in the cycles below it."""
    dims = [rng.randint(0, max_dim) for _ in range(top + 1)]
    diffs = []
    for n in range(1, top + 1):
        if n == 1:
            d = _rand_matrix(rng, dims[0], dims[1])
        else:
            Z = kernel(diffs[-1])
            d = Z @ _rand_matrix(rng, Z.cols, dims[n])
        diffs.append(d)
    return ChainComplex(tuple(dims), tuple(diffs)).check()


def random_augmented_module(rng: random.Random, dims, aug_dim: int) -> SemisimplicialModule:
    """Random module with faces ``d_0, d_1: X_1 -> X_0`` and compatible augmentation."""
    x0, x1 = dims
    eps = _rand_matrix(rng, aug_dim, x0)
    d0 = _rand_matrix(rng, x0, x1)
    K = kernel(eps)
    d1 = d0 + K @ _rand_matrix(rng, K.cols, x1)
    return validate_ssm(SemisimplicialModule((x0, x1), {(1, 0): d0, (1, 1): d1}, aug_dim, eps))


def random_epi_functor(rng: random.Random, dims) -> EpiFunctor:
    """Random functor on surjections among ``[0], [1], [2]``."""
    if len(dims) != 3:
        raise ValueError("random functors are generated at truncation 2")
    return to_epi_functor(random_augmented_module(rng, dims[1:], dims[0]))


def constant_epi_functor(N: int, dim: int = 1) -> EpiFunctor:
    maps = {
        s: Matrix.identity(dim)
        for n, m in product(range(N + 1), repeat=2)
        for s in enumerate_surjections(n, m)
    }
    return EpiFunctor((dim,) * (N + 1), maps).check()
