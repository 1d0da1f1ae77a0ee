"""Exact linear algebra over the rationals.

Matrices act on column vectors: a matrix of shape ``(r, c)`` is a map
``Q^c -> Q^r``.  Echelon forms are computed by fraction-free (Bareiss)
elimination on integer-scaled rows, so intermediate entries stay integral
until the final normalisation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce as _fold
from math import lcm
from typing import Iterable, Sequence

from ordfor.errors import DimensionMismatch, MalformedInput, NotAComplex, NotChainMap

__all__ = [
    "Matrix",
    "parse_rational",
    "format_rational",
    "rref",
    "rank",
    "kernel",
    "image",
    "intersect",
    "solve",
    "is_isomorphism",
    "is_injective",
    "is_surjective",
    "ChainComplex",
    "ChainMap",
    "homology_dims",
    "mapping_cone",
    "is_quasi_iso",
    "induced_homology",
    "LinearConstraintSystem",
    "solve_limit",
]


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise MalformedInput(f"not a rational: {s!r}")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise MalformedInput(f"not a rational: {s!r}")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, eq=False)
class Matrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    def __post_init__(self):
        ents = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if len(ents) != self.rows or any(len(r) != self.cols for r in ents):
            raise DimensionMismatch(f"entries do not have shape {self.rows}x{self.cols}")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @cached_property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                      tuple(() for _ in range(self.cols)))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.T.entries
        return Matrix(self.rows, other.cols, tuple(
            tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in ocols)
            for row in self.entries
        ))

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match")
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.entries)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        self._check_same(other)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check_same(other)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def take_columns(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.entries))

    def take_rows(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(len(idx), self.cols, tuple(self.entries[i] for i in idx))

    def to_lists(self) -> list[list[str]]:
        return [[format_rational(a) for a in r] for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def hstack(blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(rows or 0, 0)
    r = blocks[0].rows
    if any(b.rows != r for b in blocks):
        raise DimensionMismatch("hstack needs equal row counts")
    return Matrix(r, sum(b.cols for b in blocks),
                  tuple(tuple(x for b in blocks for x in b.entries[i]) for i in range(r)))


def vstack(blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, cols or 0)
    c = blocks[0].cols
    if any(b.cols != c for b in blocks):
        raise DimensionMismatch("vstack needs equal column counts")
    return Matrix(sum(b.rows for b in blocks), c, tuple(r for b in blocks for r in b.entries))


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    return vstack([hstack([a, Matrix.zeros(a.rows, b.cols)]),
                   hstack([Matrix.zeros(b.rows, a.cols), b])])


def _integer_rows(M: Matrix) -> list[list[int]]:
    out = []
    for row in M.entries:
        den = _fold(lcm, (a.denominator for a in row), 1)
        out.append([int(a * den) for a in row])
    return out


def _bareiss(rows: list[list[int]], ncols: int) -> list[int]:
    """In-place fraction-free row echelon; returns pivot columns."""
    pivots = []
    prev = 1
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            lead = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, ncols):
                q, rem = divmod(piv * row_i[j] - lead * row_r[j], prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[j] = q
            row_i[c] = 0
            # rows below the pivot that skipped earlier columns stay scaled consistently
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    rows = _integer_rows(M)
    pivots = _bareiss(rows, M.cols)
    R = [[Fraction(x) for x in row] for row in rows[: len(pivots)]]
    for i, c in enumerate(pivots):
        p = R[i][c]
        R[i] = [x / p for x in R[i]]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    return Matrix(len(R), M.cols, tuple(tuple(r) for r in R)), tuple(pivots)


def rank(M: Matrix) -> int:
    return len(_bareiss(_integer_rows(M), M.cols))


def kernel(M: Matrix) -> Matrix:
    """Basis of the null space, one column per free variable."""
    R, pivots = rref(M)
    free = [j for j in range(M.cols) if j not in pivots]
    cols = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R.entries[i][f]
        cols.append(v)
    return Matrix.from_columns(cols, M.cols)


def image(M: Matrix) -> Matrix:
    """Basis of the column space: the pivot columns of ``M``."""
    _, pivots = rref(M)
    return M.take_columns(pivots)


def intersect(U: Matrix, V: Matrix) -> Matrix:
    """Basis of ``span(U) & span(V)`` for column bases in a common space."""
    if U.rows != V.rows:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    K = kernel(hstack([U, -V]))
    return image(U @ K.take_rows(range(U.cols)))


def solve(A: Matrix, B: Matrix) -> Matrix | None:
    """Some ``X`` with ``A X = B`` (free variables set to zero), or None."""
    if A.rows != B.rows:
        raise DimensionMismatch("right-hand side has the wrong number of rows")
    R, pivots = rref(hstack([A, B]))
    if any(p >= A.cols for p in pivots):
        return None
    X = [[Fraction(0)] * B.cols for _ in range(A.cols)]
    for i, p in enumerate(pivots):
        X[p] = list(R.entries[i][A.cols:])
    return Matrix(A.cols, B.cols, tuple(tuple(r) for r in X))


def is_isomorphism(M: Matrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def is_injective(M: Matrix) -> bool:
    return rank(M) == M.cols


def is_surjective(M: Matrix) -> bool:
    return rank(M) == M.rows


@dataclass(frozen=True)
class ChainComplex:
    """Nonnegatively graded complex with top degree ``len(dims) - 1``.

    ``differentials[n - 1]`` is the map from degree ``n`` to ``n - 1``.
    """

    dims: tuple[int, ...]
    differentials: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise DimensionMismatch("need one differential per positive degree")
        for n, d in enumerate(self.differentials, start=1):
            if d.shape != (self.dims[n - 1], self.dims[n]):
                raise DimensionMismatch(f"differential {n} has shape {d.shape}")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def d(self, n: int) -> Matrix:
        """The differential out of degree ``n`` (zero outside the range)."""
        if 1 <= n <= self.top:
            return self.differentials[n - 1]
        src = self.dims[n] if 0 <= n <= self.top else 0
        tgt = self.dims[n - 1] if 0 <= n - 1 <= self.top else 0
        return Matrix.zeros(tgt, src)

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.top else 0

    def check(self) -> "ChainComplex":
        for n in range(2, self.top + 1):
            if not (self.d(n - 1) @ self.d(n)).is_zero():
                raise NotAComplex(f"d_{n - 1} d_{n} != 0")
        return self


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    components: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def at(self, n: int) -> Matrix:
        if 0 <= n < len(self.components):
            return self.components[n]
        return Matrix.zeros(self.target.dim(n), self.source.dim(n))

    def check(self) -> "ChainMap":
        top = max(self.source.top, self.target.top)
        if len(self.components) != top + 1:
            raise NotChainMap("need one component per degree")
        for n, f in enumerate(self.components):
            if f.shape != (self.target.dim(n), self.source.dim(n)):
                raise NotChainMap(f"component {n} has shape {f.shape}")
        for n in range(1, top + 1):
            if self.target.d(n) @ self.at(n) != self.at(n - 1) @ self.source.d(n):
                raise NotChainMap(f"square at degree {n} does not commute")
        return self


def homology_dims(C: ChainComplex) -> list[int]:
    C.check()
    out = []
    for n in range(C.top + 1):
        nullity = C.dim(n) - rank(C.d(n))
        out.append(nullity - rank(C.d(n + 1)))
    return out


def mapping_cone(f: ChainMap) -> ChainComplex:
    """Cone with ``cone_n = D_n + C_(n-1)`` and ``d(y, x) = (dy + f x, -dx)``."""
    f.check()
    C, D = f.source, f.target
    top = max(C.top, D.top) + 1
    dims = [D.dim(n) + C.dim(n - 1) for n in range(top + 1)]
    diffs = []
    for n in range(1, top + 1):
        upper = hstack([D.d(n), f.at(n - 1)])
        lower = hstack([Matrix.zeros(C.dim(n - 2), D.dim(n)), -C.d(n - 1)])
        diffs.append(vstack([upper, lower]))
    return ChainComplex(tuple(dims), tuple(diffs)).check()


def is_quasi_iso(f: ChainMap) -> bool:
    return all(h == 0 for h in homology_dims(mapping_cone(f)))


def _homology_basis(C: ChainComplex, n: int) -> tuple[Matrix, Matrix]:
    """Boundary basis and cycle representatives completing it, in degree n."""
    Z = kernel(C.d(n))
    B = image(C.d(n + 1))
    reps = []
    current = B
    for z in Z.columns():
        trial = hstack([current, Matrix.from_columns([z], C.dim(n))])
        if rank(trial) > current.cols:
            current = trial
            reps.append(z)
    return B, Matrix.from_columns(reps, C.dim(n))


def induced_homology(f: ChainMap) -> list[Matrix]:
    """Matrices of ``H_n(f)`` in bases of cycle representatives."""
    f.check()
    top = max(f.source.top, f.target.top)
    out = []
    for n in range(top + 1):
        _, hs = _homology_basis(f.source, n)
        bt, ht = _homology_basis(f.target, n)
        images = f.at(n) @ hs
        coords = solve(hstack([ht, bt]), images)
        assert coords is not None, "a cycle must map to a cycle"
        out.append(coords.take_rows(range(ht.cols)))
    return out


def is_quasi_iso_by_homology(f: ChainMap) -> bool:
    return all(is_isomorphism(h) for h in induced_homology(f))


@dataclass
class LinearConstraintSystem:
    """Homogeneous equations ``sum_k M_k x_(b_k) = 0`` on a product of blocks."""

    blocks: list[int]
    equations: list[list[tuple[int, Matrix]]] = field(default_factory=list)

    def add(self, terms: Sequence[tuple[int, Matrix]]):
        rows = {M.rows for _, M in terms}
        if len(rows) > 1:
            raise DimensionMismatch("terms of one equation need equal row counts")
        for b, M in terms:
            if M.cols != self.blocks[b]:
                raise DimensionMismatch(f"term on block {b} has {M.cols} columns")
        self.equations.append(list(terms))

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for d in self.blocks:
            out.append(acc)
            acc += d
        return out


def solve_limit(sys: LinearConstraintSystem) -> tuple[Matrix, list[Matrix]]:
    """Solution basis (columns in the product space) and per-block projections."""
    offs = sys.offsets()
    total = sum(sys.blocks)
    rows = []
    for terms in sys.equations:
        r = terms[0][1].rows
        big = [[Fraction(0)] * total for _ in range(r)]
        for b, M in terms:
            for i in range(r):
                for j in range(M.cols):
                    big[i][offs[b] + j] += M.entries[i][j]
        rows.extend(big)
    A = Matrix(len(rows), total, tuple(tuple(r) for r in rows))
    basis = kernel(A)
    projections = [basis.take_rows(range(o, o + d)) for o, d in zip(offs, sys.blocks)]
    return basis, projections
