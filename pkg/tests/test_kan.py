import random

import pytest
import sympy

from ordfor.category import enumerate_hom, identity
from ordfor.errors import NotNatural
from ordfor.kan import (
    PresheafMap,
    build_comma,
    counit_check,
    detect_fibration,
    detect_weak_equivalence,
    pullback_map,
    pullback_presheaf,
    pushforward,
    pushforward_functor,
    random_epi_pair,
    random_natural_map,
    representable_presheaf,
    unit_check,
)
from ordfor.linalg import Matrix
from ordfor.normalization import EpiMap, constant_epi_functor, from_epi_map, is_weak_equivalence, random_epi_functor
from ordfor.shadow import identity_surjection


@pytest.mark.parametrize("n, objects, arrows", [(0, 1, 2), (1, 2, 8), (2, 4, 36)])
def test_comma_sizes(n, objects, arrows):
    C = build_comma(n).check()
    assert (len(C.objects), len(C.arrows)) == (objects, arrows)
    i = C.index(n, identity_surjection(n))
    assert (i, i, identity(n)) in C.arrows


def limit_dim_oracle(X, n):
    # families over the comma objects fixed by every arrow, via sympy
    C = build_comma(n)
    offs, acc = [], 0
    for k, _ in C.objects:
        offs.append(acc)
        acc += X.dims[k]
    rows = []
    for a, b, h in C.arrows:
        Mh = X(h)
        ka, kb = C.objects[a][0], C.objects[b][0]
        for i in range(X.dims[kb]):
            row = [0] * acc
            for j in range(X.dims[ka]):
                row[offs[a] + j] += Mh.entries[i][j]
            row[offs[b] + i] -= 1
            rows.append(row)
    if not rows:
        return acc
    return len(sympy.Matrix(rows).nullspace())


@pytest.mark.parametrize("k", [0, 1, 2])
def test_limits_against_sympy(k):
    X = representable_presheaf(k, 2)
    for n in range(3):
        assert pushforward(X, n).dim == limit_dim_oracle(X, n)


def test_representable_dims():
    X = representable_presheaf(1, 2).check()
    assert X.dims == tuple(len(enumerate_hom(m, 1)) for m in range(3))


def test_pullback_of_constant_is_constant():
    X = pullback_presheaf(constant_epi_functor(2)).check()
    assert all(M == Matrix.identity(1) for M in X.maps.values())


def test_unit_examples():
    assert unit_check(constant_epi_functor(2))["pass"]
    rng = random.Random(0)
    rep = unit_check(random_epi_functor(rng, (1, 2, 2)))
    assert rep["pass"] and rep["pushforward_dims"] == [1, 2, 2]


def test_counit_on_pullback_is_iso():
    rng = random.Random(1)
    A = random_epi_functor(rng, (2, 1, 2))
    rep = counit_check(pullback_presheaf(A))
    assert rep["pass"] and all(rep["counit_iso"])


def test_counit_on_representable():
    rep = counit_check(representable_presheaf(0, 2))
    assert rep["pass"]
    assert rep["pushforward_counit_iso"] == [True, True, True]
    assert rep["counit_iso"] == [False, True, True]
    assert rep["dims"] == [2, 0, 0] and rep["pushforward_dims"] == [1, 0, 0]


def test_pushforward_functor_laws():
    for k in range(3):
        A, _ = pushforward_functor(representable_presheaf(k, 2))
        A.check()


def test_detection_examples():
    A = constant_epi_functor(2)
    ident = EpiMap(A, A, tuple(Matrix.identity(1) for _ in range(3)))
    assert detect_weak_equivalence(pullback_map(ident))
    Z = constant_epi_functor(2, dim=0)
    zero = EpiMap(A, Z, tuple(Matrix.zeros(0, 1) for _ in range(3))).check()
    assert not detect_weak_equivalence(pullback_map(zero))
    assert detect_fibration(pullback_map(zero))


def test_detection_transports_weak_equivalences():
    rng = random.Random(7)
    agree = 0
    for _ in range(10):
        A, B = random_epi_pair(rng, 2)
        u = random_natural_map(rng, A, B)
        assert detect_weak_equivalence(pullback_map(u)) == is_weak_equivalence(from_epi_map(u))
        agree += 1
    assert agree == 10


def test_presheaf_map_naturality_checked():
    X = representable_presheaf(0, 2)
    bad = PresheafMap(X, X, (Matrix.from_rows([[1, 0], [0, 0]]), Matrix.zeros(0, 0), Matrix.zeros(0, 0)))
    with pytest.raises(NotNatural):
        bad.check()
