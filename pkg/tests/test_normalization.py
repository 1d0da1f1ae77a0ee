import random

import pytest

from ordfor.errors import FunctorLawViolation, NotNatural, SimplicialIdentityViolation
from ordfor.linalg import ChainComplex, Matrix, homology_dims
from ordfor.normalization import (
    EpiFunctor,
    EpiMap,
    SemisimplicialModule,
    SSMap,
    constant_epi_functor,
    elementary,
    epi_squares,
    from_epi_functor,
    from_epi_map,
    gamma,
    is_fibration,
    is_weak_equivalence,
    natural_maps,
    normalize,
    random_augmented_module,
    random_complex,
    random_epi_functor,
    to_epi_functor,
    validate_ssm,
)
from ordfor.shadow import Surjection

I1 = Matrix.identity(1)


def M(*rows, cols=None):
    return Matrix.from_rows(rows, cols)


def identity_map(X):
    return SSMap(X, X, tuple(Matrix.identity(d) for d in X.dims))


def test_top_degree_one_is_always_valid():
    rng = random.Random(1)
    for _ in range(10):
        X = SemisimplicialModule((2, 3), {(1, 0): Matrix.from_rows([[rng.randint(-2, 2) for _ in range(3)] for _ in range(2)]),
                                          (1, 1): Matrix.zeros(2, 3)})
        validate_ssm(X)


def test_identity_violation_detected():
    d = {(1, 0): I1, (1, 1): I1, (2, 0): I1, (2, 1): Matrix.zeros(1, 1), (2, 2): I1}
    with pytest.raises(SimplicialIdentityViolation):
        validate_ssm(SemisimplicialModule((1, 1, 1), d))


def test_normalize_example():
    X = SemisimplicialModule((1, 2), {(1, 0): M([1, 0]), (1, 1): M([0, 1])})
    C = normalize(X)
    assert C.dims == (1, 1)
    assert C.d(1) == M([-1])
    assert homology_dims(C) == [0, 0]


def test_zero_faces_normalize_to_zero_differentials():
    X = SemisimplicialModule((2, 3), {(1, 0): Matrix.zeros(2, 3), (1, 1): Matrix.zeros(2, 3)})
    C = normalize(X)
    assert C.dims == (2, 3) and C.d(1).is_zero()


def test_gamma_sign():
    G = gamma(ChainComplex((1, 1), (I1,)))
    assert G.faces[(1, 1)] == M([-1])
    assert G.faces[(1, 0)].is_zero()


def test_gamma_then_normalize_is_identity():
    rng = random.Random(5)
    for _ in range(50):
        C = random_complex(rng, rng.randint(0, 3))
        assert normalize(validate_ssm(gamma(C))) == C


def test_identity_map_is_weq_and_fibration():
    X = validate_ssm(gamma(random_complex(random.Random(2), 2)))
    f = identity_map(X)
    assert is_weak_equivalence(f) and is_fibration(f)


def test_zero_map_with_homology_is_not_weq():
    C = ChainComplex((1, 1), (Matrix.zeros(1, 1),))
    X = gamma(C)
    f = SSMap(X, X, (Matrix.zeros(1, 1), Matrix.zeros(1, 1)))
    assert not is_weak_equivalence(f)


def test_levelwise_surjection_that_is_not_a_fibration():
    X = validate_ssm(SemisimplicialModule((1, 1), {(1, 0): I1, (1, 1): I1}))
    Y = validate_ssm(SemisimplicialModule((0, 1), {(1, 0): Matrix.zeros(0, 1), (1, 1): Matrix.zeros(0, 1)}))
    f = SSMap(X, Y, (Matrix.zeros(0, 1), I1)).check()
    assert not is_fibration(f)
    assert not is_weak_equivalence(f)


def test_non_natural_map_rejected():
    X = validate_ssm(SemisimplicialModule((1, 1), {(1, 0): I1, (1, 1): I1}))
    with pytest.raises(NotNatural):
        SSMap(X, X, (I1, Matrix.zeros(1, 1))).check()


def test_elementary():
    assert elementary(1, 0) == Surjection(2, 1, (0, 0, 1))
    assert elementary(1, 1) == Surjection(2, 1, (0, 1, 1))


def test_constant_functor_has_identity_faces():
    X = from_epi_functor(constant_epi_functor(2))
    assert all(F == I1 for F in X.faces.values())
    assert X.augmentation == I1


def test_round_trips():
    rng = random.Random(9)
    for _ in range(20):
        dims = tuple(rng.randint(0, 3) for _ in range(3))
        A = random_epi_functor(rng, dims)
        assert to_epi_functor(from_epi_functor(A)) == A
        X = random_augmented_module(rng, dims[1:], dims[0])
        assert from_epi_functor(to_epi_functor(X)) == X


def test_functor_law_violation():
    A = constant_epi_functor(1)
    maps = dict(A.maps)
    maps[Surjection(1, 0, (0, 0))] = M([2])
    EpiFunctor(A.dims, maps).check()  # still a functor at truncation 1
    A2 = constant_epi_functor(2)
    maps = dict(A2.maps)
    maps[Surjection(2, 1, (0, 0, 1))] = M([2])
    with pytest.raises(FunctorLawViolation):
        EpiFunctor(A2.dims, maps).check()


def test_natural_maps_are_natural():
    rng = random.Random(4)
    A = random_epi_functor(rng, (1, 2, 2))
    B = random_epi_functor(rng, (1, 1, 2))
    basis = natural_maps(A.dims, B.dims, epi_squares(A, B))
    for comps in basis:
        EpiMap(A, B, comps).check()
    ident = EpiMap(A, A, tuple(Matrix.identity(d) for d in A.dims))
    assert is_weak_equivalence(from_epi_map(ident))
