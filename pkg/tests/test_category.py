import pytest

from ordfor.category import (
    check_category_axioms,
    compose,
    enumerate_hom,
    identity,
    reduced_trees,
    size_bound,
)
from ordfor.errors import BoundaryMismatch
from ordfor.forest import discrete, point
from ordfor.morphism import ForestMorphism, raw_graft, reduce

# frozen from the brute-force oracle sweep
HOM_SIZES = {
    (0, 0): 2, (0, 1): 2, (0, 2): 6, (0, 3): 22,
    (1, 1): 4, (1, 2): 8, (1, 3): 28,
    (2, 2): 8, (2, 3): 24,
    (3, 3): 16,
}


def test_identity():
    assert identity(0).forest == point()
    assert identity(3).forest == discrete(3)
    assert (identity(2).dom, identity(2).cod) == (2, 2)


def test_compose_is_reduced_graft(edge):
    e = ForestMorphism(edge)
    assert compose(e, e) == e
    assert compose(e, e).forest == reduce(raw_graft(e, e).h)


def test_compose_boundary_mismatch(cherry, edge):
    with pytest.raises(BoundaryMismatch):
        compose(ForestMorphism(edge), ForestMorphism(cherry))


@pytest.mark.parametrize("m, n", [(m, n) for m in range(4) for n in range(4)])
def test_hom_sizes(m, n):
    hom = enumerate_hom(m, n)
    assert len(hom) == HOM_SIZES.get((m, n), 0)
    assert all(f.reduced and (f.dom, f.cod) == (m, n) for f in hom)
    assert len(set(hom.morphisms)) == len(hom)


def test_size_bound_attained():
    for m in range(4):
        for n in range(m, 4):
            assert max(f.size for f in enumerate_hom(m, n)) == size_bound(m, n) == 2 * (n + 1)


def test_reduced_tree_counts():
    # twice the small Schroeder numbers: the root may carry a single child
    assert [len(reduced_trees(k)) for k in range(1, 6)] == [2, 2, 6, 22, 90]
    for k in range(1, 6):
        assert all(ForestMorphism(T).reduced for T in reduced_trees(k))


@pytest.mark.parametrize("k", [1, 2])
def test_axioms(k):
    rep = check_category_axioms(k)
    assert rep["pass"] and rep["counterexample_count"] == 0


def test_unit_laws_at_three():
    rep = check_category_axioms(3, assoc_max=0)
    assert rep["pass"]
    assert rep["unit_morphisms"] == sum(HOM_SIZES.values())
