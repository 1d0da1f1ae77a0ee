from itertools import permutations

import pytest

from ordfor.errors import BoundaryMismatch, NotACocone, NotUnary
from ordfor.forest import chain, discrete, enumerate_forests, forest_maps, point, validate
from ordfor.morphism import (
    ForestMorphism,
    boundary_cocones,
    confluence_check,
    contract,
    factor_cocone,
    from_forest,
    is_isomorphic,
    isomorphic_by_search,
    normal_forms,
    raw_graft,
    reduce,
    unary_vertices,
)


def test_boundaries(cherry, edge):
    p = from_forest(point())
    assert (p.dom, p.cod) == (0, 0) and p.reduced
    e = from_forest(edge)
    assert (e.dom, e.cod) == (0, 0) and e != p
    c = from_forest(cherry)
    assert (c.dom, c.cod) == (0, 1)


def test_isomorphism_examples(edge):
    e = ForestMorphism(edge)
    assert is_isomorphic(e, e)
    assert not is_isomorphic(e, ForestMorphism(point()))


def test_canonical_isomorphism_agrees_with_search():
    ms = [ForestMorphism(F) for k in range(1, 6) for F in enumerate_forests(k)]
    by_size = {}
    for f in ms:
        by_size.setdefault(f.size, []).append(f)
    for group in by_size.values():
        for a in group:
            for b in group:
                assert is_isomorphic(a, b) == isomorphic_by_search(a, b)


def test_graft_edge_on_edge(edge):
    e = ForestMorphism(edge)
    res = raw_graft(e, e)
    assert res.h == chain(3)
    assert (res.morphism.dom, res.morphism.cod) == (0, 0)


@pytest.mark.parametrize("size", range(1, 5))
def test_graft_with_identities(size):
    for F in enumerate_forests(size):
        f = ForestMorphism(F)
        assert raw_graft(f, ForestMorphism(discrete(f.dom))).h == F
        assert raw_graft(ForestMorphism(discrete(f.cod)), f).h == F


def test_graft_boundary_mismatch(cherry, edge):
    with pytest.raises(BoundaryMismatch):
        raw_graft(ForestMorphism(edge), ForestMorphism(cherry))


def test_cocone_count_edge_edge_into_chain(edge):
    e = ForestMorphism(edge)
    res = raw_graft(e, e)
    Q = chain(3)
    legs = boundary_cocones(e, e, Q)
    restricted = {(tuple(u[h] for h in res.j_f), tuple(u[h] for h in res.j_g))
                  for u in forest_maps(res.h, Q)}
    assert set(legs) == restricted
    assert len(legs) == 10


def test_graft_own_cocone_factors_through_identity(cherry):
    f = ForestMorphism(cherry)
    g = ForestMorphism(validate(2, [(0, 1)]))
    res = raw_graft(f, g)
    assert (res.j_f, res.j_g) in boundary_cocones(f, g, res.h)
    assert factor_cocone(res, res.j_f, res.j_g, res.h) == tuple(range(res.h.size))


def test_constant_cocone_into_point(cherry, edge):
    f, g = ForestMorphism(cherry), ForestMorphism(edge)
    res = raw_graft(f, g)
    u = factor_cocone(res, (0,) * 3, (0,) * 2, point())
    assert u == (0,) * res.h.size


def test_non_cocone_rejected(edge):
    e = ForestMorphism(edge)
    res = raw_graft(e, e)
    with pytest.raises(NotACocone):
        factor_cocone(res, (1, 2), (0, 0), chain(3))


def test_unary_vertices(stem_cherry, cherry):
    assert unary_vertices(chain(3)) == [1]
    assert unary_vertices(stem_cherry) == []
    assert unary_vertices(cherry) == []


def test_contract_examples(cherry, edge):
    assert contract(chain(3), 1) == edge
    four = chain(4)
    assert contract(contract(four, 1), 1) == edge
    assert contract(contract(four, 2), 1) == edge
    for v in range(3):
        with pytest.raises(NotUnary):
            contract(cherry, v)


def test_reduce_and_confluence():
    assert reduce(chain(5)) == validate(2, [(0, 1)])
    assert confluence_check(chain(5))
    for F in enumerate_forests(5):
        R = reduce(F)
        assert confluence_check(R) and normal_forms(R) == {R}


def test_contraction_orders_exhaustively_on_chains():
    # every permutation of the three inner vertices of the 5-chain
    for order in permutations(range(1, 4)):
        F = chain(5)
        removed = []
        for v in order:
            shift = sum(1 for r in removed if r < v)
            F = contract(F, v - shift)
            removed.append(v)
        assert F == validate(2, [(0, 1)])
