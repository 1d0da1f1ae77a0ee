import json
import random
from fractions import Fraction

import pytest

from ordfor import records
from ordfor.errors import CoverOrderViolation, MalformedInput
from ordfor.forest import enumerate_forests
from ordfor.kan import pullback_map, representable_presheaf
from ordfor.linalg import Matrix
from ordfor.morphism import ForestMorphism
from ordfor.normalization import EpiMap, SSMap, gamma, random_complex, random_epi_functor
from ordfor.shadow import enumerate_surjections


def rt(obj):
    return json.loads(json.dumps(obj))


def test_forest_round_trip():
    for F in enumerate_forests(4):
        rec = records.forest_record(F)
        assert rec["covers"] == sorted(rec["covers"])
        assert records.parse_forest(rt(rec)) == F
        assert records.parse_morphism(rt(rec)) == ForestMorphism(F)


def test_surjection_round_trip():
    for s in enumerate_surjections(4, 2):
        assert records.parse_surjection(rt(records.surjection_record(s))) == s


def test_complex_and_module_round_trip():
    rng = random.Random(0)
    for _ in range(10):
        C = random_complex(rng, 3)
        assert records.parse_complex(rt(records.complex_record(C))) == C
        X = gamma(C)
        assert records.parse_ssm(rt(records.ssm_record(X))) == X


def test_maps_round_trip():
    rng = random.Random(2)
    A = random_epi_functor(rng, (1, 2, 1))
    assert records.parse_epi_functor(rt(records.epi_functor_record(A))) == A
    u = EpiMap(A, A, tuple(Matrix.identity(d) for d in A.dims))
    v = records.parse_epi_map(rt(records.epi_map_record(u)))
    assert v.components == u.components
    f = pullback_map(u)
    g = records.parse_presheaf_map(rt(records.presheaf_map_record(f)))
    assert g.components == f.components
    X = gamma(random_complex(rng, 2))
    h = SSMap(X, X, tuple(Matrix.identity(d) for d in X.dims))
    assert records.parse_ssm_map(rt(records.ssm_map_record(h))).components == h.components


def test_presheaf_round_trip():
    X = representable_presheaf(1, 2)
    Y = records.parse_presheaf(rt(records.presheaf_record(X)))
    assert Y.dims == X.dims and Y.maps == X.maps
    Y.check()


def test_rationals_are_strings():
    rec = records.matrix_record(Matrix.from_rows([[Fraction(1, 3), Fraction(-2, 3)]]))
    assert rec == [["1/3", "-2/3"]]


@pytest.mark.parametrize("text, where", [
    ('{"size": 3}', "$"),
    ('{"size": "3", "covers": []}', "$.size"),
    ('{"size": 3, "covers": [[0, 1, 2]]}', "$.covers[0]"),
    ('{"size": 3, "covers": [[0, "a"]]}', "$.covers[0][1]"),
    ('{"size": 3, "covers": [', "line 1"),
])
def test_malformed_positions(text, where):
    with pytest.raises(MalformedInput) as info:
        records.parse_forest(records.loads(text))
    assert info.value.position.startswith(where)


def test_bad_matrix_entry_position():
    obj = {"dims": [1, 1], "differentials": [[["1/0"]]]}
    with pytest.raises(MalformedInput) as info:
        records.parse_complex(obj)
    assert info.value.position == "$.differentials[0][0][0]"


def test_forest_axioms_surface_unchanged():
    with pytest.raises(CoverOrderViolation):
        records.parse_forest({"size": 2, "covers": [[1, 0]]})


def test_to_jsonable():
    out = records.to_jsonable({"f": ForestMorphism(next(iter(enumerate_forests(2)))), "n": (1, 2)})
    assert out["n"] == [1, 2] and "covers" in out["f"]
