import pytest

from ordfor.forest import validate
from ordfor.morphism import ForestMorphism


@pytest.fixture
def cherry():
    return validate(3, [(0, 2), (1, 2)])


@pytest.fixture
def edge():
    return validate(2, [(0, 1)])


@pytest.fixture
def stem_cherry():
    # root 3 above v = 2 above two leaves
    return validate(4, [(0, 2), (1, 2), (2, 3)])


def morph(size, covers):
    return ForestMorphism(validate(size, covers))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance")
    for key in sorted(mod.RESULTS, key=int):
        terminalreporter.write_line(mod.RESULTS[key])
