"""Shared fixtures: towers and analyses are built once per session."""
from functools import lru_cache

import pytest

from frobtower.repn import analyse
from frobtower.towers import make_tower

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


@lru_cache(maxsize=None)
def tower_data(spec, N):
    """(tower, TowerData) for a preset analysed through level N."""
    tower = make_tower(spec, N + 1)
    return tower, analyse(tower, N)


@lru_cache(maxsize=None)
def tower(spec, N):
    return make_tower(spec, N)


@pytest.fixture(scope="session")
def sym6():
    return tower_data("sym", 6)


@pytest.fixture(scope="session")
def sym4():
    return tower_data("sym", 4)


@pytest.fixture(scope="session")
def hecke01():
    return tower_data("hecke:2,0,1", 3)


@pytest.fixture(scope="session")
def dual3():
    return tower_data("wreath:dual_numbers", 3)


@pytest.fixture(scope="session")
def sergeev3():
    return tower_data("sergeev", 3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split("_")[0]), k)):
        terminalreporter.write_line(ACCEPTANCE[key])
