"""Shared fixtures and grid helpers for the suite."""

import pytest

from wildram.autoreps import make_character
from wildram.coeffring import make_field


def grid_points(max_m=20):
    """(p, s, m) with p in {2,3,5}, s in {1,2}, m <= max_m coprime to p
    (and m > 1 when s >= 2, which two-dimensionality forces)."""
    for p in (2, 3, 5):
        for s in (1, 2):
            for m in range(1, max_m + 1):
                if m % p == 0:
                    continue
                if s >= 2 and m <= 1:
                    continue
                yield p, s, m


def character_for(p, s, m):
    """Character on (Z/p)^s with conductor m over the minimal hosting field
    F_{p^s}, taking the standard basis vectors as generator values."""
    field = make_field(p, s)
    vals = [[0] * i + [1] + [0] * (s - 1 - i) for i in range(s)]
    return make_character(field, vals, m)


def small_grid():
    """The quick subgrid used by the per-module tests."""
    pts = []
    for p in (2, 3, 5):
        for s in (1, 2):
            ms = [m for m in range(1, 8) if m % p and not (s >= 2 and m <= 1)]
            pts.extend((p, s, m) for m in ms[:3 if s == 1 else 2])
    return pts


@pytest.fixture(scope="session")
def f2():
    return make_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f5():
    return make_field(5)


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def f9():
    return make_field(3, 2)
