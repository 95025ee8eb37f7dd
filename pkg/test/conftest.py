from functools import lru_cache

import pytest

from src.gf import field_for_q


@lru_cache(maxsize=None)
def make_field(q):
    return field_for_q(q)


@pytest.fixture
def field():
    """Factory returning a cached field for a prime power q."""
    return make_field


@pytest.fixture
def gf2():
    return make_field(2)


@pytest.fixture
def gf3():
    return make_field(3)


@pytest.fixture
def gf4():
    return make_field(4)


@pytest.fixture
def gf5():
    return make_field(5)
