import random
from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from srschubert.complex import SimplicialComplex

PROPERTY_CASES = 200

# fixed-seed runs with at least 200 examples per property
settings.register_profile(
    "repro",
    max_examples=PROPERTY_CASES,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repro")


def random_complex(rng: random.Random, n: int, pure: bool | None = None, max_facets: int = 5) -> SimplicialComplex:
    verts = list(range(1, n + 1))
    if pure:
        size = rng.randint(1, n)
        facets = [rng.sample(verts, size) for _ in range(rng.randint(1, max_facets))]
    else:
        facets = [rng.sample(verts, rng.randint(1, n)) for _ in range(rng.randint(1, max_facets))]
    return SimplicialComplex(verts, facets)


@st.composite
def complexes(draw, max_vertices: int = 8, pure: bool | None = None, min_vertices: int = 1):
    n = draw(st.integers(min_vertices, max_vertices))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_complex(random.Random(seed), n, pure)


def all_subsets(items):
    items = list(items)
    for k in range(len(items) + 1):
        yield from combinations(items, k)


@pytest.fixture
def triangle():
    return SimplicialComplex([1, 2, 3], [[1, 2], [1, 3], [2, 3]])


@pytest.fixture
def two_edges():
    return SimplicialComplex([1, 2, 3, 4], [[1, 2], [3, 4]])
