import pytest

from bglb.complexes import colored, from_facets
from bglb.generators import (barycentric_subdivision, cross_polytope, default_suite,
                             simplex_boundary, stacked_cross_polytope)


@pytest.fixture(scope="session")
def suite():
    """The default instance battery as a name -> ColoredComplex dict."""
    return dict(default_suite())


@pytest.fixture(scope="session")
def gorenstein_certs(suite):
    from bglb.homology import DEFAULT_FIELD, is_gorenstein_star

    return {name: is_gorenstein_star(g.complex, DEFAULT_FIELD) for name, g in suite.items()}


@pytest.fixture
def octahedron():
    return cross_polytope(3)


@pytest.fixture
def square():
    return cross_polytope(2)


@pytest.fixture
def cycle4():
    return colored(from_facets([(1, 2), (2, 3), (3, 4), (1, 4)], 4), [1, 2, 1, 2])


@pytest.fixture
def sd_tetra():
    return barycentric_subdivision(simplex_boundary(3))


@pytest.fixture
def stacked42():
    return stacked_cross_polytope(4, 2, seed=1)
