from itertools import combinations

import networkx as nx
import pytest

from hodgewalk import build_complex
from hodgewalk.builders import grid_matroids


def complete_complex(n, d):
    """All ``d``-dimensional faces on ``n`` vertices, uniformly weighted."""
    return build_complex(combinations(range(n), d + 1))


def disjoint_triangles(count):
    """The union of ``count`` vertex-disjoint triangles."""
    return nx.disjoint_union_all([nx.complete_graph(3)] * count)


@pytest.fixture
def two_triangles():
    """Two triangles glued along the edge (1, 2)."""
    return build_complex([(1, 2, 3), (1, 2, 4)])


@pytest.fixture
def disconnected_edges():
    return build_complex([(1, 2), (3, 4)])


@pytest.fixture
def gallery_connected():
    """
    A gallery connected complex in which the link of vertex 0 consists of
    the two disjoint edges (1, 2) and (4, 5).
    """
    return build_complex([(0, 1, 2), (1, 2, 3), (2, 3, 4), (3, 4, 5),
                          (0, 4, 5)])


@pytest.fixture
def weighted_complex():
    """A two-dimensional complex with non-uniform facet weights."""
    facets = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (2, 3, 4),
              (0, 3, 4)]
    weights = [1.0, 2.0, 0.5, 3.0, 1.5, 1.0]
    return build_complex(facets, weights)


@pytest.fixture
def cycle4():
    return nx.cycle_graph(4)


@pytest.fixture
def star():
    """The star with center 0 and three leaves."""
    return nx.star_graph(3)


@pytest.fixture
def grid3():
    return grid_matroids(3, 3)


@pytest.fixture
def grid6():
    return grid_matroids(6, 6)
