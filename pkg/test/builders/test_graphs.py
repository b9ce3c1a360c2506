"""Test independent set complexes."""
import math

import networkx as nx
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hodgewalk.builders import (adjacency_spectrum, independent_set_complex,
                                independent_set_faces, is_link_checks,
                                is_sampling_condition, is_theorem_check)
from hodgewalk.exceptions import EmptyInput, NotPure
from hodgewalk.spectral import check_main, second_eigenvalue

from ..conftest import disjoint_triangles
from ..strategies import st_graphs


def test_cycle_frozen(cycle4):
    """The two independent pairs of a 4-cycle do not communicate."""
    X = independent_set_complex(cycle4, 2)
    assert X.faces(1) == ((0, 2), (1, 3))
    assert second_eigenvalue(X['down_up', 1]) == pytest.approx(1)
    condition = is_sampling_condition(cycle4, 2)
    assert condition['delta'] == 2
    assert condition['lambda_min'] == pytest.approx(-2)
    assert condition['threshold'] == pytest.approx(1)
    assert not condition['pass']
    assert is_theorem_check(cycle4, 2, X).status == 'skipped'


def test_star_is_not_pure(star):
    with pytest.raises(NotPure) as error:
        independent_set_complex(star, 2)
    assert error.value.witness == (0, )


def test_empty_graph():
    with pytest.raises(EmptyInput):
        independent_set_complex(nx.empty_graph(0), 1)
    with pytest.raises(ValueError):
        independent_set_complex(nx.empty_graph(3), 0)


def test_graph_without_edges():
    G = nx.empty_graph(4)
    X = independent_set_complex(G, 2)
    assert X.size(1) == 6
    condition = is_sampling_condition(G, 2)
    assert condition['threshold'] == math.inf
    assert condition['lambda_min'] == 0.0
    assert condition['pass']
    result = is_theorem_check(G, 2, X)
    assert result.passed
    assert result.value == pytest.approx(1 / 3)


def test_independent_set_faces(cycle4):
    levels = independent_set_faces(cycle4, 3)
    assert levels[-1] == [()]
    assert levels[0] == [(0, ), (1, ), (2, ), (3, )]
    assert levels[1] == [(0, 2), (1, 3)]
    assert 2 not in levels


def test_adjacency_spectrum(cycle4):
    spectrum = adjacency_spectrum(cycle4)
    assert spectrum[0] == pytest.approx(-2)
    assert spectrum[-1] == pytest.approx(2)
    assert len(adjacency_spectrum(nx.empty_graph(0))) == 0


def test_disjoint_triangles():
    G = disjoint_triangles(4)
    X = independent_set_complex(G, 4)
    assert X.size(3) == 81
    condition = is_sampling_condition(G, 4)
    assert condition['threshold'] == pytest.approx(4)
    assert condition['pass']
    result = is_theorem_check(G, 4, X)
    assert result.passed
    assert result.value == pytest.approx(3 / 4)
    checks = {result.name: result for result in is_link_checks(G, 4, X)}
    assert all(result.status == 'pass' for result in checks.values())
    assert checks['is-link-structure'].detail['faces'] == 67
    assert checks['is-link-diameter'].value == 2
    assert checks['is-top-link'].value == pytest.approx(0, abs=1e-9)


def test_link_checks_skip(cycle4):
    results = is_link_checks(cycle4, 2)
    statuses = {result.name: result.status for result in results}
    assert statuses == {
        'is-link-structure': 'pass',
        'is-link-diameter': 'skipped',
        'is-top-link': 'skipped',
    }
    assert all(result.status == 'skipped'
               for result in is_link_checks(cycle4, 1))


def test_grid_graph():
    G = nx.convert_node_labels_to_integers(nx.grid_2d_graph(3, 3))
    X = independent_set_complex(G, 2)
    assert X.size(1) == 36 - 12
    assert all(result.passed for result in is_link_checks(G, 2, X))
    assert check_main(X, 1).passed


@given(st_graphs(max_vertices=7), st.integers(min_value=2, max_value=3))
@settings(deadline=None, max_examples=30)
def test_link_structure_holds(G, k):
    try:
        X = independent_set_complex(G, k)
    except NotPure:
        assume(False)
    results = is_link_checks(G, k, X)
    assert all(result.passed for result in results)
    assert is_theorem_check(G, k, X).passed


def _matching(edges):
    return nx.disjoint_union_all([nx.path_graph(2)] * edges)


def _cliques(count, size):
    return nx.disjoint_union_all([nx.complete_graph(size)] * count)


SAMPLING_GRAPHS = [
    (nx.empty_graph(8), 2),
    (nx.empty_graph(8), 3),
    (nx.empty_graph(10), 3),
    (nx.empty_graph(14), 2),
    (_matching(5), 2),
    (_matching(5), 3),
    (_matching(7), 3),
    (disjoint_triangles(3), 2),
    (disjoint_triangles(3), 3),
    (disjoint_triangles(4), 3),
    (disjoint_triangles(4), 4),
    (_cliques(3, 4), 2),
    (_cliques(3, 4), 3),
    (nx.cycle_graph(8), 2),
    (nx.cycle_graph(9), 2),
    (nx.cycle_graph(12), 2),
    (nx.cycle_graph(12), 3),
    (nx.cycle_graph(13), 2),
    (nx.cycle_graph(13), 3),
    (nx.path_graph(10), 2),
    (nx.path_graph(12), 3),
    (nx.disjoint_union(nx.cycle_graph(5), nx.cycle_graph(5)), 2),
]


@pytest.mark.parametrize('G, k', SAMPLING_GRAPHS)
def test_sampling_graphs(G, k):
    """Every link check runs and passes under the sampling condition."""
    assert G.number_of_nodes() <= 14
    assert is_sampling_condition(G, k)['pass']
    X = independent_set_complex(G, k)
    checks = {result.name: result for result in is_link_checks(G, k, X)}
    assert {name: check.status for name, check in checks.items()} == {
        'is-link-structure': 'pass',
        'is-link-diameter': 'pass',
        'is-top-link': 'pass',
    }
    assert checks['is-link-diameter'].value <= 2
    assert checks['is-top-link'].value <= 1 / k + 1e-9
    theorem = is_theorem_check(G, k, X)
    assert theorem.status == 'pass'
    assert theorem.value <= 1 - 1 / k**2 + 1e-9


def test_planar_spectral_condition():
    """Three disjoint K4s admit k = 3 only through |lambda_min| < Delta."""
    G = _cliques(3, 4)
    assert nx.check_planarity(G)[0]
    condition = is_sampling_condition(G, 3)
    assert condition['delta'] == 3
    assert condition['lambda_min'] == pytest.approx(-1)
    assert 3 > G.number_of_nodes() / (2 * condition['delta'])
    assert condition['pass']
    checks = {result.name: result for result in is_link_checks(G, 3)}
    assert checks['is-top-link'].status == 'pass'
    assert checks['is-top-link'].detail['faces'] == 12
