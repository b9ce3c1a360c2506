"""Test weighted complexes, links and link graphs."""
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from hodgewalk import build_complex, link, link_graph
from hodgewalk.complex import WeightedComplex, as_face
from hodgewalk.exceptions import (CapExceeded, DimensionTooHigh,
                                  DuplicateFacet, EmptyInput, FaceNotPresent,
                                  LevelOutOfRange, NonPositivePi, NonPure)

from .conftest import complete_complex
from .strategies import st_complexes


def test_build_two_triangles(two_triangles):
    X = two_triangles
    assert X.dimension == 2
    assert X.d == 2
    assert X.faces(-1) == ((), )
    np.testing.assert_allclose(X.pi(-1), [1.0])
    assert X.faces(1) == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4))
    np.testing.assert_allclose(X.pi(1), [1 / 3, 1 / 6, 1 / 6, 1 / 6, 1 / 6],
                               atol=1e-12)
    np.testing.assert_allclose(X.pi(0), [1 / 3, 1 / 3, 1 / 6, 1 / 6],
                               atol=1e-12)
    np.testing.assert_allclose(X.pi(2), [0.5, 0.5])


def test_build_single_edge():
    X = build_complex([(2, 1)])
    assert X.faces(1) == ((1, 2), )
    np.testing.assert_allclose(X.pi(1), [1.0])
    np.testing.assert_allclose(X.pi(0), [0.5, 0.5])


def test_build_disconnected(disconnected_edges):
    np.testing.assert_allclose(disconnected_edges.pi(0), [0.25] * 4)


def test_build_weights_proportional():
    X = build_complex([(0, 1), (1, 2)], [1.0, 3.0])
    np.testing.assert_allclose(X.pi(1), [0.25, 0.75])
    np.testing.assert_allclose(X.pi(0), [0.125, 0.5, 0.375])


def test_build_independent_summation(weighted_complex):
    """Marginals equal the law of a uniform subset of a facet."""
    X = weighted_complex
    top = dict(zip(X.faces(2), X.pi(2)))
    for j in range(-1, 2):
        expected = {face: 0.0 for face in X.faces(j)}
        for beta, weight in top.items():
            subsets = list(combinations(beta, j + 1))
            for alpha in subsets:
                expected[alpha] += weight / len(subsets)
        np.testing.assert_allclose(X.pi(j),
                                   [expected[face] for face in X.faces(j)],
                                   atol=1e-12)


@pytest.mark.parametrize('facets, weights, error', [
    ([], None, EmptyInput),
    ([(1, 2), (1, 2, 3)], None, NonPure),
    ([(1, 2), (2, 1)], None, DuplicateFacet),
    ([(1, 2), (2, 3)], [1.0, 0.0], NonPositivePi),
    ([(1, 2), (2, 3)], [1.0, -2.0], NonPositivePi),
])
def test_build_errors(facets, weights, error):
    with pytest.raises(error):
        build_complex(facets, weights)


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        build_complex([(1, 2), (1, 2, 3)])


@pytest.mark.parametrize('vertices', [(1, 1), (-1, 2), (1.5, 2)])
def test_as_face_invalid(vertices):
    with pytest.raises(ValueError):
        as_face(vertices)


def test_as_face_sorts():
    assert as_face([3, 1, 2]) == (1, 2, 3)
    assert as_face([]) == ()


@given(st_complexes())
@settings(deadline=None, max_examples=50)
def test_invariants(X):
    """Every built complex satisfies the level recursion."""
    residuals = X.validate()
    assert residuals['onestep'] <= 1e-12
    assert residuals['normalization'] <= 1e-12
    assert residuals['min_pi'] > 0
    assert residuals['closed']
    assert residuals['pure']
    for j in X.levels:
        faces = X.faces(j)
        assert all(len(face) == j + 1 for face in faces)
        assert list(faces) == sorted(faces)


def test_index_and_weight(two_triangles):
    X = two_triangles
    assert X.index((1, 3)) == 1
    assert X.index([3, 1]) == 1
    assert X.weight((1, 2)) == pytest.approx(1 / 3)
    assert (3, 4) not in X
    assert (1, 2) in X
    with pytest.raises(FaceNotPresent):
        X.index((3, 4))
    with pytest.raises(KeyError):
        X.weight((0, ))


def test_level_out_of_range(two_triangles):
    with pytest.raises(LevelOutOfRange):
        two_triangles.faces(3)
    with pytest.raises(IndexError):
        two_triangles.pi(-2)


def test_incidence(two_triangles):
    incidence = two_triangles.incidence(0)
    assert incidence.shape == (5, 4)
    np.testing.assert_array_equal(incidence.sum(axis=1), 2)


def test_extensions(two_triangles):
    star = two_triangles.extensions(0, 1)
    assert star[(3, )] == [((1, ), 1), ((2, ), 3)]
    assert sorted(tau for tau, _ in star[(1, )]) == [(2, ), (3, ), (4, )]


def test_link_of_empty_face(weighted_complex):
    L = link(weighted_complex, ())
    for j in weighted_complex.levels:
        assert L.faces(j) == weighted_complex.faces(j)
        np.testing.assert_allclose(L.pi(j), weighted_complex.pi(j),
                                   atol=1e-12)


def test_link_of_edge(two_triangles):
    L = link(two_triangles, (1, 2))
    assert L.dimension == 0
    assert L.faces(0) == ((3, ), (4, ))
    np.testing.assert_allclose(L.pi(0), [0.5, 0.5])


def test_link_of_vertex(two_triangles):
    L = link(two_triangles, (3, ))
    assert L.faces(1) == ((1, 2), )
    np.testing.assert_allclose(L.pi(1), [1.0])


@given(st_complexes(max_dimension=3))
@settings(deadline=None, max_examples=30)
def test_link_of_link(X):
    """Taking links one vertex at a time gives the link of the union."""
    if X.dimension < 2:
        return
    for alpha in X.faces(1)[:3]:
        direct = link(X, alpha)
        nested = link(link(X, alpha[:1]), alpha[1:])
        for j in direct.levels:
            assert direct.faces(j) == nested.faces(j)
            np.testing.assert_allclose(direct.pi(j), nested.pi(j),
                                       atol=1e-12)


def test_link_errors(two_triangles):
    with pytest.raises(FaceNotPresent):
        link(two_triangles, (3, 4))
    with pytest.raises(DimensionTooHigh):
        link(two_triangles, (1, 2, 3))


def test_link_graph_path(two_triangles):
    graph = link_graph(two_triangles, (1, ))
    assert graph.vertices == (2, 3, 4)
    np.testing.assert_allclose(graph.walk,
                               [[0, 0.5, 0.5], [1, 0, 0], [1, 0, 0]])
    assert graph.is_connected()
    assert len(graph) == 3


def test_link_graph_complete():
    X = complete_complex(4, 2)
    graph = link_graph(X, ())
    expected = (np.ones((4, 4)) - np.eye(4)) / 3
    np.testing.assert_allclose(graph.walk, expected, atol=1e-12)
    eigenvalues = np.sort(np.linalg.eigvals(graph.walk).real)
    np.testing.assert_allclose(eigenvalues, [-1 / 3, -1 / 3, -1 / 3, 1],
                               atol=1e-12)


@given(st_complexes())
@settings(deadline=None, max_examples=30)
def test_link_graph_invariants(X):
    if X.dimension < 1:
        return
    for j in range(-1, X.dimension - 1):
        for alpha in X.faces(j)[:4]:
            graph = link_graph(X, alpha)
            np.testing.assert_allclose(graph.walk.sum(axis=1), 1, atol=1e-12)
            np.testing.assert_allclose(graph.pi0 @ graph.walk, graph.pi0,
                                       atol=1e-12)
            flow = graph.pi0[:, np.newaxis] * graph.walk
            np.testing.assert_allclose(flow, flow.T, atol=1e-12)
            projector = graph.projector
            np.testing.assert_allclose(projector @ projector, projector,
                                       atol=1e-12)


def test_link_graph_uniform_top_edges():
    """With uniform weights the top link graphs have equal edge weights."""
    X = build_complex([(0, 1, 2, 3), (0, 1, 2, 4), (1, 2, 3, 4)])
    for alpha in X.faces(1):
        weights = link_graph(X, alpha).weights
        np.testing.assert_allclose(weights, weights[0], atol=1e-12)


def test_link_graph_disconnected(disconnected_edges, gallery_connected):
    assert not link_graph(disconnected_edges, ()).is_connected()
    assert not link_graph(gallery_connected, (0, )).is_connected()


def test_link_graph_errors(two_triangles):
    with pytest.raises(DimensionTooHigh):
        link_graph(two_triangles, (1, 2))
    with pytest.raises(FaceNotPresent):
        link_graph(two_triangles, (5, ))


def test_link_graph_networkx(two_triangles):
    graph = link_graph(two_triangles, (1, )).to_networkx()
    assert set(graph.nodes) == {2, 3, 4}
    assert {frozenset(e) for e in graph.edges} == {
        frozenset((2, 3)), frozenset((2, 4))
    }


def test_cap(monkeypatch):
    X = complete_complex(6, 2)
    assert X.cap == 5000
    monkeypatch.setenv('HODGEWALK_CAP', '10')
    capped = complete_complex(6, 2)
    assert capped.cap == 10
    with pytest.raises(CapExceeded):
        capped['down_up', 2]
    with pytest.raises(MemoryError):
        capped['up', 1]
    assert capped['up_down', -1].shape == (1, 1)


def test_explicit_cap_overrides_environment(monkeypatch):
    monkeypatch.setenv('HODGEWALK_CAP', '10')
    X = build_complex(combinations(range(6), 3), cap=100)
    assert X.cap == 100
    assert X['down_up', 2].shape == (20, 20)


@pytest.mark.parametrize('cap', ['zero', 0, -3])
def test_invalid_cap(cap):
    with pytest.raises(ValueError):
        build_complex([(1, 2)], cap=cap)


def test_unknown_operator(two_triangles):
    with pytest.raises(IndexError):
        two_triangles['sideways', 0]


def test_register(two_triangles):
    """New operator kinds can be registered on the complex class."""
    calls = []

    def identity(X, j):
        calls.append(j)
        return X['up_down', j]

    WeightedComplex.register('identity_test', identity)
    try:
        first = two_triangles['identity_test', 0]
        second = two_triangles['identity_test', 0]
    finally:
        del WeightedComplex.operators['identity_test']
    assert first is second
    assert calls == [0]
