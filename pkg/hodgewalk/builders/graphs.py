"""Independent set complexes of graphs and the checks of their links."""
import logging
import math

import networkx as nx
import numpy as np
from scipy import linalg

from ..complex import WeightedComplex, build_complex, link_graph
from ..constants import TOLERANCES
from ..exceptions import EmptyInput, NotPure, StructureMismatch
from ..spectral import CheckResult, link_second_eigenvalue, second_eigenvalue
from .enumerate import enumerate_faces, purity_witness

logger = logging.getLogger(__name__)


def independent_set_faces(G, k, limit=None):
    """
    Enumerate the independent sets of ``G`` with at most ``k`` vertices.

    Returns
    -------
    dict
        Maps each level ``j`` to the independent sets of size ``j + 1``
    """
    neighbours = {v: set(G[v]) for v in G}

    def can_extend(face, x):
        return not any(u in neighbours[x] for u in face)

    return enumerate_faces(G.nodes, can_extend, k, limit)


def independent_set_complex(G, k, cap=None):
    """
    The complex of independent sets of size at most ``k`` with uniform
    weights on the independent sets of size ``k``.

    Parameters
    ----------
    G: networkx.Graph
        A simple graph on non-negative integer vertices
    k: int
        The size of the top faces, at least 1
    cap: int, optional
        Dense operator cap of the complex

    Returns
    -------
    hodgewalk.complex.WeightedComplex

    Raises
    ------
    NotPure
        If some maximal independent set has fewer than ``k`` vertices; the
        exception carries it as ``witness``
    """
    if k < 1:
        raise ValueError("k must be at least 1, got {}".format(k))
    if G.number_of_nodes() == 0:
        raise EmptyInput("The graph has no vertices")
    levels = independent_set_faces(G, k)
    witness = purity_witness(levels, k)
    if witness is not None:
        raise NotPure(
            "Independent set {} is maximal with {} < {} vertices".format(
                witness, len(witness), k),
            witness=witness)
    logger.info("Independent set complex has %s faces of size %s",
                len(levels[k - 1]), k)
    return build_complex(levels[k - 1], cap=cap)


def adjacency_spectrum(G):
    """Eigenvalues of the adjacency matrix of ``G``, in increasing order."""
    if G.number_of_nodes() == 0:
        return np.zeros(0)
    adjacency = nx.to_numpy_array(G, nodelist=sorted(G.nodes))
    return linalg.eigh(adjacency, eigvals_only=True)


def is_sampling_condition(G, k):
    """
    Evaluate ``k <= n / (Delta + |lambda_min|)``.

    Under this condition the down-up walk on the independent sets of size
    ``k`` has second eigenvalue at most ``1 - 1/k^2``.

    Returns
    -------
    dict
        ``delta`` the largest degree, ``lambda_min`` the smallest adjacency
        eigenvalue, ``threshold`` the right-hand side (infinite for a graph
        without edges) and ``pass``
    """
    n = G.number_of_nodes()
    if n == 0:
        raise EmptyInput("The graph has no vertices")
    delta = max(degree for _, degree in G.degree)
    lambda_min = float(adjacency_spectrum(G)[0])
    if G.number_of_edges() == 0:
        lambda_min = 0.0
        threshold = math.inf
    else:
        threshold = n / (delta + abs(lambda_min))
    return {
        'delta': int(delta),
        'lambda_min': lambda_min,
        'threshold': threshold,
        'k': k,
        'pass': bool(k <= threshold + TOLERANCES['check']),
    }


def _faces_up_to(X, size):
    return [alpha for j in range(-1, size) for alpha in X.faces(j)]


def is_link_checks(G, k, X: WeightedComplex = None):
    """
    Check the link structure of the independent set complex.

    * The link graph of every face ``S`` with at most ``k - 2`` vertices is
      the complement of ``G`` restricted to the vertices outside ``S`` and
      its neighbourhood.
    * When ``k <= n / (Delta + 1)``, these link graphs have diameter at
      most two.
    * When the sampling condition holds, the link walks of the faces with
      ``k - 2`` vertices have second eigenvalue at most ``1/k``.

    Parameters
    ----------
    G: networkx.Graph
        The graph
    k: int
        The size of the top faces
    X: WeightedComplex, optional
        The complex, built when omitted

    Returns
    -------
    list[CheckResult]

    Raises
    ------
    StructureMismatch
        If a link graph differs from the complement it should equal
    """
    if X is None:
        X = independent_set_complex(G, k)
    arguments = {'k': k}
    if k < 2:
        reason = "No faces with k - 2 = {} vertices".format(k - 2)
        return [
            CheckResult.skipped(name, arguments, reason)
            for name in ('is-link-structure', 'is-link-diameter',
                         'is-top-link')
        ]

    faces = _faces_up_to(X, k - 2)
    diameters = []
    for S in faces:
        graph = link_graph(X, S).to_networkx()
        closed = set(S).union(*(G[v] for v in S))
        outside = G.subgraph(v for v in G if v not in closed)
        expected = nx.complement(outside)
        same_vertices = set(graph.nodes) == set(expected.nodes)
        same_edges = {frozenset(e) for e in graph.edges} == {
            frozenset(e)
            for e in expected.edges
        }
        if not (same_vertices and same_edges):
            raise StructureMismatch(
                "Link graph of {} is not the complement of the graph "
                "outside its closed neighbourhood".format(S))
        if len(graph) < 2:
            diameters.append(0)
        elif nx.is_connected(graph):
            diameters.append(nx.diameter(graph))
        else:
            diameters.append(math.inf)
    results = [
        CheckResult.compare('is-link-structure',
                            arguments,
                            0,
                            0,
                            tolerance=0,
                            direction='equal',
                            detail={'faces': len(faces)})
    ]

    n = G.number_of_nodes()
    delta = max(degree for _, degree in G.degree)
    if k <= n / (delta + 1):
        results.append(
            CheckResult.compare('is-link-diameter',
                                arguments,
                                max(diameters),
                                2,
                                tolerance=0))
    else:
        results.append(
            CheckResult.skipped('is-link-diameter', arguments,
                                "k = {} > n/(Delta + 1) = {}".format(
                                    k, n / (delta + 1))))

    condition = is_sampling_condition(G, k)
    if condition['pass']:
        values = [
            link_second_eigenvalue(link_graph(X, S))[0]
            for S in X.faces(k - 3)
        ]
        results.append(
            CheckResult.compare('is-top-link',
                                arguments,
                                max(values),
                                1 / k,
                                detail={'faces': len(values)}))
    else:
        results.append(
            CheckResult.skipped(
                'is-top-link', arguments,
                "k = {} > n/(Delta + |lambda_min|) = {}".format(
                    k, condition['threshold'])))
    return results


def is_theorem_check(G, k, X: WeightedComplex = None):
    """
    Check ``lambda_2(DownW_{k-1}) <= 1 - 1/k^2`` on the independent set
    complex when the sampling condition holds.
    """
    condition = is_sampling_condition(G, k)
    arguments = {'k': k}
    if not condition['pass']:
        return CheckResult.skipped(
            'is-theorem', arguments,
            "k = {} > n/(Delta + |lambda_min|) = {}".format(
                k, condition['threshold']),
            detail=condition)
    if X is None:
        X = independent_set_complex(G, k)
    return CheckResult.compare('is-theorem',
                               arguments,
                               second_eigenvalue(X['down_up', k - 1]),
                               1 - 1 / k**2,
                               detail=condition)
