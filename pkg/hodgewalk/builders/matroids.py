"""Common independent sets of two partition matroids."""
import logging
from collections import Counter, defaultdict
from itertools import combinations

import networkx as nx
import numpy as np
from scipy import linalg

from ..complex import WeightedComplex, build_complex, link_graph
from ..exceptions import (EmptyInput, FaceNotPresent, HodgewalkError,
                          NotPure, NotSimpleB, ParseError, StructureMismatch)
from ..spectral import CheckResult, link_second_eigenvalue, second_eigenvalue
from ..util.io import read_matroid_data, write_matroid_data
from .enumerate import enumerate_faces, purity_witness

logger = logging.getLogger(__name__)


class PartitionMatroid():
    """
    A partition matroid: at most ``caps[i]`` elements from block ``i``.

    Parameters
    ----------
    blocks: list of iterables of int
        Disjoint blocks covering the ground set
    caps: list of int
        Capacity per block, ``0 <= caps[i] <= len(blocks[i])``

    Examples
    --------
    >>> M = PartitionMatroid([[0, 1], [2, 3]], [1, 1])
    >>> M.is_independent([0, 2])
    True
    >>> M.is_independent([0, 1])
    False
    """

    def __init__(self, blocks, caps):
        self.blocks = tuple(tuple(sorted(int(x) for x in block))
                            for block in blocks)
        self.caps = tuple(int(cap) for cap in caps)
        if len(self.blocks) != len(self.caps):
            raise ValueError("Got {} blocks but {} capacities".format(
                len(self.blocks), len(self.caps)))
        self.block_of = {}
        for i, block in enumerate(self.blocks):
            for x in block:
                if x < 0:
                    raise ValueError("Element {} is negative".format(x))
                if x in self.block_of:
                    raise ValueError(
                        "Element {} is in blocks {} and {}".format(
                            x, self.block_of[x], i))
                self.block_of[x] = i
            if not 0 <= self.caps[i] <= len(block):
                raise ValueError(
                    "Capacity {} of block {} outside 0, ..., {}".format(
                        self.caps[i], i, len(block)))
        if not self.block_of:
            raise EmptyInput("The matroid has no elements")

    def __repr__(self):
        return "{}(blocks={}, caps={})".format(self.__class__.__name__,
                                               self.blocks, self.caps)

    @property
    def ground(self):
        """The sorted ground set."""
        return tuple(sorted(self.block_of))

    @property
    def rank(self):
        """The size of a largest independent set."""
        return sum(self.caps)

    def usage(self, S):
        """The number of elements of ``S`` in each block."""
        return Counter(self.block_of[x] for x in S)

    def is_independent(self, S):
        """Whether ``S`` uses no block beyond its capacity."""
        return all(count <= self.caps[i]
                   for i, count in self.usage(S).items())

    def residual(self, S):
        """The remaining capacity of every block after taking ``S``."""
        usage = self.usage(S)
        return [cap - usage[i] for i, cap in enumerate(self.caps)]

    @classmethod
    def from_file(cls, filename):
        """Load a partition matroid from a JSON file."""
        try:
            return cls(*read_matroid_data(filename))
        except HodgewalkError:
            raise
        except ValueError as error:
            raise ParseError(str(error), filename)

    def save(self, filename):
        """Save the partition matroid to a JSON file."""
        write_matroid_data(filename, self.blocks, self.caps)


def grid_matroids(rows, cols):
    """
    The row and column partition matroids of a ``rows x cols`` grid.

    Element ``r * cols + c`` is the cell in row ``r`` and column ``c``;
    each row and each column may be used once.

    Returns
    -------
    tuple[PartitionMatroid, PartitionMatroid]
    """
    by_row = [[r * cols + c for c in range(cols)] for r in range(rows)]
    by_col = [[r * cols + c for r in range(rows)] for c in range(cols)]
    return (PartitionMatroid(by_row, [1] * rows),
            PartitionMatroid(by_col, [1] * cols))


def _check_ground(M1, M2):
    if M1.ground != M2.ground:
        raise ValueError("The matroids have different ground sets")


def shares_block_pair(M1, M2):
    """Whether two elements share a block in both matroids."""
    _check_ground(M1, M2)
    seen = set()
    for x in M1.ground:
        pair = (M1.block_of[x], M2.block_of[x])
        if pair in seen:
            return True
        seen.add(pair)
    return False


def _can_extend(M1, M2):
    def can_extend(face, x):
        S = face + (x, )
        return M1.is_independent(S) and M2.is_independent(S)

    return can_extend


def common_independent_faces(M1, M2, k, limit=None):
    """
    Enumerate the common independent sets of size at most ``k``.

    Returns
    -------
    dict
        Maps each level ``j`` to the common independent sets of size
        ``j + 1``
    """
    _check_ground(M1, M2)
    return enumerate_faces(M1.ground, _can_extend(M1, M2), k, limit)


def max_common_independent_size(M1, M2, limit=None):
    """
    The size of a largest common independent set, by exhaustive search.

    Raises
    ------
    TooLarge
        If the search passes the enumeration limit
    """
    levels = common_independent_faces(M1, M2, len(M1.ground), limit)
    return max(levels) + 1


def matroid_intersection_complex(M1, M2, k, cap=None):
    """
    The complex of common independent sets of size at most ``k`` with
    uniform weights on the sets of size ``k``.

    Parameters
    ----------
    M1, M2: PartitionMatroid
        Matroids on the same ground set
    k: int
        The size of the top faces, at least 1
    cap: int, optional
        Dense operator cap of the complex

    Raises
    ------
    NotPure
        If a maximal common independent set has fewer than ``k`` elements
    """
    if k < 1:
        raise ValueError("k must be at least 1, got {}".format(k))
    levels = common_independent_faces(M1, M2, k)
    witness = purity_witness(levels, k)
    if witness is not None:
        raise NotPure(
            "Common independent set {} is maximal with {} < {} elements".
            format(witness, len(witness), k),
            witness=witness)
    logger.info("Matroid intersection complex has %s faces of size %s",
                len(levels[k - 1]), k)
    return build_complex(levels[k - 1], cap=cap)


class BipartiteLinkStructure():
    """
    The link of a face of size ``k - 2`` described by two partitions.

    Parameters
    ----------
    face: tuple[int]
        The base face
    extensions: tuple[int]
        The elements extending the face to a common independent set
    first, second: dict
        The partitions induced by the two matroids, mapping a class label to
        its members
    bipartite: networkx.MultiGraph
        One edge per extension between its two classes, keyed by the element
    line_graph: networkx.Graph
        The line graph of ``bipartite`` on the extensions
    link: networkx.Graph
        Extensions joined when the face plus both is common independent
    mismatches: int
        Number of pairs where ``link`` and the complement of ``line_graph``
        disagree
    """

    def __init__(self, face, extensions, first, second, bipartite,
                 line_graph, link, mismatches):
        self.face = face
        self.extensions = extensions
        self.first = first
        self.second = second
        self.bipartite = bipartite
        self.line_graph = line_graph
        self.link = link
        self.mismatches = mismatches

    @property
    def simple(self):
        """Whether no two extensions join the same pair of classes."""
        return all(
            self.bipartite.number_of_edges(u, v) == 1
            for u, v in self.bipartite.edges())

    def min_degree(self):
        """The smallest degree of the link graph."""
        if len(self.link) == 0:
            return None
        return min(degree for _, degree in self.link.degree)


def _classes(M, face, extensions, label):
    """Group extensions that cannot be added together because of ``M``."""
    residual = M.residual(face)
    classes = defaultdict(list)
    for x in extensions:
        block = M.block_of[x]
        if residual[block] == 1:
            classes[(label, 'block', block)].append(x)
        else:
            classes[(label, 'element', x)].append(x)
    return dict(classes)


def top_link_structure(M1, M2, k, S, strict=True):
    """
    Describe the link of ``S`` through a bipartite graph.

    Extensions ``x`` and ``y`` of ``S`` can be added together exactly when
    their edges in the bipartite graph of classes share no endpoint, so the
    link graph is the complement of the line graph.

    Parameters
    ----------
    M1, M2: PartitionMatroid
        The matroids
    k: int
        The size of the top faces
    S: iterable of int
        A common independent set with ``k - 2`` elements
    strict: bool
        Raise :class:`NotSimpleB` when the bipartite graph has parallel
        edges

    Returns
    -------
    BipartiteLinkStructure

    Raises
    ------
    StructureMismatch
        If the link graph is not the complement of the line graph
    NotSimpleB
        If ``strict`` and the bipartite graph is not simple
    """
    _check_ground(M1, M2)
    S = tuple(sorted(S))
    if len(S) != k - 2:
        raise ValueError("Expected a face with {} elements, got {}".format(
            k - 2, S))
    if not (M1.is_independent(S) and M2.is_independent(S)):
        raise FaceNotPresent(
            "{} is not a common independent set".format(S))

    members = set(S)
    extensions = tuple(
        x for x in M1.ground if x not in members
        and M1.is_independent(S + (x, )) and M2.is_independent(S + (x, )))
    first = _classes(M1, S, extensions, 'first')
    second = _classes(M2, S, extensions, 'second')
    first_of = {x: c for c, xs in first.items() for x in xs}
    second_of = {x: c for c, xs in second.items() for x in xs}

    bipartite = nx.MultiGraph()
    bipartite.add_nodes_from(first, bipartite=0)
    bipartite.add_nodes_from(second, bipartite=1)
    for x in extensions:
        bipartite.add_edge(first_of[x], second_of[x], key=x)
    line = nx.Graph()
    line.add_nodes_from(extensions)
    line.add_edges_from(
        (a[2], b[2]) for a, b in nx.line_graph(bipartite).edges())

    link = nx.Graph()
    link.add_nodes_from(extensions)
    for x, y in combinations(extensions, 2):
        T = S + (x, y)
        if M1.is_independent(T) and M2.is_independent(T):
            link.add_edge(x, y)

    mismatches = sum(
        link.has_edge(x, y) == line.has_edge(x, y)
        for x, y in combinations(extensions, 2))
    structure = BipartiteLinkStructure(S, extensions, first, second,
                                       bipartite, line, link, mismatches)
    if mismatches:
        raise StructureMismatch(
            "Link of {} differs from the complement of the line graph in {} "
            "pairs".format(S, mismatches))
    if strict and not structure.simple:
        raise NotSimpleB(
            "Two extensions of {} join the same pair of classes".format(S))
    return structure


def line_graph_min_eig_check(B, arguments=None):
    """
    Check that the line graph of ``B`` has smallest adjacency eigenvalue at
    least -2.
    """
    line = nx.line_graph(nx.Graph(B))
    if line.number_of_nodes() == 0:
        smallest = 0.0
    else:
        adjacency = nx.to_numpy_array(line)
        smallest = float(linalg.eigh(adjacency, eigvals_only=True)[0])
    return CheckResult.compare('line-graph-min-eig',
                               {} if arguments is None else arguments,
                               smallest,
                               -2.0,
                               direction='lower')


def _top_faces(X, k):
    return X.faces(k - 3)


def mi_link_checks(M1, M2, k, X: WeightedComplex = None, r=None):
    """
    Check the link structure of the matroid intersection complex.

    * When ``k < r/2 - 1``, the link graph of every face with at most
      ``k - 2`` elements has diameter at most two.
    * For every face ``S`` with ``k - 2`` elements and block-disjoint
      matroids, the link graph is the complement of the line graph of the
      bipartite class graph, whose line graph has smallest eigenvalue at
      least -2.
    * When moreover ``k <= r/3``, the link graph of such ``S`` has minimum
      degree at least ``r - 2k + 2`` and its walk has second eigenvalue at
      most ``1/k``.

    Parameters
    ----------
    M1, M2: PartitionMatroid
        The matroids
    k: int
        The size of the top faces
    X: WeightedComplex, optional
        The complex, built when omitted
    r: int, optional
        The size of a largest common independent set, computed when omitted

    Returns
    -------
    list[CheckResult]
    """
    names = ('mi-link-diameter', 'mi-link-structure', 'line-graph-min-eig',
             'mi-link-degree', 'mi-top-link')
    arguments = {'k': k}
    if k < 2:
        reason = "No faces with k - 2 = {} elements".format(k - 2)
        return [CheckResult.skipped(n, arguments, reason) for n in names]
    if X is None:
        X = matroid_intersection_complex(M1, M2, k)
    if r is None:
        r = max_common_independent_size(M1, M2)
    arguments['r'] = r
    results = []

    if k < r / 2 - 1:
        diameters = []
        for j in range(-1, k - 2):
            for S in X.faces(j):
                graph = link_graph(X, S).to_networkx()
                if len(graph) < 2:
                    diameters.append(0)
                elif nx.is_connected(graph):
                    diameters.append(nx.diameter(graph))
                else:
                    diameters.append(np.inf)
        results.append(
            CheckResult.compare('mi-link-diameter',
                                arguments,
                                max(diameters),
                                2,
                                tolerance=0))
    else:
        results.append(
            CheckResult.skipped('mi-link-diameter', arguments,
                                "k = {} >= r/2 - 1 = {}".format(
                                    k, r / 2 - 1)))

    if shares_block_pair(M1, M2):
        reason = "Two elements share a block in both matroids"
        results.extend(
            CheckResult.skipped(n, arguments, reason) for n in names[1:])
        return results

    structures = [top_link_structure(M1, M2, k, S) for S in _top_faces(X, k)]
    results.append(
        CheckResult.compare('mi-link-structure',
                            arguments,
                            sum(s.mismatches for s in structures),
                            0,
                            tolerance=0,
                            direction='equal',
                            detail={'faces': len(structures)}))
    eigenvalue_checks = [
        line_graph_min_eig_check(s.bipartite, arguments) for s in structures
    ]
    worst = min(eigenvalue_checks, key=lambda result: result.value)
    results.append(worst)

    if k <= r / 3:
        degrees = [s.min_degree() for s in structures]
        degrees = [degree for degree in degrees if degree is not None]
        results.append(
            CheckResult.compare('mi-link-degree',
                                arguments,
                                min(degrees) if degrees else 0,
                                r - 2 * k + 2,
                                tolerance=0,
                                direction='lower'))
        values = [
            link_second_eigenvalue(link_graph(X, S))[0]
            for S in _top_faces(X, k)
        ]
        results.append(
            CheckResult.compare('mi-top-link', arguments, max(values),
                                1 / k))
    else:
        reason = "k = {} > r/3 = {}".format(k, r / 3)
        results.append(CheckResult.skipped('mi-link-degree', arguments,
                                           reason))
        results.append(CheckResult.skipped('mi-top-link', arguments,
                                           reason))
    return results


def mi_theorem_check(M1, M2, k, X: WeightedComplex = None, r=None):
    """
    Check ``lambda_2(DownW_{k-1}) <= 1 - 1/k^2`` on the matroid intersection
    complex when ``k <= r/3`` and no two elements share a block in both
    matroids.
    """
    if r is None:
        r = max_common_independent_size(M1, M2)
    arguments = {'k': k, 'r': r}
    if shares_block_pair(M1, M2):
        return CheckResult.skipped(
            'mi-theorem', arguments,
            "Two elements share a block in both matroids")
    if k > r / 3:
        return CheckResult.skipped('mi-theorem', arguments,
                                   "k = {} > r/3 = {}".format(k, r / 3))
    if X is None:
        X = matroid_intersection_complex(M1, M2, k)
    return CheckResult.compare('mi-theorem', arguments,
                               second_eigenvalue(X['down_up', k - 1]),
                               1 - 1 / k**2)
