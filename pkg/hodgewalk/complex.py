"""Pure weighted simplicial complexes, their links and link graphs."""
import logging
from collections import defaultdict
from itertools import combinations
from math import comb
from typing import Iterable, Tuple

import networkx as nx
import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .constants import TOLERANCES, dense_cap
from .exceptions import (CapExceeded, DimensionTooHigh, DuplicateFacet,
                         EmptyInput, FaceNotPresent, LevelOutOfRange,
                         NonPositivePi, NonPure)

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]
"""A face is a strictly increasing tuple of non-negative vertex labels."""


def as_face(vertices: Iterable[int]) -> Face:
    """
    Convert an iterable of vertex labels to a face.

    Parameters
    ----------
    vertices: iterable of int
        Vertex labels, in any order

    Returns
    -------
    tuple[int]
        The sorted vertices

    Raises
    ------
    ValueError
        If a label is negative, not an integer, or repeated
    """
    face = []
    for vertex in vertices:
        if isinstance(vertex, bool) or not isinstance(vertex,
                                                      (int, np.integer)):
            raise ValueError("Vertex {!r} is not an integer".format(vertex))
        if vertex < 0:
            raise ValueError("Vertex {} is negative".format(vertex))
        face.append(int(vertex))
    face.sort()
    if len(set(face)) != len(face):
        raise ValueError("Face {} has repeated vertices".format(face))
    return tuple(face)


class WeightedComplex:
    """
    A pure weighted simplicial complex with all its level distributions.

    Faces are stored per level ``j`` (faces with ``j + 1`` vertices) in
    canonical sorted order, together with a probability vector ``Pi_j`` over
    that level. The empty face is level -1 with ``Pi_{-1} = 1``.

    Operators are computed on request through the kinds registered with
    :meth:`register` and cached per complex.

    Parameters
    ----------
    levels: dict
        Maps each level ``j`` in ``-1, ..., d`` to a sequence of faces
    pi: dict
        Maps each level to the distribution over its faces, in the same order
    cap: int, optional
        Largest level size for which dense operators are built. See
        :func:`hodgewalk.constants.dense_cap`.

    Examples
    --------
    >>> from hodgewalk import build_complex
    >>> X = build_complex([(1, 2, 3), (1, 2, 4)])
    >>> X.dimension
    2
    >>> X.faces(0)
    ((1,), (2,), (3,), (4,))
    >>> X.pi(0)
    array([0.33333333, 0.33333333, 0.16666667, 0.16666667])
    """

    operators = {}

    @classmethod
    def register(cls, kind, function):
        """
        Register a new operator kind.

        Parameters
        ----------
        kind: str
            Name of the operator kind
        function
            Function taking the complex and one or more level indices and
            returning a :class:`hodgewalk.operators.WeightedOperator`
        """
        cls.operators[kind] = function

    def __init__(self, levels, pi, cap=None):
        if not levels:
            raise EmptyInput("A complex needs at least one level")
        self.dimension = max(levels)
        self._faces = {}
        self._index = {}
        self._pi = {}
        for j in range(-1, self.dimension + 1):
            faces = tuple(levels[j])
            values = np.array(pi[j], dtype=np.float64)
            if values.shape != (len(faces), ):
                raise ValueError(
                    "Level {} has {} faces but {} weights".format(
                        j, len(faces), values.shape))
            values.flags.writeable = False
            self._faces[j] = faces
            self._index[j] = {face: i for i, face in enumerate(faces)}
            self._pi[j] = values

        self.cap = dense_cap(cap)
        self.cache = {}
        self._extensions = {}
        self._incidence = {}

    def __repr__(self):
        return "{}(dimension={}, sizes={})".format(
            self.__class__.__name__, self.dimension,
            [self.size(j) for j in self.levels])

    def __getstate__(self):
        # Dense operators are rebuilt on demand; only the link spectra travel.
        state = self.__dict__.copy()
        state['cache'] = {
            key: value
            for key, value in self.cache.items() if key[0] == 'gamma_profile'
        }
        return state

    @property
    def d(self):
        """The dimension of the complex."""
        return self.dimension

    @property
    def levels(self):
        """The level indices ``-1, ..., d``."""
        return range(-1, self.dimension + 1)

    @property
    def vertices(self):
        """The vertex labels of the complex."""
        return tuple(face[0] for face in self._faces[0])

    def _check_level(self, j):
        if not -1 <= j <= self.dimension:
            raise LevelOutOfRange(
                "Level {} outside the range -1, ..., {}".format(
                    j, self.dimension))

    def faces(self, j):
        """The faces of level ``j`` in canonical order."""
        self._check_level(j)
        return self._faces[j]

    def pi(self, j):
        """The distribution over the faces of level ``j``."""
        self._check_level(j)
        return self._pi[j]

    def size(self, j):
        """The number of faces of level ``j``."""
        self._check_level(j)
        return len(self._faces[j])

    def index(self, face):
        """
        The position of ``face`` in its level.

        Raises
        ------
        FaceNotPresent
            If the face is not in the complex
        """
        face = tuple(face)
        j = len(face) - 1
        if j > self.dimension or face not in self._index[j]:
            raise FaceNotPresent(
                "Face {} is not in the complex".format(face))
        return self._index[j][face]

    def weight(self, face):
        """The probability of ``face`` under its level distribution."""
        face = tuple(face)
        return float(self._pi[len(face) - 1][self.index(face)])

    def __contains__(self, face):
        face = tuple(face)
        j = len(face) - 1
        return j <= self.dimension and face in self._index[j]

    def check_cap(self, *levels):
        """
        Refuse to build dense operators on levels larger than the cap.

        Raises
        ------
        CapExceeded
            If any of the levels has more faces than ``self.cap``
        """
        for j in levels:
            if self.size(j) > self.cap:
                raise CapExceeded(
                    "Level {} has {} faces, more than the dense cap {}. "
                    "Raise the cap with the cap argument or the "
                    "HODGEWALK_CAP environment variable.".format(
                        j, self.size(j), self.cap))

    def __getitem__(self, key):
        """
        Get an operator of a kind registered using the `register` method.

        Parameters
        ----------
        key: tuple
            The operator kind followed by its level arguments, e.g.
            ``('down_up', 2)`` or ``('long_up_down', 0, 2)``

        Returns
        -------
        hodgewalk.operators.WeightedOperator
        """
        kind, *levels = key if isinstance(key, tuple) else (key, )
        key = (kind, *levels)
        if key in self.cache:
            return self.cache[key]
        if kind not in self.operators:
            raise IndexError(
                "Unknown operator kind {}, choose from {} or register a new "
                "kind using the register method.".format(
                    kind, sorted(self.operators)))
        operator = self.operators[kind](self, *levels)
        self.cache[key] = operator
        return operator

    def incidence(self, j):
        """
        Containment matrix between levels ``j`` and ``j + 1``.

        Returns
        -------
        scipy.sparse.csr_matrix
            Matrix of shape ``(|X(j+1)|, |X(j)|)`` with a one where the
            face of level ``j`` is contained in the face of level ``j + 1``
        """
        if not -1 <= j < self.dimension:
            raise LevelOutOfRange(
                "Incidence needs -1 <= j < {}, got {}".format(
                    self.dimension, j))
        if j not in self._incidence:
            rows, cols = [], []
            index = self._index[j]
            for row, beta in enumerate(self._faces[j + 1]):
                for alpha in combinations(beta, j + 1):
                    rows.append(row)
                    cols.append(index[alpha])
            shape = (self.size(j + 1), self.size(j))
            self._incidence[j] = sparse.csr_matrix(
                (np.ones(len(rows)), (rows, cols)), shape=shape)
        return self._incidence[j]

    def extensions(self, j, m):
        """
        Map faces of level ``j`` to their extensions by ``m`` vertices.

        Returns
        -------
        dict
            Maps each face ``alpha`` of level ``j`` to a list of pairs
            ``(tau, i)`` where ``alpha + tau`` is the ``i``-th face of level
            ``j + m``
        """
        key = (j, m)
        if key not in self._extensions:
            self._check_level(j)
            self._check_level(j + m)
            star = defaultdict(list)
            for i, gamma in enumerate(self._faces[j + m]):
                for alpha in combinations(gamma, j + 1):
                    rest = set(alpha)
                    tau = tuple(v for v in gamma if v not in rest)
                    star[alpha].append((tau, i))
            self._extensions[key] = dict(star)
        return self._extensions[key]

    def residuals(self):
        """
        Measure how far the stored distributions are from the invariants.

        Returns
        -------
        dict
            ``onestep``: largest deviation from the level recursion,
            ``normalization``: largest deviation of a level sum from one,
            ``min_pi``: the smallest stored probability,
            ``closed``: whether every subset of a face is present,
            ``pure``: whether every non-top face has a coface
        """
        onestep = 0.0
        normalization = 0.0
        min_pi = np.inf
        closed = True
        pure = True
        for j in self.levels:
            values = self._pi[j]
            normalization = max(normalization, abs(values.sum() - 1))
            min_pi = min(min_pi, values.min())
            if j == self.dimension:
                continue
            for beta in self._faces[j + 1]:
                if any(alpha not in self._index[j]
                       for alpha in combinations(beta, j + 1)):
                    closed = False
            if not closed:
                continue
            incidence = self.incidence(j)
            if np.any(np.asarray(incidence.sum(axis=0)).ravel() == 0):
                pure = False
            rebuilt = incidence.T @ self._pi[j + 1] / (j + 2)
            onestep = max(onestep, np.max(np.abs(rebuilt - values)))
        return {
            'onestep': float(onestep),
            'normalization': float(normalization),
            'min_pi': float(min_pi),
            'closed': closed,
            'pure': pure,
        }

    def validate(self, tolerance=None):
        """
        Check all complex invariants.

        Parameters
        ----------
        tolerance: float, optional
            Allowed residual, by default ``TOLERANCES['build']``

        Returns
        -------
        dict
            The residuals, see :meth:`residuals`

        Raises
        ------
        ValueError
            If an invariant is violated
        """
        if tolerance is None:
            tolerance = TOLERANCES['build']
        residuals = self.residuals()
        if not residuals['closed']:
            raise ValueError("The complex is not closed under subsets")
        if not residuals['pure']:
            raise NonPure("The complex has maximal faces below the top level")
        if residuals['min_pi'] <= 0:
            raise NonPositivePi("The complex has a face with probability "
                                "{}".format(residuals['min_pi']))
        for name in ('onestep', 'normalization'):
            if residuals[name] > tolerance:
                raise ValueError(
                    "Residual {} = {} exceeds tolerance {}".format(
                        name, residuals[name], tolerance))
        return residuals


def build_complex(maximal_faces, weights=None, cap=None):
    """
    Build a pure weighted complex from its facets.

    The top distribution is proportional to ``weights``. Each lower
    distribution gives a face the average over its cofaces, i.e.
    ``Pi_j(a) = 1/(j+2) * sum of Pi_{j+1}(b) over b containing a``.

    Parameters
    ----------
    maximal_faces: list of iterables of int
        The facets, all of the same size
    weights: list of float, optional
        Positive facet weights; uniform when omitted
    cap: int, optional
        Dense operator cap stored on the complex

    Returns
    -------
    WeightedComplex

    Raises
    ------
    EmptyInput
        If no facets are given
    NonPure
        If facet sizes differ
    DuplicateFacet
        If a facet is given twice
    NonPositivePi
        If a weight is not positive
    """
    facets = [as_face(face) for face in maximal_faces]
    if not facets:
        raise EmptyInput("No facets given")
    if weights is None:
        weights = np.ones(len(facets))
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (len(facets), ):
        raise ValueError("Got {} weights for {} facets".format(
            weights.shape, len(facets)))
    if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
        raise NonPositivePi("Facet weights must be positive and finite")

    sizes = {len(face) for face in facets}
    if len(sizes) > 1:
        raise NonPure(
            "Facets have different dimensions {}".format(
                sorted(size - 1 for size in sizes)))
    d = sizes.pop() - 1
    if d < 0:
        raise EmptyInput("Facets must have at least one vertex")

    top = {}
    for face, weight in zip(facets, weights):
        if face in top:
            raise DuplicateFacet("Facet {} given twice".format(face))
        top[face] = weight
    total = weights.sum()

    logger.info("Building %s-dimensional complex from %s facets", d,
                len(facets))
    distributions = {d: {face: top[face] / total for face in sorted(top)}}
    for j in range(d - 1, -2, -1):
        level = defaultdict(float)
        for beta, value in distributions[j + 1].items():
            share = value / (j + 2)
            for alpha in combinations(beta, j + 1):
                level[alpha] += share
        distributions[j] = {face: level[face] for face in sorted(level)}
        logger.debug("Level %s has %s faces", j, len(level))

    levels = {j: list(dist) for j, dist in distributions.items()}
    pi = {j: list(dist.values()) for j, dist in distributions.items()}
    complex_ = WeightedComplex(levels, pi, cap=cap)
    if any(values.min() <= 0 for values in complex_._pi.values()):
        raise NonPositivePi("A face received zero probability")
    return complex_


def link(X: WeightedComplex, alpha) -> WeightedComplex:
    """
    Compute the link of ``alpha`` with its conditional distributions.

    The link consists of the faces ``tau`` disjoint from ``alpha`` such
    that ``alpha + tau`` is a face. Its level ``l`` carries
    ``Pi_{j+l+1}(alpha + tau) / (C(|alpha + tau|, |alpha|) * Pi_j(alpha))``.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    alpha: iterable of int
        A face of dimension at most ``d - 1``

    Returns
    -------
    WeightedComplex
        The link, of dimension ``d - |alpha|``
    """
    alpha = as_face(alpha)
    j = len(alpha) - 1
    alpha_pi = X.weight(alpha)
    if j > X.dimension - 1:
        raise DimensionTooHigh(
            "Face {} of dimension {} has an empty link in a {}-dimensional "
            "complex".format(alpha, j, X.dimension))

    levels = {}
    pi = {}
    for l in range(-1, X.dimension - j):
        size = j + l + 2
        factor = comb(size, j + 1) * alpha_pi
        values = X.pi(j + l + 1)
        entries = sorted(
            (tau, values[i] / factor)
            for tau, i in X.extensions(j, l + 1).get(alpha, ()))
        levels[l] = [tau for tau, _ in entries]
        pi[l] = [value for _, value in entries]
    return WeightedComplex(levels, pi, cap=X.cap)


class LinkGraph:
    """
    The weighted 1-skeleton of a link.

    Parameters
    ----------
    alpha: tuple[int]
        The face whose link this is
    vertices: tuple[int]
        The link vertices
    edges: tuple[tuple[int, int]]
        The link edges as pairs of positions into ``vertices``
    weights: array-like
        The edge distribution
    pi0: array-like
        The vertex distribution

    Attributes
    ----------
    adjacency: numpy.ndarray
        Symmetric matrix with the edge weight on both off-diagonal entries
    degrees: numpy.ndarray
        ``2 * pi0``, each edge counting for both endpoints
    walk: numpy.ndarray
        The row-stochastic walk matrix ``D^{-1} A``
    """

    def __init__(self, alpha, vertices, edges, weights, pi0):
        self.alpha = alpha
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.weights = np.asarray(weights, dtype=np.float64)
        self.pi0 = np.asarray(pi0, dtype=np.float64)

        n = len(self.vertices)
        self.adjacency = np.zeros((n, n))
        for (x, y), weight in zip(self.edges, self.weights):
            self.adjacency[x, y] = weight
            self.adjacency[y, x] = weight
        self.degrees = 2 * self.pi0
        self.walk = self.adjacency / self.degrees[:, np.newaxis]

    def __len__(self):
        return len(self.vertices)

    @property
    def projector(self):
        """The projector ``1 pi0^T`` onto constant functions."""
        return np.outer(np.ones(len(self)), self.pi0)

    def is_connected(self):
        """Whether the link graph is connected."""
        n_components, _ = connected_components(
            sparse.csr_matrix(self.adjacency > 0), directed=False)
        return n_components == 1

    def to_networkx(self):
        """Return the link graph as a networkx graph on the link vertices."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_weighted_edges_from(
            (self.vertices[x], self.vertices[y], weight)
            for (x, y), weight in zip(self.edges, self.weights))
        return graph


def link_graph(X: WeightedComplex, alpha) -> LinkGraph:
    """
    Compute the weighted link graph of ``alpha``.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    alpha: iterable of int
        A face of dimension at most ``d - 2``

    Returns
    -------
    LinkGraph

    Examples
    --------
    >>> from hodgewalk import build_complex, link_graph
    >>> X = build_complex([(1, 2, 3), (1, 2, 4)])
    >>> link_graph(X, (1, )).walk
    array([[0. , 0.5, 0.5],
           [1. , 0. , 0. ],
           [1. , 0. , 0. ]])
    """
    alpha = as_face(alpha)
    j = len(alpha) - 1
    alpha_pi = X.weight(alpha)
    if j > X.dimension - 2:
        raise DimensionTooHigh(
            "The link of {} has no edges in a {}-dimensional complex".format(
                alpha, X.dimension))

    vertex_pi = X.pi(j + 1)
    vertices = sorted(
        (tau[0], vertex_pi[i] / ((j + 2) * alpha_pi))
        for tau, i in X.extensions(j, 1)[alpha])
    position = {x: i for i, (x, _) in enumerate(vertices)}

    edge_pi = X.pi(j + 2)
    factor = comb(j + 3, j + 1) * alpha_pi
    edges = sorted(((position[x], position[y]), edge_pi[i] / factor)
                   for (x, y), i in X.extensions(j, 2)[alpha])
    return LinkGraph(
        alpha,
        vertices=[x for x, _ in vertices],
        edges=[edge for edge, _ in edges],
        weights=[weight for _, weight in edges],
        pi0=[value for _, value in vertices],
    )
