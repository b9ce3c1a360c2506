"""Eigenvalues of walks in the inner product of their stationary law."""
import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from os import cpu_count

import numpy as np
from scipy import linalg

from ..complex import WeightedComplex, link_graph
from ..constants import TOLERANCES
from ..exceptions import LevelOutOfRange, NonPositivePi, NotSelfAdjoint

logger = logging.getLogger(__name__)


def _symmetrize(matrix, pi, tolerance=None):
    """Return ``diag(pi)^(1/2) M diag(pi)^(-1/2)`` after validating it."""
    if tolerance is None:
        tolerance = TOLERANCES['self_adjoint']
    matrix = np.asarray(matrix, dtype=np.float64)
    pi = np.asarray(pi, dtype=np.float64)
    if np.any(pi <= 0):
        raise NonPositivePi(
            "Stationary distribution has non-positive entry {}".format(
                pi.min()))
    flow = pi[:, np.newaxis] * matrix
    residual = np.max(np.abs(flow - flow.T)) if flow.size else 0.0
    if residual > tolerance:
        raise NotSelfAdjoint(
            "Detailed balance residual {} exceeds {}".format(
                residual, tolerance))
    root = np.sqrt(pi)
    return root[:, np.newaxis] * matrix / root[np.newaxis, :]


def symmetric_spectrum(matrix, pi, tolerance=None):
    """
    Eigenvalues of a walk that is self-adjoint with respect to ``pi``.

    Parameters
    ----------
    matrix: array-like
        Square walk matrix
    pi: array-like
        Positive stationary distribution
    tolerance: float, optional
        Largest accepted detailed balance residual

    Returns
    -------
    numpy.ndarray
        The eigenvalues, sorted non-increasing
    """
    symmetric = _symmetrize(matrix, pi, tolerance)
    symmetric = (symmetric + symmetric.T) / 2
    eigenvalues = linalg.eigh(symmetric, eigvals_only=True)
    return eigenvalues[::-1]


def weighted_spectrum(op):
    """
    Eigenvalues of a self-adjoint walk operator.

    The operator is symmetrized as ``diag(pi)^(1/2) M diag(pi)^(-1/2)``,
    whose eigenvalues are those of ``M`` in the ``pi`` inner product.

    Parameters
    ----------
    op: hodgewalk.operators.WeightedOperator
        A walk from a level to itself

    Returns
    -------
    numpy.ndarray
        The eigenvalues, sorted non-increasing

    Raises
    ------
    NotSelfAdjoint
        If the operator violates detailed balance by more than
        ``TOLERANCES['self_adjoint']``
    NonPositivePi
        If the distribution has a non-positive entry
    """
    return symmetric_spectrum(op.matrix, op.domain_pi)


def second_eigenvalue(eigenvalues):
    """
    The second largest eigenvalue.

    A walk on a single state has no non-trivial eigenvalue; 0 is returned.

    Parameters
    ----------
    eigenvalues: array-like or WeightedOperator
        Eigenvalues sorted non-increasing, or an operator to decompose
    """
    if hasattr(eigenvalues, 'matrix'):
        eigenvalues = weighted_spectrum(eigenvalues)
    if len(eigenvalues) < 2:
        return 0.0
    return float(eigenvalues[1])


def second_singular_value(op):
    """
    The second largest singular value of a walk in its ``pi`` inner product.
    """
    symmetric = _symmetrize(op.matrix, op.domain_pi, tolerance=np.inf)
    values = linalg.svdvals(symmetric)
    if len(values) < 2:
        return 0.0
    return float(values[1])


def link_second_eigenvalue(graph):
    """
    The second eigenvalue of a link walk, or 1 if the link is disconnected.

    Parameters
    ----------
    graph: hodgewalk.complex.LinkGraph

    Returns
    -------
    value: float
        The second eigenvalue
    connected: bool
        Whether the link graph is connected
    """
    if not graph.is_connected():
        return 1.0, False
    eigenvalues = symmetric_spectrum(graph.walk, graph.pi0)
    return second_eigenvalue(eigenvalues), True


class GammaProfile():
    """
    Second eigenvalues of all link walks, per level.

    Parameters
    ----------
    dimension: int
        Dimension of the complex
    faces: dict
        Maps each level ``j`` in ``-1, ..., d - 2`` to its faces
    values: dict
        Maps each level to the per-face second eigenvalues
    connected: dict
        Maps each level to per-face connectivity flags

    Examples
    --------
    >>> from hodgewalk import build_complex
    >>> from hodgewalk.spectral import gamma_profile
    >>> profile = gamma_profile(build_complex([(1, 2), (3, 4)]))
    >>> profile[-1]
    1.0
    """

    def __init__(self, dimension, faces, values, connected):
        self.dimension = dimension
        self.faces = faces
        self.values = {j: np.asarray(v, dtype=np.float64)
                       for j, v in values.items()}
        self.connected = {j: np.asarray(c, dtype=bool)
                          for j, c in connected.items()}

    @property
    def levels(self):
        """Levels with a gamma value, ``-1, ..., d - 2``."""
        return range(-1, self.dimension - 1)

    def __getitem__(self, j):
        if j not in self.values:
            raise LevelOutOfRange(
                "Gamma is defined for levels -1, ..., {}, got {}".format(
                    self.dimension - 2, j))
        return float(self.values[j].max())

    def __len__(self):
        return len(self.values)

    @property
    def sequence(self):
        """All gamma values, starting at level -1."""
        return [self[j] for j in self.levels]

    def argmax(self, j):
        """The face attaining gamma at level ``j``."""
        return self.faces[j][int(np.argmax(self.values[j]))]

    def all_connected(self, j):
        """Whether every link graph at level ``j`` is connected."""
        return bool(self.connected[j].all())

    def max(self):
        """The largest gamma over all levels, or None without levels."""
        return max(self.sequence) if len(self) else None

    def to_dict(self):
        """Describe the profile for a report."""
        return {
            str(j): {
                'gamma': self[j],
                'argmax': list(self.argmax(j)),
                'disconnected': [
                    list(face) for face, ok in zip(self.faces[j],
                                                   self.connected[j])
                    if not ok
                ],
            }
            for j in self.levels
        }


def _link_gammas(X, faces):
    """Second eigenvalue and connectivity of the link of each face."""
    return [link_second_eigenvalue(link_graph(X, alpha)) for alpha in faces]


def _split(faces, n_chunks):
    """Split a sequence into at most ``n_chunks`` contiguous chunks."""
    size = -(-len(faces) // n_chunks) or 1
    return [faces[i:i + size] for i in range(0, len(faces), size)]


def gamma_profile(X: WeightedComplex, n_jobs=1):
    """
    Compute the largest second eigenvalue of the link walks per level.

    A disconnected link contributes the value 1 and is logged.
    The result is cached on the complex.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    n_jobs: int
        The maximum number of processes to use. 1 computes serially;
        values below 1 use the value returned by :func:`os.cpu_count`.

    Returns
    -------
    GammaProfile
    """
    key = ('gamma_profile', )
    if key in X.cache:
        return X.cache[key]

    if n_jobs < 1:
        n_jobs = cpu_count()

    faces, values, connected = {}, {}, {}
    executor = None
    if n_jobs > 1:
        logger.info("Computing link spectra using at most %s processes",
                    n_jobs)
        executor = ProcessPoolExecutor(max_workers=n_jobs)
    try:
        for j in range(-1, X.dimension - 1):
            level = X.faces(j)
            logger.info("Computing %s link spectra at level %s", len(level),
                        j)
            if executor is None:
                results = _link_gammas(X, level)
            else:
                compute = partial(_link_gammas, X)
                results = [
                    result
                    for chunk in executor.map(compute, _split(level, n_jobs))
                    for result in chunk
                ]
            faces[j] = level
            values[j] = [value for value, _ in results]
            connected[j] = [ok for _, ok in results]
            for alpha, ok in zip(level, connected[j]):
                if not ok:
                    logger.warning(
                        "Link of %s is disconnected, gamma at level %s "
                        "is 1", alpha, j)
    finally:
        if executor is not None:
            executor.shutdown()

    profile = GammaProfile(X.dimension, faces, values, connected)
    X.cache[key] = profile
    return profile
