"""Up and down operators and the random walks composed from them.

Operators act on functions from the right: ``(M f)(x) = sum_y M[x, y] f(y)``.
Read as transition matrices, row ``x`` holds the distribution of the next
face when the walk is at ``x``; distributions evolve as ``p -> p M``.
"""
import logging
import os
from typing import NamedTuple

import numpy as np
from netCDF4 import Dataset

from . import __version__
from .complex import WeightedComplex, link_graph
from .constants import KINDS
from .exceptions import BadRange, LevelOutOfRange
from .util.io import write_matrix

logger = logging.getLogger(__name__)


class WeightedOperator():
    """
    A matrix between two levels of a complex, with the inner products
    defined by the level distributions.

    Parameters
    ----------
    kind: str
        One of :data:`hodgewalk.constants.KINDS`
    matrix: array-like
        The matrix, rows indexed by the codomain level
    domain_level: int
        Level of the functions the operator acts on
    codomain_level: int
        Level of the functions it produces
    domain_pi: array-like
        Distribution on the domain level
    codomain_pi: array-like
        Distribution on the codomain level
    """

    def __init__(self, kind, matrix, domain_level, codomain_level, domain_pi,
                 codomain_pi):
        if kind not in KINDS:
            raise ValueError("Unknown operator kind {}, choose from {}".format(
                kind, KINDS))
        self.kind = kind
        self.matrix = np.array(matrix, dtype=np.float64)
        self.matrix.flags.writeable = False
        self.domain_level = int(domain_level)
        self.codomain_level = int(codomain_level)
        self.domain_pi = np.array(domain_pi, dtype=np.float64)
        self.codomain_pi = np.array(codomain_pi, dtype=np.float64)

        expected = (len(self.codomain_pi), len(self.domain_pi))
        if self.matrix.shape != expected:
            raise ValueError(
                "Matrix of shape {} does not map level {} ({} faces) to "
                "level {} ({} faces)".format(self.matrix.shape,
                                             self.domain_level,
                                             expected[1],
                                             self.codomain_level,
                                             expected[0]))

    def __repr__(self):
        return "{}({!r}, {} -> {}, shape={})".format(
            self.__class__.__name__, self.kind, self.domain_level,
            self.codomain_level, self.matrix.shape)

    @property
    def shape(self):
        """The shape of the matrix."""
        return self.matrix.shape

    @property
    def pi(self):
        """The distribution on the domain, which defines the inner product."""
        return self.domain_pi

    @property
    def is_square(self):
        """Whether the operator maps a level to itself."""
        return self.domain_level == self.codomain_level

    def row_sum_residual(self):
        """Largest deviation of a row sum from one."""
        return float(np.max(np.abs(self.matrix.sum(axis=1) - 1)))

    def self_adjointness_residual(self):
        """
        Largest violation of ``pi(x) M(x, y) = pi(y) M(y, x)``.

        Only defined for operators from a level to itself.
        """
        if not self.is_square:
            raise ValueError("Self-adjointness is only defined for walks")
        flow = self.domain_pi[:, np.newaxis] * self.matrix
        return float(np.max(np.abs(flow - flow.T)))

    def stationarity_residual(self):
        """Largest entry of ``pi^T M - pi^T``."""
        if not self.is_square:
            raise ValueError("Stationarity is only defined for walks")
        return float(
            np.max(np.abs(self.domain_pi @ self.matrix - self.domain_pi)))

    def get_filename(self, prefix='', extension='nc'):
        """
        Construct a filename from the operator kind and levels.

        Parameters
        ----------
        prefix: str
            String to prepend to the filename
        extension: str
            Either ``nc`` or ``txt``
        """
        return '{prefix}{kind}_{domain}_{codomain}.{ext}'.format(
            prefix=prefix,
            kind=self.kind,
            domain=self.domain_level,
            codomain=self.codomain_level,
            ext=extension)

    def save(self, filename_prefix='', extension='nc'):
        """
        Save the operator to file.

        Parameters
        ----------
        filename_prefix: str
            Prefix for the filename; a directory is completed with a
            filename built from the kind and levels
        extension: str
            ``nc`` for netCDF4 with both distributions, ``txt`` for the
            dense matrix text format

        Returns
        -------
        str
            The name of the written file
        """
        if os.path.isdir(filename_prefix):
            filename_prefix = os.path.join(filename_prefix, '')
        filename = self.get_filename(filename_prefix, extension)
        logger.info("Saving %s operator to file %s", self.kind, filename)
        if extension == 'nc':
            self._save_as_netcdf(filename)
        elif extension == 'txt':
            write_matrix(filename, self.matrix)
        else:
            raise ValueError(
                "Unknown extension {}, choose from 'nc' or 'txt'".format(
                    extension))
        return filename

    def _save_as_netcdf(self, filename):
        """Save the operator with its distributions as a netCDF4 file."""
        rows, cols = self.matrix.shape
        with Dataset(filename, 'w') as dataset:
            dataset.createDimension('codomain', rows)
            dataset.createDimension('domain', cols)
            matrix = dataset.createVariable('matrix', 'f8',
                                            ('codomain', 'domain'))
            matrix[:] = self.matrix
            domain_pi = dataset.createVariable('domain_pi', 'f8',
                                               ('domain', ))
            domain_pi[:] = self.domain_pi
            codomain_pi = dataset.createVariable('codomain_pi', 'f8',
                                                 ('codomain', ))
            codomain_pi[:] = self.codomain_pi
            dataset.kind = self.kind
            dataset.domain_level = self.domain_level
            dataset.codomain_level = self.codomain_level
            dataset.hodgewalk_version = __version__

    @classmethod
    def from_file(cls, filename):
        """
        Restore an operator saved in netCDF4 format.

        Parameters
        ----------
        filename: str
            The file written by :meth:`save` with ``extension='nc'``

        Returns
        -------
        WeightedOperator
        """
        logger.info("Loading operator from file %s", filename)
        with Dataset(filename, 'r') as dataset:
            return cls(
                kind=dataset.kind,
                matrix=np.array(dataset.variables['matrix'][:]),
                domain_level=int(dataset.domain_level),
                codomain_level=int(dataset.codomain_level),
                domain_pi=np.array(dataset.variables['domain_pi'][:]),
                codomain_pi=np.array(dataset.variables['codomain_pi'][:]),
            )


def up_operator(X: WeightedComplex, j):
    """
    The up operator from level ``j`` to level ``j + 1``.

    ``(Up_j f)(b)`` is the average of ``f`` over the faces of ``b`` of
    level ``j``.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    j: int
        Domain level, ``-1 <= j <= d - 1``

    Returns
    -------
    WeightedOperator
    """
    if not -1 <= j <= X.dimension - 1:
        raise LevelOutOfRange(
            "Up operator needs -1 <= j <= {}, got {}".format(
                X.dimension - 1, j))
    X.check_cap(j, j + 1)
    matrix = X.incidence(j).toarray() / (j + 2)
    return WeightedOperator('up', matrix, j, j + 1, X.pi(j), X.pi(j + 1))


def down_operator(X: WeightedComplex, j_plus_1):
    """
    The down operator from level ``j + 1`` to level ``j``.

    ``(D g)(a)`` is the average of ``g`` over the cofaces of ``a``,
    weighted by their probability. It is the adjoint of the up operator.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    j_plus_1: int
        Domain level, ``0 <= j_plus_1 <= d``

    Returns
    -------
    WeightedOperator
    """
    if not 0 <= j_plus_1 <= X.dimension:
        raise LevelOutOfRange(
            "Down operator needs 0 <= j + 1 <= {}, got {}".format(
                X.dimension, j_plus_1))
    j = j_plus_1 - 1
    X.check_cap(j, j_plus_1)
    upper = X.pi(j_plus_1)
    lower = X.pi(j)
    matrix = X.incidence(j).T.toarray() * upper[np.newaxis, :]
    matrix /= (j + 2) * lower[:, np.newaxis]
    return WeightedOperator('down', matrix, j_plus_1, j, upper, lower)


def down_up_walk(X: WeightedComplex, j):
    """The down-up walk ``Up_{j-1} D_j`` on level ``j``, ``0 <= j <= d``."""
    if not 0 <= j <= X.dimension:
        raise LevelOutOfRange(
            "Down-up walk needs 0 <= j <= {}, got {}".format(X.dimension, j))
    matrix = X['up', j - 1].matrix @ X['down', j].matrix
    return WeightedOperator('down_up', matrix, j, j, X.pi(j), X.pi(j))


def up_down_walk(X: WeightedComplex, j):
    """The up-down walk ``D_{j+1} Up_j`` on level ``j``."""
    if not -1 <= j <= X.dimension - 1:
        raise LevelOutOfRange(
            "Up-down walk needs -1 <= j <= {}, got {}".format(
                X.dimension - 1, j))
    matrix = X['down', j + 1].matrix @ X['up', j].matrix
    return WeightedOperator('up_down', matrix, j, j, X.pi(j), X.pi(j))


def nonlazy_up_down_walk(X: WeightedComplex, j):
    """
    The up-down walk on level ``j`` conditioned on moving.

    Equal to ``(j+2)/(j+1) * (UpW_j - I/(j+2))``.
    """
    if not 0 <= j <= X.dimension - 1:
        raise LevelOutOfRange(
            "Non-lazy up-down walk needs 0 <= j <= {}, got {}".format(
                X.dimension - 1, j))
    lazy = X['up_down', j].matrix
    matrix = (j + 2) / (j + 1) * (lazy - np.eye(len(lazy)) / (j + 2))
    return WeightedOperator('nonlazy_up_down', matrix, j, j, X.pi(j),
                            X.pi(j))


def long_walk(X: WeightedComplex, a, b):
    """
    The up-down walk from level ``a`` through level ``b``.

    Climbs ``b - a`` levels with up steps and comes back with down steps:
    ``D_{a+1} ... D_b Up_{b-1} ... Up_a``.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    a: int
        The level the walk lives on
    b: int
        The level the walk passes through, ``-1 <= a < b <= d``

    Returns
    -------
    WeightedOperator
    """
    if a >= b:
        raise BadRange("Long walk needs a < b, got a={}, b={}".format(a, b))
    if a < -1 or b > X.dimension:
        raise LevelOutOfRange(
            "Long walk needs -1 <= a < b <= {}, got a={}, b={}".format(
                X.dimension, a, b))
    up = np.eye(X.size(a))
    for j in range(a, b):
        up = X['up', j].matrix @ up
    down = np.eye(X.size(a))
    for j in range(a + 1, b + 1):
        down = down @ X['down', j].matrix
    return WeightedOperator('long_up_down', down @ up, a, a, X.pi(a),
                            X.pi(a))


WeightedComplex.register('up', up_operator)
WeightedComplex.register('down', down_operator)
WeightedComplex.register('down_up', down_up_walk)
WeightedComplex.register('up_down', up_down_walk)
WeightedComplex.register('nonlazy_up_down', nonlazy_up_down_walk)
WeightedComplex.register('long_up_down', long_walk)


def adjointness_residual(X: WeightedComplex, j):
    """
    Check that the down operator is the adjoint of the up operator.

    Returns the largest ``|<g, Up_j f>_{Pi_{j+1}} - <D_{j+1} g, f>_{Pi_j}|``
    over basis vectors ``f`` and ``g``.
    """
    if not -1 <= j <= X.dimension - 1:
        raise LevelOutOfRange(
            "Adjointness needs -1 <= j <= {}, got {}".format(
                X.dimension - 1, j))
    up = X['up', j]
    down = X['down', j + 1]
    lhs = up.codomain_pi[:, np.newaxis] * up.matrix
    rhs = (down.codomain_pi[:, np.newaxis] * down.matrix).T
    return float(np.max(np.abs(lhs - rhs)))


def bipartite_square_residual(X: WeightedComplex, j):
    """
    Check that the walk between two adjacent levels squares to the
    down-up walk on the upper level and the up-down walk on the lower one.

    The walk is the block operator ``[[0, Up_j], [D_{j+1}, 0]]`` on
    functions over ``X(j+1)`` followed by ``X(j)``.
    """
    if not -1 <= j <= X.dimension - 1:
        raise LevelOutOfRange(
            "Bipartite walk needs -1 <= j <= {}, got {}".format(
                X.dimension - 1, j))
    up = X['up', j].matrix
    down = X['down', j + 1].matrix
    upper, lower = up.shape
    block = np.zeros((upper + lower, upper + lower))
    block[:upper, upper:] = up
    block[upper:, :upper] = down
    expected = np.zeros_like(block)
    expected[:upper, :upper] = X['down_up', j + 1].matrix
    expected[upper:, upper:] = X['up_down', j].matrix
    return float(np.max(np.abs(block @ block - expected)))


class GarlandTerms(NamedTuple):
    """Both sides of the three local-global identities for a function."""

    idQ: float
    downQ: float
    nonlazyQ: float
    rhs_idQ: float
    rhs_downQ: float
    rhs_nonlazyQ: float

    @property
    def discrepancy(self):
        """Largest difference between the two sides of an identity."""
        return max(abs(self.idQ - self.rhs_idQ),
                   abs(self.downQ - self.rhs_downQ),
                   abs(self.nonlazyQ - self.rhs_nonlazyQ))


def garland_terms(X: WeightedComplex, j, f):
    """
    Decompose quadratic forms of level ``j`` walks into link averages.

    The left-hand sides are evaluated with the global operators, the
    right-hand sides as averages over faces ``a`` of level ``j - 1`` of the
    restriction ``f_a(x) = f(a + x)`` to the link of ``a``:

    * ``<f, f>`` equals the average of ``|f_a|^2``,
    * ``<f, DownW_j f>`` equals the average of ``|J_a f_a|^2``,
    * ``<f, NUpW_j f>`` equals the average of ``<f_a, M_a f_a>``.

    On the top level there are no link edges and no non-lazy walk, and
    both sides of the last identity are zero.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    j: int
        The level, ``1 <= j <= d``
    f: array-like
        A function on ``X(j)``

    Returns
    -------
    GarlandTerms
    """
    if not 1 <= j <= X.dimension:
        raise LevelOutOfRange(
            "Garland identities need 1 <= j <= {}, got {}".format(
                X.dimension, j))
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (X.size(j), ):
        raise ValueError("Function has shape {}, expected ({},)".format(
            f.shape, X.size(j)))

    pi = X.pi(j)
    id_q = float(pi @ (f * f))
    down_q = float(pi @ (f * (X['down_up', j].matrix @ f)))
    if j < X.dimension:
        nonlazy_q = float(pi @ (f * (X['nonlazy_up_down', j].matrix @ f)))
    else:
        nonlazy_q = 0.0

    rhs_id = rhs_down = rhs_nonlazy = 0.0
    lower = X.pi(j - 1)
    star = X.extensions(j - 1, 1)
    for alpha, weight in zip(X.faces(j - 1), lower):
        entries = star[alpha]
        local_pi = np.array([pi[i] for _, i in entries]) / ((j + 1) * weight)
        local_f = np.array([f[i] for _, i in entries])
        rhs_id += weight * float(local_pi @ (local_f * local_f))
        rhs_down += weight * float(local_pi @ local_f)**2
        if j < X.dimension:
            graph = link_graph(X, alpha)
            restricted = np.array(
                [f[X.index(tuple(sorted(alpha + (x, ))))]
                 for x in graph.vertices])
            rhs_nonlazy += weight * float(
                graph.pi0 @ (restricted * (graph.walk @ restricted)))

    return GarlandTerms(id_q, down_q, nonlazy_q, rhs_id, rhs_down,
                        rhs_nonlazy)
