"""Operator identities that hold exactly, checked up to rounding."""
import logging

import numpy as np

from ..complex import WeightedComplex
from ..constants import TOLERANCES
from ..operators import (adjointness_residual, bipartite_square_residual,
                         garland_terms)
from .check import Check, CheckResult
from .spectrum import weighted_spectrum

logger = logging.getLogger(__name__)

NONZERO = 1e-7
"""Eigenvalues of smaller magnitude count as zero when comparing spectra."""


def garland_check(X: WeightedComplex, j, samples=10, seed=0):
    """
    Compare both sides of the local-global identities on level ``j`` for
    the constant function and ``samples`` Gaussian functions.

    Returns
    -------
    CheckResult
        ``value`` is the largest discrepancy between two sides
    """
    rng = np.random.default_rng(seed)
    functions = [np.ones(X.size(j))]
    functions.extend(rng.standard_normal((samples, X.size(j))))
    discrepancy = max(garland_terms(X, j, f).discrepancy for f in functions)
    return CheckResult.compare('garland', {'j': j},
                               discrepancy,
                               0.0,
                               tolerance=TOLERANCES['garland'],
                               detail={'functions': len(functions)})


def check_adjointness(X: WeightedComplex, j):
    """The down operator is the adjoint of the up operator."""
    return CheckResult.compare('adjointness', {'j': j},
                               adjointness_residual(X, j),
                               0.0,
                               tolerance=TOLERANCES['build'])


def check_bipartite_square(X: WeightedComplex, j):
    return CheckResult.compare('bipartite-square', {'j': j},
                               bipartite_square_residual(X, j),
                               0.0)


def nonzero_spectrum(op, threshold=NONZERO):
    """The eigenvalues of ``op`` of magnitude above ``threshold``."""
    eigenvalues = weighted_spectrum(op)
    return eigenvalues[np.abs(eigenvalues) > threshold]


def spectrum_equality_check(X: WeightedComplex, j):
    """
    Compare the non-zero spectra of ``DownW_{j+1}`` and ``UpW_j``.

    Both walks factor through the same pair of up and down operators in
    opposite orders, so their non-zero eigenvalues coincide as multisets.
    """
    down_up = nonzero_spectrum(X['down_up', j + 1])
    up_down = nonzero_spectrum(X['up_down', j])
    detail = {'nonzero': [len(down_up), len(up_down)]}
    if len(down_up) != len(up_down):
        difference = np.inf
    elif len(down_up):
        difference = float(np.max(np.abs(down_up - up_down)))
    else:
        difference = 0.0
    return CheckResult.compare('spectrum-equality', {'j': j},
                               difference,
                               0.0,
                               detail=detail)


def psd_check(X: WeightedComplex, level, kind, through=None):
    """
    Check that a walk is positive semi-definite in its inner product.

    Parameters
    ----------
    level: int
        The level of the walk
    kind: str
        ``down_up``, ``up_down`` or ``long_up_down``
    through: int, optional
        The upper level of a long walk
    """
    key = (kind, level) if through is None else (kind, level, through)
    smallest = float(weighted_spectrum(X[key])[-1])
    arguments = {'level': level, 'kind': kind}
    if through is not None:
        arguments['through'] = through
    return CheckResult.compare('psd', arguments,
                               smallest,
                               0.0,
                               direction='lower')


def stochastic_check(X: WeightedComplex, level, kind):
    """
    Check that a walk is row-stochastic, self-adjoint and stationary.

    Returns
    -------
    CheckResult
        ``value`` is the largest of the three residuals
    """
    op = X[kind, level]
    residuals = {
        'row_sum': op.row_sum_residual(),
        'self_adjointness': op.self_adjointness_residual(),
        'stationarity': op.stationarity_residual(),
    }
    return CheckResult.compare('stochastic', {'level': level, 'kind': kind},
                               max(residuals.values()),
                               0.0,
                               tolerance=TOLERANCES['build'],
                               detail=residuals)


def invariants_check(X: WeightedComplex):
    """Re-check the distributions of the complex against their recursion."""
    residuals = X.residuals()
    value = max(residuals['onestep'], residuals['normalization'])
    if not (residuals['closed'] and residuals['pure']
            and residuals['min_pi'] > 0):
        value = np.inf
    return CheckResult.compare('invariants', {},
                               value,
                               0.0,
                               tolerance=TOLERANCES['build'],
                               detail=residuals)


class Garland(Check):
    """
    Local-global identities on every level.

    Parameters
    ----------
    samples: int
        Number of random functions per level
    seed: int
        Seed of the generator drawing them
    """
    name = 'garland'
    parameters = ('j', )
    compute = staticmethod(garland_check)

    def __init__(self, samples=10, seed=0):
        super().__init__(samples=samples, seed=seed)

    def arguments(self, X):
        return [(j, ) for j in range(1, X.dimension + 1)]


class Adjointness(Check):
    name = 'adjointness'
    parameters = ('j', )
    compute = staticmethod(check_adjointness)

    def arguments(self, X):
        return [(j, ) for j in range(-1, X.dimension)]


class BipartiteSquare(Check):
    name = 'bipartite-square'
    parameters = ('j', )
    compute = staticmethod(check_bipartite_square)

    def arguments(self, X):
        return [(j, ) for j in range(-1, X.dimension)]


class SpectrumEquality(Check):
    name = 'spectrum-equality'
    parameters = ('j', )
    compute = staticmethod(spectrum_equality_check)

    def arguments(self, X):
        return [(j, ) for j in range(-1, X.dimension)]


class PositiveSemidefinite(Check):
    name = 'psd'
    parameters = ('level', 'kind', 'through')
    compute = staticmethod(psd_check)

    def arguments(self, X):
        d = X.dimension
        arguments = [(k, 'down_up') for k in range(0, d + 1)]
        arguments += [(k, 'up_down') for k in range(-1, d)]
        arguments += [(a, 'long_up_down', b) for b in range(1, d + 1)
                      for a in range(-1, b - 1)]
        return arguments


class Stochastic(Check):
    name = 'stochastic'
    parameters = ('level', 'kind')
    compute = staticmethod(stochastic_check)

    def arguments(self, X):
        d = X.dimension
        arguments = [(k, 'down_up') for k in range(0, d + 1)]
        arguments += [(k, 'up_down') for k in range(-1, d)]
        arguments += [(k, 'nonlazy_up_down') for k in range(0, d)]
        return arguments


class Invariants(Check):
    name = 'invariants'
    level_argument = False
    compute = staticmethod(invariants_check)

    def arguments(self, X):
        return [()]
