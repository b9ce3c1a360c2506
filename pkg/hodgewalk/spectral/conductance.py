"""Conductance of walks, the Cheeger inequality and the non-expansion bound."""
import logging
import math

import numpy as np

from ..complex import WeightedComplex
from ..constants import EXHAUSTIVE_CHEEGER_STATES, TOLERANCES
from ..exceptions import HypothesisNotMet, LevelOutOfRange
from .check import Check, CheckResult
from .spectrum import second_eigenvalue

logger = logging.getLogger(__name__)


def _mask(S, n):
    """Convert an index collection or boolean mask to a boolean mask."""
    S = np.asarray(S)
    if S.dtype == bool:
        if S.shape != (n, ):
            raise ValueError("Mask of shape {} for {} states".format(
                S.shape, n))
        return S
    mask = np.zeros(n, dtype=bool)
    mask[S.astype(int)] = True
    return mask


def conductance(walk, S):
    """
    The probability of leaving ``S`` in one step from a stationary start
    inside ``S``.

    Parameters
    ----------
    walk: hodgewalk.operators.WeightedOperator
        A walk on a level
    S: array-like
        Indices of the states in the set, or a boolean mask

    Returns
    -------
    float

    Examples
    --------
    >>> from hodgewalk import build_complex
    >>> X = build_complex([(0, 1), (1, 2)])
    >>> conductance(X['down_up', 1], [0, 1])
    0.0
    """
    pi = walk.domain_pi
    inside = _mask(S, len(pi))
    measure = pi[inside].sum()
    if measure <= 0:
        raise ValueError("The set has no stationary mass")
    flow = pi[inside] @ walk.matrix[np.ix_(inside, ~inside)].sum(axis=1)
    return float(flow / measure)


def min_conductance(walk, max_states=None):
    """
    Minimise the conductance over all sets with at most half the mass.

    Every subset is enumerated, so this is only available for small walks.

    Parameters
    ----------
    walk: hodgewalk.operators.WeightedOperator
        The walk
    max_states: int, optional
        Largest accepted number of states, by default
        :data:`hodgewalk.constants.EXHAUSTIVE_CHEEGER_STATES`

    Returns
    -------
    value: float
        The smallest conductance, or None if no set qualifies
    members: numpy.ndarray
        Boolean mask of a minimising set
    """
    if max_states is None:
        max_states = EXHAUSTIVE_CHEEGER_STATES
    pi = walk.domain_pi
    n = len(pi)
    if n > max_states:
        raise ValueError(
            "Exhaustive conductance is limited to {} states, got {}".format(
                max_states, n))
    codes = np.arange(1, 2**n, dtype=np.int64)
    sets = ((codes[:, np.newaxis] >> np.arange(n)) & 1).astype(np.float64)
    measure = sets @ pi
    small = measure <= 0.5 + TOLERANCES['build']
    if not small.any():
        return None, np.zeros(n, dtype=bool)
    sets = sets[small]
    measure = measure[small]
    flow = pi[:, np.newaxis] * walk.matrix
    staying = np.sum((sets @ flow) * sets, axis=1)
    values = (measure - staying) / measure
    best = int(np.argmin(values))
    return float(values[best]), sets[best].astype(bool)


def star_sets(X: WeightedComplex, k):
    """
    For every vertex, the faces of level ``k`` containing it.

    Returns
    -------
    dict
        Maps each vertex to the indices of its star in ``X(k)``
    """
    if not 0 <= k <= X.dimension:
        raise LevelOutOfRange("Stars need 0 <= k <= {}, got {}".format(
            X.dimension, k))
    star = X.extensions(0, k)
    return {
        alpha[0]: np.array(sorted(i for _, i in star[alpha]))
        for alpha in X.faces(0)
    }


def cheeger_check(walk, candidate_sets=None, name='cheeger', arguments=None):
    """
    Check the Cheeger inequality ``(1 - l2)/2 <= Phi <= sqrt(2 (1 - l2))``.

    On walks with at most ``EXHAUSTIVE_CHEEGER_STATES`` states the minimum
    conductance is found by enumeration and both directions are asserted.
    Otherwise only the candidate sets are evaluated, and only the lower
    direction is asserted for the smallest candidate conductance.

    Parameters
    ----------
    walk: hodgewalk.operators.WeightedOperator
        A walk on a level
    candidate_sets: iterable, optional
        Sets to evaluate instead of exhaustive enumeration
    """
    arguments = {} if arguments is None else arguments
    n = len(walk.domain_pi)
    if n < 2:
        raise HypothesisNotMet("A walk on {} state has no cut".format(n))
    gap = 1 - second_eigenvalue(walk)
    lower = gap / 2
    upper = math.sqrt(2 * max(gap, 0.0))
    if candidate_sets is None and n <= EXHAUSTIVE_CHEEGER_STATES:
        value, members = min_conductance(walk)
        if value is None:
            raise HypothesisNotMet("No set carries at most half the mass")
        return CheckResult.compare(
            name,
            arguments,
            value, [lower, upper],
            direction='between',
            detail={
                'mode': 'exhaustive',
                'set': np.flatnonzero(members).tolist()
            })

    if candidate_sets is None:
        raise HypothesisNotMet(
            "{} states is too many for exhaustive search and no candidate "
            "sets were given".format(n))
    pi = walk.domain_pi
    best, best_set = None, None
    for S in candidate_sets:
        mask = _mask(S, n)
        if pi[mask].sum() > 0.5 + TOLERANCES['build'] or not mask.any():
            continue
        value = conductance(walk, mask)
        if best is None or value < best:
            best, best_set = value, mask
    if best is None:
        raise HypothesisNotMet("No candidate set carries at most half the "
                               "mass")
    logger.info("Upper Cheeger direction not tested on %s states", n)
    return CheckResult.compare(
        name,
        arguments,
        best,
        lower,
        direction='lower',
        detail={
            'mode': 'candidates',
            'set': np.flatnonzero(best_set).tolist(),
            'upper': upper
        })


def _check_dimension(X):
    d = X.dimension
    n = X.size(0)
    if 2 * (d + 1) > n:
        raise HypothesisNotMet(
            "Need 2(d + 1) <= n, got d={} and n={}".format(d, n))


def nonexp_check(X: WeightedComplex):
    """
    Check that the top down-up walk does not expand well:
    ``lambda_2(DownW_d) >= 1 - 2/(d+1)`` when ``2(d+1) <= n``.
    """
    _check_dimension(X)
    d = X.dimension
    actual = second_eigenvalue(X['down_up', d])
    return CheckResult.compare('nonexp', {'k': d},
                               actual,
                               1 - 2 / (d + 1),
                               direction='lower')


def star_conductance_check(X: WeightedComplex):
    """
    Check that the star of a vertex of smallest weight has conductance at
    most ``1/(d+1)`` under the top down-up walk.
    """
    _check_dimension(X)
    d = X.dimension
    vertex_pi = X.pi(0)
    vertex = X.faces(0)[int(np.argmin(vertex_pi))][0]
    star = star_sets(X, d)[vertex]
    walk = X['down_up', d]
    return CheckResult.compare(
        'star-conductance', {'k': d},
        conductance(walk, star),
        1 / (d + 1),
        detail={
            'vertex': vertex,
            'measure': float(walk.domain_pi[star].sum()),
            'expected_measure': float((d + 1) * vertex_pi.min()),
        })


def check_cheeger_level(X: WeightedComplex, k):
    """The Cheeger inequality for the down-up walk on level ``k``."""
    walk = X['down_up', k]
    candidates = None
    if X.size(k) > EXHAUSTIVE_CHEEGER_STATES:
        candidates = star_sets(X, k).values()
    return cheeger_check(walk, candidates, arguments={'k': k})


class Cheeger(Check):
    name = 'cheeger'
    parameters = ('k', )
    compute = staticmethod(check_cheeger_level)

    def arguments(self, X):
        return [(k, ) for k in range(0, X.dimension + 1)]


class NonExpansion(Check):
    name = 'nonexp'
    level_argument = False
    compute = staticmethod(nonexp_check)

    def arguments(self, X):
        return [()]


class StarConductance(Check):
    name = 'star-conductance'
    level_argument = False
    compute = staticmethod(star_conductance_check)

    def arguments(self, X):
        return [()]
