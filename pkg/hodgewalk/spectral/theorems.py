"""
Numerical certificates for the local-to-global eigenvalue bounds.

Each ``*_check`` function measures the quantity a bound controls on a given
complex and compares it to the bound. Functions raise
:class:`hodgewalk.exceptions.HypothesisNotMet` when a bound does not apply;
the :class:`Check` wrappers at the bottom of the module turn that into a
skipped result.
"""
import logging

import numpy as np

from ..complex import WeightedComplex
from ..constants import TOLERANCES
from ..exceptions import HypothesisNotMet, LevelOutOfRange
from .bounds import (comparison_bound, eigencount_threshold,
                     long_walk_bound, long_walk_exponential_bound, main_bound,
                     main_cooked_bound, oppenheim_step_bound,
                     trickle_down_bound)
from .check import Check, CheckResult
from .spectrum import (gamma_profile, second_eigenvalue,
                       second_singular_value, symmetric_spectrum,
                       weighted_spectrum)

logger = logging.getLogger(__name__)


def _level(X, k, lowest, highest, what):
    if not lowest <= k <= highest:
        raise LevelOutOfRange("{} needs {} <= k <= {}, got {}".format(
            what, lowest, highest, k))


def check_main(X: WeightedComplex, k):
    """
    Compare the second eigenvalue of the down-up walk on level ``k`` with
    the bound computed from the link spectra.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    k: int
        The level, ``0 <= k <= d``

    Returns
    -------
    CheckResult
        ``value`` is the measured second eigenvalue, ``bound`` the bound
    """
    _level(X, k, 0, X.dimension, "Main bound")
    gammas = gamma_profile(X).sequence
    bound = main_bound(gammas, k)
    actual = second_eigenvalue(X['down_up', k])
    return CheckResult.compare(
        'main-bound', {'k': k},
        actual,
        bound,
        detail={'gammas': gammas[:k]})


def eigencount_check(X: WeightedComplex, k, r):
    """
    Count the eigenvalues of the up-down walk on level ``k`` above the
    threshold determined by the link spectra of levels ``r, ..., k - 1``.

    There may be at most ``|X(r)|`` of them.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    k: int
        The level, ``0 <= k <= d - 1``
    r: int
        The lowest link level used, ``-1 <= r <= k``

    Returns
    -------
    CheckResult
        ``value`` is the count, ``bound`` the largest allowed count
    """
    _level(X, k, 0, X.dimension - 1, "Eigenvalue counting")
    gammas = gamma_profile(X).sequence
    threshold = eigencount_threshold(gammas, k, r)
    eigenvalues = weighted_spectrum(X['up_down', k])
    count = int(np.sum(eigenvalues > threshold + TOLERANCES['check']))
    cap = X.size(r)
    return CheckResult.compare(
        'eigencount', {'k': k, 'r': r},
        count,
        cap,
        tolerance=0,
        detail={'threshold': threshold})


def updownrel_certificate(X: WeightedComplex, k):
    """
    Smallest eigenvalue of ``gamma_{k-1} (I - DownW_k) - (NUpW_k - DownW_k)``
    in the ``Pi_k`` inner product.

    A non-negative value certifies that the non-lazy up-down walk exceeds
    the down-up walk by at most ``gamma_{k-1}`` times the gap of the
    down-up walk.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    k: int
        The level, ``0 <= k <= d - 1``

    Returns
    -------
    float
    """
    _level(X, k, 0, X.dimension - 1, "Operator inequality")
    gamma = gamma_profile(X)[k - 1]
    down_up = X['down_up', k].matrix
    nonlazy = X['nonlazy_up_down', k].matrix
    identity = np.eye(len(down_up))
    difference = gamma * (identity - down_up) - (nonlazy - down_up)
    eigenvalues = symmetric_spectrum(difference, X.pi(k))
    return float(eigenvalues[-1])


def check_updownrel(X: WeightedComplex, k):
    """The operator inequality certificate as a check result."""
    certificate = updownrel_certificate(X, k)
    return CheckResult.compare(
        'updownrel', {'k': k},
        certificate,
        0.0,
        direction='lower',
        detail={'gamma': gamma_profile(X)[k - 1]})


def oppenheim_step_check(X: WeightedComplex, j):
    """
    Check one trickle-down step: ``gamma_{j-1} <= gamma_j / (1 - gamma_j)``.

    The step applies when every link at level ``j - 1`` is connected; it is
    only asserted when ``gamma_j <= 1/2``.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    j: int
        The upper level of the step, ``0 <= j <= d - 2``
    """
    _level(X, j, 0, X.dimension - 2, "Trickle-down step")
    profile = gamma_profile(X)
    gamma = profile[j]
    detail = {'gamma': gamma, 'gamma_below': profile[j - 1]}
    if not profile.all_connected(j - 1):
        raise HypothesisNotMet(
            "A link at level {} is disconnected".format(j - 1))
    if gamma > 0.5:
        raise HypothesisNotMet(
            "gamma at level {} is {} > 1/2".format(j, gamma))
    return CheckResult.compare('trickle-step', {'j': j},
                               profile[j - 1],
                               oppenheim_step_bound(gamma),
                               detail=detail)


def trickle_down_chain(X: WeightedComplex):
    """
    Propagate the top link value down all levels and compare with the
    measured values.

    Starting from ``gamma_{d-2}``, level ``j`` is bounded by
    ``gamma_{d-2} / (1 - (d - 2 - j) gamma_{d-2})``. The comparison is
    asserted when every link below the top level is connected and every
    denominator is positive.

    Returns
    -------
    CheckResult
        ``value`` is the largest excess of a measured value over its bound
    """
    d = X.dimension
    if d < 2:
        raise HypothesisNotMet(
            "Trickle-down needs a link level below the top one, the "
            "complex has dimension {}".format(d))
    profile = gamma_profile(X)
    top = profile[d - 2]
    disconnected = [
        j for j in range(-1, d - 2) if not profile.all_connected(j)
    ]
    if disconnected:
        raise HypothesisNotMet(
            "Links are disconnected at levels {}".format(disconnected))
    if (d - 1) * top >= 1:
        raise HypothesisNotMet(
            "Cascaded denominator is not positive for gamma {} at "
            "dimension {}".format(top, d))
    bounds = {j: trickle_down_bound(top, d, j, strict=True)
              for j in range(-1, d - 2)}
    excess = max(profile[j] - bound for j, bound in bounds.items())
    return CheckResult.compare(
        'trickle-chain', {},
        excess,
        0.0,
        detail={
            'gamma_top': top,
            'bounds': {str(j): bound for j, bound in bounds.items()},
            'measured': {str(j): profile[j] for j in bounds},
        })


def main_cooked_check(X: WeightedComplex, k):
    """
    Check ``lambda_2(DownW_k) <= 1 - 1/(k+1)^2``.

    The bound applies when ``gamma_{k-2} <= 1/(k+1)`` and every link up to
    level ``k - 2`` is connected. Both ``gamma_{k-2}`` and ``gamma_k`` are
    reported.
    """
    _level(X, k, 0, X.dimension, "Cooked main bound")
    profile = gamma_profile(X)
    detail = {}
    if k >= 1:
        detail['gamma_k_minus_2'] = profile[k - 2]
    if k <= X.dimension - 2:
        detail['gamma_k'] = profile[k]
    if k >= 1:
        not_expanding = [j for j in range(-1, k - 1) if profile[j] >= 1]
        if not_expanding:
            raise HypothesisNotMet(
                "gamma is 1 at levels {}".format(not_expanding))
        if profile[k - 2] > 1 / (k + 1):
            raise HypothesisNotMet(
                "gamma at level {} is {} > 1/{}".format(
                    k - 2, profile[k - 2], k + 1))
    actual = second_eigenvalue(X['down_up', k])
    return CheckResult.compare('main-cooked', {'k': k},
                               actual,
                               main_cooked_bound(k),
                               detail=detail)


def _expansion(X, gamma):
    measured = gamma_profile(X).max()
    if measured is None:
        measured = 0.0
    if gamma is None:
        gamma = measured
    if gamma < measured:
        raise HypothesisNotMet(
            "The complex is a {}-local-spectral expander, not a {}-local-"
            "spectral expander".format(measured, gamma))
    if gamma >= 1:
        raise HypothesisNotMet("gamma is {}, the bound is vacuous".format(
            gamma))
    return gamma


def long_walk_bound_check(X: WeightedComplex, a, b, gamma=None, eps=None):
    """
    Check ``lambda_2(UpW_{a,b}) <= (1 + gamma)^(b-a) (a+1)/(b+1)``.

    Parameters
    ----------
    X: WeightedComplex
        The complex
    a, b: int
        Levels with ``0 <= a < b <= d - 1``
    gamma: float, optional
        Local expansion of the complex; the measured largest link
        eigenvalue when omitted
    eps: float, optional
        Also report ``exp(eps) (a+1)/(b+1)`` when ``gamma <= eps/(b - a)``
    """
    if not 0 <= a < b <= X.dimension - 1:
        raise LevelOutOfRange(
            "Long walk bound needs 0 <= a < b <= {}, got a={}, b={}".format(
                X.dimension - 1, a, b))
    gamma = _expansion(X, gamma)
    bound = long_walk_bound(gamma, a, b)
    detail = {'gamma': gamma}
    if eps is not None and gamma <= eps / (b - a):
        exponential = long_walk_exponential_bound(eps, a, b)
        detail['exponential_bound'] = exponential
        detail['exponential_holds'] = bool(
            bound <= exponential + TOLERANCES['build'])
    actual = second_eigenvalue(X['long_up_down', a, b])
    return CheckResult.compare('long-walk', {'a': a, 'b': b},
                               actual,
                               bound,
                               detail=detail)


def long_walk_product_check(X: WeightedComplex, a, b):
    """
    Check that the second singular value of the long walk is at most the
    product of the second eigenvalues of the single-level up-down walks it
    passes through.
    """
    if not -1 <= a < b <= X.dimension:
        raise LevelOutOfRange(
            "Long walk needs -1 <= a < b <= {}, got a={}, b={}".format(
                X.dimension, a, b))
    factors = [
        second_eigenvalue(X['up_down', a + j]) for j in range(b - a)
    ]
    actual = second_singular_value(X['long_up_down', a, b])
    return CheckResult.compare('long-walk-product', {'a': a, 'b': b},
                               actual,
                               float(np.prod(factors)),
                               detail={'factors': factors})


def check_comparison(X: WeightedComplex, k):
    """
    Compare the down-up walk on level ``k`` with the earlier bound
    ``1 - 1/(k+1) + k gamma / 2``, ``gamma`` the largest link eigenvalue up
    to level ``k - 2``.
    """
    _level(X, k, 0, X.dimension, "Comparison bound")
    profile = gamma_profile(X)
    gammas = [profile[j] for j in range(-1, k - 1)]
    gamma = max(gammas) if gammas else 0.0
    actual = second_eigenvalue(X['down_up', k])
    return CheckResult.compare(
        'comparison', {'k': k},
        actual,
        comparison_bound(gamma, k),
        detail={
            'gamma': gamma,
            'main_bound': main_bound(profile.sequence, k)
        })


class MainBound(Check):
    """Second eigenvalue of every down-up walk against the main bound."""
    name = 'main-bound'
    parameters = ('k', )
    compute = staticmethod(check_main)

    def arguments(self, X):
        return [(k, ) for k in range(0, X.dimension + 1)]


class EigenCount(Check):
    """Eigenvalue counts of every up-down walk."""
    name = 'eigencount'
    parameters = ('k', 'r')
    compute = staticmethod(eigencount_check)

    def arguments(self, X):
        return [(k, r) for k in range(0, X.dimension)
                for r in range(-1, k + 1)]


class UpDownRelation(Check):
    name = 'updownrel'
    parameters = ('k', )
    compute = staticmethod(check_updownrel)

    def arguments(self, X):
        return [(k, ) for k in range(0, X.dimension)]


class TrickleStep(Check):
    name = 'trickle-step'
    parameters = ('j', )
    compute = staticmethod(oppenheim_step_check)

    def arguments(self, X):
        return [(j, ) for j in range(0, X.dimension - 1)]


class TrickleChain(Check):
    name = 'trickle-chain'
    level_argument = False
    compute = staticmethod(trickle_down_chain)

    def arguments(self, X):
        return [()]


class MainCooked(Check):
    name = 'main-cooked'
    parameters = ('k', )
    compute = staticmethod(main_cooked_check)

    def arguments(self, X):
        return [(k, ) for k in range(0, X.dimension + 1)]


class LongWalk(Check):
    """
    Long walk bound for every pair of levels.

    Parameters
    ----------
    gamma: float, optional
        Local expansion to test against
    eps: float, optional
        Target of the exponential variant
    """
    name = 'long-walk'
    parameters = ('a', 'b')
    compute = staticmethod(long_walk_bound_check)

    def __init__(self, gamma=None, eps=None):
        super().__init__(gamma=gamma, eps=eps)

    def arguments(self, X):
        return [(a, b) for b in range(1, X.dimension)
                for a in range(0, b)]


class LongWalkProduct(Check):
    name = 'long-walk-product'
    parameters = ('a', 'b')
    compute = staticmethod(long_walk_product_check)

    def arguments(self, X):
        return [(a, b) for b in range(1, X.dimension)
                for a in range(0, b)]


class Comparison(Check):
    name = 'comparison'
    parameters = ('k', )
    compute = staticmethod(check_comparison)

    def arguments(self, X):
        return [(k, ) for k in range(0, X.dimension + 1)]


def gallery_check(X: WeightedComplex):
    """
    Check that the top down-up walk has a spectral gap when every link
    walk does.

    Asserted only when all link values are below one; a gallery connected
    complex may still have disconnected links.
    """
    profile = gamma_profile(X)
    largest = profile.max()
    if largest is not None and largest >= 1 - TOLERANCES['check']:
        raise HypothesisNotMet(
            "Link level {} has gamma {}".format(
                max(profile.levels, key=lambda j: profile[j]), largest))
    actual = second_eigenvalue(X['down_up', X.dimension])
    return CheckResult.compare('gallery', {'k': X.dimension},
                               actual,
                               1 - TOLERANCES['check'],
                               tolerance=0,
                               detail={'gamma_max': largest})


class Gallery(Check):
    name = 'gallery'
    level_argument = False
    compute = staticmethod(gallery_check)

    def arguments(self, X):
        return [()]
