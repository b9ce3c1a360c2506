"""
Closed-form eigenvalue bounds and mixing budgets.

All functions here are pure formulas. ``gammas`` arguments are sequences of
per-level link eigenvalues starting at level -1, as returned by
:attr:`hodgewalk.spectral.GammaProfile.sequence`.
"""
import logging
import math

import numpy as np

from ..exceptions import DenominatorNonpositive, GapZero, LevelOutOfRange

logger = logging.getLogger(__name__)


def gap_profile_bound(gaps, k):
    """
    Bound the second eigenvalue of the down-up walk on level ``k`` from
    per-level spectral gaps ``1 - gamma_j`` of the links.

    Parameters
    ----------
    gaps: sequence of float
        Spectral gaps for levels ``-1, ..., k - 2``
    k: int
        The level of the walk

    Returns
    -------
    float
        ``1 - prod(gaps) / (k + 1)``
    """
    if k < 0:
        raise LevelOutOfRange("Level must be non-negative, got {}".format(k))
    gaps = list(gaps)
    if len(gaps) < k:
        raise LevelOutOfRange(
            "Need {} spectral gaps for level {}, got {}".format(
                k, k, len(gaps)))
    return 1 - float(np.prod(gaps[:k])) / (k + 1)


def main_bound(gammas, k):
    """
    Bound on the second eigenvalue of the down-up walk on level ``k``.

    ``1 - (1/(k+1)) * prod_{j=-1}^{k-2} (1 - gamma_j)``

    Examples
    --------
    >>> main_bound([0, 0, 0], 3)
    0.75
    >>> main_bound([], 0)
    0.0
    """
    gammas = list(gammas)
    return gap_profile_bound([1 - gamma for gamma in gammas], k)


def eigencount_threshold(gammas, k, r):
    """
    Threshold above which the up-down walk on level ``k`` has at most
    ``|X(r)|`` eigenvalues.

    ``1 - (1/(k+2)) * prod_{j=r}^{k-1} (1 - gamma_j)``
    """
    if not -1 <= r <= k:
        raise LevelOutOfRange("Need -1 <= r <= k, got r={}, k={}".format(
            r, k))
    gammas = list(gammas)
    if len(gammas) < k + 1:
        raise LevelOutOfRange(
            "Need gamma values up to level {}, got {} levels".format(
                k - 1, len(gammas)))
    factors = [1 - gamma for gamma in gammas[r + 1:k + 1]]
    return 1 - float(np.prod(factors)) / (k + 2)


def oppenheim_step_bound(gamma):
    """
    One trickle-down step: the link eigenvalue one level lower is at most
    ``gamma / (1 - gamma)``.
    """
    if gamma >= 1:
        raise DenominatorNonpositive(
            "Trickle-down step needs gamma < 1, got {}".format(gamma))
    return gamma / (1 - gamma)


def trickle_down_bound(gamma_top, d, j, strict=False):
    """
    Cascaded trickle-down bound on level ``j`` from the top link level.

    ``gamma_top / (1 - (d - 2 - j) * gamma_top)``

    Parameters
    ----------
    gamma_top: float
        Gamma at level ``d - 2``
    d: int
        Dimension of the complex
    j: int
        Target level, ``-1 <= j <= d - 2``
    strict: bool
        Raise :class:`DenominatorNonpositive` instead of returning infinity
        when the formula does not apply

    Examples
    --------
    With ``gamma_top = 1/(d+1)`` the bound is ``1/(j+3)``:

    >>> round(trickle_down_bound(1 / 5, 4, 0), 12)
    0.333333333333
    """
    if not -1 <= j <= d - 2:
        raise LevelOutOfRange("Need -1 <= j <= {}, got {}".format(d - 2, j))
    denominator = 1 - (d - 2 - j) * gamma_top
    if denominator <= 0:
        if strict:
            raise DenominatorNonpositive(
                "Trickle-down denominator {} is not positive for "
                "gamma={}, d={}, j={}".format(denominator, gamma_top, d, j))
        logger.warning(
            "Trickle-down bound not applicable for gamma=%s, d=%s, j=%s",
            gamma_top, d, j)
        return math.inf
    return gamma_top / denominator


def main_cooked_bound(k):
    """``1 - 1/(k+1)^2``, the main bound when all links trickle down."""
    if k < 0:
        raise LevelOutOfRange("Level must be non-negative, got {}".format(k))
    return 1 - 1 / (k + 1)**2


def long_walk_bound(gamma, a, b):
    """``(1 + gamma)^(b - a) * (a + 1) / (b + 1)``."""
    if a >= b:
        raise LevelOutOfRange("Need a < b, got a={}, b={}".format(a, b))
    return (1 + gamma)**(b - a) * (a + 1) / (b + 1)


def long_walk_exponential_bound(eps, a, b):
    """``exp(eps) * (a + 1) / (b + 1)``, valid when gamma <= eps/(b - a)."""
    if a >= b:
        raise LevelOutOfRange("Need a < b, got a={}, b={}".format(a, b))
    return math.exp(eps) * (a + 1) / (b + 1)


def comparison_bound(gamma, k):
    """
    ``1 - 1/(k+1) + k * gamma / 2``, the earlier local-to-global bound.

    Negative ``gamma`` is replaced by 0, the range the bound is stated for.
    """
    if k < 0:
        raise LevelOutOfRange("Level must be non-negative, got {}".format(k))
    return 1 - 1 / (k + 1) + k * max(gamma, 0) / 2


def mixing_time_budget(sigma2, pi_min, eps):
    """
    Steps after which a chain is ``eps``-close in l1 to stationarity.

    ``ceil(log(1 / (eps * pi_min)) / (1 - sigma2))``

    Parameters
    ----------
    sigma2: float
        Second largest singular value of the walk, ``0 <= sigma2 < 1``
    pi_min: float
        Smallest stationary probability, ``0 < pi_min <= 1``
    eps: float
        Target distance, ``0 < eps < 1``

    Returns
    -------
    int

    Examples
    --------
    >>> mixing_time_budget(0.5, 0.01, 0.01)
    19
    """
    if sigma2 >= 1:
        raise GapZero("No spectral gap: sigma2 = {}".format(sigma2))
    if sigma2 < 0:
        raise ValueError("sigma2 must be non-negative, got {}".format(sigma2))
    if not 0 < pi_min <= 1:
        raise ValueError("pi_min must lie in (0, 1], got {}".format(pi_min))
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1), got {}".format(eps))
    return int(math.ceil(math.log(1 / (eps * pi_min)) / (1 - sigma2)))


def sampling_budget(k, n, eps):
    """
    ``ceil(k^2 * (log(1/eps) + k * log(n)))``, the budget for sampling
    ``k``-subsets of an ``n``-element ground set when the down-up walk has
    second eigenvalue at most ``1 - 1/k^2``.
    """
    if k < 1 or n < 1:
        raise ValueError("Need k >= 1 and n >= 1, got k={}, n={}".format(
            k, n))
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1), got {}".format(eps))
    return int(math.ceil(k**2 * (math.log(1 / eps) + k * math.log(n))))
