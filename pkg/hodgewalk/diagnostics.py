"""
Statistical diagnostics for sampler output.

Example
=======
The sampling slack of the l1 distance for a uniform law on four states::

    >>> round(tv_sampling_slack([0.25] * 4, 10000), 4)
    0.026
"""
import logging

import numpy as np
from scipy import stats

logger = logging.getLogger(__name__)


def l1_distance(p, q):
    """
    The l1 distance between two distributions given as dicts.

    States missing from one of them count as having probability 0.
    """
    states = set(p) | set(q)
    return float(sum(abs(p.get(s, 0.0) - q.get(s, 0.0)) for s in states))


def transition_counts(path):
    """
    Count the transitions along a sequence of states.

    Parameters
    ----------
    path: iterable
        States in the order they were visited

    Returns
    -------
    dict
        Maps pairs ``(from, to)`` to their count
    """
    counts = {}
    previous = None
    for i, state in enumerate(path):
        if i > 0:
            counts[(previous, state)] = counts.get((previous, state), 0) + 1
        previous = state
    return counts


def empirical_transition_matrix(counts, states):
    """
    Row-normalise transition counts over ``states``.

    Rows of states that were never left are zero.

    Returns
    -------
    numpy.ndarray
        The empirical transition matrix
    numpy.ndarray
        The number of transitions out of each state
    """
    index = {state: i for i, state in enumerate(states)}
    matrix = np.zeros((len(states), len(states)))
    for (source, target), count in counts.items():
        matrix[index[source], index[target]] += count
    totals = matrix.sum(axis=1)
    with np.errstate(invalid='ignore', divide='ignore'):
        normalised = np.where(totals[:, None] > 0, matrix / totals[:, None],
                              0.0)
    return normalised, totals


def transition_chi_square(counts, expected, states, min_count=5):
    """
    Pearson goodness of fit of observed transitions against a kernel.

    Each row with at least ``min_count`` transitions contributes its cells
    with non-zero expected probability; the statistics of all rows are
    pooled into one test.

    Parameters
    ----------
    counts: dict
        Maps pairs ``(from, to)`` to their count
    expected: numpy.ndarray
        The transition matrix the chain should follow
    states: list
        The states indexing ``expected``
    min_count: int
        Rows with fewer transitions are left out

    Returns
    -------
    dict
        ``statistic``, degrees of freedom ``dof``, ``p_value`` and
        ``rows`` used. The p-value is 0 when a transition with zero
        expected probability was observed.
    """
    index = {state: i for i, state in enumerate(states)}
    observed = np.zeros(expected.shape)
    for (source, target), count in counts.items():
        observed[index[source], index[target]] += count

    statistic = 0.0
    dof = 0
    rows = 0
    impossible = 0
    for i in range(len(states)):
        total = observed[i].sum()
        if total < min_count:
            continue
        support = expected[i] > 0
        impossible += int(observed[i][~support].sum())
        cells = total * expected[i][support]
        statistic += float(np.sum((observed[i][support] - cells)**2 / cells))
        dof += int(support.sum()) - 1
        rows += 1

    if impossible:
        logger.warning("Observed %s transitions with zero probability",
                       impossible)
        p_value = 0.0
    elif dof == 0:
        p_value = 1.0
    else:
        p_value = float(stats.chi2.sf(statistic, dof))
    return {
        'statistic': statistic,
        'dof': dof,
        'p_value': p_value,
        'rows': rows,
    }


def tv_sampling_slack(probabilities, samples, sigmas=3):
    """
    How far the l1 distance of ``samples`` exact draws from their own law
    typically strays: ``0.5 * sigmas * sum(sqrt(p (1 - p) / samples))``.
    """
    p = np.asarray(probabilities, dtype=float)
    return float(0.5 * sigmas * np.sum(np.sqrt(p * (1 - p) / samples)))
