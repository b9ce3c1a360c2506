"""Level-by-level enumeration of downward closed set systems."""
import logging
from itertools import combinations

from ..constants import ENUMERATION_LIMIT
from ..exceptions import TooLarge

logger = logging.getLogger(__name__)


def enumerate_faces(ground, can_extend, k, limit=None):
    """
    Enumerate all sets of size at most ``k`` in a downward closed family.

    Each set is grown only by elements larger than its current maximum, so
    every set is produced once and every level comes out in lexicographic
    order.

    Parameters
    ----------
    ground: iterable of int
        The ground set
    can_extend: callable
        ``can_extend(face, x)`` tells whether ``face + (x,)`` belongs to the
        family, given that ``face`` does
    k: int
        Largest set size
    limit: int, optional
        Largest total number of sets, by default
        :data:`hodgewalk.constants.ENUMERATION_LIMIT`

    Returns
    -------
    dict
        Maps each level ``j`` in ``-1, ..., k - 1`` to its sorted faces; the
        enumeration stops early at the first empty level

    Raises
    ------
    TooLarge
        If more than ``limit`` sets are found
    """
    if limit is None:
        limit = ENUMERATION_LIMIT
    ground = sorted(ground)
    levels = {-1: [()]}
    total = 1
    for j in range(0, k):
        level = []
        for face in levels[j - 1]:
            start = face[-1] if face else None
            for x in ground:
                if start is not None and x <= start:
                    continue
                if can_extend(face, x):
                    level.append(face + (x, ))
        total += len(level)
        if total > limit:
            raise TooLarge(
                "More than {} sets of size at most {}".format(limit, k))
        logger.debug("Level %s has %s faces", j, len(level))
        if not level:
            break
        levels[j] = level
    return levels


def purity_witness(levels, k):
    """
    Find a maximal face with fewer than ``k`` elements.

    Parameters
    ----------
    levels: dict
        Levels as returned by :func:`enumerate_faces`
    k: int
        The size every maximal face should have

    Returns
    -------
    tuple[int] or None
        A face without a coface one level up, or None if every maximal face
        has size ``k``
    """
    top = max(levels)
    if top < k - 1:
        return levels[top][0]
    for j in range(-1, top):
        covered = {
            alpha
            for beta in levels[j + 1] for alpha in combinations(beta, j + 1)
        }
        for face in levels[j]:
            if face not in covered:
                return face
    return None
