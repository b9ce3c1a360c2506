from itertools import combinations

import pytest

from hodgewalk.builders import enumerate_faces, purity_witness
from hodgewalk.exceptions import TooLarge


def test_enumerate_all_subsets():
    levels = enumerate_faces([3, 1, 0, 2], lambda face, x: True, 3)
    for j in range(-1, 3):
        assert levels[j] == list(combinations(range(4), j + 1))
    assert purity_witness(levels, 3) is None


def test_enumerate_limit():
    with pytest.raises(TooLarge):
        enumerate_faces(range(10), lambda face, x: True, 3, limit=50)


def test_purity_witness():
    # 0 and 1 exclude each other and 4 has no partner
    def can_extend(face, x):
        pair = set(face) | {x}
        return not {0, 1} <= pair and not (4 in pair and len(pair) > 1)

    levels = enumerate_faces(range(5), can_extend, 2)
    assert purity_witness(levels, 2) == (4, )
