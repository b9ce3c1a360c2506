import numpy as np
import pytest

from hodgewalk.diagnostics import (empirical_transition_matrix, l1_distance,
                                   transition_chi_square, transition_counts,
                                   tv_sampling_slack)

WALK = np.array([[0.5, 0.5], [0.25, 0.75]])
STATES = ['a', 'b']


def test_l1_distance():
    assert l1_distance({'a': 0.5, 'b': 0.5}, {'a': 1.0}) == pytest.approx(1)
    assert l1_distance({}, {}) == 0


def test_transition_counts():
    counts = transition_counts(['a', 'b', 'a', 'a'])
    assert counts == {('a', 'b'): 1, ('b', 'a'): 1, ('a', 'a'): 1}
    assert transition_counts(['a']) == {}


def test_empirical_transition_matrix():
    matrix, totals = empirical_transition_matrix(
        {('a', 'b'): 3, ('a', 'a'): 1}, STATES)
    np.testing.assert_allclose(matrix, [[0.25, 0.75], [0, 0]])
    np.testing.assert_array_equal(totals, [4, 0])


def test_chi_square_exact_counts():
    counts = {('a', 'a'): 50, ('a', 'b'): 50, ('b', 'a'): 25, ('b', 'b'): 75}
    result = transition_chi_square(counts, WALK, STATES)
    assert result['statistic'] == pytest.approx(0)
    assert result['dof'] == 2
    assert result['rows'] == 2
    assert result['p_value'] == pytest.approx(1)


def test_chi_square_detects_wrong_kernel():
    counts = {('a', 'a'): 90, ('a', 'b'): 10, ('b', 'a'): 25, ('b', 'b'): 75}
    assert transition_chi_square(counts, WALK, STATES)['p_value'] < 1e-6


def test_chi_square_impossible_transition():
    walk = np.array([[1.0, 0.0], [0.5, 0.5]])
    counts = {('a', 'a'): 10, ('a', 'b'): 1}
    result = transition_chi_square(counts, walk, STATES)
    assert result['p_value'] == 0
    assert result['dof'] == 0


def test_chi_square_sparse_rows():
    counts = {('a', 'a'): 2, ('b', 'b'): 3}
    result = transition_chi_square(counts, WALK, STATES)
    assert result['rows'] == 0
    assert result['p_value'] == 1


def test_tv_sampling_slack():
    assert tv_sampling_slack([1.0], 100) == 0
    assert tv_sampling_slack([0.5, 0.5], 100, sigmas=1) == pytest.approx(0.05)
