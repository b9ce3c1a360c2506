"""Test the closed-form bounds and budgets."""
import math

import pytest

from hodgewalk.exceptions import (DenominatorNonpositive, GapZero,
                                  LevelOutOfRange)
from hodgewalk.spectral import (comparison_bound, eigencount_threshold,
                                gap_profile_bound, long_walk_bound,
                                long_walk_exponential_bound, main_bound,
                                main_cooked_bound, mixing_time_budget,
                                oppenheim_step_bound, sampling_budget,
                                trickle_down_bound)


@pytest.mark.parametrize('gammas, k, expected', [
    ([], 0, 0.0),
    ([0.0], 1, 0.5),
    ([0.5], 1, 0.75),
    ([0.0, 0.0, 0.0], 3, 0.75),
    ([0.2, 0.5, 0.9], 2, 1 - 0.8 * 0.5 / 3),
    ([1.0, 0.0], 2, 1.0),
])
def test_main_bound(gammas, k, expected):
    assert main_bound(gammas, k) == pytest.approx(expected)


def test_main_bound_complete_graph():
    """The bound is attained on the complete graph on four vertices."""
    assert main_bound([-1 / 3], 1) == pytest.approx(1 / 3)


def test_main_bound_errors():
    with pytest.raises(LevelOutOfRange):
        main_bound([0.1], 2)
    with pytest.raises(LevelOutOfRange):
        gap_profile_bound([], -1)


def test_gap_profile_bound():
    assert gap_profile_bound([0.5, 0.5], 2) == pytest.approx(1 - 0.25 / 3)


@pytest.mark.parametrize('gammas, k, r, expected', [
    ([0.0, 0.0], 1, -1, 2 / 3),
    ([0.5, 0.5], 1, -1, 1 - 0.25 / 3),
    ([0.5, 0.5], 1, 0, 1 - 0.5 / 3),
    ([0.5, 0.5], 1, 1, 1 - 1 / 3),
])
def test_eigencount_threshold(gammas, k, r, expected):
    assert eigencount_threshold(gammas, k, r) == pytest.approx(expected)


def test_eigencount_threshold_errors():
    with pytest.raises(LevelOutOfRange):
        eigencount_threshold([0.0, 0.0], 1, 2)
    with pytest.raises(LevelOutOfRange):
        eigencount_threshold([0.0], 1, -1)


def test_oppenheim_step_bound():
    assert oppenheim_step_bound(0.25) == pytest.approx(1 / 3)
    assert oppenheim_step_bound(-1 / 4) == pytest.approx(-1 / 5)
    with pytest.raises(DenominatorNonpositive):
        oppenheim_step_bound(1.0)


@pytest.mark.parametrize('d, j', [(4, -1), (4, 0), (4, 1), (4, 2), (6, 3)])
def test_trickle_down_from_top(d, j):
    """With gamma 1/(d+1) at the top, level j is bounded by 1/(j+3)."""
    assert trickle_down_bound(1 / (d + 1), d, j) == pytest.approx(1 / (j + 3))


def test_trickle_down_denominator():
    assert trickle_down_bound(0.5, 4, -1) == math.inf
    with pytest.raises(DenominatorNonpositive):
        trickle_down_bound(0.5, 4, -1, strict=True)
    with pytest.raises(LevelOutOfRange):
        trickle_down_bound(0.1, 4, 3)


def test_main_cooked_bound():
    assert main_cooked_bound(0) == 0
    assert main_cooked_bound(2) == pytest.approx(8 / 9)
    with pytest.raises(LevelOutOfRange):
        main_cooked_bound(-1)


def test_long_walk_bounds():
    assert long_walk_bound(0.0, 0, 2) == pytest.approx(1 / 3)
    assert long_walk_bound(0.1, 1, 3) == pytest.approx(1.21 * 2 / 4)
    assert long_walk_exponential_bound(0.0, 0, 1) == pytest.approx(0.5)
    with pytest.raises(LevelOutOfRange):
        long_walk_bound(0.0, 2, 2)
    with pytest.raises(LevelOutOfRange):
        long_walk_exponential_bound(0.1, 3, 1)


def test_long_walk_exponential_dominates():
    eps, a, b = 0.3, 1, 4
    gamma = eps / (b - a)
    assert long_walk_bound(gamma, a, b) <= long_walk_exponential_bound(
        eps, a, b)


def test_comparison_bound():
    assert comparison_bound(0.0, 2) == pytest.approx(2 / 3)
    assert comparison_bound(-0.5, 2) == pytest.approx(2 / 3)
    assert comparison_bound(0.1, 2) == pytest.approx(2 / 3 + 0.1)
    assert comparison_bound(0.1, 2) >= main_bound([0.1, 0.1], 2)


def test_mixing_time_budget():
    assert mixing_time_budget(0.5, 0.01, 0.01) == 19
    assert mixing_time_budget(0.0, 1.0, 0.5) == 1


@pytest.mark.parametrize('sigma2, pi_min, eps, error', [
    (1.0, 0.1, 0.1, GapZero),
    (1.5, 0.1, 0.1, GapZero),
    (-0.1, 0.1, 0.1, ValueError),
    (0.5, 0.0, 0.1, ValueError),
    (0.5, 0.1, 1.0, ValueError),
])
def test_mixing_time_budget_errors(sigma2, pi_min, eps, error):
    with pytest.raises(error):
        mixing_time_budget(sigma2, pi_min, eps)


def test_sampling_budget():
    k, n, eps = 2, 36, 0.05
    expected = math.ceil(4 * (math.log(20) + 2 * math.log(36)))
    assert sampling_budget(k, n, eps) == expected
    # Agrees with the spectral budget at sigma2 = 1 - 1/k^2, pi_min = n^-k
    assert sampling_budget(k, n, eps) == mixing_time_budget(
        1 - 1 / k**2, n**-k, eps)
    with pytest.raises(ValueError):
        sampling_budget(0, 10, 0.1)
