"""Test the operator identity checks."""
import numpy as np
import pytest
from hypothesis import given, settings

from hodgewalk.spectral import (IDENTITY_CHECKS, garland_check, psd_check,
                                spectrum_equality_check)
from hodgewalk.spectral.identities import (invariants_check,
                                           nonzero_spectrum,
                                           stochastic_check)

from ..conftest import complete_complex
from ..strategies import st_complexes


def test_garland(weighted_complex):
    for j in range(1, 3):
        result = garland_check(weighted_complex, j)
        assert result.passed
        assert result.detail['functions'] == 11


def test_spectrum_equality(two_triangles):
    for j in range(-1, 2):
        assert spectrum_equality_check(two_triangles, j).passed


def test_nonzero_spectrum():
    walk = complete_complex(4, 1)['down_up', 1]
    np.testing.assert_allclose(nonzero_spectrum(walk), [1, 1 / 3, 1 / 3, 1 / 3],
                               atol=1e-12)


def test_psd(weighted_complex):
    assert psd_check(weighted_complex, 1, 'down_up').passed
    result = psd_check(weighted_complex, 0, 'long_up_down', 2)
    assert result.passed
    assert result.arguments == {'level': 0, 'kind': 'long_up_down',
                                'through': 2}


def test_nonlazy_walk_is_not_psd(disconnected_edges):
    result = psd_check(disconnected_edges, 0, 'nonlazy_up_down')
    assert not result.passed
    assert result.value == pytest.approx(-1)


def test_stochastic_and_invariants(weighted_complex):
    result = stochastic_check(weighted_complex, 0, 'nonlazy_up_down')
    assert result.passed
    assert set(result.detail) == {'row_sum', 'self_adjointness',
                                  'stationarity'}
    assert invariants_check(weighted_complex).passed


@given(st_complexes(max_dimension=2, max_vertices=6))
@settings(deadline=None, max_examples=20)
def test_identities_hold(X):
    for cls in IDENTITY_CHECKS:
        check = cls()
        for args in check.arguments(X):
            result = check(X, *args)
            assert result.passed, result
