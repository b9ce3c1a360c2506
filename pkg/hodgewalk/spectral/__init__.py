from .bounds import (comparison_bound, eigencount_threshold, gap_profile_bound,
                     long_walk_bound, long_walk_exponential_bound, main_bound,
                     main_cooked_bound, mixing_time_budget,
                     oppenheim_step_bound, sampling_budget,
                     trickle_down_bound)
from .check import Check, CheckResult, CheckSet
from .conductance import (Cheeger, NonExpansion, StarConductance,
                          cheeger_check, conductance, min_conductance,
                          nonexp_check, star_conductance_check, star_sets)
from .identities import (Adjointness, BipartiteSquare, Garland, Invariants,
                         PositiveSemidefinite, SpectrumEquality, Stochastic,
                         garland_check, psd_check, spectrum_equality_check)
from .spectrum import (GammaProfile, gamma_profile, link_second_eigenvalue,
                       second_eigenvalue, second_singular_value,
                       symmetric_spectrum, weighted_spectrum)
from .theorems import (Comparison, EigenCount, Gallery, LongWalk,
                       LongWalkProduct, MainBound, MainCooked, TrickleChain,
                       TrickleStep, UpDownRelation, check_comparison,
                       check_main, check_updownrel, eigencount_check,
                       gallery_check, long_walk_bound_check,
                       long_walk_product_check, main_cooked_check,
                       oppenheim_step_check, trickle_down_chain,
                       updownrel_certificate)

# Change the module for base classes so sphinx can find them.
Check.__module__ = __name__
CheckResult.__module__ = __name__

THEOREM_CHECKS = (
    MainBound,
    EigenCount,
    UpDownRelation,
    TrickleStep,
    TrickleChain,
    MainCooked,
    LongWalk,
    LongWalkProduct,
    Comparison,
    Gallery,
    Cheeger,
    NonExpansion,
    StarConductance,
)
"""Checks of eigenvalue bounds, run by ``hodgewalk spectrum``."""

IDENTITY_CHECKS = (
    Invariants,
    Stochastic,
    Adjointness,
    BipartiteSquare,
    SpectrumEquality,
    PositiveSemidefinite,
    Garland,
)
"""Checks of exact operator identities, added by ``hodgewalk verify all``."""


def default_checks(identities=False, eps=None):
    """
    The checks run by the command line tool.

    Parameters
    ----------
    identities: bool
        Also include the operator identity checks
    eps: float, optional
        Target passed to the exponential long walk variant

    Returns
    -------
    CheckSet
    """
    checks = CheckSet()
    for check in THEOREM_CHECKS:
        checks.add(LongWalk(eps=eps) if check is LongWalk else check())
    if identities:
        for check in IDENTITY_CHECKS:
            checks.add(check())
    return checks


__all__ = [
    'Check',
    'CheckResult',
    'CheckSet',
    'GammaProfile',
    'THEOREM_CHECKS',
    'IDENTITY_CHECKS',
    'default_checks',
    'weighted_spectrum',
    'symmetric_spectrum',
    'second_eigenvalue',
    'second_singular_value',
    'link_second_eigenvalue',
    'gamma_profile',
    'gap_profile_bound',
    'main_bound',
    'eigencount_threshold',
    'oppenheim_step_bound',
    'trickle_down_bound',
    'main_cooked_bound',
    'long_walk_bound',
    'long_walk_exponential_bound',
    'comparison_bound',
    'mixing_time_budget',
    'sampling_budget',
    'check_main',
    'eigencount_check',
    'updownrel_certificate',
    'check_updownrel',
    'oppenheim_step_check',
    'trickle_down_chain',
    'main_cooked_check',
    'long_walk_bound_check',
    'long_walk_product_check',
    'check_comparison',
    'gallery_check',
    'conductance',
    'min_conductance',
    'star_sets',
    'cheeger_check',
    'nonexp_check',
    'star_conductance_check',
    'garland_check',
    'spectrum_equality_check',
    'psd_check',
    'MainBound',
    'EigenCount',
    'UpDownRelation',
    'TrickleStep',
    'TrickleChain',
    'MainCooked',
    'LongWalk',
    'LongWalkProduct',
    'Comparison',
    'Gallery',
    'Cheeger',
    'NonExpansion',
    'StarConductance',
    'Invariants',
    'Stochastic',
    'Adjointness',
    'BipartiteSquare',
    'SpectrumEquality',
    'PositiveSemidefinite',
    'Garland',
]
