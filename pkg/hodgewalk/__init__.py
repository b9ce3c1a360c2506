"""Hodgewalk package."""
from ._version import __version__
from .complex import LinkGraph, WeightedComplex, build_complex, link, link_graph
from .constants import TOLERANCES
from .operators import GarlandTerms, WeightedOperator, garland_terms
from .report import RunReport, SpectralReport, verify
from .sampler import (ChainState, ChainTrace, IndependentSetTarget,
                      MatroidTarget, SamplerConfig, down_up_step,
                      exact_enumeration, run_chain, run_chains, tv_distance)
from .spectral import CheckResult, GammaProfile, gamma_profile

__all__ = [
    '__version__',
    'TOLERANCES',
    'WeightedComplex',
    'LinkGraph',
    'build_complex',
    'link',
    'link_graph',
    'WeightedOperator',
    'GarlandTerms',
    'garland_terms',
    'GammaProfile',
    'gamma_profile',
    'CheckResult',
    'SpectralReport',
    'RunReport',
    'verify',
    'IndependentSetTarget',
    'MatroidTarget',
    'ChainState',
    'ChainTrace',
    'SamplerConfig',
    'down_up_step',
    'run_chain',
    'run_chains',
    'exact_enumeration',
    'tv_distance',
]
