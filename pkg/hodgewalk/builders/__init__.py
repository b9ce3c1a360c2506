from .enumerate import enumerate_faces, purity_witness
from .graphs import (adjacency_spectrum, independent_set_complex,
                     independent_set_faces, is_link_checks,
                     is_sampling_condition, is_theorem_check)
from .matroids import (BipartiteLinkStructure, PartitionMatroid,
                       common_independent_faces, grid_matroids,
                       line_graph_min_eig_check, matroid_intersection_complex,
                       max_common_independent_size, mi_link_checks,
                       mi_theorem_check, shares_block_pair,
                       top_link_structure)

__all__ = [
    'enumerate_faces',
    'purity_witness',
    'independent_set_faces',
    'independent_set_complex',
    'adjacency_spectrum',
    'is_sampling_condition',
    'is_link_checks',
    'is_theorem_check',
    'PartitionMatroid',
    'BipartiteLinkStructure',
    'grid_matroids',
    'shares_block_pair',
    'common_independent_faces',
    'max_common_independent_size',
    'matroid_intersection_complex',
    'top_link_structure',
    'line_graph_min_eig_check',
    'mi_link_checks',
    'mi_theorem_check',
]
