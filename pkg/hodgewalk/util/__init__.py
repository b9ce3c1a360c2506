from .io import (digest, read_complex, read_facets, read_graph, read_matrix,
                 read_matroid_data, write_facets, write_graph, write_matrix,
                 write_matroid_data)

__all__ = [
    'read_facets',
    'write_facets',
    'read_complex',
    'read_graph',
    'write_graph',
    'read_matroid_data',
    'write_matroid_data',
    'read_matrix',
    'write_matrix',
    'digest',
]
