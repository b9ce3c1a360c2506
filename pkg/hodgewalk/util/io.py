"""Methods for reading and writing complexes, graphs, matroids and matrices."""
import hashlib
import json
import logging

import networkx as nx
import numpy as np

from ..complex import build_complex
from ..exceptions import EmptyInput, ParseError

logger = logging.getLogger(__name__)


def _not_text(error, filename):
    return ParseError("Not UTF-8 text ({})".format(error.reason), filename)


def _lines(filename):
    """Yield numbered, stripped lines that are neither blank nor comments."""
    with open(filename, encoding='utf-8') as file:
        try:
            for lineno, line in enumerate(file, start=1):
                line = line.strip()
                if line and not line.startswith('#'):
                    yield lineno, line.split()
        except UnicodeDecodeError as error:
            raise _not_text(error, filename)


def _vertex(token, filename, lineno):
    try:
        vertex = int(token)
    except ValueError:
        raise ParseError("Invalid vertex {!r}".format(token), filename,
                         lineno)
    if vertex < 0:
        raise ParseError("Negative vertex {}".format(vertex), filename,
                         lineno)
    return vertex


def read_facets(filename):
    """
    Read a facet file.

    Each line reads ``f <weight> <v1> <v2> ...``, where the weight may be
    omitted. A weight is recognised by not being an integer literal, so
    write ``2.0`` rather than ``2`` for an integral weight.

    Parameters
    ----------
    filename: str
        The file to read

    Returns
    -------
    facets: list[tuple[int]]
        The facets in file order
    weights: list[float]
        The facet weights, 1.0 where omitted

    Raises
    ------
    ParseError
        With the line number of a malformed line
    EmptyInput
        If the file contains no facets
    """
    logger.info("Reading facets from %s", filename)
    facets, weights = [], []
    for lineno, tokens in _lines(filename):
        if tokens[0] != 'f':
            raise ParseError(
                "Expected a line starting with 'f', got {!r}".format(
                    tokens[0]), filename, lineno)
        tokens = tokens[1:]
        weight = 1.0
        if tokens:
            try:
                int(tokens[0])
            except ValueError:
                try:
                    weight = float(tokens[0])
                except ValueError:
                    raise ParseError(
                        "Invalid weight {!r}".format(tokens[0]), filename,
                        lineno)
                tokens = tokens[1:]
        if not tokens:
            raise ParseError("Facet without vertices", filename, lineno)
        face = [_vertex(token, filename, lineno) for token in tokens]
        if len(set(face)) != len(face):
            raise ParseError("Repeated vertex in facet {}".format(face),
                             filename, lineno)
        facets.append(tuple(sorted(face)))
        weights.append(weight)
    if not facets:
        raise EmptyInput("No facets in {}".format(filename))
    return facets, weights


def write_facets(filename, facets, weights=None):
    """
    Write a facet file readable by :func:`read_facets`.

    Weights are written with full precision; they are omitted when None.
    """
    logger.info("Writing %s facets to %s", len(facets), filename)
    with open(filename, 'w', encoding='utf-8') as file:
        for i, face in enumerate(facets):
            vertices = ' '.join(str(v) for v in face)
            if weights is None:
                file.write('f {}\n'.format(vertices))
            else:
                file.write('f {!r} {}\n'.format(float(weights[i]), vertices))


def read_complex(filename, cap=None):
    """
    Build the weighted complex described by a facet file.

    Parameters
    ----------
    filename: str
        The facet file
    cap: int, optional
        Dense operator cap of the complex

    Returns
    -------
    hodgewalk.complex.WeightedComplex
    """
    facets, weights = read_facets(filename)
    return build_complex(facets, weights, cap=cap)


def read_graph(filename):
    """
    Read a graph file.

    The file starts with a header ``n <count>`` followed by edge lines
    ``e <u> <v>``. The vertices are ``0, ..., count - 1``.

    Returns
    -------
    networkx.Graph

    Raises
    ------
    ParseError
        On a malformed line, a loop, a repeated edge or a vertex out of
        range
    """
    logger.info("Reading graph from %s", filename)
    graph = None
    for lineno, tokens in _lines(filename):
        if graph is None:
            if tokens[0] != 'n' or len(tokens) != 2:
                raise ParseError("Expected header 'n <count>'", filename,
                                 lineno)
            graph = nx.Graph()
            graph.add_nodes_from(range(_vertex(tokens[1], filename, lineno)))
            continue
        if tokens[0] != 'e' or len(tokens) != 3:
            raise ParseError("Expected an edge 'e <u> <v>'", filename,
                             lineno)
        u, v = (_vertex(token, filename, lineno) for token in tokens[1:])
        if u == v:
            raise ParseError("Loop at vertex {}".format(u), filename, lineno)
        if u not in graph or v not in graph:
            raise ParseError(
                "Edge {} {} outside vertices 0, ..., {}".format(
                    u, v,
                    len(graph) - 1), filename, lineno)
        if graph.has_edge(u, v):
            raise ParseError("Repeated edge {} {}".format(u, v), filename,
                             lineno)
        graph.add_edge(u, v)
    if graph is None:
        raise EmptyInput("No graph in {}".format(filename))
    return graph


def write_graph(filename, graph):
    """Write a graph on the vertices ``0, ..., n - 1`` as a graph file."""
    n = graph.number_of_nodes()
    if set(graph.nodes) != set(range(n)):
        raise ValueError("Graph files need vertices 0, ..., {}".format(n - 1))
    logger.info("Writing graph with %s vertices to %s", n, filename)
    with open(filename, 'w', encoding='utf-8') as file:
        file.write('n {}\n'.format(n))
        for u, v in sorted(tuple(sorted(edge)) for edge in graph.edges):
            file.write('e {} {}\n'.format(u, v))


def read_matroid_data(filename):
    """
    Read the blocks and capacities of a partition matroid from JSON.

    The document reads ``{"blocks": [[...], ...], "caps": [...]}``.

    Returns
    -------
    blocks: list[list[int]]
    caps: list[int]
    """
    logger.info("Reading partition matroid from %s", filename)
    with open(filename, encoding='utf-8') as file:
        try:
            data = json.load(file)
        except json.JSONDecodeError as error:
            raise ParseError(error.msg, filename, error.lineno)
        except UnicodeDecodeError as error:
            raise _not_text(error, filename)
    if not isinstance(data, dict) or set(data) != {'blocks', 'caps'}:
        raise ParseError("Expected an object with keys 'blocks' and 'caps'",
                         filename)
    blocks, caps = data['blocks'], data['caps']
    if not isinstance(blocks, list) or not all(
            isinstance(block, list) for block in blocks):
        raise ParseError("'blocks' must be a list of lists", filename)
    if not isinstance(caps, list) or len(caps) != len(blocks):
        raise ParseError("'caps' must be a list with one entry per block",
                         filename)
    for value in [x for block in blocks for x in block] + caps:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError("Expected integers, got {!r}".format(value),
                             filename)
    return blocks, caps


def write_matroid_data(filename, blocks, caps):
    """Write the blocks and capacities of a partition matroid as JSON."""
    with open(filename, 'w', encoding='utf-8') as file:
        json.dump({
            'blocks': [[int(x) for x in block] for block in blocks],
            'caps': [int(cap) for cap in caps]
        },
                  file,
                  indent=2)
        file.write('\n')


def write_matrix(filename, matrix):
    """
    Write a dense matrix as text.

    The first line holds ``rows cols``, followed by one row per line with
    17 significant digits per entry.
    """
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
    rows, cols = matrix.shape
    np.savetxt(filename,
               matrix,
               fmt='%.17g',
               header='{} {}'.format(rows, cols),
               comments='')


def read_matrix(filename):
    """Read a matrix written by :func:`write_matrix`."""
    with open(filename, encoding='utf-8') as file:
        header = file.readline().split()
        try:
            rows, cols = (int(token) for token in header)
        except ValueError:
            raise ParseError("Expected header 'rows cols'", filename, 1)
        try:
            matrix = np.loadtxt(file, dtype=np.float64, ndmin=2)
        except ValueError as error:
            raise ParseError(str(error), filename)
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols))
    if matrix.shape != (rows, cols):
        raise ParseError(
            "Header announces {} x {}, found {} x {}".format(
                rows, cols, *matrix.shape), filename, 1)
    return matrix


def digest(filenames):
    """
    A SHA-256 digest of the contents of the given files, in order.

    Returns
    -------
    dict
        Maps each filename to the hexadecimal digest of its content
    """
    digests = {}
    for filename in filenames:
        hasher = hashlib.sha256()
        with open(filename, 'rb') as file:
            for chunk in iter(lambda: file.read(65536), b''):
                hasher.update(chunk)
        digests[str(filename)] = hasher.hexdigest()
    return digests
