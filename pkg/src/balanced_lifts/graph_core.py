"""Structural operations on directed multigraphs.

Vertices are 0-based inside the library. Edge lists and every file format use
1-based vertices, matching the way the graphs are drawn and numbered.
"""

# Standard Python Libraries
from collections.abc import Iterable
import logging
from typing import Optional

# Third-Party Libraries
import networkx as nx
import numpy as np

from .errors import SizeMismatchError
from .models import DiGraph, Partition

logger = logging.getLogger(__name__)

Edge = tuple[int, int, int]


def from_edge_list(n: int, edges: Iterable[Iterable[int]]) -> DiGraph:
    """Build a graph from 1-based ``(src, dst, multiplicity)`` triples.

    Repeated ``(src, dst)`` pairs accumulate their multiplicities.

    Raises
    ------
    SizeMismatchError
        If a vertex index is outside 1..n.
    ValueError
        If a multiplicity is not positive.

    """
    if n < 1:
        raise ValueError(f"A graph needs at least one vertex, got n={n}")
    adj = np.zeros((n, n), dtype=np.int64)
    for edge in edges:
        src, dst, mult = (int(v) for v in edge)
        for vertex in (src, dst):
            if not 1 <= vertex <= n:
                raise SizeMismatchError(f"Vertex {vertex} out of range 1..{n}")
        if mult < 1:
            raise ValueError(f"Edge {src}->{dst} has non-positive multiplicity {mult}")
        adj[dst - 1, src - 1] += mult
    return DiGraph(n=n, adj=adj)


def to_edge_list(g: DiGraph) -> list[Edge]:
    """Return the 1-based edge list, sorted by source then target."""
    return [
        (src + 1, dst + 1, g.adj[dst][src])
        for src in range(g.n)
        for dst in range(g.n)
        if g.adj[dst][src]
    ]


def transpose(g: DiGraph) -> DiGraph:
    """Return the graph with all edges reversed."""
    return g.transpose()


def is_symmetric_graph(g: DiGraph) -> bool:
    """Check whether every edge has its reverse with the same multiplicity."""
    matrix = g.matrix
    return bool(np.array_equal(matrix, matrix.T))


def is_combinatorially_symmetric(g: DiGraph) -> bool:
    """Check whether the zero pattern of the adjacency matrix is symmetric."""
    support = g.matrix != 0
    return bool(np.array_equal(support, support.T))


def valency(g: DiGraph, v: int) -> int:
    """Return the number of edges directed into vertex v (0-based)."""
    if not 0 <= v < g.n:
        raise SizeMismatchError(f"Vertex {v + 1} out of range 1..{g.n}")
    return int(sum(g.adj[v]))


def valencies(g: DiGraph) -> tuple[int, ...]:
    """Return the valency of every vertex."""
    return tuple(int(sum(row)) for row in g.adj)


def is_regular(g: DiGraph) -> Optional[int]:
    """Return the common valency if all vertices share one, else None.

    An edgeless graph is regular of valency 0, which is falsy: test the
    result with ``is None``.
    """
    values = set(valencies(g))
    if len(values) == 1:
        return values.pop()
    return None


def valency_partition(g: DiGraph) -> Partition:
    """Group vertices by valency.

    Every balanced partition refines this one.
    """
    return Partition.from_labels(valencies(g))


def support_graph(g: DiGraph) -> nx.Graph:
    """Return the undirected support graph, ignoring multiplicities."""
    support = nx.Graph()
    support.add_nodes_from(range(g.n))
    for i in range(g.n):
        for j in range(i, g.n):
            if g.adj[i][j] or g.adj[j][i]:
                support.add_edge(i, j)
    return support


def has_loops(g: DiGraph) -> bool:
    """Check whether any vertex has an edge to itself."""
    return any(g.adj[v][v] for v in range(g.n))


def is_connected(g: DiGraph) -> bool:
    """Check whether the undirected support graph is connected."""
    return bool(nx.is_connected(support_graph(g)))


def is_bipartite(g: DiGraph) -> Optional[Partition]:
    """Return a 2-coloring of the support graph, or None if there is none.

    A loop is an odd cycle, so graphs with loops are never bipartite. A graph
    without edges gets the one-class coloring.
    """
    if has_loops(g):
        logger.debug("Graph has loops, not bipartite")
        return None
    support = support_graph(g)
    try:
        colors = nx.bipartite.color(support)
    except nx.NetworkXError:
        return None
    return Partition.from_labels([colors[v] for v in range(g.n)])


def bipartite_valency_clash(g: DiGraph, sides: Partition) -> bool:
    """Check whether some vertex of one side has the valency of one of the other."""
    if sides.m < 2:
        return False
    degree = valencies(g)
    first, second = sides.classes[0], sides.classes[1]
    return bool({degree[v] for v in first} & {degree[v] for v in second})


def requires_symmetric_coupling(g: DiGraph) -> bool:
    """Check whether a pairwise potential on g must be swap invariant.

    That is the case unless the graph is bipartite with no valency shared
    across the two sides.
    """
    sides = is_bipartite(g)
    return sides is None or bipartite_valency_clash(g, sides)
