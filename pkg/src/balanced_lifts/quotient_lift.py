"""Quotient graphs of balanced partitions and symmetric lifts of quotients."""

# Standard Python Libraries
from collections.abc import Sequence
from fractions import Fraction
import logging
from math import gcd, lcm
from typing import Optional

# Third-Party Libraries
import networkx as nx
import numpy as np

from .balanced import (
    DEFAULT_MAX_VERTICES,
    enumerate_balanced,
    first_unbalanced_pair,
    signature_matrix,
)
from .errors import (
    GuardExceededError,
    LiftError,
    NotSymmetricError,
    SizeMismatchError,
    UnbalancedPartitionError,
)
from .graph_core import (
    is_combinatorially_symmetric,
    is_connected,
    is_regular,
    is_symmetric_graph,
    support_graph,
)
from .models import DiGraph, LiftCheck, LiftWitness, Partition, QuotientResult, SymmetryCheck

logger = logging.getLogger(__name__)


def quotient(g: DiGraph, p: Partition) -> QuotientResult:
    """Return the quotient graph of g by a balanced partition.

    Entry ``(I, J)`` counts the edges from class J into any one vertex of
    class I. Classes keep the canonical order of p, by smallest vertex.

    Raises
    ------
    SizeMismatchError
        If p is not a partition of g's vertices.
    UnbalancedPartitionError
        If p is not balanced; the error carries the offending pair.

    """
    if p.n != g.n:
        raise SizeMismatchError(f"Partition on {p.n} vertices, graph on {g.n}")
    pair = first_unbalanced_pair(g, p)
    if pair is not None:
        raise UnbalancedPartitionError(
            f"Partition {p} is not balanced: vertices {pair[0]} and {pair[1]} "
            "receive different class counts",
            pair=pair,
        )
    rows = signature_matrix(g, p)[list(p.representatives)]
    return QuotientResult(
        quotient=DiGraph.from_matrix(rows),
        class_sizes=p.sizes,
        partition=p,
        source_n=g.n,
    )


def quotient_is_symmetric(g: DiGraph, p: Partition) -> SymmetryCheck:
    """Decide whether the quotient of a symmetric graph is symmetric.

    That happens exactly when connected quotient vertices have classes of
    equal size. A failing check names the first such pair, 1-based.
    """
    if not is_symmetric_graph(g):
        raise NotSymmetricError("Quotient symmetry is only decided for symmetric graphs")
    result = quotient(g, p)
    q, k = result.quotient, result.class_sizes
    witness = next(
        (
            (i + 1, j + 1)
            for i in range(q.n)
            for j in range(i + 1, q.n)
            if q.adj[i][j] and k[i] != k[j]
        ),
        None,
    )
    return SymmetryCheck(symmetric=witness is None, class_sizes=k, witness=witness)


def symmetric_lift_k_vector(
    q: DiGraph, max_k: Optional[int] = None
) -> Optional[tuple[int, ...]]:
    """Return the smallest class sizes of a symmetric lift of q, if any.

    The sizes have to satisfy ``k_i q_ij = k_j q_ji``. Ratios are propagated
    through each connected component with exact fractions, then every
    component is scaled to its smallest positive integer solution.

    Raises
    ------
    GuardExceededError
        If a class size would exceed max_k.

    """
    if not is_combinatorially_symmetric(q):
        logger.debug("Quotient is not combinatorially symmetric, no symmetric lift")
        return None
    support = support_graph(q)
    k: list[int] = [0] * q.n
    for component in nx.connected_components(support):
        root = min(component)
        ratio = {root: Fraction(1)}
        for i, j in nx.bfs_edges(support, root):
            ratio[j] = ratio[i] * q.adj[i][j] / q.adj[j][i]
        for i in component:
            for j in support.neighbors(i):
                if i != j and ratio[i] * q.adj[i][j] != ratio[j] * q.adj[j][i]:
                    logger.debug(f"Inconsistent ratios around vertices {i + 1}, {j + 1}")
                    return None
        scale = lcm(*(r.denominator for r in ratio.values()))
        values = {v: int(r * scale) for v, r in ratio.items()}
        common = gcd(*values.values())
        for v, value in values.items():
            k[v] = value // common
    if max_k is not None and max(k) > max_k:
        raise GuardExceededError(f"Class size {max(k)} exceeds the limit {max_k}")
    return tuple(k)


def constant_sum_block(rows: int, cols: int, row_sum: int, col_sum: int) -> np.ndarray:
    """Return a rows×cols non-negative integer matrix with constant margins.

    Row a puts its units into columns ``a·row_sum, a·row_sum + 1, ...``
    modulo cols, so the units are dealt out cyclically and every column gets
    the same number. The result is 0/1 whenever ``row_sum <= cols``.

    Raises
    ------
    LiftError
        If ``rows·row_sum != cols·col_sum`` or a margin is negative.

    """
    if rows < 1 or cols < 1:
        raise LiftError(f"Block must have positive size, got {rows}x{cols}")
    if row_sum < 0 or col_sum < 0:
        raise LiftError(f"Negative margins {row_sum}, {col_sum}")
    if rows * row_sum != cols * col_sum:
        raise LiftError(
            f"Margins are inconsistent: {rows}*{row_sum} != {cols}*{col_sum}"
        )
    block = np.zeros((rows, cols), dtype=np.int64)
    for a in range(rows):
        for c in range(row_sum):
            block[a, (a * row_sum + c) % cols] += 1
    return block


def symmetric_circulant(size: int, row_sum: int, allow_multi: bool = True) -> np.ndarray:
    """Return a symmetric circulant matrix with constant row sum.

    Offsets ``±d`` are used in pairs for d = 1, 2, ..., then the offset
    ``size/2`` when size is even, and whatever is left goes on the diagonal.
    Without allow_multi the diagonal may carry at most one loop per vertex.

    Raises
    ------
    LiftError
        If a 0/1 matrix is requested but row_sum is too large for it.

    """
    if size < 1 or row_sum < 0:
        raise LiftError(f"Cannot build a {size}x{size} block with row sum {row_sum}")
    offsets: list[int] = []
    remaining = row_sum
    d = 1
    while d < size - d and remaining >= 2:
        offsets.extend((d, size - d))
        remaining -= 2
        d += 1
    if remaining and size % 2 == 0 and size > 1:
        offsets.append(size // 2)
        remaining -= 1
    if remaining > 1 and not allow_multi:
        raise LiftError(f"No 0/1 symmetric {size}x{size} block has row sum {row_sum}")
    block = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        block[a, a] = remaining
        for offset in offsets:
            block[a, (a + offset) % size] += 1
    return block


def lift_vertex_count(k: Sequence[int]) -> int:
    """Number of vertices of a lift with class sizes k."""
    return int(sum(k))


def _check_k(q: DiGraph, k: Sequence[int]) -> tuple[int, ...]:
    k = tuple(int(v) for v in k)
    if len(k) != q.n:
        raise SizeMismatchError(f"Got {len(k)} class sizes for a {q.n}-vertex quotient")
    if any(v < 1 for v in k):
        raise LiftError(f"Class sizes must be positive, got {k}")
    for i in range(q.n):
        for j in range(i + 1, q.n):
            if k[i] * q.adj[i][j] != k[j] * q.adj[j][i]:
                raise LiftError(
                    f"Class sizes {k} violate k_{i + 1} q_{i + 1}{j + 1} = "
                    f"k_{j + 1} q_{j + 1}{i + 1}"
                )
    return k


def _assemble(q: DiGraph, k: tuple[int, ...], allow_multi: bool) -> LiftWitness:
    starts = np.concatenate(([0], np.cumsum(k)))
    n = int(starts[-1])
    matrix = np.zeros((n, n), dtype=np.int64)
    for i in range(q.n):
        rows = slice(starts[i], starts[i + 1])
        matrix[rows, rows] = symmetric_circulant(k[i], q.adj[i][i], allow_multi)
        for j in range(i + 1, q.n):
            cols = slice(starts[j], starts[j + 1])
            block = constant_sum_block(k[i], k[j], q.adj[i][j], q.adj[j][i])
            matrix[rows, cols] = block
            matrix[cols, rows] = block.T
            logger.debug(f"Block {i + 1},{j + 1}: {k[i]}x{k[j]}, sum {q.adj[i][j]}")
    lift = DiGraph.from_matrix(matrix)
    partition = Partition.from_labels([i for i in range(q.n) for _ in range(k[i])])
    check = quotient(lift, partition)
    if check.quotient != q:
        raise LiftError(f"Constructed lift folds onto {check.quotient.adj}, not {q.adj}")
    logger.info(f"Built a {n}-vertex symmetric lift with class sizes {k}")
    return LiftWitness(lift=lift, partition=partition, quotient_check=check)


def build_symmetric_lift(q: DiGraph, k: Optional[Sequence[int]] = None) -> LiftWitness:
    """Construct a symmetric graph whose quotient by consecutive classes is q.

    Off-diagonal blocks come from :func:`constant_sum_block` and their
    transposes, diagonal blocks are symmetric circulants. Without k the
    smallest feasible class sizes are used.

    Raises
    ------
    LiftError
        If k is not compatible with q, or q has no symmetric lift.

    """
    if k is None:
        k = symmetric_lift_k_vector(q)
        if k is None:
            raise LiftError("Quotient has no symmetric lift")
    return _assemble(q, _check_k(q, k), allow_multi=True)


def build_simple_symmetric_lift(q: DiGraph, r: int) -> LiftWitness:
    """Construct a symmetric lift without multiple edges and with r·m vertices.

    Every class has r vertices. Diagonal entries are at most 1, so a vertex
    may carry a single loop.

    Raises
    ------
    NotSymmetricError
        If q is not symmetric.
    LiftError
        If q is disconnected or r is smaller than the largest entry of q.

    """
    if not is_symmetric_graph(q):
        raise NotSymmetricError("Simple lifts are built from symmetric quotients only")
    if not is_connected(q):
        raise LiftError("Simple lifts are built from connected quotients only")
    largest = int(q.matrix.max())
    if r < max(largest, 1):
        raise LiftError(
            f"A lift without multiple edges needs r >= {largest}, got r={r}"
        )
    return _assemble(q, (r,) * q.n, allow_multi=False)


def verify_lift(g: DiGraph, p: Partition, q: DiGraph) -> LiftCheck:
    """Check that p is balanced on g and that the quotient is exactly q."""
    if p.n != g.n:
        return LiftCheck(ok=False, message=f"Partition has {p.n} vertices, graph {g.n}")
    pair = first_unbalanced_pair(g, p)
    if pair is not None:
        return LiftCheck(
            ok=False,
            message=f"Partition is not balanced at vertices {pair[0]} and {pair[1]}",
            discrepancy=pair,
        )
    found = quotient(g, p).quotient
    if found.n != q.n:
        return LiftCheck(
            ok=False, message=f"Quotient has {found.n} vertices, expected {q.n}"
        )
    for i in range(q.n):
        for j in range(q.n):
            if found.adj[i][j] != q.adj[i][j]:
                return LiftCheck(
                    ok=False,
                    message=(
                        f"Quotient entry ({i + 1},{j + 1}) is {found.adj[i][j]}, "
                        f"expected {q.adj[i][j]}"
                    ),
                    discrepancy=(i + 1, j + 1),
                )
    return LiftCheck(ok=True, message="Graph is a lift of the quotient")


def left_eigenvector_check(q: DiGraph, k: Sequence[int]) -> bool:
    """Check that k is a left eigenvector of a regular quotient for its valency.

    Raises
    ------
    ValueError
        If q is not regular.

    """
    valency = is_regular(q)
    if valency is None:
        raise ValueError("Left eigenvector property applies to regular quotients")
    k_vector = np.asarray(k, dtype=np.int64)
    return bool(np.array_equal(k_vector @ q.matrix, valency * k_vector))


def symmetric_quotients(
    g: DiGraph, max_n: int = DEFAULT_MAX_VERTICES, workers: int = 1
) -> list[QuotientResult]:
    """Return the quotients of g that are symmetric, one per balanced partition.

    These are the synchrony subspaces on which gradient and Hamiltonian
    structure carries over to the quotient.
    """
    if not is_symmetric_graph(g):
        raise NotSymmetricError("Symmetric quotients are only searched on symmetric graphs")
    found = [
        quotient(g, p)
        for p in enumerate_balanced(g, max_n=max_n, workers=workers)
        if quotient_is_symmetric(g, p)
    ]
    logger.info(f"Found {len(found)} symmetric quotients")
    return found
