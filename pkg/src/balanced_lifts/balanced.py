"""Balanced partitions: decision, refinement and exhaustive enumeration.

A partition is balanced when any two vertices of the same class receive the
same number of edges from each class. Everything here is exact integer
arithmetic.
"""

# Standard Python Libraries
from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
import logging
from typing import Optional

# Third-Party Libraries
import numpy as np

from .errors import GuardExceededError, SizeMismatchError
from .graph_core import valencies, valency_partition
from .models import DiGraph, Partition
from .utils import bell_number

logger = logging.getLogger(__name__)

DEFAULT_MAX_VERTICES = 12
# RGS prefix length used to split the enumeration across workers
PREFIX_DEPTH = 4


def _check_sizes(g: DiGraph, *partitions: Partition) -> None:
    for p in partitions:
        if p.n != g.n:
            raise SizeMismatchError(
                f"Partition on {p.n} vertices used with a graph on {g.n} vertices"
            )


def signature(g: DiGraph, p: Partition, v: int) -> tuple[int, ...]:
    """Return the number of edges into v from each class of p."""
    _check_sizes(g, p)
    counts = [0] * p.m
    for u, mult in enumerate(g.adj[v]):
        counts[p.class_of[u]] += mult
    return tuple(counts)


def signature_matrix(g: DiGraph, p: Partition) -> np.ndarray:
    """Return the n×m matrix whose row v is the signature of v."""
    _check_sizes(g, p)
    return g.matrix @ p.indicator()


def first_unbalanced_pair(g: DiGraph, p: Partition) -> Optional[tuple[int, int]]:
    """Return the first 1-based same-class pair with differing signatures.

    Each class is scanned in vertex order and its members are compared with
    the smallest member. None means the partition is balanced.
    """
    _check_sizes(g, p)
    for cls_ in p.classes:
        reference = signature(g, p, cls_[0])
        for v in cls_[1:]:
            if signature(g, p, v) != reference:
                return (cls_[0] + 1, v + 1)
    return None


def is_balanced_combinatorial(g: DiGraph, p: Partition) -> bool:
    """Check balance by counting in-edges per class at every vertex."""
    return first_unbalanced_pair(g, p) is None


def is_balanced_matrix(g: DiGraph, p: Partition) -> bool:
    """Check balance as invariance of the polydiagonal subspace under A_G.

    Column J of ``A_G · indicator`` is the image of the class J basis vector
    and has to be constant on every class.
    """
    images = signature_matrix(g, p)
    on_representatives = images[list(p.representatives)][list(p.class_of)]
    return bool(np.array_equal(images, on_representatives))


def is_refinement(p1: Partition, p2: Partition) -> bool:
    """Check whether every class of p1 lies inside a class of p2."""
    if p1.n != p2.n:
        raise SizeMismatchError(f"Partitions on {p1.n} and {p2.n} vertices")
    return all(
        len({p2.class_of[v] for v in cls_}) == 1 for cls_ in p1.classes
    )


def coarsest_balanced_refinement(
    g: DiGraph, seed: Optional[Partition] = None
) -> Partition:
    """Return the coarsest balanced partition refining the seed.

    Classes are split by signature until nothing changes. New classes are
    numbered by their smallest vertex, so the output is deterministic. The
    default seed is the valency partition.
    """
    current = valency_partition(g) if seed is None else seed
    _check_sizes(g, current)
    rounds = 0
    while True:
        keys = [(current.class_of[v], signature(g, current, v)) for v in range(g.n)]
        refined = Partition.from_labels(keys)
        rounds += 1
        if refined.m == current.m:
            break
        logger.debug(f"Refinement round {rounds}: {current.m} -> {refined.m} classes")
        current = refined
    return current


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Yield all restricted growth strings of length n in lexicographic order.

    Each one is the canonical label vector of one set partition of n vertices.
    """
    if n < 1:
        return
    labels = [0] * n
    maxima = [0] * n

    def extend(v: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            yield tuple(labels)
            return
        for c in range(maxima[v - 1] + 2):
            labels[v] = c
            maxima[v] = max(maxima[v - 1], c)
            yield from extend(v + 1)

    yield from extend(1)


def _labels_balanced(rows: Sequence[Sequence[int]], labels: Sequence[int], m: int) -> bool:
    reference: dict[int, list[int]] = {}
    for v, row in enumerate(rows):
        counts = [0] * m
        for u, mult in enumerate(row):
            if mult:
                counts[labels[u]] += mult
        seen = reference.setdefault(labels[v], counts)
        if seen is not counts and seen != counts:
            return False
    return True


class _BalancedSearch:
    """Depth-first search over restricted growth strings.

    A vertex only joins a class whose first member has the same valency,
    since balanced classes never mix valencies. Leaves get the full check.
    Instances hold no mutable state and are shared between threads.
    """

    def __init__(self, g: DiGraph):
        self.rows = g.adj
        self.n = g.n
        self.valency = valencies(g)

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        found: list[tuple[int, ...]] = []
        self._walk([], [], depth, found, leaf=False)
        return found

    def complete(self, prefix: Sequence[int]) -> tuple[list[Partition], int]:
        """Return the balanced completions of prefix and the number of leaves checked."""
        found: list[tuple[int, ...]] = []
        labels = list(prefix)
        firsts = [labels.index(c) for c in range(max(labels) + 1)] if labels else []
        checked = self._walk(labels, firsts, self.n, found, leaf=True)
        return [Partition(n=self.n, class_of=labels_) for labels_ in found], checked

    def _walk(self, labels, firsts, depth, found, leaf) -> int:
        v = len(labels)
        if v == depth:
            if not leaf:
                found.append(tuple(labels))
                return 0
            if _labels_balanced(self.rows, labels, len(firsts)):
                found.append(tuple(labels))
            return 1
        checked = 0
        for c in range(len(firsts) + 1):
            if c < len(firsts) and self.valency[firsts[c]] != self.valency[v]:
                continue
            opened = c == len(firsts)
            labels.append(c)
            if opened:
                firsts.append(v)
            checked += self._walk(labels, firsts, depth, found, leaf)
            if opened:
                firsts.pop()
            labels.pop()
        return checked


def enumerate_balanced(
    g: DiGraph, max_n: int = DEFAULT_MAX_VERTICES, workers: int = 1
) -> list[Partition]:
    """Return every balanced partition of g in restricted growth order.

    Parameters
    ----------
    g : DiGraph
        Graph to search.
    max_n : int
        Largest vertex count that will be searched exhaustively.
    workers : int
        Threads sharing the search. The search space is split by the class
        labels of the first vertices and merged back in prefix order, so the
        output does not depend on this value.

    Raises
    ------
    GuardExceededError
        If g has more than max_n vertices.

    """
    if g.n > max_n:
        raise GuardExceededError(
            f"Graph has {g.n} vertices, enumeration is limited to {max_n} "
            f"(Bell({g.n}) = {bell_number(g.n)} partitions)"
        )
    search = _BalancedSearch(g)
    if workers <= 1 or g.n <= PREFIX_DEPTH:
        result, checked = search.complete(())
    else:
        prefixes = search.prefixes(PREFIX_DEPTH)
        logger.debug(f"Splitting enumeration into {len(prefixes)} prefixes")
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(search.complete, prefix) for prefix in prefixes]
            parts = [future.result() for future in futures]
        result = [p for found, _ in parts for p in found]
        checked = sum(count for _, count in parts)
    logger.info(
        f"Found {len(result)} balanced partitions of a {g.n}-vertex graph "
        f"({checked} candidates checked)"
    )
    return result


def lattice_cover_pairs(partitions: Sequence[Partition]) -> list[tuple[int, int]]:
    """Return the covering pairs of the refinement order.

    A pair ``(i, j)`` means partition i strictly refines partition j with no
    listed partition strictly between them.
    """
    size = len(partitions)
    refines = np.zeros((size, size), dtype=bool)
    for i, finer in enumerate(partitions):
        for j, coarser in enumerate(partitions):
            if i != j and finer.m > coarser.m:
                refines[i, j] = is_refinement(finer, coarser)
    between = (refines.astype(np.int64) @ refines.astype(np.int64)) > 0
    covers = refines & ~between
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(covers))]
