"""Test structural operations on directed multigraphs."""

# Third-Party Libraries
import pytest

# Geekpad Libraries
from balanced_lifts.errors import SizeMismatchError
from balanced_lifts.graph_core import (
    bipartite_valency_clash,
    from_edge_list,
    has_loops,
    is_bipartite,
    is_combinatorially_symmetric,
    is_connected,
    is_regular,
    is_symmetric_graph,
    requires_symmetric_coupling,
    to_edge_list,
    transpose,
    valencies,
    valency,
    valency_partition,
)
from balanced_lifts.models import DiGraph
from balanced_lifts.quotient_lift import left_eigenvector_check
from balanced_lifts.vector_fields import admissible_field, random_admissible_spec


def test_edge_list_orientation():
    """Test that adj[dst][src] counts the edges src -> dst."""
    g = from_edge_list(3, [(1, 2, 1), (1, 2, 2), (3, 1, 1)])
    assert g.adj[1][0] == 3
    assert g.adj[0][2] == 1
    assert to_edge_list(g) == [(1, 2, 3), (3, 1, 1)]


def test_edge_list_rejects_bad_vertices():
    """Test that vertices must lie in 1..n."""
    with pytest.raises(SizeMismatchError):
        from_edge_list(2, [(1, 3, 1)])
    with pytest.raises(SizeMismatchError):
        from_edge_list(2, [(0, 1, 1)])


def test_edge_list_rejects_bad_multiplicity():
    """Test that multiplicities must be positive."""
    with pytest.raises(ValueError):
        from_edge_list(2, [(1, 2, 0)])
    with pytest.raises(ValueError):
        from_edge_list(0, [])


def test_transpose_reverses_edges():
    """Test edge reversal."""
    g = from_edge_list(2, [(1, 2, 2)])
    assert to_edge_list(transpose(g)) == [(2, 1, 2)]


def test_symmetry(petersen, lift_feasible_quotient):
    """Test exact and combinatorial symmetry."""
    assert is_symmetric_graph(petersen)
    assert not is_symmetric_graph(lift_feasible_quotient)
    assert is_combinatorially_symmetric(lift_feasible_quotient)
    assert not is_combinatorially_symmetric(from_edge_list(2, [(1, 2, 1)]))


def test_valency(petersen, six_cell):
    """Test in-degree counts and regularity."""
    assert valency(petersen, 0) == 3
    assert is_regular(petersen) == 3
    assert valencies(six_cell) == (3, 3, 3, 3, 5, 5)
    assert is_regular(six_cell) is None
    assert valency_partition(six_cell).to_json() == [[1, 2, 3, 4], [5, 6]]
    with pytest.raises(SizeMismatchError):
        valency(petersen, 10)


def test_loops_and_connectivity(ring4):
    """Test loop detection and connectivity of the support graph."""
    assert not has_loops(ring4)
    assert has_loops(from_edge_list(1, [(1, 1, 1)]))
    assert is_connected(ring4)
    assert not is_connected(from_edge_list(3, [(1, 2, 1), (2, 1, 1)]))


def test_bipartite(ring4, petersen):
    """Test 2-coloring of the support graph."""
    sides = is_bipartite(ring4)
    assert sides is not None
    assert sides.to_json() == [[1, 3], [2, 4]]
    # Petersen has 5-cycles
    assert is_bipartite(petersen) is None
    assert is_bipartite(from_edge_list(2, [(1, 1, 1), (1, 2, 1), (2, 1, 1)])) is None


def test_coupling_symmetry_requirement(ring4):
    """Test when a pairwise potential has to be swap invariant."""
    sides = is_bipartite(ring4)
    # Both sides of the 4-cycle have valency 2
    assert bipartite_valency_clash(ring4, sides)
    assert requires_symmetric_coupling(ring4)
    # A star has valency 3 at the hub and 1 at the leaves
    star = from_edge_list(
        4, [(1, 2, 1), (2, 1, 1), (1, 3, 1), (3, 1, 1), (1, 4, 1), (4, 1, 1)]
    )
    assert not requires_symmetric_coupling(star)


def test_single_vertex_graph():
    """Test the smallest graph."""
    g = DiGraph.from_matrix([[0]])
    assert is_regular(g) == 0
    assert is_connected(g)
    assert is_bipartite(g).m == 1


def test_edgeless_graph_is_regular():
    """Test that valency 0 counts as regular for the callers of is_regular."""
    g = from_edge_list(3, [])
    assert is_regular(g) == 0
    assert is_regular(g) is not None
    field = admissible_field(g, random_admissible_spec())
    assert field.n == 3
    assert left_eigenvector_check(g, (1, 2, 3))
