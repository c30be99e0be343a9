"""Test quotient graphs and symmetric lifts."""

# Third-Party Libraries
import numpy as np
import pytest

# Geekpad Libraries
from balanced_lifts.errors import (
    GuardExceededError,
    LiftError,
    NotSymmetricError,
    SizeMismatchError,
    UnbalancedPartitionError,
)
from balanced_lifts.fixture_loader import load_graph, load_partition
from balanced_lifts.graph_core import from_edge_list, is_symmetric_graph
from balanced_lifts.models import DiGraph, Partition
from balanced_lifts.quotient_lift import (
    build_simple_symmetric_lift,
    build_symmetric_lift,
    constant_sum_block,
    left_eigenvector_check,
    lift_vertex_count,
    quotient,
    quotient_is_symmetric,
    symmetric_circulant,
    symmetric_lift_k_vector,
    symmetric_quotients,
    verify_lift,
)


def test_petersen_two_color_quotient(petersen):
    """Test the outer/inner quotient of the Petersen graph."""
    result = quotient(petersen, load_partition("petersen_two_colors"))
    assert result.quotient == load_graph("two_cell_quotient")
    assert result.class_sizes == (5, 5)
    assert result.source_n == 10


def test_petersen_three_color_quotient(petersen):
    """Test a quotient with unequal class sizes."""
    result = quotient(petersen, load_partition("petersen_three_colors"))
    assert result.quotient.adj == ((0, 1, 2), (2, 1, 0), (2, 0, 1))
    assert result.class_sizes == (4, 2, 4)


def test_quotient_rejects_unbalanced(petersen):
    """Test that the offending pair travels with the error."""
    with pytest.raises(UnbalancedPartitionError) as info:
        quotient(petersen, load_partition("petersen_unbalanced"))
    assert info.value.pair == (3, 4)


def test_quotient_size_mismatch(petersen):
    """Test that the partition must match the graph."""
    with pytest.raises(SizeMismatchError):
        quotient(petersen, Partition.singletons(3))


def test_quotient_by_singletons_is_the_graph(six_cell):
    """Test the finest quotient."""
    assert quotient(six_cell, Partition.singletons(6)).quotient == six_cell


def test_quotient_is_symmetric(petersen, ring4, ring4_opposite):
    """Test symmetry of quotients of symmetric graphs."""
    assert quotient_is_symmetric(petersen, load_partition("petersen_two_colors"))
    assert quotient_is_symmetric(ring4, ring4_opposite)
    check = quotient_is_symmetric(petersen, load_partition("petersen_three_colors"))
    assert not check
    assert check.witness == (1, 2)
    assert check.class_sizes == (4, 2, 4)


def test_quotient_is_symmetric_needs_symmetric_graph(lift_feasible_quotient):
    """Test that directed graphs are rejected."""
    with pytest.raises(NotSymmetricError):
        quotient_is_symmetric(lift_feasible_quotient, Partition.singletons(3))


def test_k_vector(lift_feasible_quotient):
    """Test the smallest class sizes of symmetric lifts."""
    assert symmetric_lift_k_vector(lift_feasible_quotient) == (1, 3, 2)
    assert symmetric_lift_k_vector(load_graph("two_cell_quotient")) == (1, 1)
    assert lift_vertex_count((1, 3, 2)) == 6


def test_k_vector_infeasible():
    """Test quotients without a symmetric lift."""
    assert symmetric_lift_k_vector(from_edge_list(2, [(1, 2, 1)])) is None
    inconsistent = DiGraph.from_matrix([[0, 1, 1], [2, 0, 1], [1, 1, 0]])
    assert symmetric_lift_k_vector(inconsistent) is None


def test_k_vector_components_scaled_separately():
    """Test that each connected component gets its own smallest solution."""
    q = DiGraph.from_matrix([[0, 2, 0], [1, 0, 0], [0, 0, 3]])
    assert symmetric_lift_k_vector(q) == (1, 2, 1)


def test_k_vector_guard(lift_feasible_quotient):
    """Test the class size limit."""
    with pytest.raises(GuardExceededError):
        symmetric_lift_k_vector(lift_feasible_quotient, max_k=2)


@pytest.mark.parametrize(
    "rows,cols,row_sum,col_sum", [(1, 3, 3, 1), (3, 2, 2, 3), (4, 6, 3, 2), (3, 3, 5, 5)]
)
def test_constant_sum_block(rows, cols, row_sum, col_sum):
    """Test that blocks have the requested margins."""
    block = constant_sum_block(rows, cols, row_sum, col_sum)
    assert block.shape == (rows, cols)
    assert (block.sum(axis=1) == row_sum).all()
    assert (block.sum(axis=0) == col_sum).all()
    if row_sum <= cols:
        assert block.max() <= 1


def test_constant_sum_block_inconsistent():
    """Test that margins must balance."""
    with pytest.raises(LiftError):
        constant_sum_block(2, 3, 2, 1)


@pytest.mark.parametrize("size,row_sum", [(1, 0), (1, 3), (3, 1), (4, 3), (5, 4), (6, 5)])
def test_symmetric_circulant(size, row_sum):
    """Test symmetric blocks with constant row sums."""
    block = symmetric_circulant(size, row_sum)
    assert np.array_equal(block, block.T)
    assert (block.sum(axis=1) == row_sum).all()


def test_symmetric_circulant_without_multi_edges():
    """Test that simple blocks allow at most one loop."""
    block = symmetric_circulant(3, 3, allow_multi=False)
    assert block.max() == 1
    with pytest.raises(LiftError):
        symmetric_circulant(3, 4, allow_multi=False)


def test_lift_of_feasible_quotient(lift_feasible_quotient):
    """Test the six-vertex lift built from the smallest class sizes."""
    witness = build_symmetric_lift(lift_feasible_quotient)
    assert witness.lift == load_graph("six_vertex_lift_a")
    assert witness.partition == load_partition("six_vertex_lift_classes")
    assert witness.quotient_check.quotient == lift_feasible_quotient


@pytest.mark.parametrize("name", ["six_vertex_lift_a", "six_vertex_lift_b"])
def test_known_lifts_verify(lift_feasible_quotient, name):
    """Test that both shipped lifts fold onto the quotient."""
    g = load_graph(name)
    assert is_symmetric_graph(g)
    check = verify_lift(g, load_partition("six_vertex_lift_classes"), lift_feasible_quotient)
    assert check.ok, check.message


def test_lift_with_scaled_sizes(lift_feasible_quotient):
    """Test a lift with a multiple of the smallest class sizes."""
    witness = build_symmetric_lift(lift_feasible_quotient, k=(2, 6, 4))
    assert witness.lift.n == 12
    assert is_symmetric_graph(witness.lift)
    assert verify_lift(witness.lift, witness.partition, lift_feasible_quotient)


def test_lift_rejects_incompatible_sizes(lift_feasible_quotient):
    """Test that k must satisfy the symmetry relations."""
    with pytest.raises(LiftError):
        build_symmetric_lift(lift_feasible_quotient, k=(1, 1, 1))
    with pytest.raises(SizeMismatchError):
        build_symmetric_lift(lift_feasible_quotient, k=(1, 3))
    with pytest.raises(LiftError):
        build_symmetric_lift(from_edge_list(2, [(1, 2, 1)]))


def test_simple_lift():
    """Test lifts without multiple edges."""
    q = load_graph("simple_lift_quotient")
    witness = build_simple_symmetric_lift(q, 3)
    assert witness.lift.n == 9
    assert witness.lift.matrix.max() == 1
    assert is_symmetric_graph(witness.lift)
    assert verify_lift(witness.lift, witness.partition, q)


@pytest.mark.parametrize(
    "lift,classes,r",
    [
        ("simple_lift_9", "simple_lift_9_classes", 3),
        ("simple_lift_12", "simple_lift_12_classes", 4),
    ],
)
def test_shipped_simple_lifts(lift, classes, r):
    """Test that the shipped simple lifts fold onto the same quotient."""
    q = load_graph("simple_lift_quotient")
    g = load_graph(lift)
    assert g.matrix.max() == 1
    assert verify_lift(g, load_partition(classes), q)
    assert build_simple_symmetric_lift(q, r).lift.n == g.n


def test_simple_lift_preconditions(lift_feasible_quotient):
    """Test the requirements on q and r."""
    q = load_graph("simple_lift_quotient")
    with pytest.raises(LiftError):
        build_simple_symmetric_lift(q, 2)
    with pytest.raises(NotSymmetricError):
        build_simple_symmetric_lift(lift_feasible_quotient, 3)
    disconnected = DiGraph.from_matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    with pytest.raises(LiftError):
        build_simple_symmetric_lift(disconnected, 2)


def test_verify_lift_reports_mismatch(petersen):
    """Test the failure messages of lift verification."""
    check = verify_lift(
        petersen, load_partition("petersen_two_colors"), load_graph("double_edge")
    )
    assert not check
    assert check.discrepancy == (1, 1)
    check = verify_lift(
        petersen, load_partition("petersen_unbalanced"), load_graph("double_edge")
    )
    assert check.discrepancy == (3, 4)


def test_left_eigenvector(lift_feasible_quotient):
    """Test that class sizes are a left eigenvector of a regular quotient."""
    q = load_graph("two_cell_quotient")
    assert left_eigenvector_check(q, (1, 1))
    assert not left_eigenvector_check(q, (1, 2))
    with pytest.raises(ValueError):
        left_eigenvector_check(DiGraph.from_matrix([[0, 1], [2, 0]]), (2, 1))


def test_symmetric_quotients(ring4):
    """Test the symmetric quotients of the 4-cycle."""
    found = symmetric_quotients(ring4)
    assert [r.partition.class_of for r in found] == [
        (0, 0, 0, 0),
        (0, 0, 1, 1),
        (0, 1, 0, 1),
        (0, 1, 1, 0),
        (0, 1, 2, 3),
    ]
    assert all(is_symmetric_graph(r.quotient) for r in found)


def test_symmetric_quotients_filter(six_cell):
    """Test that quotients with connected classes of different sizes are dropped."""
    found = [r.partition for r in symmetric_quotients(six_cell)]
    assert load_partition("six_cell_pairs") in found
    assert load_partition("six_cell_unequal") not in found


def test_six_cell_quotients(six_cell):
    """Test the pairs quotient, which has a loop, and a quotient with unequal classes."""
    pairs = quotient(six_cell, load_partition("six_cell_pairs"))
    assert pairs.quotient.adj == ((0, 1, 2), (1, 0, 2), (2, 2, 1))
    assert pairs.class_sizes == (2, 2, 2)
    assert quotient_is_symmetric(six_cell, load_partition("six_cell_pairs"))
    unequal = quotient(six_cell, load_partition("six_cell_unequal"))
    assert unequal.quotient.adj == ((1, 1, 1), (4, 0, 1), (4, 1, 0))
    check = quotient_is_symmetric(six_cell, load_partition("six_cell_unequal"))
    assert not check
    assert check.witness == (1, 2)
    assert check.class_sizes == (4, 1, 1)


def test_left_eigenvector_with_unequal_classes(petersen):
    """Test class sizes (4, 2, 4) against the valency 3 of a Petersen quotient."""
    result = quotient(petersen, load_partition("petersen_three_colors"))
    assert left_eigenvector_check(result.quotient, result.class_sizes)
    assert left_eigenvector_check(result.quotient, (2, 1, 2))
    assert not left_eigenvector_check(result.quotient, (1, 1, 1))
    assert not left_eigenvector_check(result.quotient, (4, 4, 2))


def test_left_eigenvector_needs_regular_quotient(six_cell):
    """Test that a quotient with row sums 3, 3 and 5 is rejected."""
    q = quotient(six_cell, load_partition("six_cell_pairs")).quotient
    with pytest.raises(ValueError):
        left_eigenvector_check(q, (2, 2, 2))


def test_simple_lift_with_five_vertices_per_class():
    """Test r = 5 on the shipped simple lift quotient."""
    q = load_graph("simple_lift_quotient")
    witness = build_simple_symmetric_lift(q, 5)
    assert witness.lift.n == 15
    assert witness.lift.matrix.max() == 1
    assert not witness.lift.matrix.diagonal().any()
    assert is_symmetric_graph(witness.lift)
    assert witness.partition.sizes == (5, 5, 5)
    assert verify_lift(witness.lift, witness.partition, q)


def random_liftable_quotient(rng, m):
    """Draw a combinatorially symmetric quotient with entries in 0..3 that has a symmetric lift."""
    k = rng.integers(1, 4, size=m)
    q = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        q[i, i] = rng.integers(0, 4)
        for j in range(i + 1, m):
            forward = int(rng.integers(0, 4))
            backward, rest = divmod(int(k[i]) * forward, int(k[j]))
            if not rest and backward <= 3:
                q[i, j], q[j, i] = forward, backward
    return DiGraph.from_matrix(q), tuple(int(v) for v in k)


@pytest.mark.slow
def test_random_quotients_lift_and_fold_back():
    """Test that lifts of 100 random quotients are symmetric and fold back onto them."""
    rng = np.random.default_rng(4)
    for _ in range(100):
        q, k = random_liftable_quotient(rng, int(rng.integers(1, 5)))
        smallest = symmetric_lift_k_vector(q)
        assert smallest is not None, q.adj
        for sizes in (None, k):
            witness = build_symmetric_lift(q, sizes)
            assert is_symmetric_graph(witness.lift), q.adj
            assert verify_lift(witness.lift, witness.partition, q), q.adj
            assert quotient(witness.lift, witness.partition).quotient == q
