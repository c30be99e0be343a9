"""Test the numerical certificates on coupled cell systems."""

# Third-Party Libraries
import numpy as np
import pytest

# Geekpad Libraries
from balanced_lifts.errors import NotSymmetricError, SizeMismatchError
from balanced_lifts.fixture_loader import load_partition, load_spec
from balanced_lifts.graph_core import from_edge_list
from balanced_lifts.integrator import integrate
from balanced_lifts.models import Partition, PolydiagonalSpec
from balanced_lifts.utils import FieldKind, Layout
from balanced_lifts.vector_fields import (
    admissible_field,
    custom_field,
    gradient_field,
    hamiltonian_field,
    linear_field,
    random_admissible_spec,
    random_coupling_spec,
    restrict_field,
)
from balanced_lifts.verification import (
    convergence_ratio,
    energy_drift,
    euler_invariance_exact,
    flow_invariance_deviation,
    is_gradient_numeric,
    is_hamiltonian_numeric,
    numeric_jacobian,
    restriction_matches,
    sample_points,
    scaling_check,
)

# Initial state (q1, q2, p1, p2) for the double edge energy runs
ENERGY_START = [0.5, 0.3, 3.0, 3.0]
SMALL_ENERGY_START = [0.2, -0.1, 0.3, 0.1]


def custom_spec_field(name):
    """Build the field of a shipped custom spec."""
    spec = load_spec(name)
    return custom_field(spec.n, spec.cell_dim, spec.components, spec.layout)


def test_sample_points_reproducible():
    """Test seeded sample points."""
    points = sample_points(3, samples=4, seed=1)
    assert points.shape == (4, 3)
    assert np.array_equal(points, sample_points(3, samples=4, seed=1))
    assert points.min() >= -1.0 and points.max() <= 1.0


def test_numeric_jacobian_of_linear_field(six_cell):
    """Test that the Jacobian of A·x is A."""
    jacobian = numeric_jacobian(linear_field(six_cell), np.zeros(6))
    assert np.allclose(jacobian, six_cell.matrix, atol=1e-8)


class TestGradientCertificate:
    """Tests for Jacobian symmetry."""

    def test_gradient_field_passes(self, ring4, cubic_gradient_spec):
        """Test an admissible gradient field."""
        report = is_gradient_numeric(gradient_field(ring4, cubic_gradient_spec))
        assert report
        assert report.check == "gradient"
        assert report.samples == 20
        assert report.seed == 20180101

    def test_ring_system_fails_but_restriction_passes(self, ring4_opposite):
        """Test a system that is only gradient on a synchrony subspace."""
        field = custom_spec_field("ring4_system")
        assert not is_gradient_numeric(field)
        assert is_gradient_numeric(restrict_field(field, ring4_opposite))

    def test_explicit_points(self, ring4, cubic_gradient_spec):
        """Test passing sample points instead of a count."""
        field = gradient_field(ring4, cubic_gradient_spec)
        assert is_gradient_numeric(field, np.zeros((1, 4))).samples == 1
        with pytest.raises(SizeMismatchError):
            is_gradient_numeric(field, np.zeros((1, 3)))

    def test_random_specs_on_petersen(self, petersen):
        """Test gradient fields built from random couplings."""
        for seed in range(3):
            field = gradient_field(petersen, random_coupling_spec(seed=seed))
            assert is_gradient_numeric(field, samples=5, seed=seed)


class TestHamiltonianCertificate:
    """Tests for symplectic Jacobian symmetry."""

    def test_hamiltonian_field_passes(self, ring4, cubic_hamiltonian_spec):
        """Test an admissible Hamiltonian field."""
        assert is_hamiltonian_numeric(hamiltonian_field(ring4, cubic_hamiltonian_spec))

    def test_ring_system_fails_but_restriction_passes(self, ring4_opposite):
        """Test a system that is only Hamiltonian on a synchrony subspace."""
        field = custom_spec_field("ring4_hamiltonian_system")
        assert not is_hamiltonian_numeric(field)
        assert is_hamiltonian_numeric(restrict_field(field, ring4_opposite))

    def test_needs_symplectic_layout(self, ring4, cubic_gradient_spec):
        """Test that cellwise states are rejected."""
        with pytest.raises(SizeMismatchError):
            is_hamiltonian_numeric(gradient_field(ring4, cubic_gradient_spec))


class TestFlowInvariance:
    """Tests for synchrony along trajectories."""

    def test_balanced_partition_stays_synchronous(
        self, ring4, ring4_opposite, cubic_gradient_spec
    ):
        """Test a trajectory started on the subspace of a balanced partition."""
        field = gradient_field(ring4, cubic_gradient_spec)
        x0 = PolydiagonalSpec(partition=ring4_opposite).embed([0.3, -0.2])
        report = flow_invariance_deviation(field, ring4_opposite, x0, dt=1e-3, steps=200)
        assert report
        assert report.details["partition"] == [[1, 3], [2, 4]]

    def test_unbalanced_partition_desynchronizes(self, petersen):
        """Test that an unbalanced subspace is left immediately."""
        p = load_partition("petersen_unbalanced")
        x0 = PolydiagonalSpec(partition=p).embed([1.0, 0.0])
        report = flow_invariance_deviation(linear_field(petersen), p, x0, dt=1e-2, steps=10)
        assert not report

    @pytest.mark.parametrize(
        "name,start",
        [("petersen_two_colors", [0.6, -0.4]), ("petersen_three_colors", [0.6, -0.4, 0.2])],
    )
    def test_petersen_cubic_field_keeps_synchrony(self, petersen, name, start):
        """Test a generic cubic admissible field on [0, 5]."""
        p = load_partition(name)
        field = admissible_field(petersen, random_admissible_spec(seed=3))
        x0 = PolydiagonalSpec(partition=p).embed(start)
        report = flow_invariance_deviation(field, p, x0, dt=5e-3, steps=1000, tol=1e-9)
        assert report, report.deviation

    def test_petersen_cubic_field_breaks_unbalanced(self, petersen):
        """Test that the same field leaves the subspace of an unbalanced partition."""
        p = load_partition("petersen_unbalanced")
        field = admissible_field(petersen, random_admissible_spec(seed=3))
        x0 = PolydiagonalSpec(partition=p).embed([0.5, 0.0])
        report = flow_invariance_deviation(field, p, x0, dt=5e-3, steps=1000, tol=1e-9)
        assert not report
        assert report.deviation > 1e-3

    def test_start_must_be_synchronous(self, ring4, ring4_opposite):
        """Test that x0 is checked."""
        with pytest.raises(ValueError):
            flow_invariance_deviation(
                linear_field(ring4), ring4_opposite, [1.0, 2.0, 3.0, 4.0], steps=1
            )

    def test_exact_euler_step(self, petersen):
        """Test the integer invariance check."""
        assert euler_invariance_exact(petersen, load_partition("petersen_two_colors"))
        assert euler_invariance_exact(petersen, load_partition("petersen_three_colors"))
        assert not euler_invariance_exact(petersen, load_partition("petersen_unbalanced"))


class TestEnergy:
    """Tests for energy conservation of Hamiltonian flows."""

    def test_energy_drift_small(self, double_edge, cubic_hamiltonian_spec):
        """Test that h is conserved over t in [0, 2]."""
        field = hamiltonian_field(double_edge, cubic_hamiltonian_spec)
        trajectory = integrate(field, ENERGY_START, dt=1e-3, steps=2000)
        report = energy_drift(field.potential, trajectory, tol=1e-6)
        assert report
        assert report.samples == 2001

    def test_restricted_system_conserves_energy(
        self, ring4_opposite, double_edge, cubic_hamiltonian_spec
    ):
        """Test the 8-dimensional system on its opposite-pairs subspace.

        There it is the double edge system with ``h = p1² q2 + p2² q1``.
        """
        field = restrict_field(custom_spec_field("ring4_hamiltonian_system"), ring4_opposite)
        h = hamiltonian_field(double_edge, cubic_hamiltonian_spec).potential
        trajectory = integrate(field, SMALL_ENERGY_START, dt=1e-3, steps=2000)
        report = energy_drift(h, trajectory, tol=1e-8)
        assert report
        assert report.deviation <= 1e-8
        assert report.tolerance == 1e-8

    def test_drift_shrinks_with_step(self, double_edge, cubic_hamiltonian_spec):
        """Test fourth-order decay of the drift."""
        field = hamiltonian_field(double_edge, cubic_hamiltonian_spec)
        report = convergence_ratio(field, field.potential, ENERGY_START, dt=0.02, steps=100)
        assert report
        assert report.details["drift_half_step"] < report.details["drift"]


class TestScaling:
    """Tests for the potential on synchrony subspaces."""

    def test_petersen_two_colors(self, petersen):
        """Test f^G = 5 f^Q on the outer/inner subspace."""
        report = scaling_check(
            petersen,
            load_partition("petersen_two_colors"),
            random_coupling_spec(seed=12),
            tol=1e-12,
        )
        assert report
        assert report.details["k"] == 5

    def test_quotient_with_loop(self, six_cell, cubic_gradient_spec):
        """Test a quotient that has a loop."""
        report = scaling_check(
            six_cell, load_partition("six_cell_pairs"), cubic_gradient_spec, tol=1e-12
        )
        assert report
        assert report.details["k"] == 2

    def test_hamiltonian(self, ring4, ring4_opposite, cubic_hamiltonian_spec):
        """Test the Hamiltonian on the opposite-pairs subspace."""
        assert scaling_check(ring4, ring4_opposite, cubic_hamiltonian_spec, tol=1e-12)

    def test_unequal_connected_classes(self, six_cell, cubic_gradient_spec):
        """Test that a non-symmetric quotient is rejected."""
        with pytest.raises(NotSymmetricError):
            scaling_check(six_cell, load_partition("six_cell_unequal"), cubic_gradient_spec)

    def test_unequal_disconnected_classes(self, cubic_gradient_spec):
        """Test that a symmetric quotient still needs equal class sizes."""
        g = from_edge_list(3, [(1, 2, 1), (2, 1, 1), (3, 3, 1)])
        with pytest.raises(SizeMismatchError):
            scaling_check(g, Partition.from_json([[1, 2], [3]]), cubic_gradient_spec)


def test_restriction_matches(ring4, ring4_opposite, double_edge, cubic_gradient_spec):
    """Test comparing a restricted field with the quotient field."""
    restricted = restrict_field(gradient_field(ring4, cubic_gradient_spec), ring4_opposite)
    on_quotient = gradient_field(double_edge, cubic_gradient_spec)
    assert restriction_matches(restricted, on_quotient)
    assert not restriction_matches(restricted, on_quotient, scale=2.0)
    with pytest.raises(SizeMismatchError):
        restriction_matches(restricted, linear_field(ring4))


def test_random_hamiltonian_on_petersen(petersen):
    """Test a random Hamiltonian coupling with two-dimensional cells."""
    spec = random_coupling_spec(seed=6, kind=FieldKind.HAMILTONIAN, cell_dim=2, degree=3)
    field = hamiltonian_field(petersen, spec)
    assert field.layout.layout is Layout.SYMPLECTIC
    assert is_hamiltonian_numeric(field, samples=3)
    assert scaling_check(petersen, load_partition("petersen_two_colors"), spec, tol=1e-12)
