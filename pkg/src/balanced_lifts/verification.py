"""Numerical certificates for coupled cell systems.

Every check returns a :class:`VerificationReport` whose outcome is decided by
comparing the measured deviation with a tolerance.
"""

# Standard Python Libraries
from collections.abc import Callable
import logging
from typing import Any, Optional

# Third-Party Libraries
import numpy as np

from .balanced import signature_matrix
from .errors import DivergenceError, NotSymmetricError, SizeMismatchError
from .graph_core import is_symmetric_graph
from .integrator import Trajectory, integrate
from .models import CouplingSpec, DiGraph, Partition, PolydiagonalSpec, VerificationReport
from .quotient_lift import quotient, quotient_is_symmetric
from .utils import FieldKind, Layout
from .vector_fields import (
    ScalarFunction,
    VectorFieldHandle,
    gradient_function,
    hamiltonian_function,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20180101
DEFAULT_SAMPLES = 20
FD_STEP = 1e-5


def sample_points(
    dim: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    low: float = -1.0,
    high: float = 1.0,
) -> np.ndarray:
    """Draw seeded uniform sample points from the box ``[low, high]^dim``."""
    rng = np.random.default_rng(seed)
    return rng.uniform(low, high, size=(samples, dim))


def _points(F: VectorFieldHandle, samples: Any, seed: int) -> np.ndarray:
    if isinstance(samples, (int, np.integer)):
        return sample_points(F.dim, int(samples), seed)
    points = np.atleast_2d(np.asarray(samples, dtype=float))
    if points.shape[1] != F.dim:
        raise SizeMismatchError(f"Sample points have {points.shape[1]} coordinates, expected {F.dim}")
    return points


def numeric_jacobian(
    F: Callable[[np.ndarray], np.ndarray], x: np.ndarray, step: float = FD_STEP
) -> np.ndarray:
    """Central-difference Jacobian, column j is ∂F/∂x_j."""
    x = np.asarray(x, dtype=float)
    columns = []
    for j in range(x.size):
        offset = np.zeros_like(x)
        offset[j] = step
        columns.append((np.asarray(F(x + offset)) - np.asarray(F(x - offset))) / (2 * step))
    jacobian = np.column_stack(columns)
    if not np.all(np.isfinite(jacobian)):
        raise DivergenceError(f"Field is not finite near the sample {x.tolist()}")
    return jacobian


def _asymmetry(G: Callable[[np.ndarray], np.ndarray], points: np.ndarray, step: float) -> float:
    worst = 0.0
    for x in points:
        jacobian = numeric_jacobian(G, x, step)
        worst = max(worst, float(np.max(np.abs(jacobian - jacobian.T))))
    return worst


def is_gradient_numeric(
    F: VectorFieldHandle,
    samples: Any = DEFAULT_SAMPLES,
    tol: float = 1e-6,
    step: float = FD_STEP,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Check that the Jacobian of F is symmetric at the sample points.

    ``samples`` is either a number of seeded points in ``[-1, 1]^N`` or an
    array of points.
    """
    points = _points(F, samples, seed)
    deviation = _asymmetry(F, points, step)
    report = VerificationReport.evaluate(
        "gradient", deviation, tol, samples=len(points), seed=seed, details={"step": step}
    )
    logger.info(f"Gradient check on {F.n} cells: deviation {deviation:.3e}")
    return report


def is_hamiltonian_numeric(
    F: VectorFieldHandle,
    samples: Any = DEFAULT_SAMPLES,
    tol: float = 1e-6,
    step: float = FD_STEP,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Check that ``J⁻¹F = (-p', q')`` has a symmetric Jacobian.

    The state must be in the symplectic layout ``(q, p)``.
    """
    if F.layout.layout is not Layout.SYMPLECTIC:
        raise SizeMismatchError("Hamiltonian check needs a field in the (q, p) layout")
    half = F.dim // 2

    def unrotated(x: np.ndarray) -> np.ndarray:
        value = F(x)
        return np.concatenate((-value[half:], value[:half]))

    points = _points(F, samples, seed)
    deviation = _asymmetry(unrotated, points, step)
    logger.info(f"Hamiltonian check on {F.n} cells: deviation {deviation:.3e}")
    return VerificationReport.evaluate(
        "hamiltonian", deviation, tol, samples=len(points), seed=seed, details={"step": step}
    )


def flow_invariance_deviation(
    F: VectorFieldHandle,
    p: Partition,
    x0: Any,
    dt: float = 1e-3,
    steps: int = 1000,
    tol: float = 1e-9,
) -> VerificationReport:
    """Integrate from a synchronous state and report the largest class spread.

    Raises
    ------
    ValueError
        If x0 is not constant on the classes of p.

    """
    if p.n != F.n:
        raise SizeMismatchError(f"Partition on {p.n} vertices, field on {F.n} cells")
    subspace = PolydiagonalSpec(partition=p)
    if not subspace.contains(x0, F.cell_dim, F.layout.layout):
        raise ValueError(f"Initial state is not constant on the classes of {p}")
    trajectory = integrate(F, x0, dt, steps)
    deviation = max(
        subspace.spread(state, F.cell_dim, F.layout.layout) for state in trajectory.states
    )
    return VerificationReport.evaluate(
        "invariance",
        deviation,
        tol,
        samples=steps,
        details={"dt": dt, "steps": steps, "partition": p.to_json()},
    )


def energy_drift(
    h: Callable[[np.ndarray], float], trajectory: Trajectory, tol: float = 1e-8
) -> VerificationReport:
    """Report the largest change of h along a trajectory."""
    start = h(trajectory.states[0])
    deviation = max(abs(h(state) - start) for state in trajectory.states)
    return VerificationReport.evaluate(
        "energy",
        deviation,
        tol,
        samples=len(trajectory),
        details={"dt": trajectory.dt, "steps": trajectory.steps},
    )


def convergence_ratio(
    F: VectorFieldHandle,
    h: Callable[[np.ndarray], float],
    x0: Any,
    dt: float,
    steps: int,
    limit: float = 0.1,
) -> VerificationReport:
    """Compare the energy drift at dt and at dt/2 over the same time span.

    A fourth-order method shrinks the drift about 16 times; the deviation
    reported is the ratio of the two drifts.
    """
    coarse = energy_drift(h, integrate(F, x0, dt, steps)).deviation
    fine = energy_drift(h, integrate(F, x0, dt / 2, 2 * steps)).deviation
    ratio = fine / coarse if coarse > 0 else 0.0
    return VerificationReport.evaluate(
        "energy-convergence",
        ratio,
        limit,
        samples=3 * steps,
        details={"drift": coarse, "drift_half_step": fine, "dt": dt},
    )


def _potential(g: DiGraph, spec: CouplingSpec) -> ScalarFunction:
    if spec.kind is FieldKind.HAMILTONIAN:
        return hamiltonian_function(g, spec)
    return gradient_function(g, spec)


def scaling_check(
    g: DiGraph,
    p: Partition,
    spec: CouplingSpec,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    tol: float = 1e-12,
    low: float = -1.0,
    high: float = 1.0,
) -> VerificationReport:
    """Check ``f^G(embed(y)) = k · f^Q(y)`` on the synchrony subspace of p.

    Raises
    ------
    NotSymmetricError
        If g or its quotient by p is not symmetric.
    SizeMismatchError
        If the classes of p do not all have the same size.

    """
    if not is_symmetric_graph(g):
        raise NotSymmetricError("Scaling check needs a symmetric graph")
    symmetry = quotient_is_symmetric(g, p)
    if not symmetry:
        raise NotSymmetricError(
            f"Quotient is not symmetric, classes {symmetry.witness} differ in size"
        )
    sizes = set(symmetry.class_sizes)
    if len(sizes) != 1:
        raise SizeMismatchError(f"Classes have different sizes {symmetry.class_sizes}")
    k = sizes.pop()
    q = quotient(g, p).quotient
    f_graph = _potential(g, spec)
    f_quotient = _potential(q, spec)
    subspace = PolydiagonalSpec(partition=p)
    points = sample_points(f_quotient.layout.size, samples, seed, low, high)
    deviation = max(
        abs(f_graph(subspace.embed(y, spec.cell_dim, f_graph.layout.layout)) - k * f_quotient(y))
        for y in points
    )
    return VerificationReport.evaluate(
        "scaling", deviation, tol, samples=samples, seed=seed, details={"k": k}
    )


def euler_invariance_exact(g: DiGraph, p: Partition) -> VerificationReport:
    """Take one integer Euler step of ``x' = A_G · x`` from every class indicator.

    The subspace is invariant, deviation 0, exactly when p is balanced.
    """
    starts = p.indicator()
    stepped = starts + signature_matrix(g, p)
    subspace = PolydiagonalSpec(partition=p)
    deviation = max(subspace.spread(column) for column in stepped.T)
    return VerificationReport.evaluate("euler-invariance", deviation, 0.0, samples=p.m)


def restriction_matches(
    F: VectorFieldHandle,
    G: VectorFieldHandle,
    samples: Any = DEFAULT_SAMPLES,
    tol: float = 1e-12,
    seed: int = DEFAULT_SEED,
    scale: Optional[float] = None,
) -> VerificationReport:
    """Compare two fields on the same state space at sample points.

    With ``scale`` the second field is multiplied by it before comparing.
    """
    if F.dim != G.dim:
        raise SizeMismatchError(f"Fields act on {F.dim} and {G.dim} coordinates")
    points = _points(F, samples, seed)
    factor = 1.0 if scale is None else scale
    deviation = max(float(np.max(np.abs(F(x) - factor * G(x)))) for x in points)
    return VerificationReport.evaluate(
        "restriction", deviation, tol, samples=len(points), seed=seed
    )
