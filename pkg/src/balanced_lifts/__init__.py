"""Balanced partitions, quotients and symmetric lifts of coupled cell networks."""

# We disable a Flake8 check for "Module imported but unused (F401)" here because
# although this import is not directly used, it populates the value
# package_name.__version__, which is used to get version information about this
# Python package.

# isort is disabled below to prevent circular imports
# isort: off

from ._version import __version__  # noqa: F401
from .errors import (
    BalancedLiftsError,
    DivergenceError,
    GuardExceededError,
    LiftError,
    NotSymmetricError,
    SizeMismatchError,
    UnbalancedPartitionError,
)
from .utils import FieldKind, Layout
from .models import (
    AdmissibleSpec,
    CouplingSpec,
    CustomSpec,
    DiGraph,
    Partition,
    PolydiagonalSpec,
    RunConfig,
    VerificationReport,
)
from .graph_core import from_edge_list, is_symmetric_graph, to_edge_list
from .balanced import (
    coarsest_balanced_refinement,
    enumerate_balanced,
    first_unbalanced_pair,
    is_balanced_combinatorial,
    is_balanced_matrix,
)
from .quotient_lift import (
    build_simple_symmetric_lift,
    build_symmetric_lift,
    quotient,
    quotient_is_symmetric,
    symmetric_lift_k_vector,
    verify_lift,
)
from .vector_fields import (
    admissible_field,
    gradient_field,
    hamiltonian_field,
    restrict_field,
)
from .integrator import integrate
from .verification import (
    flow_invariance_deviation,
    is_gradient_numeric,
    is_hamiltonian_numeric,
    scaling_check,
)

# isort: on

__all__ = [
    "__version__",
    "AdmissibleSpec",
    "BalancedLiftsError",
    "build_simple_symmetric_lift",
    "build_symmetric_lift",
    "coarsest_balanced_refinement",
    "CouplingSpec",
    "CustomSpec",
    "DiGraph",
    "DivergenceError",
    "enumerate_balanced",
    "FieldKind",
    "first_unbalanced_pair",
    "flow_invariance_deviation",
    "from_edge_list",
    "gradient_field",
    "GuardExceededError",
    "hamiltonian_field",
    "integrate",
    "is_balanced_combinatorial",
    "is_balanced_matrix",
    "is_gradient_numeric",
    "is_hamiltonian_numeric",
    "is_symmetric_graph",
    "Layout",
    "LiftError",
    "NotSymmetricError",
    "Partition",
    "PolydiagonalSpec",
    "quotient",
    "quotient_is_symmetric",
    "restrict_field",
    "RunConfig",
    "scaling_check",
    "SizeMismatchError",
    "symmetric_lift_k_vector",
    "to_edge_list",
    "UnbalancedPartitionError",
    "verify_lift",
    "VerificationReport",
]
