"""This module initializes the models package and imports the data types."""

# isort: off

from .state_layout import StateLayout
from .digraph import DiGraph
from .partition import Partition, PolydiagonalSpec
from .coupling_spec import AdmissibleSpec, CouplingSpec, CustomSpec, Polynomial
from .results import (
    LiftCheck,
    LiftWitness,
    QuotientResult,
    SymmetryCheck,
    VerificationReport,
)
from .run_config import Guards, Integration, RunConfig, Sampling, Tolerances

# isort: on

__all__ = [
    "AdmissibleSpec",
    "CouplingSpec",
    "CustomSpec",
    "DiGraph",
    "Guards",
    "Integration",
    "LiftCheck",
    "LiftWitness",
    "Partition",
    "PolydiagonalSpec",
    "Polynomial",
    "QuotientResult",
    "RunConfig",
    "Sampling",
    "StateLayout",
    "SymmetryCheck",
    "Tolerances",
    "VerificationReport",
]
