"""Defines the result records returned by quotient, lift and dynamics checks."""

# Standard Python Libraries
import math
from typing import Any, Optional

# Third-Party Libraries
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .digraph import DiGraph
from .partition import Partition


class QuotientResult(BaseModel):
    """Quotient graph of a balanced partition together with its class sizes."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    quotient: DiGraph = Field(..., description="Graph on the classes")
    class_sizes: tuple[int, ...] = Field(..., description="k_1, ..., k_m")
    partition: Partition = Field(..., description="The balanced partition")
    source_n: int = Field(..., ge=1, description="Vertices of the source graph")

    @model_validator(mode="after")
    def validate_sizes(self) -> "QuotientResult":
        """Class sizes must match the partition and sum to the source size."""
        if sum(self.class_sizes) != self.source_n:
            raise ValueError(
                f"Class sizes {self.class_sizes} do not sum to {self.source_n}"
            )
        if len(self.class_sizes) != self.quotient.n:
            raise ValueError("One class size is needed per quotient vertex")
        return self


class LiftWitness(BaseModel):
    """A constructed lift with the partition that folds it onto the quotient."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    lift: DiGraph
    partition: Partition
    quotient_check: QuotientResult


class LiftCheck(BaseModel):
    """Outcome of verifying that a graph is a lift of a quotient."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    ok: bool
    message: str
    discrepancy: Optional[tuple[int, int]] = Field(
        default=None, description="First offending 1-based pair, when there is one"
    )

    def __bool__(self) -> bool:
        """Truth value is the verification outcome."""
        return self.ok


class SymmetryCheck(BaseModel):
    """Outcome of deciding whether a quotient graph is symmetric."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    symmetric: bool
    class_sizes: tuple[int, ...]
    witness: Optional[tuple[int, int]] = Field(
        default=None,
        description="1-based connected quotient vertices whose classes differ in size",
    )

    def __bool__(self) -> bool:
        """Truth value is the symmetry outcome."""
        return self.symmetric


class VerificationReport(BaseModel):
    """Pass/fail record of a numerical check."""

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    check: str = Field(..., description="Name of the check")
    deviation: float = Field(..., description="Measured deviation (max norm)")
    tolerance: float = Field(..., ge=0.0, description="Largest accepted deviation")
    passed: bool = Field(..., alias="pass", description="deviation <= tolerance")
    samples: int = Field(default=0, ge=0, description="Sample points or time steps used")
    seed: Optional[int] = Field(default=None, description="RNG seed of the samples")
    details: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_outcome(self) -> "VerificationReport":
        """The outcome must agree with deviation and tolerance."""
        expected = not math.isnan(self.deviation) and self.deviation <= self.tolerance
        if self.passed != expected:
            raise ValueError(
                f"Report marked pass={self.passed} but deviation {self.deviation} "
                f"vs tolerance {self.tolerance} gives {expected}"
            )
        return self

    @classmethod
    def evaluate(
        cls, check: str, deviation: float, tolerance: float, **kwargs: Any
    ) -> "VerificationReport":
        """Build a report, deciding the outcome from deviation and tolerance."""
        deviation = float(deviation)
        passed = not math.isnan(deviation) and deviation <= tolerance
        return cls(
            check=check, deviation=deviation, tolerance=tolerance, passed=passed, **kwargs
        )

    def __bool__(self) -> bool:
        """Truth value is the outcome."""
        return self.passed

    def to_json_dict(self) -> dict[str, Any]:
        """Machine-readable form with the ``pass`` key."""
        return self.model_dump(mode="json", by_alias=True)
