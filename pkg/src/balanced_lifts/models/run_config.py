"""Defines the model for validating and managing run configuration."""

# Standard Python Libraries
import logging
from pathlib import Path
from typing import Any, Dict, Optional

# Third-Party Libraries
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

logger = logging.getLogger(__name__)


class Tolerances(BaseModel):
    """Numerical tolerances of the verification checks."""

    model_config = ConfigDict(extra="forbid")

    gradient: float = Field(default=1e-6, ge=0.0)
    hamiltonian: float = Field(default=1e-6, ge=0.0)
    invariance: float = Field(default=1e-9, ge=0.0)
    restriction: float = Field(default=1e-12, ge=0.0)
    scaling: float = Field(default=1e-12, ge=0.0)
    energy: float = Field(default=1e-8, ge=0.0)
    fd_step: float = Field(default=1e-5, gt=0.0, description="Central difference step")


class Guards(BaseModel):
    """Size limits that stop runaway computations."""

    model_config = ConfigDict(extra="forbid")

    max_vertices: int = Field(
        default=12, ge=1, description="Largest graph enumerate_balanced will exhaust"
    )
    max_degree: int = Field(default=6, ge=0, description="Largest polynomial degree")
    max_k: int = Field(default=2**63 - 1, ge=1, description="Largest scaled class size")


class Integration(BaseModel):
    """Fixed-step integration settings."""

    model_config = ConfigDict(extra="forbid")

    dt: float = Field(default=1e-3, gt=0.0)
    steps: int = Field(default=1000, ge=1)


class Sampling(BaseModel):
    """Random sample point settings."""

    model_config = ConfigDict(extra="forbid")

    seed: int = Field(default=20180101, ge=0, description="Documented default seed")
    samples: int = Field(default=20, ge=1)
    low: float = -1.0
    high: float = 1.0

    @model_validator(mode="after")
    def validate_box(self) -> "Sampling":
        """Ensure the sampling box is non-empty."""
        if self.high <= self.low:
            raise ValueError(f"Sampling box [{self.low}, {self.high}] is empty")
        return self


class RunConfig(BaseModel):
    """Configuration model for one command-line run."""

    model_config = ConfigDict(extra="forbid")

    subcommand: Optional[str] = Field(default=None, description="Subcommand name")
    inputs: list[Path] = Field(default_factory=list, description="Input paths")
    output: Optional[Path] = Field(default=None, description="Output path")
    dot: Optional[Path] = Field(default=None, description="DOT output path")
    workers: int = Field(default=1, ge=1, description="Parallel enumeration workers")
    tolerances: Tolerances = Field(default_factory=Tolerances)
    guards: Guards = Field(default_factory=Guards)
    integration: Integration = Field(default_factory=Integration)
    sampling: Sampling = Field(default_factory=Sampling)

    @property
    def seed(self) -> int:
        """RNG seed of this run."""
        return self.sampling.seed

    @classmethod
    def from_config_dict(cls, config_dict: Dict[str, Any]) -> "RunConfig":
        """Create an instance from a configuration dictionary."""
        try:
            return cls(**config_dict)
        except ValidationError as e:
            logger.error(f"Configuration validation error: {e}")
            raise e
