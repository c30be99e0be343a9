"""Defines the model for a directed multigraph given by its adjacency matrix."""

# Standard Python Libraries
import logging
from typing import Any

# Third-Party Libraries
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

logger = logging.getLogger(__name__)


class DiGraph(BaseModel):
    """Directed multigraph on vertices 0..n-1.

    Entry ``adj[i][j]`` is the number of directed edges from vertex ``j`` to
    vertex ``i``: rows are targets, columns are sources. Loops are allowed.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int = Field(..., ge=1, description="Number of vertices")
    adj: tuple[tuple[int, ...], ...] = Field(
        ..., description="Edge multiplicities, row = target, column = source"
    )

    @field_validator("adj", mode="before")
    @classmethod
    def coerce_matrix(cls, value: Any) -> Any:
        """Accept numpy arrays and nested lists of integral numbers."""
        try:
            array = np.asarray(value)
        except ValueError:
            return value
        if array.ndim != 2 or array.dtype.kind not in "iuf":
            return value
        if array.dtype.kind == "f" and not np.all(np.equal(np.mod(array, 1), 0)):
            raise ValueError("Adjacency entries must be integers")
        return tuple(tuple(int(v) for v in row) for row in array.tolist())

    @model_validator(mode="after")
    def validate_shape(self) -> "DiGraph":
        """Ensure the matrix is n×n with non-negative entries."""
        if len(self.adj) != self.n:
            raise ValueError(f"Adjacency matrix has {len(self.adj)} rows, expected {self.n}")
        for i, row in enumerate(self.adj):
            if len(row) != self.n:
                raise ValueError(
                    f"Adjacency row {i + 1} has {len(row)} entries, expected {self.n}"
                )
            if any(v < 0 for v in row):
                raise ValueError(f"Adjacency row {i + 1} has a negative multiplicity")
        return self

    @classmethod
    def from_matrix(cls, matrix: Any) -> "DiGraph":
        """Create a graph from any square integer matrix."""
        array = np.asarray(matrix)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError(f"Adjacency matrix must be square, got shape {array.shape}")
        return cls(n=array.shape[0], adj=array)

    @property
    def matrix(self) -> np.ndarray:
        """Return the adjacency matrix as a fresh int64 array."""
        return np.array(self.adj, dtype=np.int64)

    @property
    def edge_count(self) -> int:
        """Total number of directed edges, counted with multiplicity."""
        return sum(sum(row) for row in self.adj)

    def transpose(self) -> "DiGraph":
        """Return the graph with every edge reversed."""
        return DiGraph(n=self.n, adj=tuple(zip(*self.adj)))

    def __str__(self) -> str:
        """Return a compact description."""
        return f"DiGraph(n={self.n}, edges={self.edge_count})"
