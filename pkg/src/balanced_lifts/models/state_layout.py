"""Defines how cell coordinates are arranged in a flat state vector."""

# Standard Python Libraries
from typing import Any

# Third-Party Libraries
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..utils import Layout


class StateLayout(BaseModel):
    """Arrangement of n cells of dimension cell_dim in a state vector.

    Cellwise states are ``(x_1, ..., x_n)`` with each cell contiguous.
    Symplectic states are ``(q_1, ..., q_n, p_1, ..., p_n)``; a cell of
    dimension ``2m'`` owns ``m'`` positions and ``m'`` momenta.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int = Field(..., ge=1, description="Number of cells")
    cell_dim: int = Field(default=1, ge=1, description="Coordinates per cell")
    layout: Layout = Field(default=Layout.CELLWISE, description="Coordinate order")

    @model_validator(mode="after")
    def validate_symplectic(self) -> "StateLayout":
        """Ensure symplectic cells split evenly into positions and momenta."""
        if self.layout is Layout.SYMPLECTIC and self.cell_dim % 2:
            raise ValueError(
                f"Symplectic cells need an even dimension, got {self.cell_dim}"
            )
        return self

    @property
    def size(self) -> int:
        """Length of a full state vector."""
        return self.n * self.cell_dim

    @property
    def width(self) -> int:
        """Coordinates of one cell inside one block."""
        return self.cell_dim // int(self.layout)

    def with_cells(self, n: int) -> "StateLayout":
        """Return the same arrangement for a different number of cells."""
        return StateLayout(n=n, cell_dim=self.cell_dim, layout=self.layout)

    def to_cells(self, x: Any) -> np.ndarray:
        """View a state as an array of shape (blocks, n, width)."""
        array = np.asarray(x, dtype=float)
        if array.shape != (self.size,):
            raise ValueError(
                f"State has shape {array.shape}, expected ({self.size},)"
            )
        return array.reshape(int(self.layout), self.n, self.width)

    def from_cells(self, cells: np.ndarray) -> np.ndarray:
        """Flatten a (blocks, n, width) array back into a state vector."""
        return np.ascontiguousarray(cells, dtype=float).reshape(-1)

    def cell_indices(self, v: int) -> list[int]:
        """State-vector positions owned by cell v (0-based)."""
        block = self.n * self.width
        return [
            b * block + v * self.width + c
            for b in range(int(self.layout))
            for c in range(self.width)
        ]

    def variable_names(self) -> list[str]:
        """Names of the state coordinates, in state order, with 1-based cells."""
        if self.layout is Layout.SYMPLECTIC:
            prefixes = ("q", "p")
        else:
            prefixes = ("x",)
        names = []
        for prefix in prefixes:
            for v in range(1, self.n + 1):
                if self.width == 1:
                    names.append(f"{prefix}{v}")
                else:
                    names.extend(f"{prefix}{v}_{c}" for c in range(1, self.width + 1))
        return names
