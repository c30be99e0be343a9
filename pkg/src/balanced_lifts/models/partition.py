"""Defines the models for vertex partitions and their polydiagonal subspaces."""

# Standard Python Libraries
from collections.abc import Hashable, Iterable, Sequence
import logging
from typing import Any

# Third-Party Libraries
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..utils import Layout
from .state_layout import StateLayout

logger = logging.getLogger(__name__)


def canonical_labels(labels: Sequence[Hashable]) -> tuple[int, ...]:
    """Renumber arbitrary class labels by first occurrence.

    The result is a restricted growth string: classes are numbered in the
    order of their smallest vertex.
    """
    mapping: dict[Hashable, int] = {}
    return tuple(mapping.setdefault(label, len(mapping)) for label in labels)


class Partition(BaseModel):
    """Equivalence relation on the vertices 0..n-1.

    ``class_of[v]`` is the class of vertex ``v``. Class indices are always
    canonical: class 0 holds vertex 0 and every new class is numbered after
    the classes of all smaller vertices.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int = Field(..., ge=1, description="Number of vertices")
    class_of: tuple[int, ...] = Field(..., description="Class index of each vertex")

    @model_validator(mode="before")
    @classmethod
    def canonicalize(cls, values: Any) -> Any:
        """Renumber the classes so that they are ordered by smallest vertex."""
        if isinstance(values, dict) and "class_of" in values:
            labels = list(values["class_of"])
            values = dict(values)
            values["class_of"] = canonical_labels(labels)
            values.setdefault("n", len(labels))
        return values

    @model_validator(mode="after")
    def validate_size(self) -> "Partition":
        """Ensure every vertex has exactly one class."""
        if len(self.class_of) != self.n:
            raise ValueError(
                f"Partition lists {len(self.class_of)} vertices, expected {self.n}"
            )
        return self

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> "Partition":
        """Create a partition from any per-vertex labelling."""
        return cls(n=len(labels), class_of=tuple(labels))

    @classmethod
    def from_classes(
        cls, classes: Iterable[Iterable[int]], n: int | None = None, one_based=False
    ) -> "Partition":
        """Create a partition from its classes.

        Every vertex must appear in exactly one class.
        """
        offset = 1 if one_based else 0
        members = [[v - offset for v in cls_] for cls_ in classes]
        if any(not cls_ for cls_ in members):
            raise ValueError("Partition classes must be non-empty")
        size = n if n is not None else sum(len(cls_) for cls_ in members)
        labels: list[int | None] = [None] * size
        for index, cls_ in enumerate(members):
            for v in cls_:
                if not 0 <= v < size:
                    raise ValueError(f"Vertex {v + offset} out of range 1..{size}")
                if labels[v] is not None:
                    raise ValueError(f"Vertex {v + offset} appears in two classes")
                labels[v] = index
        missing = [v + offset for v, label in enumerate(labels) if label is None]
        if missing:
            raise ValueError(f"Vertices {missing} are not in any class")
        return cls.from_labels(labels)

    @classmethod
    def from_json(cls, classes: list[list[int]], n: int | None = None) -> "Partition":
        """Create a partition from its 1-based JSON form."""
        return cls.from_classes(classes, n=n, one_based=True)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        """Return the partition with every vertex in its own class."""
        return cls(n=n, class_of=tuple(range(n)))

    @classmethod
    def single_class(cls, n: int) -> "Partition":
        """Return the partition with one class."""
        return cls(n=n, class_of=(0,) * n)

    @property
    def m(self) -> int:
        """Number of classes."""
        return max(self.class_of) + 1

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        """Members of each class, 0-based, in class order."""
        members: list[list[int]] = [[] for _ in range(self.m)]
        for v, index in enumerate(self.class_of):
            members[index].append(v)
        return tuple(tuple(cls_) for cls_ in members)

    @property
    def sizes(self) -> tuple[int, ...]:
        """Cardinality of each class."""
        counts = [0] * self.m
        for index in self.class_of:
            counts[index] += 1
        return tuple(counts)

    @property
    def representatives(self) -> tuple[int, ...]:
        """Smallest vertex of each class."""
        return tuple(cls_[0] for cls_ in self.classes)

    def indicator(self) -> np.ndarray:
        """Return the n×m 0/1 matrix whose column J is the indicator of class J."""
        matrix = np.zeros((self.n, self.m), dtype=np.int64)
        matrix[np.arange(self.n), list(self.class_of)] = 1
        return matrix

    def to_json(self) -> list[list[int]]:
        """Return the 1-based JSON form, classes sorted by smallest element."""
        return [[v + 1 for v in cls_] for cls_ in self.classes]

    def __str__(self) -> str:
        """Return the 1-based class listing."""
        return "{" + ", ".join(
            "{" + ",".join(str(v) for v in cls_) + "}" for cls_ in self.to_json()
        ) + "}"


class PolydiagonalSpec(BaseModel):
    """The subspace of states that agree on every class of a partition."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    partition: Partition

    @property
    def dimension(self) -> int:
        """Dimension per scalar cell coordinate, the number of classes."""
        return self.partition.m

    def layout(self, cell_dim: int = 1, layout: Layout = Layout.CELLWISE) -> StateLayout:
        """Layout of a full state on the partitioned vertex set."""
        return StateLayout(n=self.partition.n, cell_dim=cell_dim, layout=layout)

    def spread(
        self, x: Any, cell_dim: int = 1, layout: Layout = Layout.CELLWISE
    ) -> float:
        """Return the largest within-class coordinate spread of a state."""
        cells = self.layout(cell_dim, layout).to_cells(x)
        worst = 0.0
        for cls_ in self.partition.classes:
            block = cells[:, list(cls_), :]
            worst = max(worst, float(np.max(block.max(axis=1) - block.min(axis=1))))
        return worst

    def contains(
        self,
        x: Any,
        cell_dim: int = 1,
        layout: Layout = Layout.CELLWISE,
        tol: float = 0.0,
    ) -> bool:
        """Check whether a state is constant on every class."""
        return self.spread(x, cell_dim, layout) <= tol

    def embed(
        self, y: Any, cell_dim: int = 1, layout: Layout = Layout.CELLWISE
    ) -> np.ndarray:
        """Copy the value of each class to all of its members."""
        quotient = StateLayout(n=self.partition.m, cell_dim=cell_dim, layout=layout)
        cells = quotient.to_cells(y)[:, list(self.partition.class_of), :]
        return self.layout(cell_dim, layout).from_cells(cells)

    def project(
        self, x: Any, cell_dim: int = 1, layout: Layout = Layout.CELLWISE
    ) -> np.ndarray:
        """Read off the value of each class at its smallest vertex."""
        cells = self.layout(cell_dim, layout).to_cells(x)
        picked = cells[:, list(self.partition.representatives), :]
        return StateLayout(
            n=self.partition.m, cell_dim=cell_dim, layout=layout
        ).from_cells(picked)
