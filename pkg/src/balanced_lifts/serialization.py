"""File formats: graph, partition, coupling spec and state JSON, trajectory CSV.

Vertices are 1-based in every file. JSON is written in one canonical form,
so reading a file this module wrote and writing it again gives the same bytes.
"""

# Standard Python Libraries
import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

# Third-Party Libraries
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .graph_core import from_edge_list, to_edge_list
from .integrator import Trajectory
from .models import AdmissibleSpec, CouplingSpec, CustomSpec, DiGraph, Partition
from .utils import FieldKind

logger = logging.getLogger(__name__)

FieldSpec = Union[CouplingSpec, AdmissibleSpec, CustomSpec]
PathLike = Union[str, Path]


class GraphFile(BaseModel):
    """On-disk form of a graph."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=1, description="Number of vertices")
    edges: list[tuple[int, int, int]] = Field(
        default_factory=list, description="1-based (src, dst, multiplicity) triples"
    )


def dumps(data: Any) -> str:
    """Render JSON in the canonical single-line form with a final newline."""
    return json.dumps(data) + "\n"


def read_json(path: PathLike) -> Any:
    """Load a JSON document from a file."""
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def write_text(text: str, path: Optional[PathLike] = None) -> None:
    """Write text to a file, or to standard output without a path."""
    if path is None:
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.info(f"Wrote {path}")


def graph_from_json(data: Any) -> DiGraph:
    """Build a graph from ``{"n": ..., "edges": [[src, dst, mult], ...]}``."""
    model = GraphFile.model_validate(data)
    return from_edge_list(model.n, model.edges)


def graph_to_json(g: DiGraph) -> dict[str, Any]:
    """Return the edge-list form of a graph."""
    return {"n": g.n, "edges": [list(edge) for edge in to_edge_list(g)]}


def partition_from_json(data: Any, n: Optional[int] = None) -> Partition:
    """Build a partition from a list of 1-based classes."""
    if not isinstance(data, list) or not all(isinstance(c, list) for c in data):
        raise ValueError("A partition is a list of classes, each a list of vertices")
    return Partition.from_json(data, n=n)


def partition_to_json(p: Partition) -> list[list[int]]:
    """Return the 1-based class list, classes ordered by smallest vertex."""
    return p.to_json()


def spec_from_json(data: Any) -> FieldSpec:
    """Build a field spec, dispatching on its ``kind``.

    ``gradient`` and ``hamiltonian`` give a :class:`CouplingSpec`,
    ``generic-admissible`` an :class:`AdmissibleSpec` and ``custom`` a
    :class:`CustomSpec`.
    """
    if not isinstance(data, dict):
        raise ValueError("A field spec is a JSON object")
    kind = FieldKind(data.get("kind", FieldKind.GRADIENT))
    if kind is FieldKind.CUSTOM:
        return CustomSpec.model_validate(data)
    if kind is FieldKind.GENERIC:
        return AdmissibleSpec.model_validate({k: v for k, v in data.items() if k != "kind"})
    return CouplingSpec.model_validate(data)


def spec_to_json(spec: FieldSpec) -> dict[str, Any]:
    """Return the JSON form of a field spec, polynomials as coefficient tables."""
    data = spec.model_dump(mode="json")
    if isinstance(spec, AdmissibleSpec):
        data = {"kind": FieldKind.GENERIC.value, **data}
    return data


def state_from_json(data: Any, size: Optional[int] = None) -> np.ndarray:
    """Build a state vector from a flat list of numbers."""
    state = np.asarray(data, dtype=float)
    if state.ndim != 1:
        raise ValueError("A state is a flat list of numbers")
    if size is not None and state.size != size:
        raise ValueError(f"State has {state.size} coordinates, expected {size}")
    return state


def trajectory_to_csv(trajectory: Trajectory, names: list[str]) -> str:
    """Render a trajectory as CSV with a ``t`` column and one column per coordinate."""
    if len(names) != trajectory.states.shape[1]:
        raise ValueError(
            f"Got {len(names)} column names for {trajectory.states.shape[1]} coordinates"
        )
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t", *names])
    for t, state in zip(trajectory.times, trajectory.states):
        writer.writerow([repr(float(t)), *(repr(float(v)) for v in state)])
    return buffer.getvalue()


def trajectory_from_csv(text: str) -> tuple[list[str], Trajectory]:
    """Parse CSV written by :func:`trajectory_to_csv`."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][0] != "t":
        raise ValueError("Trajectory CSV must start with a header whose first column is t")
    values = np.array([[float(v) for v in row] for row in rows[1:]])
    times, states = values[:, 0], values[:, 1:]
    dt = float(times[1] - times[0]) if len(times) > 1 else 0.0
    return rows[0][1:], Trajectory(times, states, dt)


def read_graph(path: PathLike) -> DiGraph:
    """Read a graph file."""
    return graph_from_json(read_json(path))


def read_partition(path: PathLike, n: Optional[int] = None) -> Partition:
    """Read a partition file."""
    return partition_from_json(read_json(path), n=n)


def read_spec(path: PathLike) -> FieldSpec:
    """Read a field spec file."""
    try:
        return spec_from_json(read_json(path))
    except ValidationError as e:
        logger.error(f"Invalid field spec in {path}: {e}")
        raise
