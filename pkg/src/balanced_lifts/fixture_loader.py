"""Access to the graphs, partitions and systems shipped with the package."""

# Standard Python Libraries
import logging
from pathlib import Path
from typing import Any, Optional

from .errors import BalancedLiftsError
from .models import DiGraph, Partition
from .serialization import FieldSpec, graph_from_json, partition_from_json, read_json, spec_from_json

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    """Return the path of a shipped fixture, given with or without ``.json``.

    Raises
    ------
    BalancedLiftsError
        If no fixture has that name.

    """
    stem = name[:-5] if name.endswith(".json") else name
    path = FIXTURE_DIR / f"{stem}.json"
    if not path.is_file():
        raise BalancedLiftsError(
            f"Unknown fixture {name!r}, available: {', '.join(list_fixtures())}"
        )
    return path


def list_fixtures() -> list[str]:
    """Names of all shipped fixtures, sorted."""
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json"))


def load_fixture(name: str) -> Any:
    """Return the raw JSON of a fixture."""
    path = fixture_path(name)
    logger.debug(f"Loading fixture {path}")
    return read_json(path)


def load_graph(name: str) -> DiGraph:
    """Load a graph fixture."""
    return graph_from_json(load_fixture(name))


def load_partition(name: str, n: Optional[int] = None) -> Partition:
    """Load a partition fixture."""
    return partition_from_json(load_fixture(name), n=n)


def load_spec(name: str) -> FieldSpec:
    """Load a field spec fixture."""
    return spec_from_json(load_fixture(name))
