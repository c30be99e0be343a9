"""Graphviz DOT rendering of graphs, with partition classes as fill colors."""

# Standard Python Libraries
import io
import logging
from pathlib import Path
from typing import Optional, TextIO, Union

from .models import DiGraph, Partition

logger = logging.getLogger(__name__)

# Cycled when a partition has more classes than colors
PALETTE = (
    "lightgrey",
    "white",
    "lightblue",
    "lightpink",
    "palegreen",
    "khaki",
    "lightsalmon",
    "plum",
    "lightcyan",
    "wheat",
)


def class_color(index: int) -> str:
    """Fill color of a partition class."""
    return PALETTE[index % len(PALETTE)]


def write_dot(
    g: DiGraph,
    out: TextIO,
    p: Optional[Partition] = None,
    mutual: bool = False,
    name: str = "G",
) -> None:
    """Write g in DOT, one arc per unit of multiplicity.

    With ``mutual`` an arc and its reverse are drawn once with
    ``dir=both``; loops and unmatched arcs are drawn as usual.
    """
    if p is not None and p.n != g.n:
        raise ValueError(f"Partition on {p.n} vertices, graph on {g.n}")
    print(f"digraph {name} {{", file=out)
    for v in range(g.n):
        if p is None:
            print(f'  "{v + 1}";', file=out)
        else:
            color = class_color(p.class_of[v])
            print(
                f'  "{v + 1}" [style=filled, fillcolor={color}, group={p.class_of[v] + 1}];',
                file=out,
            )
    for src in range(g.n):
        for dst in range(g.n):
            count = g.adj[dst][src]
            both = 0
            if mutual and src != dst:
                if dst < src:
                    # Already drawn from the other end
                    count -= min(count, g.adj[src][dst])
                else:
                    both = min(count, g.adj[src][dst])
                    count -= both
            for _ in range(both):
                print(f'  "{src + 1}" -> "{dst + 1}" [dir=both];', file=out)
            for _ in range(count):
                print(f'  "{src + 1}" -> "{dst + 1}";', file=out)
    print("}", file=out)


def emit_dot(
    g: DiGraph,
    p: Optional[Partition] = None,
    path: Union[str, Path, None] = None,
    mutual: bool = False,
) -> str:
    """Render g as DOT and write it to path when one is given.

    Returns the DOT text.
    """
    buffer = io.StringIO()
    write_dot(g, buffer, p, mutual=mutual)
    text = buffer.getvalue()
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logger.info(f"Wrote DOT graph to {path}")
    return text
