"""Utility enumerations and small arithmetic helpers."""

# Standard Python Libraries
import ast
from collections.abc import Iterable
from enum import Enum
from functools import lru_cache
import logging
from math import comb

from .errors import ExpressionError

logger = logging.getLogger(__name__)

# Syntax allowed in polynomial and component expressions
_ARITHMETIC_NODES = (
    ast.Expression,
    ast.BinOp,
    ast.UnaryOp,
    ast.Constant,
    ast.Name,
    ast.Load,
    ast.Add,
    ast.Sub,
    ast.Mult,
    ast.Div,
    ast.Pow,
    ast.USub,
    ast.UAdd,
)


def check_arithmetic(text: str, names: Iterable[str]) -> None:
    """Ensure text is plain arithmetic over the given variable names.

    Only numbers, the named variables, ``+ - * / **`` and unary signs are
    accepted; calls, attributes, subscripts and any other Python syntax are
    rejected before the text reaches sympy.

    Raises
    ------
    ExpressionError
        If the text does not parse or uses anything else.

    """
    allowed = set(names)
    try:
        tree = ast.parse(str(text).strip(), mode="eval")
    except (SyntaxError, ValueError) as e:
        raise ExpressionError(f"Cannot parse {text!r}: {e}") from e
    for node in ast.walk(tree):
        if not isinstance(node, _ARITHMETIC_NODES):
            raise ExpressionError(
                f"{text!r} uses {type(node).__name__}, only arithmetic is allowed"
            )
        if isinstance(node, ast.Constant) and (
            isinstance(node.value, bool) or not isinstance(node.value, (int, float))
        ):
            raise ExpressionError(f"{text!r} contains the non-numeric constant {node.value!r}")
        if isinstance(node, ast.Name) and node.id not in allowed:
            raise ExpressionError(f"Unknown variable {node.id!r} in {text!r}")


class FieldKind(str, Enum):
    """Provenance of a vector field handle."""

    GENERIC = "generic-admissible"
    GRADIENT = "gradient"
    HAMILTONIAN = "hamiltonian"
    CUSTOM = "custom"

    def __str__(self):
        """Return the provenance tag."""
        return self.value


class Layout(str, Enum):
    """How the coordinates of the cells are arranged in a state vector.

    Casting to int returns the number of coordinate blocks a cell is split
    across: cellwise states keep a cell contiguous, symplectic states put all
    positions first and all momenta second.
    """

    CELLWISE = ("cellwise", 1)
    SYMPLECTIC = ("symplectic", 2)

    def __new__(cls, value: str, blocks: int):
        """Create a new instance of the enumeration."""
        obj = str.__new__(cls, value)
        obj._value_ = value
        obj.__dict__["_blocks"] = blocks
        return obj

    def __int__(self):
        """Return the number of coordinate blocks per cell."""
        return self._blocks

    def __str__(self):
        """Return the layout name."""
        return self.value

    @classmethod
    def from_kind(cls, kind: "FieldKind | str") -> "Layout":
        """Get the natural layout for a field kind."""
        if FieldKind(kind) is FieldKind.HAMILTONIAN:
            return cls.SYMPLECTIC
        return cls.CELLWISE


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    """Return the number of set partitions of an n-element set."""
    if n < 0:
        raise ValueError(f"Bell number of negative size {n}")
    if n == 0:
        return 1
    return sum(comb(n - 1, k) * bell_number(k) for k in range(n))


def format_matrix(rows) -> str:
    """Render an integer matrix one row per line, for reports."""
    return "\n".join(" ".join(f"{int(v):>2d}" for v in row) for row in rows)
