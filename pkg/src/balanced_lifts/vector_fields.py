"""Construction of admissible, gradient and Hamiltonian coupled cell systems.

Fields and potentials are built as sympy expressions over the state
coordinates and compiled with ``lambdify`` for evaluation. Gradients and
symplectic gradients are exact symbolic derivatives.
"""

# Standard Python Libraries
from collections.abc import Callable, Sequence
from itertools import combinations, product
import logging
from typing import Any, Optional

# Third-Party Libraries
import numpy as np
import sympy as sp
from sympy.parsing.sympy_parser import parse_expr

from .errors import (
    CouplingError,
    ExpressionError,
    GuardExceededError,
    NotRegularError,
    NotSymmetricError,
    SizeMismatchError,
    UnbalancedPartitionError,
)
from .graph_core import is_bipartite, is_regular, is_symmetric_graph, requires_symmetric_coupling
from .models import (
    AdmissibleSpec,
    CouplingSpec,
    DiGraph,
    Partition,
    Polynomial,
    PolydiagonalSpec,
    StateLayout,
)
from .models.coupling_spec import swap_permutation
from .utils import FieldKind, Layout, check_arithmetic

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 6
RESTRICTION_SAMPLES = 8
RESTRICTION_SEED = 20180101

# Names visible to component expressions besides the state variables
_EXPRESSION_GLOBALS: dict[str, Any] = {
    "Integer": sp.Integer,
    "Float": sp.Float,
    "Rational": sp.Rational,
    "Symbol": sp.Symbol,
    "Function": sp.Function,
}


def state_symbols(layout: StateLayout) -> tuple[sp.Symbol, ...]:
    """Return one real sympy symbol per state coordinate, in state order."""
    return tuple(sp.Symbol(name, real=True) for name in layout.variable_names())


class ScalarFunction:
    """A scalar potential on a state space, such as f or h."""

    def __init__(self, layout: StateLayout, expr: sp.Expr):
        self.layout = layout
        self.symbols = state_symbols(layout)
        self.expr = sp.sympify(expr)
        self._func = sp.lambdify(self.symbols, self.expr, modules="numpy")

    def __call__(self, x: Any) -> float:
        """Evaluate the potential at a state."""
        values = np.asarray(x, dtype=float)
        if values.shape != (self.layout.size,):
            raise SizeMismatchError(
                f"State has shape {values.shape}, expected ({self.layout.size},)"
            )
        return float(self._func(*values))

    def __repr__(self) -> str:
        return f"ScalarFunction({self.expr})"


class VectorFieldHandle:
    """An evaluable vector field on the states of n cells.

    ``expressions`` holds the symbolic components in state order when the
    field was built symbolically. ``potential`` is f for gradient fields and
    h for Hamiltonian fields.
    """

    def __init__(
        self,
        layout: StateLayout,
        kind: FieldKind,
        expressions: Sequence[sp.Expr],
        potential: Optional[ScalarFunction] = None,
        host: Optional[DiGraph] = None,
    ):
        if len(expressions) != layout.size:
            raise SizeMismatchError(
                f"Got {len(expressions)} components for a state of size {layout.size}"
            )
        self.layout = layout
        self.kind = FieldKind(kind)
        self.symbols = state_symbols(layout)
        self.expressions = tuple(sp.sympify(e) for e in expressions)
        self.potential = potential
        self.host = host
        self._func: Callable[..., Any] = sp.lambdify(
            self.symbols, list(self.expressions), modules="numpy"
        )

    @property
    def n(self) -> int:
        """Number of cells."""
        return self.layout.n

    @property
    def cell_dim(self) -> int:
        """Coordinates per cell."""
        return self.layout.cell_dim

    @property
    def dim(self) -> int:
        """Length of a state vector."""
        return self.layout.size

    def __call__(self, x: Any) -> np.ndarray:
        """Evaluate the field at a state."""
        values = np.asarray(x, dtype=float)
        if values.shape != (self.dim,):
            raise SizeMismatchError(f"State has shape {values.shape}, expected ({self.dim},)")
        return np.array(self._func(*values), dtype=float).reshape(self.dim)

    def __repr__(self) -> str:
        return f"VectorFieldHandle(kind={self.kind}, n={self.n}, cell_dim={self.cell_dim})"


def _cell_symbols(symbols: Sequence[sp.Symbol], layout: StateLayout, v: int) -> list[sp.Symbol]:
    return [symbols[i] for i in layout.cell_indices(v)]


def _check_degree(degree: int, max_degree: int) -> None:
    if degree > max_degree:
        raise GuardExceededError(
            f"Polynomial degree {degree} exceeds the limit {max_degree}"
        )


def admissible_field(
    g: DiGraph, spec: AdmissibleSpec, max_degree: int = DEFAULT_MAX_DEGREE
) -> VectorFieldHandle:
    """Build the admissible field of a regular graph.

    Component v is ``internal(x_v) + Σ_u adj[v][u] · pairwise(x_v, x_u)``,
    which only sees x_v and the multiset of its inputs.

    Raises
    ------
    NotRegularError
        If the cells of g do not all have the same valency.

    """
    valency = is_regular(g)
    if valency is None:
        raise NotRegularError("Admissible fields with a single g need a regular graph")
    _check_degree(spec.degree, max_degree)
    layout = StateLayout(n=g.n, cell_dim=spec.cell_dim)
    symbols = state_symbols(layout)
    expressions: list[sp.Expr] = []
    for v in range(g.n):
        own = _cell_symbols(symbols, layout, v)
        for c in range(spec.cell_dim):
            component = spec.internal[c].to_sympy(own)
            for u, mult in enumerate(g.adj[v]):
                if mult:
                    other = _cell_symbols(symbols, layout, u)
                    component += mult * spec.pairwise[c].to_sympy(own + other)
            expressions.append(component)
    logger.debug(f"Built admissible field on {g.n} cells of valency {valency}")
    return VectorFieldHandle(layout, FieldKind.GENERIC, expressions, host=g)


def admissible_component(
    spec: AdmissibleSpec, own: Sequence[float], inputs: Sequence[Sequence[float]]
) -> np.ndarray:
    """Evaluate ``g(x_v; inputs)`` directly, summing the inputs in the given order."""
    own_values = [float(v) for v in own]
    names = sp.symbols(f"a1:{2 * spec.cell_dim + 1}")
    result = []
    for c in range(spec.cell_dim):
        internal = sp.lambdify(
            names[: spec.cell_dim], spec.internal[c].to_sympy(names[: spec.cell_dim])
        )
        pairwise = sp.lambdify(names, spec.pairwise[c].to_sympy(names))
        total = float(internal(*own_values))
        for other in inputs:
            total += float(pairwise(*own_values, *(float(v) for v in other)))
        result.append(total)
    return np.array(result)


def linear_field(g: DiGraph, cell_dim: int = 1) -> VectorFieldHandle:
    """Build ``F = A_G · x`` applied to every cell coordinate.

    Any graph is accepted, regular or not.
    """
    layout = StateLayout(n=g.n, cell_dim=cell_dim)
    symbols = state_symbols(layout)
    expressions = []
    for v in range(g.n):
        for c in range(cell_dim):
            expressions.append(
                sp.Add(
                    *(
                        mult * _cell_symbols(symbols, layout, u)[c]
                        for u, mult in enumerate(g.adj[v])
                        if mult
                    )
                )
            )
    return VectorFieldHandle(layout, FieldKind.GENERIC, expressions, host=g)


def parse_component(text: str, symbols: Sequence[sp.Symbol]) -> sp.Expr:
    """Parse one arithmetic expression over the given state symbols.

    Raises
    ------
    ExpressionError
        On syntax errors, function calls or names that are not state variables.

    """
    local = {str(s): s for s in symbols}
    check_arithmetic(text, local)
    try:
        expr = parse_expr(str(text), local_dict=local, global_dict=dict(_EXPRESSION_GLOBALS))
    except Exception as e:
        raise ExpressionError(f"Cannot parse {text!r}: {e}") from e
    if not isinstance(expr, sp.Expr):
        raise ExpressionError(f"{text!r} is not an arithmetic expression")
    if expr.atoms(sp.Function):
        raise ExpressionError(f"{text!r} calls a function")
    unknown = expr.free_symbols - set(symbols)
    if unknown:
        raise ExpressionError(f"Unknown variables {sorted(map(str, unknown))} in {text!r}")
    return expr


def custom_field(
    n: int,
    cell_dim: int,
    components: Sequence[str],
    layout: Layout = Layout.CELLWISE,
) -> VectorFieldHandle:
    """Build a field from one expression per state coordinate.

    Variables are named ``x1..xn`` (or ``x{v}_{c}`` for wider cells), and
    ``q1..qn, p1..pn`` in the symplectic layout. Admissibility is not checked.
    """
    state = StateLayout(n=n, cell_dim=cell_dim, layout=Layout(layout))
    if len(components) != state.size:
        raise SizeMismatchError(
            f"Got {len(components)} expressions for a state of size {state.size}"
        )
    symbols = state_symbols(state)
    expressions = [parse_component(text, symbols) for text in components]
    return VectorFieldHandle(state, FieldKind.CUSTOM, expressions)


def custom_function(
    n: int, cell_dim: int, expression: str, layout: Layout = Layout.CELLWISE
) -> ScalarFunction:
    """Build a scalar function from an expression over the state variables."""
    state = StateLayout(n=n, cell_dim=cell_dim, layout=Layout(layout))
    return ScalarFunction(state, parse_component(expression, state_symbols(state)))


def _coupling_sides(g: DiGraph, spec: CouplingSpec) -> Optional[Partition]:
    if not is_symmetric_graph(g):
        raise NotSymmetricError(
            f"Only symmetric graphs carry {spec.kind} admissible functions"
        )
    if spec.beta_symmetric:
        return None
    if requires_symmetric_coupling(g):
        raise CouplingError(
            "This graph needs a swap invariant beta: it is not bipartite or its "
            "two sides share a valency"
        )
    return is_bipartite(g)


def _pair_potential(
    g: DiGraph,
    spec: CouplingSpec,
    layout: StateLayout,
    beta_args: Callable[[int, int], list[sp.Symbol]],
    alpha_args: Callable[[int], list[sp.Symbol]],
) -> sp.Expr:
    sides = _coupling_sides(g, spec)
    terms = [spec.alpha.to_sympy(alpha_args(v)) for v in range(g.n)]
    if sides is None:
        # Ordered pairs at weight a_ij / 2: an unordered pair counts a_ij times and
        # a loop only a_ii / 2 times. f^G = k f^Q on quotients with loops needs this.
        for i in range(g.n):
            for j in range(g.n):
                if g.adj[i][j]:
                    terms.append(
                        sp.Rational(g.adj[i][j], 2) * spec.beta.to_sympy(beta_args(i, j))
                    )
    else:
        for i in sides.classes[0]:
            for j in range(g.n):
                if g.adj[i][j]:
                    terms.append(g.adj[i][j] * spec.beta.to_sympy(beta_args(i, j)))
    return sp.Add(*terms)


def gradient_function(
    g: DiGraph, spec: CouplingSpec, max_degree: int = DEFAULT_MAX_DEGREE
) -> ScalarFunction:
    """Build the admissible gradient function f of a symmetric graph.

    ``f = Σ_{i<j} a_ij β(x_i, x_j) + Σ_i (a_ii / 2) β(x_i, x_i) + Σ_i α(x_i)``.
    With a non-symmetric β the pair sum runs from one side of the
    bipartition to the other.
    """
    if spec.kind is not FieldKind.GRADIENT:
        raise CouplingError(f"Expected a gradient coupling spec, got {spec.kind}")
    _check_degree(spec.degree, max_degree)
    layout = StateLayout(n=g.n, cell_dim=spec.cell_dim)
    symbols = state_symbols(layout)

    def cell(v: int) -> list[sp.Symbol]:
        return _cell_symbols(symbols, layout, v)

    expr = _pair_potential(g, spec, layout, lambda i, j: cell(i) + cell(j), cell)
    return ScalarFunction(layout, expr)


def gradient_function_eval(g: DiGraph, spec: CouplingSpec, x: Any) -> float:
    """Evaluate the admissible gradient function at a state."""
    return gradient_function(g, spec)(x)


def gradient_field(
    g: DiGraph, spec: CouplingSpec, max_degree: int = DEFAULT_MAX_DEGREE
) -> VectorFieldHandle:
    """Build ``F = -∇f`` by symbolic differentiation."""
    f = gradient_function(g, spec, max_degree)
    expressions = [-sp.diff(f.expr, s) for s in f.symbols]
    return VectorFieldHandle(f.layout, FieldKind.GRADIENT, expressions, potential=f, host=g)


def hamiltonian_function(
    g: DiGraph, spec: CouplingSpec, max_degree: int = DEFAULT_MAX_DEGREE
) -> ScalarFunction:
    """Build the admissible Hamiltonian h on the symplectic state ``(q, p)``.

    β takes ``(q_i, q_j, p_i, p_j)`` and α takes ``(q_i, p_i)``; pairs are
    weighted as in :func:`gradient_function`.
    """
    if spec.kind is not FieldKind.HAMILTONIAN:
        raise CouplingError(f"Expected a hamiltonian coupling spec, got {spec.kind}")
    _check_degree(spec.degree, max_degree)
    layout = StateLayout(n=g.n, cell_dim=spec.cell_dim, layout=Layout.SYMPLECTIC)
    symbols = state_symbols(layout)
    width = layout.width

    def positions(v: int) -> list[sp.Symbol]:
        return _cell_symbols(symbols, layout, v)[:width]

    def momenta(v: int) -> list[sp.Symbol]:
        return _cell_symbols(symbols, layout, v)[width:]

    expr = _pair_potential(
        g,
        spec,
        layout,
        lambda i, j: positions(i) + positions(j) + momenta(i) + momenta(j),
        lambda v: positions(v) + momenta(v),
    )
    return ScalarFunction(layout, expr)


def hamiltonian_function_eval(g: DiGraph, spec: CouplingSpec, x: Any) -> float:
    """Evaluate the admissible Hamiltonian at a state ``(q, p)``."""
    return hamiltonian_function(g, spec)(x)


def symplectic_gradient(h: ScalarFunction) -> list[sp.Expr]:
    """Return ``J ∇h``: ``q' = ∂h/∂p`` followed by ``p' = -∂h/∂q``."""
    half = h.layout.size // 2
    q, p = h.symbols[:half], h.symbols[half:]
    return [sp.diff(h.expr, s) for s in p] + [-sp.diff(h.expr, s) for s in q]


def hamiltonian_field(
    g: DiGraph, spec: CouplingSpec, max_degree: int = DEFAULT_MAX_DEGREE
) -> VectorFieldHandle:
    """Build ``F = J ∇h`` by symbolic differentiation."""
    h = hamiltonian_function(g, spec, max_degree)
    return VectorFieldHandle(
        h.layout, FieldKind.HAMILTONIAN, symplectic_gradient(h), potential=h, host=g
    )


def _restriction_substitution(
    layout: StateLayout, p: Partition
) -> tuple[StateLayout, dict[sp.Symbol, sp.Symbol]]:
    reduced = layout.with_cells(p.m)
    full = state_symbols(layout)
    small = state_symbols(reduced)
    mapping = {}
    for v in range(layout.n):
        for big, little in zip(layout.cell_indices(v), reduced.cell_indices(p.class_of[v])):
            mapping[full[big]] = small[little]
    return reduced, mapping


def restrict_field(
    F: VectorFieldHandle,
    p: Partition,
    tol: float = 1e-12,
    samples: int = RESTRICTION_SAMPLES,
    seed: int = RESTRICTION_SEED,
) -> VectorFieldHandle:
    """Restrict a field to the polydiagonal subspace of p.

    Class values are copied to every member and each class reads its
    component at its smallest vertex. Before returning, all members of a
    class are checked to agree at seeded random points.

    Raises
    ------
    UnbalancedPartitionError
        If members of a class disagree by more than tol (relative to the
        size of the field values).

    """
    if p.n != F.n:
        raise SizeMismatchError(f"Partition on {p.n} vertices, field on {F.n} cells")
    subspace = PolydiagonalSpec(partition=p)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        y = rng.uniform(-1.0, 1.0, size=p.m * F.cell_dim)
        value = F(subspace.embed(y, F.cell_dim, F.layout.layout))
        spread = subspace.spread(value, F.cell_dim, F.layout.layout)
        scale = max(1.0, float(np.max(np.abs(value))))
        if spread > tol * scale:
            raise UnbalancedPartitionError(
                f"Members of a class of {p} disagree by {spread:.3e} after restriction"
            )
    reduced, mapping = _restriction_substitution(F.layout, p)
    picked = [
        F.expressions[i].xreplace(mapping)
        for v in p.representatives
        for i in F.layout.cell_indices(v)
    ]
    order = [i for v in range(p.m) for i in reduced.cell_indices(v)]
    expressions: list[sp.Expr] = [sp.S.Zero] * reduced.size
    for position, expr in zip(order, picked):
        expressions[position] = expr
    potential = None
    if F.potential is not None:
        potential = restrict_function(F.potential, p)
    logger.debug(f"Restricted a {F.kind} field from {F.n} to {p.m} cells")
    return VectorFieldHandle(reduced, F.kind, expressions, potential=potential)


def restrict_function(f: ScalarFunction, p: Partition) -> ScalarFunction:
    """Restrict a scalar function to the polydiagonal subspace of p."""
    if p.n != f.layout.n:
        raise SizeMismatchError(f"Partition on {p.n} vertices, function on {f.layout.n} cells")
    reduced, mapping = _restriction_substitution(f.layout, p)
    return ScalarFunction(reduced, f.expr.xreplace(mapping))


def third_derivative_violation(f: ScalarFunction) -> Optional[tuple[int, int, int]]:
    """Find three distinct cells with a non-zero mixed third derivative.

    Admissible functions of the pairwise form have ``∂³f/∂x_i∂x_j∂x_k ≡ 0``
    for pairwise distinct cells. Returns the first offending 1-based triple,
    or None.
    """
    layout = f.layout
    for i, j, k in combinations(range(layout.n), 3):
        for a, b, c in product(
            layout.cell_indices(i), layout.cell_indices(j), layout.cell_indices(k)
        ):
            derivative = sp.diff(f.expr, f.symbols[a], f.symbols[b], f.symbols[c])
            if sp.expand(derivative) != 0:
                return (i + 1, j + 1, k + 1)
    return None


def _monomials(arity: int, degree: int) -> list[tuple[int, ...]]:
    return [
        exponents
        for exponents in product(range(degree + 1), repeat=arity)
        if sum(exponents) <= degree
    ]


def random_admissible_spec(
    seed: int = RESTRICTION_SEED, cell_dim: int = 1, scale: float = 0.5
) -> AdmissibleSpec:
    """Draw a generic cubic admissible spec with bounded dynamics.

    Every internal component is ``-x_c^3`` plus random terms of degree at
    most 2; every pairwise component has degree at most 2 and a coefficient
    in [0.5, 1] on the input ``y_c``.
    """
    rng = np.random.default_rng(seed)
    internal, pairwise = [], []
    for c in range(cell_dim):
        cube = [0] * cell_dim
        cube[c] = 3
        terms = [(tuple(cube), -1.0)]
        terms += [
            (e, float(rng.uniform(-scale, scale))) for e in _monomials(cell_dim, 2)
        ]
        internal.append(Polynomial(arity=cell_dim, terms=tuple(terms)))
        linear = [0] * (2 * cell_dim)
        linear[cell_dim + c] = 1
        pair_terms = [
            (e, float(rng.uniform(-scale, scale)))
            for e in _monomials(2 * cell_dim, 2)
            if e != tuple(linear)
        ]
        pair_terms.append((tuple(linear), float(rng.uniform(0.5, 1.0))))
        pairwise.append(Polynomial(arity=2 * cell_dim, terms=tuple(pair_terms)))
    return AdmissibleSpec(cell_dim=cell_dim, internal=tuple(internal), pairwise=tuple(pairwise))


def random_coupling_spec(
    seed: int = RESTRICTION_SEED,
    kind: FieldKind = FieldKind.GRADIENT,
    cell_dim: int = 1,
    degree: int = 3,
    bound: float = 2.0,
) -> CouplingSpec:
    """Draw α and a swap invariant β with coefficients in [-bound, bound]."""
    kind = FieldKind(kind)
    rng = np.random.default_rng(seed)
    alpha = Polynomial(
        arity=cell_dim,
        terms=tuple(
            (e, float(rng.uniform(-bound, bound))) for e in _monomials(cell_dim, degree)
        ),
    )
    raw = Polynomial(
        arity=2 * cell_dim,
        terms=tuple(
            (e, float(rng.uniform(-bound, bound)))
            for e in _monomials(2 * cell_dim, degree)
        ),
    )
    swapped = raw.permuted(swap_permutation(kind, cell_dim))
    beta = Polynomial(
        arity=raw.arity,
        terms=tuple((e, 0.5 * c) for e, c in raw.coefficients.items())
        + tuple((e, 0.5 * c) for e, c in swapped.coefficients.items()),
    )
    return CouplingSpec(kind=kind, cell_dim=cell_dim, alpha=alpha, beta=beta)
