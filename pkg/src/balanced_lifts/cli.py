"""Command-line entry point.

Exit status is 0 on success, 1 when a check fails and 2 on bad input.
Results go to ``--out`` or standard output; human-readable notes and logs go
to standard error.
"""

# Standard Python Libraries
import argparse
from collections.abc import Callable, Sequence
import json
import logging
import sys
from typing import Any, Optional

# Third-Party Libraries
import numpy as np
from pydantic import ValidationError
import yaml  # type: ignore[import-untyped]

from . import balanced, quotient_lift, verification
from ._version import __version__
from .config_loader import load_yaml, set_config_overrides
from .dot_export import emit_dot
from .errors import BalancedLiftsError, SizeMismatchError
from .fixture_loader import list_fixtures, load_fixture
from .integrator import integrate
from .models import (
    AdmissibleSpec,
    CouplingSpec,
    CustomSpec,
    DiGraph,
    Partition,
    PolydiagonalSpec,
    RunConfig,
    VerificationReport,
)
from .serialization import (
    FieldSpec,
    dumps,
    graph_to_json,
    partition_to_json,
    read_graph,
    read_json,
    read_partition,
    read_spec,
    state_from_json,
    trajectory_to_csv,
    write_text,
)
from .utils import FieldKind, format_matrix
from .vector_fields import (
    DEFAULT_MAX_DEGREE,
    VectorFieldHandle,
    admissible_field,
    custom_field,
    gradient_field,
    hamiltonian_field,
    restrict_field,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

# Tolerance that --tol overrides for each check subcommand
TOLERANCE_KEYS = {
    "verify-gradient": "gradient",
    "verify-hamiltonian": "hamiltonian",
    "verify-invariance": "invariance",
    "verify-scaling": "scaling",
    "simulate": "invariance",
}


def note(message: str) -> None:
    """Print a human-readable line to standard error."""
    print(message, file=sys.stderr)


def _emit(config: RunConfig, text: str) -> None:
    write_text(text, config.output)


def _dot(config: RunConfig, g: DiGraph, p: Optional[Partition] = None) -> None:
    if config.dot is not None:
        emit_dot(g, p, config.dot)


def _report(config: RunConfig, report: VerificationReport) -> int:
    _emit(config, dumps(report.to_json_dict()))
    if not report:
        logger.warning(
            f"Check {report.check} failed: deviation {report.deviation:.3e} "
            f"> tolerance {report.tolerance:.3e}"
        )
        return EXIT_FAILED
    return EXIT_OK


def build_field(
    g: Optional[DiGraph], spec: FieldSpec, max_degree: int = DEFAULT_MAX_DEGREE
) -> VectorFieldHandle:
    """Build the vector field described by a spec on a graph.

    Raises
    ------
    GuardExceededError
        If a polynomial of the spec has degree above max_degree.

    """
    if isinstance(spec, CustomSpec):
        if g is not None and g.n != spec.n:
            raise SizeMismatchError(f"Spec describes {spec.n} cells, graph has {g.n}")
        return custom_field(spec.n, spec.cell_dim, spec.components, spec.layout)
    if g is None:
        raise SizeMismatchError("This spec needs a graph")
    if isinstance(spec, AdmissibleSpec):
        return admissible_field(g, spec, max_degree)
    if spec.kind is FieldKind.HAMILTONIAN:
        return hamiltonian_field(g, spec, max_degree)
    return gradient_field(g, spec, max_degree)


def _graph_and_partition(args: argparse.Namespace) -> tuple[DiGraph, Partition]:
    g = read_graph(args.graph)
    return g, read_partition(args.partition, n=g.n)


def cmd_quotient(args: argparse.Namespace, config: RunConfig) -> int:
    """Write the quotient graph of a balanced partition."""
    g, p = _graph_and_partition(args)
    result = quotient_lift.quotient(g, p)
    _emit(config, dumps(graph_to_json(result.quotient)))
    note(f"class sizes: {list(result.class_sizes)}")
    note(format_matrix(result.quotient.adj))
    _dot(config, g, p)
    return EXIT_OK


def cmd_check_balanced(args: argparse.Namespace, config: RunConfig) -> int:
    """Decide whether a partition is balanced, naming an offending pair."""
    g, p = _graph_and_partition(args)
    pair = balanced.first_unbalanced_pair(g, p)
    _dot(config, g, p)
    if pair is None:
        _emit(config, "balanced\n")
        return EXIT_OK
    _emit(config, f"not balanced: vertices {pair[0]} and {pair[1]}\n")
    return EXIT_FAILED


def cmd_enumerate(args: argparse.Namespace, config: RunConfig) -> int:
    """List every balanced partition, one JSON class list per line."""
    g = read_graph(args.graph)
    found = balanced.enumerate_balanced(
        g, max_n=config.guards.max_vertices, workers=config.workers
    )
    lines = [dumps(partition_to_json(p)) for p in found]
    if args.covers:
        lines += [dumps(list(pair)) for pair in balanced.lattice_cover_pairs(found)]
    _emit(config, "".join(lines))
    note(f"{len(found)} balanced partitions")
    return EXIT_OK


def cmd_refine(args: argparse.Namespace, config: RunConfig) -> int:
    """Write the coarsest balanced refinement of a seed partition."""
    g = read_graph(args.graph)
    seed = read_partition(args.partition, n=g.n) if args.partition else None
    refined = balanced.coarsest_balanced_refinement(g, seed)
    _emit(config, dumps(partition_to_json(refined)))
    _dot(config, g, refined)
    return EXIT_OK


def cmd_lift_feasible(args: argparse.Namespace, config: RunConfig) -> int:
    """Print the smallest class sizes of a symmetric lift."""
    q = read_graph(args.quotient)
    k = quotient_lift.symmetric_lift_k_vector(q, max_k=config.guards.max_k)
    if k is None:
        _emit(config, "no symmetric lift\n")
        return EXIT_FAILED
    _emit(config, f"k=({','.join(str(v) for v in k)})\n")
    note(f"lift has {quotient_lift.lift_vertex_count(k)} vertices")
    return EXIT_OK


def _write_lift(config: RunConfig, witness: Any) -> int:
    _emit(config, dumps(graph_to_json(witness.lift)))
    note(f"classes: {json.dumps(partition_to_json(witness.partition))}")
    _dot(config, witness.lift, witness.partition)
    return EXIT_OK


def cmd_lift(args: argparse.Namespace, config: RunConfig) -> int:
    """Write a symmetric lift of a quotient."""
    q = read_graph(args.quotient)
    k = [int(v) for v in args.k.split(",")] if args.k else None
    return _write_lift(config, quotient_lift.build_symmetric_lift(q, k))


def cmd_simple_lift(args: argparse.Namespace, config: RunConfig) -> int:
    """Write a symmetric lift without multiple edges."""
    q = read_graph(args.quotient)
    return _write_lift(config, quotient_lift.build_simple_symmetric_lift(q, args.r))


def cmd_verify_lift(args: argparse.Namespace, config: RunConfig) -> int:
    """Check that a graph folds onto a quotient."""
    g, p = _graph_and_partition(args)
    q = read_graph(args.quotient)
    check = quotient_lift.verify_lift(g, p, q)
    _emit(config, f"{'ok' if check else 'failed'}: {check.message}\n")
    return EXIT_OK if check else EXIT_FAILED


def cmd_symmetric_quotients(args: argparse.Namespace, config: RunConfig) -> int:
    """List the balanced partitions whose quotient is symmetric."""
    g = read_graph(args.graph)
    found = quotient_lift.symmetric_quotients(
        g, max_n=config.guards.max_vertices, workers=config.workers
    )
    _emit(
        config,
        "".join(
            dumps(
                {
                    "partition": partition_to_json(r.partition),
                    "class_sizes": list(r.class_sizes),
                    "quotient": graph_to_json(r.quotient),
                }
            )
            for r in found
        ),
    )
    return EXIT_OK


def _field(args: argparse.Namespace, config: RunConfig, g: DiGraph) -> VectorFieldHandle:
    field = build_field(g, read_spec(args.spec), config.guards.max_degree)
    if getattr(args, "partition", None):
        p = read_partition(args.partition, n=field.n)
        field = restrict_field(field, p, tol=config.tolerances.restriction, seed=config.seed)
    return field


def _samples(config: RunConfig, dim: int) -> np.ndarray:
    box = config.sampling
    return verification.sample_points(dim, box.samples, box.seed, box.low, box.high)


def cmd_verify_gradient(args: argparse.Namespace, config: RunConfig) -> int:
    """Check the Jacobian symmetry of a field, restricted when a partition is given."""
    field = _field(args, config, read_graph(args.graph))
    report = verification.is_gradient_numeric(
        field,
        _samples(config, field.dim),
        tol=config.tolerances.gradient,
        step=config.tolerances.fd_step,
        seed=config.seed,
    )
    return _report(config, report)


def cmd_verify_hamiltonian(args: argparse.Namespace, config: RunConfig) -> int:
    """Check that a field in the (q, p) layout is Hamiltonian."""
    field = _field(args, config, read_graph(args.graph))
    report = verification.is_hamiltonian_numeric(
        field,
        _samples(config, field.dim),
        tol=config.tolerances.hamiltonian,
        step=config.tolerances.fd_step,
        seed=config.seed,
    )
    return _report(config, report)


def _initial_state(
    args: argparse.Namespace, config: RunConfig, field: VectorFieldHandle, p: Partition
) -> np.ndarray:
    if args.x0:
        return state_from_json(read_json(args.x0), size=field.dim)
    rng = np.random.default_rng(config.seed)
    values = rng.uniform(config.sampling.low, config.sampling.high, size=p.m * field.cell_dim)
    return PolydiagonalSpec(partition=p).embed(values, field.cell_dim, field.layout.layout)


def cmd_verify_invariance(args: argparse.Namespace, config: RunConfig) -> int:
    """Integrate from a synchronous state and report the class spread."""
    g, p = _graph_and_partition(args)
    field = build_field(g, read_spec(args.spec), config.guards.max_degree)
    report = verification.flow_invariance_deviation(
        field,
        p,
        _initial_state(args, config, field, p),
        dt=config.integration.dt,
        steps=config.integration.steps,
        tol=config.tolerances.invariance,
    )
    return _report(config, report.model_copy(update={"seed": config.seed}))


def cmd_verify_scaling(args: argparse.Namespace, config: RunConfig) -> int:
    """Compare the potential on the synchrony subspace with k times its quotient."""
    g, p = _graph_and_partition(args)
    spec = read_spec(args.spec)
    if not isinstance(spec, CouplingSpec):
        raise BalancedLiftsError("Scaling is checked for gradient or hamiltonian specs")
    report = verification.scaling_check(
        g,
        p,
        spec,
        samples=config.sampling.samples,
        seed=config.seed,
        tol=config.tolerances.scaling,
        low=config.sampling.low,
        high=config.sampling.high,
    )
    return _report(config, report)


def cmd_simulate(args: argparse.Namespace, config: RunConfig) -> int:
    """Integrate a field and write the trajectory as CSV."""
    g = read_graph(args.graph)
    field = build_field(g, read_spec(args.spec), config.guards.max_degree)
    x0 = state_from_json(read_json(args.x0), size=field.dim)
    trajectory = integrate(field, x0, config.integration.dt, config.integration.steps)
    _emit(config, trajectory_to_csv(trajectory, field.layout.variable_names()))
    report = None
    if args.partition:
        p = read_partition(args.partition, n=field.n)
        subspace = PolydiagonalSpec(partition=p)
        deviation = max(
            subspace.spread(state, field.cell_dim, field.layout.layout)
            for state in trajectory.states
        )
        report = VerificationReport.evaluate(
            "invariance",
            deviation,
            config.tolerances.invariance,
            samples=trajectory.steps,
            details={"partition": p.to_json()},
        )
    elif field.potential is not None and field.kind is FieldKind.HAMILTONIAN:
        report = verification.energy_drift(
            field.potential, trajectory, tol=config.tolerances.energy
        )
    if report is None:
        # Integration raises on a non-finite state, so a returned trajectory passes
        report = VerificationReport.evaluate(
            "trajectory",
            0.0,
            0.0,
            samples=trajectory.steps,
            details={
                "dt": trajectory.dt,
                "steps": trajectory.steps,
                "final": trajectory.final.tolist(),
                "max_abs": float(np.max(np.abs(trajectory.states))),
            },
        )
    text = dumps(report.to_json_dict())
    if args.report:
        write_text(text, args.report)
    else:
        note(text.rstrip())
    return EXIT_OK if report else EXIT_FAILED


def cmd_dot(args: argparse.Namespace, config: RunConfig) -> int:
    """Render a graph as DOT, colored by a partition when given."""
    g = read_graph(args.graph)
    p = read_partition(args.partition, n=g.n) if args.partition else None
    text = emit_dot(g, p, config.dot, mutual=args.mutual)
    if config.dot is None:
        _emit(config, text)
    return EXIT_OK


def cmd_fixture(args: argparse.Namespace, config: RunConfig) -> int:
    """Print a shipped fixture, or list them."""
    if args.name is None:
        _emit(config, "".join(f"{name}\n" for name in list_fixtures()))
    else:
        _emit(config, dumps(load_fixture(args.name)))
    return EXIT_OK


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="RNG seed for sample points")
    common.add_argument("--tol", type=float, help="tolerance of this check")
    common.add_argument("--max-vertices", type=int, help="enumeration size guard")
    common.add_argument("--dot", help="also write the graph as DOT to this path")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--config", help="YAML file merged over the defaults")
    common.add_argument("--workers", type=int, default=1, help="enumeration threads")
    common.add_argument("--dt", type=float, help="integration step")
    common.add_argument("--steps", type=int, help="integration steps")
    common.add_argument(
        "--log-level",
        default="warning",
        choices=["debug", "info", "warning", "error"],
        help="logging level on stderr",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="balanced-lifts",
        description="Balanced partitions, quotients, symmetric lifts and "
        "coupled cell system checks for directed multigraphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    common = _common_options()

    def add(name: str, handler: Callable[..., int], help_text: str) -> argparse.ArgumentParser:
        command = sub.add_parser(name, parents=[common], help=help_text)
        command.set_defaults(handler=handler)
        return command

    command = add("quotient", cmd_quotient, "quotient graph of a balanced partition")
    command.add_argument("graph")
    command.add_argument("partition")

    command = add("check-balanced", cmd_check_balanced, "is a partition balanced")
    command.add_argument("graph")
    command.add_argument("partition")

    command = add("enumerate", cmd_enumerate, "all balanced partitions")
    command.add_argument("graph")
    command.add_argument(
        "--covers", action="store_true", help="append the refinement cover pairs"
    )

    command = add("refine", cmd_refine, "coarsest balanced refinement")
    command.add_argument("graph")
    command.add_argument("partition", nargs="?", help="seed, defaults to valencies")

    command = add("symmetric-quotients", cmd_symmetric_quotients, "symmetric quotients")
    command.add_argument("graph")

    command = add("lift-feasible", cmd_lift_feasible, "class sizes of a symmetric lift")
    command.add_argument("quotient")

    command = add("lift", cmd_lift, "build a symmetric lift")
    command.add_argument("quotient")
    command.add_argument("--k", help="class sizes, comma separated")

    command = add("simple-lift", cmd_simple_lift, "build a lift without multiple edges")
    command.add_argument("quotient")
    command.add_argument("--r", type=int, required=True, help="vertices per class")

    command = add("verify-lift", cmd_verify_lift, "check a graph folds onto a quotient")
    command.add_argument("graph")
    command.add_argument("partition")
    command.add_argument("quotient")

    for name, handler, help_text in (
        ("verify-gradient", cmd_verify_gradient, "Jacobian symmetry of a field"),
        ("verify-hamiltonian", cmd_verify_hamiltonian, "symplectic Jacobian symmetry"),
    ):
        command = add(name, handler, help_text)
        command.add_argument("graph")
        command.add_argument("--spec", required=True)
        command.add_argument("--partition", help="restrict to this synchrony subspace")

    command = add("verify-invariance", cmd_verify_invariance, "synchrony under the flow")
    command.add_argument("graph")
    command.add_argument("partition")
    command.add_argument("--spec", required=True)
    command.add_argument("--x0", help="initial state, random on the subspace by default")

    command = add("verify-scaling", cmd_verify_scaling, "potential scaling on the subspace")
    command.add_argument("graph")
    command.add_argument("partition")
    command.add_argument("--spec", required=True)

    command = add("simulate", cmd_simulate, "integrate a field, trajectory as CSV")
    command.add_argument("graph")
    command.add_argument("--spec", required=True)
    command.add_argument("--x0", required=True)
    command.add_argument("--partition", help="report the spread of this partition")
    command.add_argument("--report", help="write the report JSON here, else stderr")

    command = add("dot", cmd_dot, "render a graph as DOT")
    command.add_argument("graph")
    command.add_argument("--partition")
    command.add_argument("--mutual", action="store_true", help="draw mutual arcs once")

    command = add("fixture", cmd_fixture, "print a shipped fixture or list them")
    command.add_argument("name", nargs="?")

    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    if args.tol is not None and args.subcommand in TOLERANCE_KEYS:
        overrides["tolerances"] = {TOLERANCE_KEYS[args.subcommand]: args.tol}
    if args.seed is not None:
        overrides["sampling"] = {"seed": args.seed}
    if args.max_vertices is not None:
        overrides["guards"] = {"max_vertices": args.max_vertices}
    integration = {
        key: value
        for key, value in (("dt", args.dt), ("steps", args.steps))
        if value is not None
    }
    if integration:
        overrides["integration"] = integration
    return overrides


def load_run_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, the user file and command-line flags into a RunConfig."""
    set_config_overrides(_overrides(args))
    try:
        merged = load_yaml(args.config)
    finally:
        set_config_overrides(None)
    inputs = [
        value
        for key in ("graph", "partition", "quotient", "spec", "x0")
        if (value := getattr(args, key, None))
    ]
    return RunConfig.from_config_dict(
        {
            **merged,
            "subcommand": args.subcommand,
            "inputs": inputs,
            "output": args.out,
            "dot": args.dot,
            "workers": args.workers,
        }
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = load_run_config(args)
        return args.handler(args, config)
    except (
        BalancedLiftsError,
        ValidationError,
        json.JSONDecodeError,
        yaml.YAMLError,
        OSError,
        ValueError,
    ) as e:
        logger.debug(f"{args.subcommand} failed", exc_info=True)
        note(f"error: {' '.join(str(e).split())}")
        return EXIT_INPUT


def main() -> None:
    """Console script entry point."""
    sys.exit(run())
