"""
Command-line interface for eigencone.

Data goes to standard output (or --out); diagnostics go to standard error through the logger.
Exit status is 0 on success, 1 on geometric errors and 2 on usage or input errors.
"""
import argparse
import math
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import ValidationError

from .config import get_env_file_template
from .covering.covering import (
    closed_lift,
    cover_phase,
    cover_winding_number,
    lift_curve,
)
from .evaluation.bench import run_bench
from .exceptions import GeometryError
from .geometry.curves import load_curve, load_curve_spec
from .geometry.metric_geometry import metric_at
from .geometry.symspace import SymPoint, TangentVec
from .mechanics.mass_spring import (
    Boundary,
    SpringSystem,
    energy,
    equilibrium,
    hessian,
    hessian_matrix,
    metric_kernel,
    normal_modes,
    param_map,
    pullback_metric,
    pullback_metric_closed_form,
)
from .spectral.eigen_oracle import eigen_closed_form, eigen_numeric
from .transport.holonomy import cover_holonomy_group, holonomy_group
from .transport.parallel_transport import (
    eigenvector_continuation,
    geometric_phase,
    parallel_transport,
    winding_number,
)
from .utils.logging import EigenconeLogger, cli_logger as logger, log_numerics
from .utils.serialization import dump_json, write_csv
from .verification.berry_verify import run_verification


def parse_floats(text: str) -> Tuple[float, ...]:
    """Comma-separated reals."""
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated numbers, got {text!r}")
    if not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"Values must be finite, got {text!r}")
    return values


def parse_triple(text: str) -> Tuple[float, float, float]:
    """x,y,z"""
    values = parse_floats(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"Expected three comma-separated numbers, got {text!r}")
    return values[0], values[1], values[2]


def parse_branch(text: str) -> int:
    if text not in ("+1", "1", "-1"):
        raise argparse.ArgumentTypeError(f"Branch must be +1 or -1, got {text!r}")
    return -1 if text == "-1" else 1


def create_env_file(args: argparse.Namespace) -> int:
    """Create a .env file template."""
    env_path = Path.cwd() / ".env"
    if env_path.exists() and not args.force:
        overwrite = input(".env file already exists. Overwrite? (y/n): ")
        if overwrite.lower() != "y":
            logger.info("Aborted.")
            return 0
    with open(env_path, "w") as f:
        f.write(get_env_file_template())
    logger.info(f".env template created at {env_path}")
    return 0


def show_metric(args: argparse.Namespace) -> int:
    """Print the cartesian and cylindrical metric at a point."""
    x, y, z = args.at
    metric = metric_at(SymPoint(x=x, y=y, z=z))
    dump_json({"at": [x, y, z], "cart": metric.cart, "pol": metric.pol}, path=args.out)
    return 0


def show_eigen(args: argparse.Namespace) -> int:
    """Print the eigenpair at a point, on a given angle branch when one is passed."""
    x, y, z = args.at
    p = SymPoint(x=x, y=y, z=z)
    if args.branch is not None:
        pair = eigen_closed_form(p, args.branch)
    else:
        pair = eigen_numeric(p)
    dump_json(pair, path=args.out)
    return 0


def run_transport(args: argparse.Namespace) -> int:
    """Transport along a curve file and write the per-sample table as CSV."""
    curve = load_curve(args.curve, args.samples)
    if args.init == "auto":
        result = eigenvector_continuation(curve, substeps=args.steps_per_sample)
    else:
        components = parse_triple(args.init)
        v0 = TangentVec(base=curve.samples[0], frame_components=components)
        result = parallel_transport(curve, v0, substeps=args.steps_per_sample)
    write_csv(result.to_frame(), path=args.out)
    return 0


def show_phase(args: argparse.Namespace) -> int:
    curve = load_curve(args.curve, args.samples)
    dump_json({"phase": geometric_phase(curve)}, path=args.out)
    return 0


def show_winding(args: argparse.Namespace) -> int:
    curve = load_curve(args.curve, args.samples)
    dump_json({"winding": winding_number(curve)}, path=args.out)
    return 0


def show_holonomy(args: argparse.Namespace) -> int:
    group = holonomy_group(args.with_crossings, n_samples=args.samples)
    dump_json(group, path=args.out)
    return 0


def run_cover(args: argparse.Namespace) -> int:
    """Dispatch the cover subcommands."""
    if args.cover_command == "lift":
        curve = load_curve(args.curve, args.samples)
        lifted = lift_curve(curve, start_branch=args.branch, depth=args.depth)
        write_csv(lifted.to_frame(), path=args.out)
    elif args.cover_command == "phase":
        curve = load_curve(args.curve, args.samples)
        lifted = closed_lift(curve, start_branch=args.branch)
        traversals = 1 if len(lifted) == len(curve) else 2
        dump_json(
            {
                "phase": cover_phase(lifted),
                "winding": cover_winding_number(lifted),
                "traversals": traversals,
            },
            path=args.out,
        )
    else:
        group = cover_holonomy_group(args.with_crossings, n_samples=args.samples)
        dump_json(group, path=args.out)
    return 0


def show_massspring(args: argparse.Namespace) -> int:
    """Summarise a mass-spring system and its pulled-back metric."""
    system = SpringSystem(
        boundary=Boundary(args.boundary), kappas=args.kappas, rest_length=args.rest_length
    )
    x0 = equilibrium(system)
    pullback = pullback_metric(system.boundary, system.kappas)
    summary = {
        "boundary": system.boundary,
        "kappas": system.kappas,
        "rest_length": system.rest_length,
        "equilibrium": x0,
        "energy_at_equilibrium": energy(system, *x0),
        "hessian": hessian_matrix(system),
        "point": hessian(system).as_array(),
        "param_map": param_map(system.boundary).matrix,
        "pullback": pullback,
        "pullback_closed_form": pullback_metric_closed_form(system.boundary, system.kappas),
        "kernel": metric_kernel(pullback).T,
        "normal_modes": normal_modes(system),
    }
    dump_json(summary, path=args.out)
    return 0


def run_verify(args: argparse.Namespace) -> int:
    report = run_verification(seed=args.seed, n_points=args.points)
    dump_json(report, path=args.out)
    if not report.passed:
        logger.error("Verification failed; see the report for the checks out of tolerance")
        return 1
    return 0


def run_bench_cmd(args: argparse.Namespace) -> int:
    spec = load_curve_spec(args.curve)
    report = run_bench(spec, args.samples, args.substeps, args.repeats)
    dump_json(report, path=args.out)
    return 0


def _add_curve_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--curve", "-c", required=True, help="Curve file (JSON)")
    parser.add_argument("--samples", "-n", type=int, help="Resample the curve to this many points")


def _add_out_arg(parser: argparse.ArgumentParser, kind: str = "JSON") -> None:
    parser.add_argument(
        "--out", "-o", help=f"Output file path ({kind}); standard output if omitted"
    )


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog="eigencone",
        description="Eigenvector continuation on 2x2 symmetric matrices by parallel transport",
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Log level for diagnostics on standard error",
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # Init command
    init_parser = subparsers.add_parser("init", help="Write a .env template")
    init_parser.add_argument("--force", action="store_true", help="Overwrite without asking")
    init_parser.set_defaults(handler=create_env_file)

    # Point commands (use --at=-1,0,0 for a leading minus sign)
    metric_parser = subparsers.add_parser("metric", help="Cone metric at a point")
    metric_parser.add_argument("--at", type=parse_triple, required=True, help="Point x,y,z")
    _add_out_arg(metric_parser)
    metric_parser.set_defaults(handler=show_metric)

    eigen_parser = subparsers.add_parser("eigen", help="Eigenpair at a point")
    eigen_parser.add_argument("--at", type=parse_triple, required=True, help="Point x,y,z")
    eigen_parser.add_argument(
        "--branch", type=float, help="Angle branch for the closed form (default: numeric solver)"
    )
    _add_out_arg(eigen_parser)
    eigen_parser.set_defaults(handler=show_eigen)

    # Curve commands
    transport_parser = subparsers.add_parser("transport", help="Parallel transport along a curve")
    _add_curve_args(transport_parser)
    transport_parser.add_argument(
        "--init", default="auto",
        help="'auto' for the leading eigenvector, or frame components a1,a2,a3",
    )
    transport_parser.add_argument(
        "--steps-per-sample", type=int, help="RK4 substeps per sample interval"
    )
    _add_out_arg(transport_parser, "CSV")
    transport_parser.set_defaults(handler=run_transport)

    phase_parser = subparsers.add_parser("phase", help="Geometric phase of a curve")
    _add_curve_args(phase_parser)
    _add_out_arg(phase_parser)
    phase_parser.set_defaults(handler=show_phase)

    winding_parser = subparsers.add_parser("winding", help="Winding number of a closed curve")
    _add_curve_args(winding_parser)
    _add_out_arg(winding_parser)
    winding_parser.set_defaults(handler=show_winding)

    holonomy_parser = subparsers.add_parser("holonomy", help="Holonomy group from generator loops")
    holonomy_parser.add_argument(
        "--with-crossings", action="store_true", help="Allow loops through the singular line"
    )
    holonomy_parser.add_argument("--samples", "-n", type=int, help="Samples per generator loop")
    _add_out_arg(holonomy_parser)
    holonomy_parser.set_defaults(handler=show_holonomy)

    # Cover commands
    cover_parser = subparsers.add_parser("cover", help="Branched double covering")
    cover_sub = cover_parser.add_subparsers(dest="cover_command", required=True)
    lift_parser = cover_sub.add_parser("lift", help="Lift a curve to the cover")
    _add_curve_args(lift_parser)
    lift_parser.add_argument("--branch", type=parse_branch, default=1, help="+1 or -1")
    lift_parser.add_argument("--depth", type=int, default=1, help="Number of angle halvings")
    _add_out_arg(lift_parser, "CSV")
    cover_phase_parser = cover_sub.add_parser("phase", help="Phase of the closed lift of a loop")
    _add_curve_args(cover_phase_parser)
    cover_phase_parser.add_argument("--branch", type=parse_branch, default=1, help="+1 or -1")
    _add_out_arg(cover_phase_parser)
    cover_holonomy_parser = cover_sub.add_parser("holonomy", help="Holonomy of the double cover")
    cover_holonomy_parser.add_argument(
        "--with-crossings", action="store_true", help="Allow loops through the branch point"
    )
    cover_holonomy_parser.add_argument("--samples", "-n", type=int, help="Samples per loop")
    _add_out_arg(cover_holonomy_parser)
    cover_parser.set_defaults(handler=run_cover)

    # Mass-spring command
    spring_parser = subparsers.add_parser("massspring", help="Mass-spring pullback metric")
    spring_parser.add_argument(
        "--boundary", choices=[b.value for b in Boundary], required=True, help="Boundary kind"
    )
    spring_parser.add_argument(
        "--kappas", type=parse_floats, required=True, help="Spring constants k1[,k2[,k3]]"
    )
    spring_parser.add_argument("--rest-length", type=float, default=1.0, help="Rest length a")
    _add_out_arg(spring_parser)
    spring_parser.set_defaults(handler=show_massspring)

    # Verification and benchmark
    verify_parser = subparsers.add_parser("verify", help="Cross-validate connection and curvature")
    verify_parser.add_argument("--seed", type=int, help="Random seed")
    verify_parser.add_argument("--points", type=int, default=1000, help="Random points to check")
    _add_out_arg(verify_parser)
    verify_parser.set_defaults(handler=run_verify)

    bench_parser = subparsers.add_parser("bench", help="Transport vs repeated eigendecomposition")
    bench_parser.add_argument("--curve", "-c", required=True, help="Curve file (JSON)")
    bench_parser.add_argument("--samples", "-n", type=int, required=True, help="Sample count")
    bench_parser.add_argument("--substeps", type=int, help="RK4 substeps per sample interval")
    bench_parser.add_argument("--repeats", type=int, help="Timed repetitions (median reported)")
    _add_out_arg(bench_parser)
    bench_parser.set_defaults(handler=run_bench_cmd)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    if args.log_level:
        EigenconeLogger.set_level(args.log_level)

    if args.command is None:
        parser.print_help(sys.stderr)
        return 2

    log_numerics(logger)
    logger.debug(f"Running {args.command}")
    try:
        return args.handler(args)
    except GeometryError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1
    except ValidationError as e:
        logger.error(f"Invalid input: {e}")
        return 2
    except (ValueError, OSError, argparse.ArgumentTypeError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
