"""
Command-line front end.

    lindblad-purify project  --model m.json
    lindblad-purify envelope --model m.json --grid 10000 --out env.csv [--oracle-check K]
    lindblad-purify classify --model m.json
    lindblad-purify steer    --model m.json --from 0.2 --to 0.55 --out traj.csv
    lindblad-purify simulate --model m.json --n0 0,0,1 --T 1 --controls zero --out traj.csv

JSON summaries go to stdout, logs to stderr. Commands that produce a CSV
write it to --out; without --out the CSV goes to stdout and the summary is
only logged. Exit codes: 0 ok, 1 parse/I/O, 2 invalid model, 3 infeasible
steering, 4 numerical guard.
"""

from typing import Dict, List, Optional
import argparse
import logging
import sys

import numpy as np

from app.config.logging import configure_logging
from app.config.settings import settings
from app.pipelines.lindblad.runner import LindbladPipeline
from app.services.export_service import (
    ENVELOPE_HEADER,
    TRAJECTORY_HEADER,
    ExportService,
)
from app.services.model_service import ModelService
from app.utils.errors import LindbladControlError, ModelFileError, UsageError

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _triple(text: str) -> np.ndarray:
    try:
        values = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    return np.array(values)


def _radius(text: str) -> float:
    value = float(text)
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"radius must lie in (0, 1], got {value}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


# ============================================================================
# Output helpers
# ============================================================================

def _emit_summary(args, summary: Dict, path: Optional[str] = None):
    if not path:
        ExportService.emit_json(summary, sys.stdout, indent=args.json_indent, timestamp=args.timestamp)
        return
    try:
        with open(path, "w", encoding="utf-8") as stream:
            ExportService.emit_json(summary, stream, indent=args.json_indent, timestamp=args.timestamp)
    except OSError as e:
        raise ModelFileError(f"Cannot write {path}: {e}") from e


def _emit_table(args, table, header: str, write, summary: Dict):
    """CSV to --out with the summary on stdout, or CSV on stdout with the summary logged."""
    if args.out:
        write(args.out, table)
        _emit_summary(args, summary)
    else:
        sys.stdout.write(ExportService.csv_text(table.rows(), header))
        logger.info(ExportService.json_text(summary, indent=None))


# ============================================================================
# Commands
# ============================================================================

def cmd_project(args) -> int:
    model = ModelService.load_model(args.model)
    summary = LindbladPipeline.project(model)
    _emit_summary(args, summary, args.out)
    if not summary["physical"]:
        logger.error("Projected system is not positive semidefinite")
        return 2
    if not summary["inequality_ok"]:
        logger.error("Projected system violates a.b^2 <= 4 a1 a2 a3")
        return 2
    return 0


def cmd_envelope(args) -> int:
    model = ModelService.load_model(args.model)
    curve, summary = LindbladPipeline.envelope(
        model,
        grid_size=args.grid,
        oracle_check=args.oracle_check,
        seed=args.seed,
    )
    _emit_table(args, curve, ENVELOPE_HEADER, ExportService.write_envelope, summary)
    return 0


def cmd_classify(args) -> int:
    model = ModelService.load_model(args.model)
    _emit_summary(args, LindbladPipeline.classify(model), args.out)
    return 0


def cmd_steer(args) -> int:
    model = ModelService.load_model(args.model)
    trajectory, summary = LindbladPipeline.steer(model, args.r_from, args.r_to, dt=args.dt)
    _emit_table(args, trajectory, TRAJECTORY_HEADER, ExportService.write_trajectory, summary)
    return 0


def cmd_simulate(args) -> int:
    model = ModelService.load_model(args.model)
    controls = None if args.controls == "zero" else ExportService.read_controls(args.controls)
    trajectory, summary = LindbladPipeline.simulate(
        model, args.n0, args.duration, controls=controls, dt=args.dt
    )
    _emit_table(args, trajectory, TRAJECTORY_HEADER, ExportService.write_trajectory, summary)
    return 0


# ============================================================================
# Parser
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--model", required=True, help="Model file (JSON)")
    common.add_argument("--out", help="Output file (CSV for curves/trajectories, JSON otherwise)")
    common.add_argument("--json-indent", type=int, default=settings.JSON_INDENT, help="JSON indentation")
    common.add_argument("--seed", type=int, default=settings.ORACLE_SEED, help="Seed for oracle row sampling")
    common.add_argument("--quiet", action="store_true", help="Only log warnings and errors")
    common.add_argument("--timestamp", action="store_true", help="Add generated_at to JSON output")
    common.add_argument("--log-level", default=None, help="Override LOG_LEVEL")

    parser = _Parser(
        prog="lindblad-purify",
        description="Radial controllability and purifiability of two-level Lindblad systems",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("project", parents=[common], help="Six-parameter projected system")
    p.set_defaults(handler=cmd_project)

    p = sub.add_parser("envelope", parents=[common], help="Rate envelope f_M, f_m on a radius grid")
    p.add_argument("--grid", type=_positive_int, default=settings.DEFAULT_GRID_SIZE, help="Grid size N (r = i/N)")
    p.add_argument("--oracle-check", type=int, default=0, metavar="K",
                   help="Check K random rows against the sphere-sampling oracle")
    p.set_defaults(handler=cmd_envelope)

    p = sub.add_parser("classify", parents=[common], help="Purifiability verdict (needs lindblad_ops)")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("steer", parents=[common], help="Steer the Bloch radius between two values")
    p.add_argument("--from", dest="r_from", type=_radius, required=True, help="Initial radius")
    p.add_argument("--to", dest="r_to", type=_radius, required=True, help="Target radius")
    p.add_argument("--dt", type=float, default=settings.DEFAULT_DT, help="Integration step")
    p.set_defaults(handler=cmd_steer)

    p = sub.add_parser("simulate", parents=[common], help="Integrate the Bloch equation")
    p.add_argument("--n0", type=_triple, required=True, help="Initial Bloch vector x,y,z")
    p.add_argument("--controls", default="zero", help="'zero' or a CSV file with t,u1,u2,u3")
    p.add_argument("--T", dest="duration", type=float, required=True, help="Duration")
    p.add_argument("--dt", type=float, default=settings.DEFAULT_DT, help="Integration step")
    p.set_defaults(handler=cmd_simulate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return UsageError.exit_code

    configure_logging(level=args.log_level, quiet=args.quiet)
    try:
        return args.handler(args)
    except LindbladControlError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except ValueError as e:
        logger.error(f"Invalid argument: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
