"""Command-line front end.

usage: discordlab {evolve,scan-basis,detect,classify,survey}
                  [--config CONFIG] [--out OUT] [--a A] [--tau TAU]
                  [--nu-max NU_MAX] [--steps STEPS] [--n N] [--seed SEED]
                  [--epsilon EPSILON] [--c1 C1] [--c2 C2] [--c3 C3] [-v] ...

Exit status: 0 on success, 2 on invalid input, 3 on I/O failure. Errors are reported
as one JSON object on stderr.
"""

import argparse
import json
import logging
import sys

from discordlab.commands import command_factory
from discordlab.config import COMMANDS, RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3


def _nu_list(text: str) -> list[float]:
    if not text.strip():
        return []
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid time list: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discordlab", description="Two-qubit discord laboratory"
    )
    parser.add_argument("command", choices=COMMANDS, help="experiment to run")
    parser.add_argument("--config", type=str, help="JSON run configuration")
    parser.add_argument("-o", "--out", type=str, help="output CSV file")
    parser.add_argument("--a", type=float, help="noise amplitude")
    parser.add_argument("--tau", type=float, help="noise correlation time")
    parser.add_argument("--nu-max", type=float, help="final dimensionless time")
    parser.add_argument("--steps", type=int, help="number of time points")
    parser.add_argument("--n", type=int, help="number of survey samples")
    parser.add_argument("--seed", type=int, help="survey seed")
    parser.add_argument("--stream", type=int, help="survey stream")
    parser.add_argument(
        "--epsilon", type=float, help="perturbation of a Bell-diagonal state"
    )
    parser.add_argument("--c1", type=float, help="Bell-diagonal coefficient c1")
    parser.add_argument("--c2", type=float, help="Bell-diagonal coefficient c2")
    parser.add_argument("--c3", type=float, help="Bell-diagonal coefficient c3")
    parser.add_argument("--max-depth", type=int, help="maximum refinement depth")
    parser.add_argument("--theta-steps", type=int, help="angles per scan block")
    parser.add_argument(
        "--nus", type=_nu_list, help="comma-separated times for scan-basis"
    )
    parser.add_argument("-w", "--workers", type=int, help="worker processes")
    parser.add_argument(
        "--full-scan",
        action="store_true",
        default=None,
        help="optimize over the whole measurement sphere",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """Config file (if any) overridden by the flags given on the command line."""
    if args.config:
        config = RunConfig.from_json(args.command, args.config)
    else:
        config = RunConfig(args.command)
    flags = {
        name: getattr(args, name)
        for name in (
            "out", "a", "tau", "nu_max", "steps", "n", "seed", "stream", "epsilon",
            "c1", "c2", "c3", "max_depth", "theta_steps", "nus", "workers", "full_scan",
        )
    }
    return config.override(**flags)


def report_error(exc: Exception) -> None:
    """One-line JSON error on stderr."""
    error = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("field", "invariant", "deviation", "entry", "magnitude", "filename"):
        value = getattr(exc, attr, None)
        if value is not None:
            error[attr] = value
    print(json.dumps(error, sort_keys=True, default=str), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = load_config(args)
        config.validate()
        command = command_factory.create(config.command, config)
        paths = command.run()
    except OSError as exc:
        report_error(exc)
        return EXIT_IO
    except (ValueError, TypeError) as exc:
        report_error(exc)
        return EXIT_INVALID
    summary = command.summary()
    if summary:
        print(summary)
    for path in paths:
        print(f"Saved to {path!r}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
