"""Command-line entry point.

    qens COMMAND [--config FILE] [--seed N] [--out DIR] [--threads N]

Commands map one-to-one onto the experiment presets in `figures`.  The
output directory defaults to the QENS_OUT environment variable, then to
./out.  --seed overrides the config's "seed" key where the command has
one.  Exit codes:

    0  success, all internal consistency checks passed
    2  usage or configuration error
    3  domain error (invalid parameter values, degenerate ensembles)
    4  resource cap exceeded (model enumeration or qubit count)
    5  file error (unreadable config, unwritable output)
    6  a consistency check reported by the summary failed
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import figures
from .analytic import NoBoundaryError, QuadratureError
from .simulator import PostselectionImpossibleError, QubitCapError, StateError
from .weighting import DegenerateEnsembleError, EnumerationCapError, UnboundedWeightError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_CAP = 4
EXIT_FILE = 5
EXIT_CHECK_FAILED = 6


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qens",
        description="Quantum ensembles of simple classifiers: simulation, "
        "analytics, and the experiment suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, runner in sorted(figures.RUNNERS.items()):
        doc = (runner.__doc__ or "").strip().splitlines()[0] if runner.__doc__ else ""
        cmd = sub.add_parser(name, help=doc)
        cmd.add_argument("--config", type=Path, default=None, help="JSON config file")
        cmd.add_argument("--seed", type=int, default=None, help="override the config seed")
        cmd.add_argument(
            "--out",
            type=Path,
            default=None,
            help="output directory (default: $QENS_OUT, then ./out)",
        )
        cmd.add_argument("--threads", type=int, default=1, help="worker threads")
    return parser


def _load_overrides(path: Path | None) -> dict:
    if path is None:
        return {}
    try:
        text = path.read_text()
    except OSError as exc:
        raise _FileError(str(exc)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise figures.ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise figures.ConfigError("config must be a JSON object")
    return data


class _FileError(RuntimeError):
    pass


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = args.out
    if out is None:
        env = os.environ.get("QENS_OUT")
        out = Path(env) if env else Path("out")
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        overrides = _load_overrides(args.config)
        if args.seed is not None:
            if "seed" not in figures.DEFAULTS[args.command]:
                raise figures.ConfigError(f"{args.command} takes no seed")
            overrides = dict(overrides, seed=args.seed)
        summary = figures.run_command(args.command, overrides, out, args.threads)
    except figures.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EnumerationCapError, QubitCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except _FileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except (
        DegenerateEnsembleError,
        UnboundedWeightError,
        NoBoundaryError,
        QuadratureError,
        PostselectionImpossibleError,
        StateError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    for name, passed in summary["checks"].items():
        print(f"[{'ok' if passed else 'FAIL'}] {name}")
    print(f"wrote {args.command}_summary.json to {out}")
    if not summary["ok"]:
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
