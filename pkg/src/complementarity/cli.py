"""Command-line interface: fringe and figure datasets as CSV, plus the verification suite.

Exit codes: 0 success, 1 invalid input, 2 a verification property failed.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager

from . import figures
from ._validation import ComplementarityError
from .channels import NoiseParams
from .interferometer import UnitaryParams
from .verify import DEFAULT_SEED, run_suite

EXIT_OK, EXIT_INVALID, EXIT_PROPERTY = 0, 1, 2

DEFAULTS = {
    "b0": 0.7,
    "t": 0.0,
    "x": 0.4,
    "y": None,
    "z": 0.0,
    "p": 0.0,
    "q": 0.0,
    "chi": 0.0,
    "samples": 16,
    "steps": 101,
    "seed": DEFAULT_SEED,
    "tol": None,
    "out": None,
    "solve_for": "y",
    "sweep": [],
}
COMMAND_DEFAULTS = {"fig6": {"p": 0.4}}


def write_csv(stream, header, rows):
    writer = csv.writer(stream, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([figures.format_value(v) for v in row])


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="ascii") as fh:
            yield fh


def _resolve(args):
    """Merge built-in defaults < JSON config < explicit flags."""
    opts = dict(DEFAULTS)
    opts.update(COMMAND_DEFAULTS.get(args.command, {}))
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
        unknown = set(config) - set(DEFAULTS)
        if unknown:
            raise ComplementarityError(f"unknown config keys: {sorted(unknown)}")
        opts.update(config)
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None and value != []:
            opts[key] = value
    return opts


def _unitary(opts):
    comps = {k: opts[k] for k in ("t", "x", "z")}
    if opts["y"] is not None:
        return UnitaryParams(comps["t"], comps["x"], opts["y"], comps["z"])
    return UnitaryParams.complete("y", **comps)


def _parse_sweep(items):
    swept = {}
    for item in items:
        try:
            name, bounds = item.split("=", 1)
            lo, hi, steps = bounds.split(":")
            swept[name.strip()] = (float(lo), float(hi), int(steps))
        except ValueError:
            raise ComplementarityError(f"bad --sweep {item!r}; expected NAME=MIN:MAX:STEPS") from None
        if name.strip() not in ("b0", "chi", "t", "x", "y", "z", "p", "q"):
            raise ComplementarityError(f"cannot sweep unknown parameter {name!r}")
    return swept


def cmd_fringe(opts):
    return figures.fringe_rows(opts["b0"], _unitary(opts), NoiseParams(opts["p"], opts["q"]),
                               int(opts["samples"]))


def cmd_fig4(opts):
    return figures.fig4_rows(opts["b0"], int(opts["steps"]))


def cmd_fig6(opts):
    return figures.fig6_rows(opts["b0"], opts["x"], opts["p"], opts["q"], int(opts["steps"]))


def cmd_fig8(opts):
    return figures.fig8_rows(int(opts["steps"]))


def cmd_sweep(opts):
    swept = _parse_sweep(opts["sweep"])
    if not swept:
        raise ComplementarityError("sweep needs at least one --sweep NAME=MIN:MAX:STEPS")
    for name, (lo, hi, steps) in swept.items():
        if steps < 2:
            raise ComplementarityError(f"--sweep {name}: steps must be at least 2")
        if name in ("b0", "p", "q") and not (0 <= lo <= 1 and 0 <= hi <= 1):
            raise ComplementarityError(f"--sweep {name}: range must lie in [0, 1]")
    fixed = {k: opts[k] for k in ("b0", "chi", "t", "x", "z", "p", "q")}
    if opts["y"] is not None:
        fixed["y"] = opts["y"]
    NoiseParams(fixed["p"], fixed["q"])
    return figures.sweep_rows(fixed, swept, opts["solve_for"])


def cmd_verify(opts, stream=None):
    stream = stream or sys.stdout
    results = run_suite(tol=opts["tol"], seed=int(opts["seed"]))
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name}  residual={r.residual:.3e}  tol={r.tol:.1e}", file=stream)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} properties passed", file=stream)
    return EXIT_OK if failed == 0 else EXIT_PROPERTY


DATASETS = {"fringe": cmd_fringe, "fig4": cmd_fig4, "fig6": cmd_fig6, "fig8": cmd_fig8, "sweep": cmd_sweep}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(
        prog="complementarity",
        description="Visibility/entanglement datasets for the two-qubit interferometer.",
    )
    common = _Parser(add_help=False)
    for name in ("b0", "t", "x", "y", "z", "p", "q", "chi", "tol"):
        common.add_argument(f"--{name}", type=float)
    common.add_argument("--samples", type=int, help="fringe samples per period (default 16)")
    common.add_argument("--seed", type=int, help=f"verification seed (default {DEFAULT_SEED})")
    common.add_argument("--steps", type=int, help="grid points per axis (default 101)")
    common.add_argument("--out", help="CSV output path (default stdout)")
    common.add_argument("--config", help="JSON file whose keys mirror the flag names")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("fringe", parents=[common], help="detection probability over one phase period")
    sub.add_parser("fig4", parents=[common], help="noiseless negativity over (t, z)")
    sub.add_parser("fig6", parents=[common], help="negativity with bit-flip/phase noise over (t, z)")
    sub.add_parser("fig8", parents=[common], help="pure-state entropy against visibility")
    sweep = sub.add_parser("sweep", parents=[common], help="full-factorial parameter sweep")
    sweep.add_argument("--sweep", action="append", default=[], metavar="NAME=MIN:MAX:STEPS")
    sweep.add_argument("--solve-for", dest="solve_for", choices=("t", "x", "y", "z"),
                       help="unitary component fixed by the unit constraint (default y)")
    sub.add_parser("verify", parents=[common], help="run the property suite")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        opts = _resolve(args)
        if args.command == "verify":
            return cmd_verify(opts)
        header, rows = DATASETS[args.command](opts)
    except (ComplementarityError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    with _output(opts["out"]) as fh:
        write_csv(fh, header, rows)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
