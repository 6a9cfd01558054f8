"""Command-line front end: ``sweep``, ``peaks``, ``verify`` and ``presets``.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 internal invariant
violation (including failed ``verify`` checks).
"""

from __future__ import annotations

import argparse
import ast
import math
import operator
import sys

from . import __version__
from ._backend import BACKEND
from .qfi import UnphysicalStateError

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INVARIANT = 0, 2, 3, 4

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}


class UsageError(Exception):
    pass


def parse_number(text: str) -> float:
    """Evaluate a numeric literal or simple arithmetic in ``pi`` (e.g. ``3*pi/4``)."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in ("pi", "π"):
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        raise UsageError(f"cannot parse number {text!r}")

    try:
        value = ev(ast.parse(text.strip().replace("π", "pi"), mode="eval"))
    except (SyntaxError, ZeroDivisionError, OverflowError) as exc:
        raise UsageError(f"cannot parse number {text!r}") from exc
    if not math.isfinite(value):
        raise UsageError(f"number {text!r} is not finite")
    return value


def parse_assignment(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise UsageError(f"expected key=value, got {text!r}")
    return key.strip(), parse_number(value)


def parse_grid(text: str) -> dict[str, tuple[float, float, int]]:
    """Parse ``theta1=0:pi:201,t=0:15:601``."""
    grids = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, spec = part.partition("=")
        fields = spec.split(":")
        if not sep or len(fields) != 3:
            raise UsageError(f"grid axis must look like name=start:stop:count, got {part!r}")
        start, stop, count = parse_number(fields[0]), parse_number(fields[1]), parse_number(fields[2])
        if count != int(count):
            raise UsageError(f"grid count must be an integer, got {fields[2]!r}")
        grids[key.strip()] = (start, stop, int(count))
    return grids


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centralqfi",
        description="QFI sweeps for a driven central qubit coupled to a spin qubit or spin bath.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="evaluate the QFI on an (angle, t) grid and write CSV")
    sw.add_argument("--preset", help="figure preset, see `centralqfi presets`")
    sw.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                    help="override omega0, omega, omega1, g, theta1, phi1, theta2 or phi2")
    sw.add_argument("--eta", choices=("theta1", "phi1"), help="estimated parameter")
    sw.add_argument("--grid", help="axes as name=start:stop:count, comma separated (e.g. theta1=0:pi:201,t=0:15:601)")
    sw.add_argument("--derivative", choices=("exact", "fd"), default="exact")
    sw.add_argument("--fd-step", default="1e-4", help="finite-difference step (default 1e-4)")
    sw.add_argument("--bath-n", type=int, help="number of unpolarized bath spins")
    sw.add_argument("--out", default="-", help="output CSV path (default stdout)")
    sw.add_argument("--emit-plot-script", action="store_true", help="also write <out>_plot.py")
    sw.add_argument("--spot-check", type=int, default=0, metavar="N",
                    help="compare N random rows with standalone evaluations")

    pk = sub.add_parser("peaks", help="count QFI peaks along t at a fixed axis value")
    pk.add_argument("--in", dest="inp", required=True, help="sweep CSV")
    pk.add_argument("--at", required=True, help="axis=value, e.g. theta1=pi/8 (nearest grid value is used)")

    vf = sub.add_parser("verify", help="run the oracle and invariant checks")
    vf.add_argument("--only", help="comma separated check numbers")

    sub.add_parser("presets", help="list the figure presets")
    return parser


def _cmd_sweep(args) -> int:
    from .sweep import build_config, run_sweep

    if args.emit_plot_script and args.out == "-":
        raise UsageError("--emit-plot-script needs --out <path>")
    overrides = dict(parse_assignment(a) for a in args.overrides)
    grids = parse_grid(args.grid) if args.grid else {}
    try:
        config = build_config(
            preset=args.preset,
            overrides=overrides,
            eta=args.eta,
            grids=grids,
            derivative_method=args.derivative,
            fd_step=parse_number(args.fd_step),
            bath_n=args.bath_n,
            output_path=args.out,
            emit_plot_script=args.emit_plot_script,
        )
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc).strip("'\"")) from exc
    text = run_sweep(config, spot_checks=args.spot_check)
    if args.out == "-":
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_peaks(args) -> int:
    from .sweep import count_peaks, read_csv, series_at

    column, value = parse_assignment(args.at)
    try:
        _, rows = read_csv(args.inp)
    except ValueError as exc:
        raise OSError(f"malformed CSV: {exc}") from exc
    try:
        nearest, series = series_at(rows, column, value)
        n = count_peaks(series)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from exc
    print(f"{column}={nearest!r} points={len(series)} peaks={n}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .verify import run_all

    numbers = None
    if args.only:
        try:
            numbers = {int(x) for x in args.only.split(",")}
        except ValueError as exc:
            raise UsageError(f"--only expects check numbers, got {args.only!r}") from exc
    print(f"centralqfi {__version__} verify ({BACKEND} kernels)")
    results = run_all(numbers)
    for r in results:
        print(r.line())
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {failed}" if failed else ""))
    return EXIT_INVARIANT if failed else EXIT_OK


def _cmd_presets(args) -> int:
    from .presets import PRESETS

    for p in PRESETS.values():
        bath = f", bath_n={p.bath_n}" if p.bath_n else ""
        print(f"{p.name:8s} eta={p.eta.value} axis={p.axis}{bath}  {p.description}")
    return EXIT_OK


COMMANDS = {"sweep": _cmd_sweep, "peaks": _cmd_peaks, "verify": _cmd_verify, "presets": _cmd_presets}


def main(argv=None) -> int:
    from .sweep import InvariantViolation

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"centralqfi {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"centralqfi {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UnphysicalStateError, InvariantViolation) as exc:
        print(f"centralqfi {args.command}: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
