"""``gridctl`` command line.

Exit codes: 0 controllable (or command succeeded), 3 not controllable or a
conjecture violation, 1 usage error, 2 internal, precision or oracle failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from .errors import GridError, UsageError

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL, EXIT_NOT_CONTROLLABLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_dims(text: str) -> tuple[int, ...]:
    """``"7x15"`` -> ``(7, 15)``; a single number is a path."""
    try:
        dims = tuple(int(p) for p in text.lower().replace("×", "x").split("x"))
    except ValueError:
        raise UsageError(f"bad dims {text!r}; expected e.g. 7x15") from None
    if not dims or any(n < 1 for n in dims):
        raise UsageError(f"bad dims {text!r}; axis lengths must be >= 1")
    return dims


def parse_nodes(text: str) -> list[tuple[int, ...]]:
    """``"1,2;4,1"`` -> ``[(1, 2), (4, 1)]``."""
    out = []
    for part in text.split(";"):
        part = part.strip().strip("[]")
        if not part:
            continue
        try:
            out.append(tuple(int(c) for c in part.split(",")))
        except ValueError:
            raise UsageError(f"bad node {part!r}; expected comma-separated integers") from None
    if not out:
        raise UsageError("no nodes given")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gridctl", description="Controllability and observability of grid-graph Laplacians.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "text")):
        sp.add_argument("--dims", required=True, type=parse_dims, help="axis lengths, e.g. 7x15")
        sp.add_argument("--format", choices=formats, default="json")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    for name in ("analyze", "verify"):
        sp = sub.add_parser(name, help="verdict for a node set" + (" with oracle cross-check" if name == "verify" else ""))
        common(sp)
        sp.add_argument("--nodes", required=True, type=parse_nodes, help='e.g. "1,2;4,1"')
        sp.add_argument("--mode", choices=("controllability", "observability"), default="controllability")
        sp.add_argument("--witnesses", action="store_true", help="include witness eigenvectors")
        if name == "analyze":
            sp.add_argument("--verify", action="store_true", help="also run the numerical oracle")
    sp = sub.add_parser("partition", help="symbol diagram")
    common(sp, ("json", "svg", "dot", "text"))
    sp = sub.add_parser("suggest", help="controllable node set")
    common(sp)
    sp.add_argument("--mode", choices=("controllability", "observability"), default="controllability")
    sp = sub.add_parser("spectrum", help="eigenvalues, multiplicities and symmetry profiles")
    common(sp)
    sp = sub.add_parser("scan-conjecture", help="brick inheritance of repeated eigenvalues over a dims range")
    sp.add_argument("--max-dims", required=True, type=parse_dims, help="scan all grids up to these dims")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("-o", "--output")
    return p


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def run(args: argparse.Namespace) -> int:
    # Imported here so a bad GRIDCTL_PRECISION_DIGITS surfaces as a usage error.
    from . import render
    from .analysis import analyze, oracle_check, suggest_nodes
    from .grid import GridSpec
    from .report import analysis_report, partition_report, scan_grids, scan_report, spectrum_report, suggest_report

    t0 = time.perf_counter()
    fmt = args.format
    dump = lambda r: json.dumps(r, indent=2)

    if args.command == "scan-conjecture":
        rep = scan_report(list(scan_grids(args.max_dims)), args.max_dims)
        rep["timing"]["seconds"] = time.perf_counter() - t0
        _emit(dump(rep) if fmt == "json" else render.scan_text(rep), args.output)
        return EXIT_NOT_CONTROLLABLE if rep["violations"] else EXIT_OK

    g = GridSpec(args.dims)
    if args.command in ("analyze", "verify"):
        v = analyze(g, args.nodes, with_witnesses=True)
        check = oracle_check(v) if args.command == "verify" or args.verify else None
        rep = analysis_report(v, args.mode, check, args.witnesses, command=args.command)
        rep["timing"]["seconds"] = time.perf_counter() - t0
        _emit(dump(rep) if fmt == "json" else render.analysis_text(rep), args.output)
        if check is not None and not check.agree:
            print("oracle disagreement:\n" + dump(rep["oracle"]), file=sys.stderr)
            return EXIT_INTERNAL
        return EXIT_OK if v.controllable else EXIT_NOT_CONTROLLABLE
    if args.command == "partition":
        rep = partition_report(g)
        rep["timing"]["seconds"] = time.perf_counter() - t0
        out = {"json": dump, "svg": render.partition_svg, "dot": render.partition_dot, "text": render.partition_text}[fmt](rep)
        _emit(out, args.output)
        return EXIT_OK
    if args.command == "suggest":
        nodes = suggest_nodes(g)
        v = analyze(g, nodes)
        if not v.controllable:
            raise GridError(f"suggested nodes {nodes} do not control {g}")
        rep = suggest_report(g, nodes, v, args.mode, time.perf_counter() - t0)
        _emit(dump(rep) if fmt == "json" else render.suggest_text(rep), args.output)
        return EXIT_OK
    if args.command == "spectrum":
        rep = spectrum_report(g)
        rep["timing"]["seconds"] = time.perf_counter() - t0
        _emit(dump(rep) if fmt == "json" else render.spectrum_text(rep), args.output)
        return EXIT_OK
    raise UsageError(f"unknown command {args.command}")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return run(args)
    except UsageError as exc:
        print(f"gridctl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GridError as exc:
        print(f"gridctl: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
