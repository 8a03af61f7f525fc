"""Command-line interface.

    rmac betti FILE [--blocks] [--pretty]
    rmac ring FILE [--pretty]
    rmac polygon N [--verify] [--pretty]
    rmac verify N [--pretty]
    rmac sphere-check M [--pretty]

Exit codes: 0 success, 1 failed verification, 2 bad input, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .cohomology import betti_profile
from .cup import ring_table
from .errors import InvariantBreach, RmacError
from .polygon import arcs, combinatorial_generators, genus, verify
from .simplicial import Complex, members, polygon_boundary, simplex_boundary

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _load_complex(path: str) -> Complex:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return Complex.from_json(json.loads(text))


def _emit(data: dict, pretty_text: str | None, pretty: bool) -> None:
    if pretty and pretty_text is not None:
        sys.stdout.write(pretty_text.rstrip("\n") + "\n")
    else:
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")


def _betti_table(profile) -> str:
    lines = ["degree  rank  torsion"]
    for d, (r, t) in enumerate(zip(profile.ranks, profile.torsion)):
        tors = " + ".join(f"Z/{k}" for k in t) or "-"
        lines.append(f"{d:>6}  {r:>4}  {tors}")
    return "\n".join(lines)


def cmd_betti(args) -> int:
    c = _load_complex(args.file)
    profile = betti_profile(c)
    _emit(profile.to_json(with_blocks=args.blocks), _betti_table(profile), args.pretty)
    return EXIT_OK


def cmd_ring(args) -> int:
    c = _load_complex(args.file)
    table = ring_table(c)
    text = None
    if args.pretty:
        lines = [f"{len(table.basis)} basis classes, {len(table.products)} non-zero products"]
        for k, e in enumerate(table.basis):
            kind = "free" if not e.order else f"Z/{e.order}"
            lines.append(f"  [{k}] block {list(members(e.I))} degree {e.degree} {kind}")
        for (i, j), cls in sorted(table.products.items()):
            lines.append(f"  [{i}] * [{j}] = {list(cls.coords)} in block {list(members(cls.I))}")
        text = "\n".join(lines)
    _emit(table.to_json(), text, args.pretty)
    return EXIT_OK


def _polygon_summary(n: int) -> dict:
    gens = combinatorial_generators(n)
    deg1 = [g for g in gens if g.degree == 1]
    subsets = sorted({g.I for g in deg1})
    return {
        "n": n,
        "genus": genus(n) if n >= 4 else 0,
        "predicted_ranks": [1, len(deg1), 1],
        "generators": [g.to_json() for g in gens],
        "subsets": [
            {"block": list(members(I)), "arcs": [list(members(a)) for a in arcs(n, I).arcs]}
            for I in subsets
        ],
    }


def _report_text(report) -> str:
    lines = [f"polygon n={report.n}: {'PASS' if report.passed else 'FAIL'}"]
    for ch in report.checks:
        status = "skip" if ch.skipped else ("pass" if ch.passed else "FAIL")
        lines.append(f"  [{status}] {ch.name}: {ch.detail}")
    return "\n".join(lines)


def _run_verify(n: int, pretty: bool) -> int:
    report = verify(n)
    _emit(report.to_json(), _report_text(report), pretty)
    if not report.passed:
        sys.stderr.write(f"verification failed for n={n}\n")
        return EXIT_FAILED
    return EXIT_OK


def cmd_polygon(args) -> int:
    if args.verify:
        return _run_verify(args.n, args.pretty)
    summary = _polygon_summary(args.n)
    text = (
        f"n={args.n} genus={summary['genus']} ranks={summary['predicted_ranks']}\n"
        + "\n".join(
            f"  {s['block']}: arcs {s['arcs']}" for s in summary["subsets"]
        )
    )
    _emit(summary, text, args.pretty)
    return EXIT_OK


def cmd_verify(args) -> int:
    return _run_verify(args.n, args.pretty)


def cmd_sphere_check(args) -> int:
    profile = betti_profile(simplex_boundary(args.m))
    expected = [1] + [0] * (args.m - 1) + [1]
    ok = list(profile.ranks) == expected and not any(profile.torsion)
    data = {"m": args.m, "ranks": list(profile.ranks), "expected": expected, "passed": ok}
    _emit(data, f"S^{args.m}: ranks {list(profile.ranks)} {'PASS' if ok else 'FAIL'}", args.pretty)
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmac",
        description="Integral cohomology rings of real moment-angle complexes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--pretty", action="store_true", help="human-readable output")
        p.set_defaults(func=func)
        return p

    p = add("betti", cmd_betti, "ranks and torsion per degree")
    p.add_argument("file", help='complex as JSON {"m": int, "facets": [[...]]}, or - for stdin')
    p.add_argument("--blocks", action="store_true", help="include the per-block breakdown")

    p = add("ring", cmd_ring, "full multiplication table")
    p.add_argument("file")

    p = add("polygon", cmd_polygon, "combinatorial generators of the n-gon")
    p.add_argument("n", type=int)
    p.add_argument("--verify", action="store_true", help="cross-check against brute force")

    p = add("verify", cmd_verify, "same as polygon N --verify")
    p.add_argument("n", type=int)

    p = add("sphere-check", cmd_sphere_check, "check the boundary of the m-simplex gives S^m")
    p.add_argument("m", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (json.JSONDecodeError, OSError, RmacError) as exc:
        sys.stderr.write(f"rmac: error: {exc}\n")
        return EXIT_INPUT
    except (InvariantBreach, AssertionError) as exc:
        sys.stderr.write(f"rmac: internal invariant violated: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
