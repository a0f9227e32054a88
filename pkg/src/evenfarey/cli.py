"""Command line entry point: ``farey <command> ...``.

Exit codes: 0 success, 1 a verification mismatch, 2 invalid arguments,
3 an I/O failure.  Files are written atomically, so a failed run never
leaves a partial output behind.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import io as fio
from .density import breakdown, g_closed, g_grid
from .farey import UNIT, Interval, Subset, farey_arrays
from .geometry import format_rational, parse_rational
from .pairs import EmpiricalSummary, PairTable, even_pairs, small_sum_probability
from .tessellation import admissible_cells, level_areas, u_region
from .verify import check_tables, cross_check_density, sample_points, subinterval_check

EXIT_OK, EXIT_MISMATCH, EXIT_ARGS, EXIT_IO = 0, 1, 2, 3

PAIR_HEADER = ("Q", "q_prev", "q_next", "r", "a_prev", "a_next")


class UsageError(Exception):
    pass


def _interval(text: str) -> Interval:
    try:
        lo, hi = text.split(",")
        return Interval(parse_rational(lo), parse_rational(hi))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad interval {text!r}: expected a/b,c/d in [0,1]") from exc


def _point(text: str) -> tuple[Fraction, Fraction]:
    try:
        u, v = text.split(",")
        return parse_rational(u), parse_rational(v)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad point {text!r}: expected u,v") from exc


def _threads(args) -> int:
    if args.threads is not None:
        n = args.threads
    elif os.environ.get("FAREY_THREADS"):
        try:
            n = int(os.environ["FAREY_THREADS"])
        except ValueError:
            raise UsageError("FAREY_THREADS must be an integer")
    else:
        n = os.cpu_count() or 1
    if n < 1:
        raise UsageError("thread count must be positive")
    return n


def _need_q(args, minimum: int):
    if args.q is None:
        raise UsageError("--q is required")
    if args.q < minimum:
        raise UsageError(f"--q must be at least {minimum}")


def _pairs_or_empty(Q: int, interval: Interval) -> PairTable:
    try:
        return even_pairs(Q, interval)
    except ValueError:
        empty = np.empty(0, dtype=np.int64)
        return PairTable(Q, empty, empty, empty, empty, empty)


# commands


def cmd_enumerate(args) -> int:
    _need_q(args, 1)
    a, q = farey_arrays(args.q, Subset(args.subset), args.interval)
    if args.format == "json":
        fio.write_json(args.out, [f"{x}/{y}" for x, y in zip(a.tolist(), q.tolist())])
    else:
        fio.write_csv(args.out, ("a", "q"), zip(a.tolist(), q.tolist()))
    return EXIT_OK


def cmd_pairs(args) -> int:
    _need_q(args, 2)
    t = _pairs_or_empty(args.q, args.interval)
    cols = [np.full(len(t), t.Q), t.q_prev, t.q_next, t.r, t.a_prev, t.a_next]
    rows = np.column_stack(cols).tolist() if len(t) else []
    if args.format == "json":
        fio.write_json(args.out, [dict(zip(PAIR_HEADER, row)) for row in rows])
    else:
        fio.write_csv(args.out, PAIR_HEADER, rows)
    return EXIT_OK


def type_shares(max_level: int = 6, max_entry: int = 400) -> dict[int, float]:
    """Predicted share of each type: twice the area of its admissible cells."""
    return {r: float(2 * level_areas(r, max_entry)) for r in range(1, max_level + 1)}


def cmd_types(args) -> int:
    _need_q(args, 2)
    t = _pairs_or_empty(args.q, args.interval)
    summary = EmpiricalSummary.from_pairs(t)
    predicted = type_shares(args.max_level)
    total = max(summary.total_pairs, 1)
    out = {
        "Q": args.q,
        "interval": [format_rational(args.interval.lo), format_rational(args.interval.hi)],
        "total_pairs": summary.total_pairs,
        "types": [
            {
                "r": r,
                "count": summary.per_type.get(r, 0),
                "share": float(fio.format_float(summary.per_type.get(r, 0) / total)),
                "predicted": float(fio.format_float(predicted[r])),
            }
            for r in range(1, args.max_level + 1)
        ],
        "longer": sum(c for r, c in summary.per_type.items() if r > args.max_level),
    }
    fio.write_json(args.out, out)
    return EXIT_OK


def cmd_corollary2(args) -> int:
    _need_q(args, 2)
    t = _pairs_or_empty(args.q, args.interval)
    if len(t) == 0:
        raise UsageError(f"no consecutive even pairs at Q={args.q}")
    frac = small_sum_probability(t)
    gap = abs(float(frac) - 1 / 6)
    if args.format == "json":
        fio.write_json(args.out, {
            "Q": args.q,
            "fraction": format_rational(frac),
            "decimal": fio.format_float(float(frac)),
            "target": "1/6",
            "gap": fio.format_float(gap),
        })
    else:
        fio.atomic_write(args.out, (
            f"fraction {fio.format_float(float(frac))} ({format_rational(frac)})\n"
            f"target 1/6\n"
            f"gap {fio.format_float(gap)}\n"
        ))
    return EXIT_OK


def cmd_density_eval(args) -> int:
    if args.point is None:
        raise UsageError("--point is required")
    u, v = args.point
    if not (0 <= u <= 1 and 0 <= v <= 1):
        raise UsageError("--point must lie in [0,1]^2")
    g = g_closed(u, v)
    corner = (u, v) in ((0, 1), (1, 0), (1, 1))
    exact = "inf" if g == float("inf") else format_rational(g)
    decimal = fio.format_float(float(g))
    b = None if corner else breakdown(u, v)
    if args.format == "json":
        obj = b.to_json() if b else {"point": [format_rational(u), format_rational(v)], "terms": []}
        obj["total"] = exact
        obj["decimal"] = decimal
        fio.write_json(args.out, obj)
        return EXIT_OK
    lines = [exact, decimal]
    if b is not None:
        for t in b.terms:
            lines.append(f"{','.join(map(str, t.tuple))} {t.location} {format_rational(t.contribution)}")
    fio.atomic_write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def density_grid(n: int, threads: int = 1) -> np.ndarray:
    """g on the points (i/(n-1), j/(n-1)); rows are computed independently and stacked in order."""
    N = n - 1
    cols = np.arange(n, dtype=np.int64)

    def row(i):
        return g_grid(np.full(n, i, dtype=np.int64), cols, N)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            rows = list(pool.map(row, range(n)))
    else:
        rows = [row(i) for i in range(n)]
    return np.vstack(rows)


def cmd_density_grid(args) -> int:
    n = args.n
    if n is None or n < 2:
        raise UsageError("--n must be at least 2")
    g = density_grid(n, _threads(args))
    coords = [fio.format_float(i / (n - 1)) for i in range(n)]
    rows = (
        (coords[i], coords[j], fio.format_float(g[i, j]))
        for i in range(n)
        for j in range(n)
    )
    fio.write_csv(args.out, ("u", "v", "g"), rows)
    return EXIT_OK


def cmd_regions(args) -> int:
    if args.level is None or args.level < 1:
        raise UsageError("--level must be a positive integer")
    out = []
    for c in admissible_cells(args.level, max_entry=args.max_param):
        out.append({
            "tuple": list(c.tuple),
            "vertices": c.polygon.vertex_strings(),
            "u_vertices": u_region(c.tuple).vertex_strings(),
        })
    fio.write_json(args.out, out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_param < 5:
        raise UsageError("--max-param must be at least 5")
    results = check_tables(args.max_param, args.max_level)
    if args.cross_check_density:
        pts = sample_points(args.points, args.seed)
        results += cross_check_density(pts, _threads(args))
    if args.interval is not UNIT or args.q is not None:
        _need_q(args, 2)
        results += subinterval_check(args.q, args.interval)
    text = "".join(r.line() + "\n" for r in results)
    failed = sum(not r.ok for r in results)
    text += f"{len(results) - failed} passed, {failed} failed\n"
    fio.atomic_write(args.out, text)
    return EXIT_MISMATCH if failed else EXIT_OK


# parser


def _common(p: argparse.ArgumentParser):
    p.add_argument("--q", type=int, help="order of the Farey sequence")
    p.add_argument("--subset", choices=[s.value for s in Subset], default="all")
    p.add_argument("--interval", type=_interval, default=UNIT, help="a/b,c/d")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="farey", description="Even-denominator Farey statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list F_Q, optionally by parity and interval")
    _common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("pairs", help="consecutive even pairs with their type")
    _common(p)
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("types", help="type histogram with predicted shares (JSON)")
    _common(p)
    p.add_argument("--max-level", type=int, default=6)
    p.set_defaults(func=cmd_types)

    p = sub.add_parser("corollary2", help="share of pairs with q' + q'' <= Q")
    _common(p)
    p.set_defaults(func=cmd_corollary2)

    p = sub.add_parser("density", help="limiting density g(u, v)")
    dsub = p.add_subparsers(dest="mode", required=True)
    e = dsub.add_parser("eval", help="exact value and contributing cells at one point")
    _common(e)
    e.add_argument("--point", type=_point)
    e.set_defaults(func=cmd_density_eval, format="text")
    g = dsub.add_parser("grid", help="CSV of g on an n x n grid of [0,1]^2")
    _common(g)
    g.add_argument("--n", type=int, default=256)
    g.set_defaults(func=cmd_density_grid)

    p = sub.add_parser("regions", help="admissible cells and U-regions of one level (JSON)")
    _common(p)
    p.add_argument("--level", type=int)
    p.add_argument("--max-param", type=int, default=41)
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("verify", help="recompute tables, checksums and optional cross-checks")
    _common(p)
    p.add_argument("--max-param", type=int, default=41)
    p.add_argument("--max-level", type=int, default=20)
    p.add_argument("--cross-check-density", action="store_true")
    p.add_argument("--points", type=int, default=200)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ARGS
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"farey: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except OSError as exc:
        print(f"farey: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"farey: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
