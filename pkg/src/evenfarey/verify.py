"""Self-checks shared by the command line and the test-suite."""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .density import g_closed, g_sum
from .farey import UNIT, Interval
from .geometry import format_rational
from .pairs import even_pairs, small_sum_probability, type_histogram
from .reference import reference_rows, reference_tuples
from .tessellation import (
    admissible_cells,
    cell,
    checksum,
    p_value,
    u_region,
    vertex_alphas,
)


@dataclass(frozen=True)
class RowResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _fmt_pt(p) -> str:
    return f"({format_rational(p[0])}, {format_rational(p[1])})"


def check_row(row) -> list[RowResult]:
    name = ",".join(map(str, row.tuple))
    poly = cell(row.tuple)
    got = {(v.x, v.y) for v in poly.vertices}
    want = set(row.vertices)
    out = []
    if got != want:
        missing = ", ".join(_fmt_pt(v) for v in sorted(want - got))
        extra = ", ".join(_fmt_pt(v) for v in sorted(got - want))
        out.append(RowResult(f"cell {name}", False, f"missing {missing or '-'}; unexpected {extra or '-'}"))
        return out
    out.append(RowResult(f"cell {name}", True))
    expected = row.weights()
    bad = []
    for w in vertex_alphas(row.tuple):
        v = (w.vertex.x, w.vertex.y)
        if w.alpha != expected[v]:
            bad.append(f"vertex {_fmt_pt(v)} alpha {w.alpha} != {expected[v]}")
    out.append(RowResult(f"alpha {name}", not bad, "; ".join(bad)))
    return out


def check_checksum(c) -> RowResult:
    n = len(c.polygon.vertices)
    target = Fraction(4 if n == 4 else 2, p_value(c.tuple))
    got = checksum(c)
    name = ",".join(map(str, c.tuple))
    ok = n in (3, 4) and got == target
    return RowResult(f"checksum {name}", ok, "" if ok else f"{got} != {target} ({n} vertices)")


def check_tables(max_param: int = 41, max_level: int = 20) -> list[RowResult]:
    """Recompute every reference cell, weight and checksum; also check completeness per level."""
    results = []
    for row in reference_rows(max_param, max_level):
        results += check_row(row)
    for r in range(1, max_level + 1):
        cells = admissible_cells(r, max_entry=max_param)
        got = {c.tuple for c in cells}
        want = reference_tuples(r, max_param)
        detail = ""
        if got != want:
            detail = f"unexpected {sorted(got - want)}, missing {sorted(want - got)}"
        results.append(RowResult(f"level {r} tuples", got == want, detail))
        results += [check_checksum(c) for c in cells]
    return results


def special_points(max_entry: int = 12, max_level: int = 6) -> list[tuple[Fraction, Fraction]]:
    """Vertices and edge midpoints of U-regions, plus points on the support edges."""
    pts = set()
    for r in range(1, max_level + 1):
        for c in admissible_cells(r, max_entry=max_entry):
            verts = u_region(c.tuple).vertices
            for i, v in enumerate(verts):
                w = verts[(i + 1) % len(verts)]
                pts.add((v.x, v.y))
                pts.add(((v.x + w.x) / 2, (v.y + w.y) / 2))
    for d in (7, 11, 29, 97):
        for a in range(1, d):
            z = Fraction(a, 3 * d)
            pts.add((z, 1 - 2 * z))  # on 2u + v = 1
            pts.add((Fraction(1), Fraction(a, d)))  # on u = 1
    pts -= {(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1))}
    return sorted(pts)


def sample_points(n: int, seed: int = 20240601, special_share: float = 0.5):
    """Seeded mix of random rationals (denominators <= 1000) and special placements."""
    rng = random.Random(seed)
    special = special_points()
    k = min(len(special), int(n * special_share))
    chosen = rng.sample(special, k)
    while len(chosen) < n:
        d = rng.randint(2, 1000)
        p = (Fraction(rng.randint(0, d), d), Fraction(rng.randint(0, d), d))
        if p not in ((0, 1), (1, 0), (1, 1)):
            chosen.append(p)
    return chosen


def cross_check_density(points, threads: int = 1) -> list[RowResult]:
    def one(p):
        u, v = p
        a, b = g_closed(u, v), g_sum(u, v)
        name = f"density at {_fmt_pt(p)}"
        return RowResult(name, a == b, "" if a == b else f"closed {a} != levels {b}")

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(one, points))
    return [one(p) for p in points]


def subinterval_check(Q: int, interval: Interval, max_type: int = 4, tol: float = 0.02):
    """Compare type shares and the small-sum share on an interval with the full range."""
    sub = even_pairs(Q, interval)
    full = even_pairs(Q, UNIT)
    hs, hf = type_histogram(sub), type_histogram(full)
    out = []
    for r in range(1, max_type + 1):
        a, b = float(hs.get(r, 0)), float(hf.get(r, 0))
        out.append(RowResult(f"type {r} share", abs(a - b) <= tol, f"{a:.6f} vs {b:.6f}"))
    a, b = float(small_sum_probability(sub)), float(small_sum_probability(full))
    out.append(RowResult("small-sum share", abs(a - b) <= tol, f"{a:.6f} vs {b:.6f}"))
    return out
