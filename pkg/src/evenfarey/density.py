"""The limiting local density g(u, v) of normalised even-denominator neighbour pairs.

Two independent evaluations are provided:

* :func:`g_closed` sums the harmonic closed form directly;
* :func:`g_sum` adds, level by level, the contribution of every admissible
  cell whose probe centre lands in the cell's closure: 2/p inside, 1/p on
  an edge and alpha/2 at a vertex, with alpha measured from the tangent cone.

They agree exactly on rationals, which is the main consistency check of the
package.  :func:`g_grid` is a vectorised integer version of the closed form
used for grids and numerical integration.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import InvalidParity, OutOfDomain, TruncationUnsound, UnboundedLevels
from .geometry import ConvexPolygon, Location, Point, Tag, locate, point
from .tessellation import (
    KTuple,
    cell,
    last_coeffs,
    p_value,
    probe_center,
    vertex_alpha,
)

INF = math.inf


def _pt(u, v) -> Point:
    p = point(u, v)
    if not (0 <= p.x <= 1 and 0 <= p.y <= 1):
        raise OutOfDomain(f"{p} is outside the unit square")
    return p


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))


def _count_below(s: Fraction) -> int:
    """Number of integers j >= 1 with j < s."""
    return max(0, math.ceil(s) - 1)


def closed_form_terms(u, v) -> dict[int, Fraction]:
    """Contribution of each harmonic index j to the closed form of g.

    The j = 1 part is the density carried by the big puzzle and the j >= 2
    part the density of the baby puzzles with i = 2j + 1.  Raises
    UnboundedLevels at (1, 1), where infinitely many j contribute.
    """
    p = _pt(u, v)
    u, v = p.x, p.y
    if u == 1 and v == 1:
        raise UnboundedLevels("every index j contributes at (1, 1)")
    terms: dict[int, Fraction] = {}

    def add(j, value):
        terms[j] = terms.get(j, Fraction(0)) + value

    orders = ((u, v), (v, u)) if u != v else ((u, v),)
    # interior: both orderings need z < 1 and j < (z + zbar)/(1 - z)
    if u < 1 and v < 1:
        for j in range(1, _count_below((u + v) / (1 - min(u, v))) + 1):
            add(j, Fraction(1, j))
    # slanted edges (j+1) z + zbar = j with (j-1)/(j+1) < z < j/(j+2)
    edge_js = set()
    for z, zb in orders:
        if z < 1:
            t = (z + zb) / (1 - z)
            if t.denominator == 1 and t >= 1:
                j = int(t)
                if Fraction(j - 1, j + 1) < z < Fraction(j, j + 2):
                    edge_js.add(j)
    for j in edge_js:
        add(j, Fraction(1, 2 * j))
    # vertical or horizontal edge z = 1 with (j-1)/(j+1) < zbar < 1
    sides = [zb for z, zb in orders if z == 1 and zb < 1]
    if sides:
        w = max(sides)
        for j in range(1, _count_below((1 + w) / (1 - w)) + 1):
            add(j, Fraction(1, 2 * j))
    # vertices ((j-1)/(j+1), 1) and its mirror image
    corner_js = set()
    for z, zb in orders:
        if zb == 1 and z < 1:
            t = (1 + z) / (1 - z)
            if t.denominator == 1:
                corner_js.add(int(t))
    for j in corner_js:
        add(j, Fraction(2 * j + 1, 8 * j * (j + 1)))
    # diagonal vertices (j/(j+2), j/(j+2))
    if u == v and 0 < u < 1:
        t = 2 * u / (1 - u)
        if t.denominator == 1:
            j = int(t)
            add(j, Fraction(j + 2, 4 * j * (j + 1)))
    return {j: c for j, c in sorted(terms.items()) if c}


def g_closed(u, v):
    """Exact density g(u, v) from the closed harmonic form; +inf at (1, 1)."""
    p = _pt(u, v)
    if p.x == 1 and p.y == 1:
        return INF
    return sum(closed_form_terms(p.x, p.y).values(), Fraction(0))


def big_puzzle_density(u, v) -> Fraction:
    """The j = 1 part of the closed form (levels 1-3 low tuples, level 4 and the tail)."""
    return closed_form_terms(u, v).get(1, Fraction(0))


def baby_puzzle_density(u, v) -> Fraction:
    """The j >= 2 part of the closed form (baby puzzles G_i with i = 2j + 1)."""
    return sum((c for j, c in closed_form_terms(u, v).items() if j >= 2), Fraction(0))


# Level sums


@dataclass(frozen=True)
class Term:
    tuple: KTuple
    location: Location
    contribution: Fraction


def group_of(ks: KTuple) -> str:
    """Name of the component of the density a tuple belongs to.

    ``h1u``: (k), k >= 4; ``h2u``: (1, l), (k, 1) with k, l >= 5;
    ``h3u``: (1, l, 1), l >= 6; ``g4``: level 4; ``gu``: levels >= 5;
    ``hd``: the remaining low tuples (2), (1,3), (3,1), (1,2,3), (3,2,1), (1,4,1).
    """
    r = len(ks)
    if r == 1:
        return "h1u" if ks[0] >= 4 else "hd"
    if r == 2:
        return "h2u" if max(ks) >= 5 else "hd"
    if r == 3:
        return "h3u" if ks[0] == ks[2] == 1 and ks[1] >= 6 else "hd"
    if r == 4:
        return "g4"
    return "gu"


@dataclass
class DensityBreakdown:
    point: Point
    terms: list[Term] = field(default_factory=list)

    @property
    def total(self) -> Fraction:
        return sum((t.contribution for t in self.terms), Fraction(0))

    def by_level(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for t in self.terms:
            out[len(t.tuple)] = out.get(len(t.tuple), Fraction(0)) + t.contribution
        return out

    @property
    def groups(self) -> dict[str, Fraction]:
        out = {name: Fraction(0) for name in ("h1u", "h2u", "h3u", "hd", "g4", "gu")}
        for t in self.terms:
            out[group_of(t.tuple)] += t.contribution
        out["hu"] = out["h1u"] + out["h2u"] + out["h3u"]
        out["gdu"] = out["hd"] + out["g4"] + out["gu"]
        return out

    def to_json(self) -> dict:
        from .geometry import format_rational

        return {
            "point": [format_rational(self.point.x), format_rational(self.point.y)],
            "total": format_rational(self.total),
            "terms": [
                {
                    "tuple": list(t.tuple),
                    "location": str(t.location),
                    "contribution": format_rational(t.contribution),
                }
                for t in self.terms
            ],
        }


def _index_candidates(p: Point, q: Point) -> range:
    """Indices k whose closed base cell meets the segment pq (pq inside the closed triangle)."""
    pts = [p] if p == q else [p, q]
    finite = [s for s in pts if s.y > 0]
    if len(finite) < len(pts):
        if p == q:
            return range(0)
        raise UnboundedLevels("segment reaches the corner (1, 0)")
    vals = [(1 + s.x) / s.y for s in finite]
    return range(max(1, math.ceil(min(vals)) - 1), math.floor(max(vals)) + 1)


def _clip_segment(p: Point, q: Point, k: int):
    """Part of segment pq in the closed base cell of index k (None if empty)."""
    # 1 + x - k y >= 0 and (k + 1) y - 1 - x >= 0
    for a, b, c in ((1, -k, 1), (-1, k + 1, -1)):
        sp = a * p.x + b * p.y + c
        sq = a * q.x + b * q.y + c
        if sp < 0 and sq < 0:
            return None
        if sp < 0 or sq < 0:
            t = sp / (sp - sq)
            x = Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))
            if sp < 0:
                p = x
            else:
                q = x
    return p, q


def strip_tuples(x0: Fraction, depth: int) -> Iterator[KTuple]:
    """Admissible tuples of length <= depth whose closed cell may meet the line x = x0.

    The search follows the image of the segment {x = x0} through the
    branches; a tuple is produced whenever the image is nonempty, which is
    necessary (not sufficient) for the cell closure to meet the line.
    """
    x0 = Fraction(x0)
    if not 0 <= x0 < 1:
        raise ValueError("strip must satisfy 0 <= x0 < 1")
    start = (Point(x0, 1 - x0), Point(x0, Fraction(1)))
    stack = [((), start)]
    while stack:
        ks, (p, q) = stack.pop()
        for k in _index_candidates(p, q):
            seg = _clip_segment(p, q, k)
            if seg is None:
                continue
            child = ks + (k,)
            first = len(child) == 1
            complete = (k % 2 == 0) if first else (k % 2 == 1)
            if complete:
                yield child
            elif len(child) < depth:
                a, b = seg
                stack.append((child, (Point(a.y, k * a.y - a.x), Point(b.y, k * b.y - b.x))))


def _orbit_in_closure(ks: KTuple, c: Point) -> bool:
    """Cheap exact test that c lies in the closure of the cell of ks."""
    x, y = c.x, c.y
    if not (0 <= x <= 1 and 0 <= y <= 1 and x + y >= 1):
        return False
    for k in ks:
        if not (k * y <= 1 + x <= (k + 1) * y):
            return False
        x, y = y, k * y - x
    return True


def _contribution(ks: KTuple, c: Point) -> Term | None:
    if not _orbit_in_closure(ks, c):
        return None
    poly = cell(ks)
    if poly.area() == 0:
        return None
    loc = locate(poly, c)
    p = p_value(ks)
    if loc.tag is Tag.INTERIOR:
        value = Fraction(2, p)
    elif loc.tag is Tag.ON_EDGE:
        value = Fraction(1, p)
    elif loc.tag is Tag.AT_VERTEX:
        value = vertex_alpha(ks, loc.index).alpha / 2
    else:
        return None
    return Term(ks, loc, value)


def level_bound(u, v) -> int:
    """Deepest level that can contribute at (u, v).

    Cells of level r >= 5 form the two families (1,2,...,2,3) and
    (3,2,...,2,1), whose U-regions sit at distance about 1/(2r) from the
    axes, so levels beyond 1/(2 min(u, v)) + 3 are empty.  On the axes the
    families never reach, and level 4 is the last one needed.
    """
    p = _pt(u, v)
    m = min(p.x, p.y)
    if m == 0:
        return 4
    return max(3, math.ceil(1 / (2 * m) + 3))


def _corner_guard(p: Point):
    if (p.x, p.y) in ((0, 1), (1, 0), (1, 1)):
        raise UnboundedLevels(
            f"level sums do not terminate at {p}; use g_closed for the corner values"
        )


def breakdown(u, v, r_max: int | None = None, levels=None) -> DensityBreakdown:
    """All nonzero level contributions at (u, v), up to level r_max (default: the level bound)."""
    p = _pt(u, v)
    _corner_guard(p)
    bound = level_bound(p.x, p.y)
    depth = bound if r_max is None else r_max
    if p.x < 1:
        tuples = strip_tuples(p.x, depth)
    else:
        # x = 1: search the mirrored strip x = v and reverse the tuples
        tuples = (ks[::-1] for ks in strip_tuples(p.y, depth))
    out = DensityBreakdown(p)
    for ks in tuples:
        if levels is not None and len(ks) not in levels:
            continue
        if p_value(ks) <= 0:
            # such tuples have empty cells, e.g. (1, 1)
            continue
        c = probe_center(ks, p)
        term = _contribution(ks, c)
        if term is not None:
            out.terms.append(term)
    out.terms.sort(key=lambda t: (len(t.tuple), t.tuple))
    return out


def g_level(r: int, u, v) -> tuple[Fraction, DensityBreakdown]:
    """Density carried by the admissible cells of level r, with its breakdown."""
    if r < 1:
        raise ValueError("level must be positive")
    b = breakdown(u, v, r_max=r, levels={r})
    return b.total, b


def g_sum(u, v, r_max: int | None = None) -> Fraction:
    """Density as the sum over levels; refuses the three corners (0,1), (1,0), (1,1)."""
    p = _pt(u, v)
    bound = level_bound(p.x, p.y)
    if r_max is not None and r_max < bound:
        raise TruncationUnsound(f"levels up to {bound} can contribute at {p}, got r_max={r_max}")
    return breakdown(p.x, p.y, r_max=r_max).total


# Support and puzzles


class Support(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def support_polygon() -> ConvexPolygon:
    return ConvexPolygon.from_vertices([(0, 1), (Fraction(1, 3), Fraction(1, 3)), (1, 0), (1, 1)])


def support_contains(u, v) -> Support:
    """Position of (u, v) relative to {x <= 1, y <= 1, 2x + y >= 1, x + 2y >= 1}."""
    p = point(u, v)
    vals = (1 - p.x, 1 - p.y, 2 * p.x + p.y - 1, p.x + 2 * p.y - 1)
    if any(s < 0 for s in vals):
        return Support.OUTSIDE
    if any(s == 0 for s in vals):
        return Support.BOUNDARY
    return Support.INTERIOR


def puzzle_region(i: int) -> ConvexPolygon:
    """Quadrilateral G_i; i = 3 gives the whole support."""
    if i < 3 or i % 2 == 0:
        raise InvalidParity(f"puzzle index must be odd and at least 3, got {i}")
    a = Fraction(i - 3, i + 1)
    b = Fraction(i - 1, i + 3)
    return ConvexPolygon.from_vertices([(a, 1), (b, b), (1, a), (1, 1)])


# Vectorised closed form


def _harmonic_table(n: int) -> np.ndarray:
    h = np.zeros(n + 1)
    h[1:] = np.cumsum(1.0 / np.arange(1, n + 1))
    return h


def g_grid(a, b, N: int) -> np.ndarray:
    """Closed form at the points (a/N, b/N) for integer arrays a, b in [0, N].

    Integer arithmetic decides every condition exactly; only the final
    harmonic sums are floating point.  Returns inf at (N, N).
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if np.any((a < 0) | (a > N) | (b < 0) | (b > N)):
        raise OutOfDomain("grid points must lie in the unit square")
    out = np.zeros(np.broadcast(a, b).shape)
    a, b = np.broadcast_arrays(a, b)
    s = a + b
    lo = np.minimum(a, b)
    inner = (a < N) & (b < N)
    d = np.where(inner, N - lo, 1)
    J = np.clip(np.where(inner, (s - 1) // d, 0), 0, None)
    one_a = (a == N) & (b < N)
    one_b = (b == N) & (a < N)
    w = np.where(one_a, b, np.where(one_b, a, 0))
    K = np.where(one_a | one_b, (N + w - 1) // np.maximum(N - w, 1), 0)
    H = _harmonic_table(int(max(J.max(initial=0), K.max(initial=0))))
    out += H[J]

    def edge_j(z, zb):
        ok = z < N
        dz = np.where(ok, N - z, 1)
        t = z + zb
        j = t // dz
        on = ok & (t % dz == 0) & (j >= 1)
        on &= ((j - 1) * N < (j + 1) * z) & ((j + 2) * z < j * N)
        return np.where(on, j, 0)

    j1 = edge_j(a, b)
    j2 = edge_j(b, a)
    j2 = np.where(j2 == j1, 0, j2)
    for j in (j1, j2):
        out += np.where(j > 0, 0.5 / np.maximum(j, 1), 0.0)
    # z = 1 edges
    out += 0.5 * H[K]
    # corners ((j-1)/(j+1), 1) and mirror
    z = np.where(one_a, b, np.where(one_b, a, 0))
    dz = np.maximum(N - z, 1)
    on = (one_a | one_b) & ((N + z) % dz == 0)
    j = np.where(on, (N + z) // dz, 1)
    out += np.where(on, (2 * j + 1) / (8.0 * j * (j + 1)), 0.0)
    # diagonal vertices
    diag = (a == b) & (a > 0) & (a < N)
    dd = np.maximum(N - a, 1)
    on = diag & ((2 * a) % dd == 0)
    j = np.where(on, (2 * a) // dd, 1)
    out += np.where(on, (j + 2) / (4.0 * j * (j + 1)), 0.0)
    out[(a == N) & (b == N)] = np.inf
    return out


def _on_jump(a, b, N):
    """Points where g is not locally constant: the lines (j+1) z + zbar = j and the edges."""
    # diagonal vertices j/(j+2) also lie on these lines
    flags = (a == N) | (b == N)
    for z in (a, b):
        dz = np.maximum(N - z, 1)
        flags |= (z < N) & ((a + b) % dz == 0)
    return flags


def integrate_g(region: ConvexPolygon, n: int) -> float:
    """Midpoint rule for the integral of g over a convex region.

    The region's bounding box is cut into n x n subcells; midpoints inside
    the closed region are evaluated exactly with :func:`g_grid`.  A midpoint
    that falls on a line where g jumps is moved by a quarter of a subcell
    along the diagonal, once.  Near u = 1 or v = 1 the jump lines are denser
    than any grid, so a shifted point may still sit on one; it then gets the
    exact edge value, which is the mean of the two neighbouring values.
    """
    if n < 16:
        raise ValueError("n must be at least 16")
    x0, x1, y0, y1 = region.bounding_box()
    hx = (x1 - x0) / n
    hy = (y1 - y0) / n
    L = math.lcm(x0.denominator, y0.denominator, (hx / 2).denominator, (hy / 2).denominator)
    idx = 2 * np.arange(n, dtype=np.int64) + 1
    xs = int(x0 * L) + idx * int(hx / 2 * L)
    ys = int(y0 * L) + idx * int(hy / 2 * L)
    A, B = np.meshgrid(xs, ys, indexing="ij")
    A, B = A.ravel(), B.ravel()
    keep = np.ones(A.shape, dtype=bool)
    for h in region.constraints:
        den = math.lcm(h.a.denominator, h.b.denominator, h.c.denominator)
        ca, cb, cc = int(h.a * den), int(h.b * den), int(h.c * den)
        keep &= ca * A + cb * B + cc * L >= 0
    A, B = A[keep], B[keep]
    N = L
    bad = _on_jump(A, B, N)
    if bad.any():
        # shift by a quarter subcell: rescale to 4N, half a subcell is then 4*step
        step_x, step_y = int(hx / 2 * L), int(hy / 2 * L)
        A, B, N = 4 * A, 4 * B, 4 * N
        A = np.where(bad, A + 2 * step_x, A)
        B = np.where(bad, B + 2 * step_y, B)
    values = g_grid(A, B, N)
    return float(values.sum() * float(hx) * float(hy))
