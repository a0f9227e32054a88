"""Cells of the Farey triangle indexed by tuples of successive indices.

The Farey triangle T = {0 < x, y <= 1, x + y > 1} is cut into the base
cells T_k on which the index floor((1 + x)/y) equals k.  On T_k the
boundary-preserving map T(x, y) = (y, floor((1 + x)/y) y - x) acts as the
linear branch A_k(x, y) = (y, k y - x), so the cell of a tuple
(k_1, ..., k_r) is obtained by pulling the base cells back through the
composed branches.  All polygons are exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DegenerateCell, EmptyCell, InvalidK, OutsideDomain
from .geometry import (
    ConvexPolygon,
    HalfPlane,
    Point,
    cone_clip_area,
    point,
)

KTuple = tuple[int, ...]

IDENTITY = ((1, 0), (0, 1))

# Farey triangle, closed unit square is the starting bounding box
UNIT_SQUARE = ConvexPolygon.box(0, 1, 0, 1)


def p_value(ks: Sequence[int]) -> int:
    """Index polynomial p_r(k_1, ..., k_r) with p_0 = 1 and p_1 = k_1."""
    prev, cur = 0, 1
    for k in ks:
        prev, cur = cur, k * cur - prev
    return cur


def last_coeffs(ks: Sequence[int]) -> tuple[int, int]:
    """(p_r(k_1..k_r), p_{r-1}(k_2..k_r)) so that x^L = p_r*y - p_{r-1}*x."""
    if not ks:
        raise ValueError("empty tuple")
    return p_value(ks), p_value(ks[1:])


def is_admissible(ks: Sequence[int]) -> bool:
    if not ks or any(k < 1 for k in ks):
        return False
    if len(ks) == 1:
        return ks[0] % 2 == 0
    return ks[0] % 2 == 1 and ks[-1] % 2 == 1 and all(k % 2 == 0 for k in ks[1:-1])


def branch(k: int):
    """Matrix of A_k(x, y) = (y, k*y - x)."""
    return ((0, 1), (-1, k))


def compose(m, n):
    """Matrix of the map p -> m(n(p))."""
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def apply(m, p: Point) -> Point:
    (a, b), (c, d) = m
    return Point(a * p.x + b * p.y, c * p.x + d * p.y)


def _check_domain(p: Point):
    if not (0 < p.x <= 1 and 0 < p.y <= 1 and p.x + p.y > 1):
        raise OutsideDomain(f"{p} is not in the Farey triangle")


def t_map(p) -> Point:
    """T(x, y) = (y, floor((1 + x)/y) y - x)."""
    p = p if isinstance(p, Point) else point(*p)
    _check_domain(p)
    k = math.floor((1 + p.x) / p.y)
    return Point(p.y, k * p.y - p.x)


def t_inv(p) -> Point:
    """Inverse of T: (x, y) -> (floor((1 + y)/x) x - y, x)."""
    p = p if isinstance(p, Point) else point(*p)
    _check_domain(p)
    k = math.floor((1 + p.y) / p.x)
    return Point(k * p.x - p.y, p.x)


def base_constraints(k: int) -> tuple[HalfPlane, ...]:
    """Half-planes of T_k: 0 < x, y <= 1, x + y > 1, k y <= 1 + x < (k+1) y."""
    if k < 1:
        raise InvalidK(f"index must be a positive integer, got {k}")
    return (
        HalfPlane(1, 0, 0, strict=True),
        HalfPlane(0, 1, 0, strict=True),
        HalfPlane(-1, 0, 1),
        HalfPlane(0, -1, 1),
        HalfPlane(1, 1, -1, strict=True),
        HalfPlane(1, -k, 1),
        HalfPlane(-1, k + 1, -1, strict=True),
    )


@lru_cache(maxsize=None)
def base_cell(k: int) -> ConvexPolygon:
    return ConvexPolygon.from_halfplanes(base_constraints(k), UNIT_SQUARE)


def farey_triangle() -> ConvexPolygon:
    return ConvexPolygon.from_halfplanes(
        (HalfPlane(1, 0, 0, True), HalfPlane(0, 1, 0, True), HalfPlane(1, 1, -1, True)),
        UNIT_SQUARE,
    )


def tuple_matrix(ks: Sequence[int]):
    """Matrix of A_{k_r} ... A_{k_1}."""
    m = IDENTITY
    for k in ks:
        m = compose(branch(k), m)
    return m


# The memo below is the only shared state; lru_cache serialises its own
# bookkeeping and a duplicate computation just stores an equal value.
@lru_cache(maxsize=200_000)
def _cell(ks: KTuple) -> ConvexPolygon:
    if len(ks) == 1:
        return base_cell(ks[0])
    poly = _cell(ks[:-1])
    if poly.area() == 0:
        return poly
    m = tuple_matrix(ks[:-1])
    for h in base_constraints(ks[-1]):
        poly = poly.clip(h.pullback(m))
        if poly.is_empty:
            break
    return poly


def cell(ks: Sequence[int]) -> ConvexPolygon:
    """Polygon T_{k_1} ∩ T^{-1} T_{k_2} ∩ ... ; possibly empty or degenerate.

    Once a prefix has zero area the (degenerate) prefix polygon is returned
    unchanged, since the cell then has measure zero anyway.
    """
    ks = tuple(int(k) for k in ks)
    if not ks:
        raise ValueError("empty tuple")
    for k in ks:
        if k < 1:
            raise InvalidK(f"index must be a positive integer, got {k}")
    return _cell(ks)


@dataclass(frozen=True)
class Cell:
    tuple: KTuple
    polygon: ConvexPolygon

    @property
    def level(self) -> int:
        return len(self.tuple)

    @property
    def p(self) -> int:
        return p_value(self.tuple)

    def area(self) -> Fraction:
        return self.polygon.area()


def _index_range(points: Sequence[Point]) -> tuple[int, int | None]:
    """Indices k whose closed base cell can contain one of the given points' hull.

    Returns (lo, hi) with hi None when unbounded (a point with y = 0).
    """
    vals = []
    unbounded = False
    for p in points:
        if p.y <= 0:
            unbounded = True
            continue
        vals.append((1 + p.x) / p.y)
    lo = max(1, math.ceil(min(vals)) - 1) if vals else 1
    hi = None if unbounded else math.floor(max(vals))
    return lo, hi


def _next_allowed(depth: int, k: int, level: int | None) -> tuple[bool, bool]:
    """(completes an admissible tuple, may be extended) for entry k at 1-based depth."""
    if depth == 1:
        return k % 2 == 0, k % 2 == 1
    return k % 2 == 1, k % 2 == 0


def admissible_cells(
    r: int,
    x_window: tuple | None = None,
    max_entry: int | None = None,
) -> list[Cell]:
    """Admissible tuples of level r whose cell has positive area.

    Enumeration is branch-and-prune: a prefix is extended only while its
    cell has positive area, and the next index ranges over the base cells
    met by the prefix's image.  ``max_entry`` caps every index (needed
    without a window because the level-1 and level-2 families are
    infinite); ``x_window = (a, b)`` keeps only cells meeting a <= x <= b.
    """
    if r < 1:
        raise ValueError("level must be positive")
    window = None
    if x_window is not None:
        a, b = (Fraction(t) for t in x_window)
        window = (HalfPlane(1, 0, -a), HalfPlane(-1, 0, b))
    out: list[Cell] = []

    def grow(ks: KTuple, poly: ConvexPolygon, m):
        depth = len(ks) + 1
        image = [apply(m, v) for v in poly.vertices]
        lo, hi = _index_range(image)
        if hi is None:
            if max_entry is None:
                raise ValueError("unbounded index range; pass max_entry")
            hi = max_entry
        elif max_entry is not None:
            hi = min(hi, max_entry)
        for k in range(lo, hi + 1):
            done, extend = _next_allowed(depth, k, r)
            if depth == r and not done:
                continue
            if depth < r and not extend:
                continue
            child = cell(ks + (k,))
            if child.area() == 0:
                continue
            part = child
            if window is not None:
                for h in window:
                    part = part.clip(h)
                if part.is_empty:
                    continue
            if depth == r:
                out.append(Cell(ks + (k,), child))
            else:
                # only the part inside the window needs to be followed
                grow(ks + (k,), part, compose(branch(k), m))

    start = UNIT_SQUARE
    if window is not None:
        # only the x-range matters for the first index
        start = farey_triangle()
        for h in window:
            start = start.clip(h.closure())
    grow((), start, IDENTITY)
    out.sort(key=lambda c: c.tuple)
    return out


def all_cells(r: int, max_entry: int) -> list[Cell]:
    """Every tuple of level r (admissible or not) with entries <= max_entry and positive area."""
    out = []

    def grow(ks, poly, m):
        image = [apply(m, v) for v in poly.vertices]
        lo, hi = _index_range(image)
        hi = max_entry if hi is None else min(hi, max_entry)
        for k in range(lo, hi + 1):
            child = cell(ks + (k,))
            if child.area() == 0:
                continue
            if len(ks) + 1 == r:
                out.append(Cell(ks + (k,), child))
            else:
                grow(ks + (k,), child, compose(branch(k), m))

    grow((), UNIT_SQUARE, IDENTITY)
    return out


def probe_center(ks: Sequence[int], anchor) -> Point:
    """Center (x0, (pr1*x0 + y0)/pr) of the probe parallelogram for anchor (x0, y0)."""
    anchor = anchor if isinstance(anchor, Point) else point(*anchor)
    pr, pr1 = last_coeffs(ks)
    return Point(anchor.x, (pr1 * anchor.x + anchor.y) / pr)


@dataclass(frozen=True)
class VertexWeight:
    tuple: KTuple
    vertex: Point
    alpha: Fraction


def _as_cell(c) -> Cell:
    if isinstance(c, Cell):
        return c
    ks = tuple(c)
    return Cell(ks, cell(ks))


def vertex_alpha(c, index: int) -> VertexWeight:
    """Normalised area of the cell inside the unit probe centred at one of its vertices."""
    c = _as_cell(c)
    verts = c.polygon.vertices
    if len(verts) < 3:
        raise DegenerateCell(f"cell {c.tuple} has zero area")
    v = verts[index]
    nxt = verts[(index + 1) % len(verts)]
    prv = verts[index - 1]
    d1 = Point(nxt.x - v.x, nxt.y - v.y)
    d2 = Point(prv.x - v.x, prv.y - v.y)
    pr, pr1 = last_coeffs(c.tuple)
    return VertexWeight(c.tuple, v, cone_clip_area(v, d1, d2, pr, pr1))


def vertex_alphas(c) -> list[VertexWeight]:
    c = _as_cell(c)
    return [vertex_alpha(c, i) for i in range(len(c.polygon.vertices))]


def checksum(c) -> Fraction:
    """Sum of the vertex weights; 4/p for quadrilaterals and 2/p for triangles."""
    return sum((w.alpha for w in vertex_alphas(c)), Fraction(0))


def u_map(ks: Sequence[int]):
    """Matrix of (x, y) -> (x, pr*y - pr1*x)."""
    pr, pr1 = last_coeffs(ks)
    return ((1, 0), (-pr1, pr))


def u_region(ks: Sequence[int]) -> ConvexPolygon:
    """Image of the cell in (first, last) denominator coordinates."""
    poly = cell(ks)
    if poly.area() == 0:
        raise EmptyCell(f"cell {tuple(ks)} has zero area")
    return poly.transform(u_map(ks))


def level_areas(r: int, max_entry: int) -> Fraction:
    """Total area of the admissible level-r cells with entries <= max_entry."""
    return sum((c.area() for c in admissible_cells(r, max_entry=max_entry)), Fraction(0))


def iter_levels(r_max: int, max_entry: int) -> Iterator[tuple[int, list[Cell]]]:
    for r in range(1, r_max + 1):
        yield r, admissible_cells(r, max_entry=max_entry)
