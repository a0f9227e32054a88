"""Exact convex geometry over the rationals.

Polygons carry two descriptions at once: the counter-clockwise vertex list
(used for areas, point location and cone computations) and the list of
half-planes that produced them (used for membership tests that respect
strict versus non-strict boundaries).  Everything is done with
``fractions.Fraction`` so no predicate ever rounds.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import DegeneratePolygon, ParallelDirections


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __str__(self):
        return f"({format_rational(self.x)}, {format_rational(self.y)})"


def point(x, y) -> Point:
    """Build a Point, converting ints, strings and Fractions exactly."""
    return Point(as_fraction(x), as_fraction(y))


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction or a 'p/q' string")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    """Serialize as ``p/q`` in lowest terms with q > 0 (integers get ``/1``)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or a plain decimal string into an exact Fraction."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def orient(a: Point, b: Point, c: Point) -> Fraction:
    """Twice the signed area of triangle abc (positive when counter-clockwise)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


@dataclass(frozen=True)
class HalfPlane:
    """The set a*x + b*y + c >= 0, or > 0 when ``strict``."""

    a: Fraction
    b: Fraction
    c: Fraction
    strict: bool = False

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise ValueError("half-plane needs a nonzero normal")

    def value(self, p: Point) -> Fraction:
        return self.a * p.x + self.b * p.y + self.c

    def contains(self, p: Point) -> bool:
        v = self.value(p)
        return v > 0 if self.strict else v >= 0

    def closure(self) -> "HalfPlane":
        return HalfPlane(self.a, self.b, self.c, False) if self.strict else self

    def complement(self) -> "HalfPlane":
        return HalfPlane(-self.a, -self.b, -self.c, not self.strict)

    def pullback(self, m) -> "HalfPlane":
        """Preimage under the linear map p -> m @ p, m given as ((m11, m12), (m21, m22))."""
        (m11, m12), (m21, m22) = m
        return HalfPlane(
            self.a * m11 + self.b * m21, self.a * m12 + self.b * m22, self.c, self.strict
        )


class Tag(enum.Enum):
    INTERIOR = "interior"
    ON_EDGE = "edge"
    AT_VERTEX = "vertex"
    OUTSIDE = "outside"


class Location(NamedTuple):
    tag: Tag
    index: int | None = None

    def __str__(self):
        if self.index is None:
            return self.tag.value
        return f"{self.tag.value}:{self.index}"


def _edge_constraint(p: Point, q: Point, strict: bool) -> HalfPlane:
    # left side of the directed edge p -> q
    return HalfPlane(p.y - q.y, q.x - p.x, p.x * q.y - p.y * q.x, strict)


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon with exact vertices in counter-clockwise order.

    ``edge_strict[i]`` describes the edge from ``vertices[i]`` to
    ``vertices[i + 1]``.  Degenerate polygons (empty, a point or a segment)
    are allowed and have area zero.
    """

    vertices: tuple[Point, ...]
    edge_strict: tuple[bool, ...]
    constraints: tuple[HalfPlane, ...] = ()

    @classmethod
    def empty(cls) -> "ConvexPolygon":
        return cls((), (), ())

    @classmethod
    def from_vertices(cls, points: Iterable, strict: Sequence[bool] | None = None):
        """Polygon from vertices listed in either orientation.

        Constraints are rebuilt from the edges, so membership follows the
        given strictness flags.
        """
        pts = [p if isinstance(p, Point) else point(*p) for p in points]
        flags = list(strict) if strict is not None else [False] * len(pts)
        if len(flags) != len(pts):
            raise ValueError("one strictness flag per edge is required")
        if len(pts) >= 3 and _signed_area2(pts) < 0:
            pts = pts[::-1]
            # edge i now joins the reversed neighbours; shift flags to match
            flags = flags[::-1]
            flags = flags[1:] + flags[:1]
        pts, flags = _normalize(pts, flags)
        return cls(tuple(pts), tuple(flags), _constraints_for(pts, flags))

    @classmethod
    def box(cls, x0, x1, y0, y1) -> "ConvexPolygon":
        return cls.from_vertices([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])

    @classmethod
    def from_halfplanes(cls, hps: Iterable[HalfPlane], bounds: "ConvexPolygon | None" = None):
        """Intersection of half-planes inside ``bounds`` (the unit square by default)."""
        poly = bounds if bounds is not None else cls.box(0, 1, 0, 1)
        for hp in hps:
            poly = poly.clip(hp)
        return poly

    # basic queries

    def __len__(self):
        return len(self.vertices)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) < 3

    def area(self) -> Fraction:
        if len(self.vertices) < 3:
            return Fraction(0)
        return _signed_area2(self.vertices) / 2

    def contains(self, p: Point) -> bool:
        """Membership honouring the strictness of every defining half-plane."""
        if self.is_empty:
            return False
        return all(h.contains(p) for h in self.constraints)

    def closure_contains(self, p: Point) -> bool:
        if self.is_empty:
            return False
        return all(h.value(p) >= 0 for h in self.constraints)

    def clip(self, hp: HalfPlane) -> "ConvexPolygon":
        return clip(self, hp)

    def transform(self, m) -> "ConvexPolygon":
        """Image under an orientation preserving linear map m (2x2 nested tuple)."""
        (m11, m12), (m21, m22) = m
        if m11 * m22 - m12 * m21 <= 0:
            raise ValueError("map must preserve orientation")
        pts = [Point(m11 * p.x + m12 * p.y, m21 * p.x + m22 * p.y) for p in self.vertices]
        return ConvexPolygon.from_vertices(pts, self.edge_strict)

    def bounding_box(self):
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    def vertex_strings(self) -> list[str]:
        return [f"{format_rational(p.x)},{format_rational(p.y)}" for p in self.vertices]


def _signed_area2(pts) -> Fraction:
    n = len(pts)
    s = Fraction(0)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        s += p.x * q.y - q.x * p.y
    return s


def _normalize(pts: list[Point], flags: list[bool]):
    """Drop repeated and collinear vertices; collapse flat polygons to segments."""
    i = 0
    while len(pts) > 1 and i < len(pts):
        j = (i + 1) % len(pts)
        if pts[i] == pts[j]:
            flags[i] = flags[i] or flags[j]
            del pts[j]
            del flags[j]
            i = 0
            continue
        i += 1
    if len(pts) >= 3 and _signed_area2(pts) == 0:
        lo, hi = min(pts), max(pts)
        return ([lo, hi] if lo != hi else [lo]), ([False, False] if lo != hi else [False])
    changed = True
    while changed and len(pts) > 3:
        changed = False
        n = len(pts)
        for i in range(n):
            prev, cur, nxt = pts[i - 1], pts[i], pts[(i + 1) % n]
            if orient(prev, cur, nxt) == 0:
                flags[i - 1] = flags[i - 1] or flags[i]
                del pts[i]
                del flags[i]
                changed = True
                break
    return pts, flags


def _constraints_for(pts: list[Point], flags: list[bool]) -> tuple[HalfPlane, ...]:
    if not pts:
        return ()
    if len(pts) == 1:
        p = pts[0]
        return (
            HalfPlane(1, 0, -p.x),
            HalfPlane(-1, 0, p.x),
            HalfPlane(0, 1, -p.y),
            HalfPlane(0, -1, p.y),
        )
    if len(pts) == 2:
        p, q = pts
        dx, dy = q.x - p.x, q.y - p.y
        return (
            _edge_constraint(p, q, False),
            _edge_constraint(q, p, False),
            HalfPlane(dx, dy, -(dx * p.x + dy * p.y)),
            HalfPlane(-dx, -dy, dx * q.x + dy * q.y),
        )
    n = len(pts)
    return tuple(_edge_constraint(pts[i], pts[(i + 1) % n], flags[i]) for i in range(n))


def clip(poly: ConvexPolygon, hp: HalfPlane) -> ConvexPolygon:
    """Intersect a convex polygon with a half-plane, exactly.

    The vertex list describes the closure; strictness only changes the
    edge flags and the recorded constraints.
    """
    verts = poly.vertices
    n = len(verts)
    if n == 0:
        return poly
    values = [hp.value(p) for p in verts]
    if all(v > 0 for v in values) or (n >= 3 and all(v >= 0 for v in values) and not any(
        values[i] == 0 and values[(i + 1) % n] == 0 for i in range(n)
    )):
        # nothing cut; only record the constraint
        return ConvexPolygon(verts, poly.edge_strict, poly.constraints + (hp,))
    out: list[Point] = []
    flags: list[bool] = []
    for i in range(n):
        j = (i + 1) % n
        p, q = verts[i], verts[j]
        sp, sq = values[i], values[j]
        e = poly.edge_strict[i] if n >= 3 else False
        if sp > 0:
            out.append(p)
            if sq >= 0:
                flags.append(e)
            else:
                flags.append(e)
                out.append(_intersect(p, q, sp, sq))
                flags.append(hp.strict)
        elif sp == 0:
            out.append(p)
            if sq > 0:
                flags.append(e)
            elif sq == 0:
                flags.append(e or hp.strict)
            else:
                flags.append(hp.strict)
        else:
            if sq > 0:
                out.append(_intersect(p, q, sp, sq))
                flags.append(e)
    out, flags = _normalize(out, flags)
    if not out:
        return ConvexPolygon.empty()
    return ConvexPolygon(tuple(out), tuple(flags), poly.constraints + (hp,))


def _intersect(p: Point, q: Point, sp: Fraction, sq: Fraction) -> Point:
    t = sp / (sp - sq)
    return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def area(poly: ConvexPolygon) -> Fraction:
    return poly.area()


def locate(poly: ConvexPolygon, p: Point) -> Location:
    """Classify p against the closure of a non-degenerate polygon."""
    verts = poly.vertices
    n = len(verts)
    if n < 3:
        raise DegeneratePolygon("point location needs a polygon with positive area")
    on_edges = []
    for i in range(n):
        o = orient(verts[i], verts[(i + 1) % n], p)
        if o < 0:
            return Location(Tag.OUTSIDE)
        if o == 0:
            on_edges.append(i)
    if not on_edges:
        return Location(Tag.INTERIOR)
    for i, v in enumerate(verts):
        if v == p:
            return Location(Tag.AT_VERTEX, i)
    return Location(Tag.ON_EDGE, on_edges[0])


def parallelogram(pr: int, pr1: int, center: Point | None = None, eta=1) -> ConvexPolygon:
    """The closed probe {|x - x0| <= eta, |pr*y - pr1*x - y0'| <= eta} around center."""
    if pr < 1:
        raise ValueError("pr must be positive")
    c = center if center is not None else Point(Fraction(0), Fraction(0))
    eta = as_fraction(eta)
    x0 = c.x
    # pr*y - pr1*x evaluated at the center
    w0 = pr * c.y - pr1 * c.x
    hps = (
        HalfPlane(1, 0, eta - x0),
        HalfPlane(-1, 0, eta + x0),
        HalfPlane(-pr1, pr, eta - w0),
        HalfPlane(pr1, -pr, eta + w0),
    )
    span = (abs(pr1) + 1) * eta / pr + abs(c.y) + eta
    bounds = ConvexPolygon.box(x0 - eta, x0 + eta, c.y - span, c.y + span)
    return ConvexPolygon.from_halfplanes(hps, bounds)


def cone_halfplanes(dir1: Point, dir2: Point) -> tuple[HalfPlane, HalfPlane]:
    """Half-planes through the origin bounding the cone swept counter-clockwise from dir1 to dir2."""
    if (dir1.x == 0 and dir1.y == 0) or (dir2.x == 0 and dir2.y == 0):
        raise ParallelDirections("zero direction vector")
    cross = dir1.x * dir2.y - dir1.y * dir2.x
    dot = dir1.x * dir2.x + dir1.y * dir2.y
    if cross == 0 and dot > 0:
        raise ParallelDirections("edge directions coincide")
    if cross < 0:
        raise ValueError("cone wider than a half-plane; pass the directions counter-clockwise")
    return HalfPlane(-dir1.y, dir1.x, 0), HalfPlane(dir2.y, -dir2.x, 0)


def cone_clip_area(vertex: Point, dir1: Point, dir2: Point, pr: int, pr1: int) -> Fraction:
    """Area of the tangent cone at ``vertex`` inside the unit probe parallelogram.

    The cone is {vertex + s*dir1 + t*dir2 : s, t >= 0}; with the directions
    opposite it is the half-plane to the left of dir1.  The probe is
    centred at the vertex with eta = 1.
    """
    h1, h2 = cone_halfplanes(dir1, dir2)
    poly = parallelogram(pr, pr1).clip(h1).clip(h2)
    return poly.area()
