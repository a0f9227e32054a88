"""Reference vertex lists and vertex weights for the admissible cells.

These closed formulas are kept as checking data only: the library computes
every cell and weight from scratch, and :mod:`evenfarey.verify` compares
the two.  Each row lists vertices with the weight alpha at that vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F


@dataclass(frozen=True)
class ReferenceRow:
    family: str
    tuple: tuple[int, ...]
    vertices: tuple[tuple[F, F], ...]
    alphas: tuple[F, ...]

    def weights(self) -> dict[tuple[F, F], F]:
        return dict(zip(self.vertices, self.alphas))


def _row(family, ks, pairs):
    pairs = list(pairs)
    verts = tuple((F(x), F(y)) for (x, y), _ in pairs)
    return ReferenceRow(family, tuple(ks), verts, tuple(F(a) for _, a in pairs))


def _base_vertices(k):
    return [
        (F(k - 1, k + 1), F(2, k + 1)),
        (F(k, k + 2), F(2, k + 2)),
        (F(1), F(2, k + 1)),
        (F(1), F(2, k)),
    ]


def _left_vertices(l):
    return [
        (F(l - 3, l + 1), F(l - 1, l + 1)),
        (F(l - 2, l + 2), F(l, l + 2)),
        (F(l - 1, l + 1), F(1)),
        (F(l - 2, l), F(1)),
    ]


def even_base(k: int) -> ReferenceRow:
    a = [
        F(2 * k + 1, 2 * k * (k + 1)),
        F(k + 2, k * (k + 1)),
        F(2 * k + 1, 2 * k * (k + 1)),
        F(1, k),
    ]
    return _row("k", (k,), zip(_base_vertices(k), a))


def left_pair(l: int) -> ReferenceRow:
    a = [
        F(l, (l - 1) * (l + 1)),
        F(2 * l * l + 5 * l + 1, 2 * (l - 1) * l * (l + 1)),
        F(1, l),
        F(2 * l + 1, 2 * l * (l - 1)),
    ]
    return _row("1,l", (1, l), zip(_left_vertices(l), a))


def right_pair(k: int) -> ReferenceRow:
    a = [
        F(1, k),
        F(2 * k * k + 5 * k + 1, 2 * (k - 1) * k * (k + 1)),
        F(k, (k - 1) * (k + 1)),
        F(2 * k + 1, 2 * k * (k - 1)),
    ]
    return _row("k,1", (k, 1), zip(_base_vertices(k), a))


def one_l_one(l: int) -> ReferenceRow:
    a = [
        F(2 * l - 1, 2 * (l - 1) * l),
        F(l + 2, (l - 2) * l),
        F(2 * l - 1, 2 * (l - 1) * l),
        F(l, (l - 2) * (l - 1)),
    ]
    return _row("1,l,1", (1, l, 1), zip(_left_vertices(l), a))


def left_family(r: int) -> ReferenceRow:
    """(1, 2, ..., 2, 3) of length r."""
    v = [
        (F(1, 2 * r + 1), F(2 * r, 2 * r + 1)),
        (F(1, 2 * r - 1), F(2 * r - 2, 2 * r - 1)),
        (F(1, 2 * r - 3), F(1)),
        (F(1, 2 * r - 1), F(1)),
    ]
    a = [
        F(4 * r + 1, 4 * (2 * r + 1)),
        F(14 * r + 9, 8 * (2 * r + 1)),
        F(2 * r - 3, 8 * (2 * r - 1)),
        F(4 * r - 1, 4 * (2 * r - 1)),
    ]
    return _row("1,2..2,3", (1,) + (2,) * (r - 2) + (3,), zip(v, a))


def right_family(r: int) -> ReferenceRow:
    """(3, 2, ..., 2, 1) of length r."""
    v = [
        (F(2 * r - 5, 2 * r - 3), F(r - 2, 2 * r - 3)),
        (F(2 * r - 3, 2 * r - 1), F(r - 1, 2 * r - 1)),
        (F(1), F(r + 1, 2 * r + 1)),
        (F(1), F(r, 2 * r - 1)),
    ]
    a = [
        F(2 * r - 3, 8 * (2 * r - 1)),
        F(14 * r + 9, 8 * (2 * r + 1)),
        F(4 * r + 1, 4 * (2 * r + 1)),
        F(4 * r - 1, 4 * (2 * r - 1)),
    ]
    return _row("3,2..2,1", (3,) + (2,) * (r - 2) + (1,), zip(v, a))


FIXED_ROWS = (
    _row("1,3", (1, 3), [((F(1, 5), F(4, 5)), F(9, 20)), ((F(2, 7), F(5, 7)), F(19, 30)),
                         ((F(1, 2), F(1)), F(1, 3)), ((F(1, 3), F(1)), F(7, 12))]),
    _row("3,1", (3, 1), [((F(1, 2), F(1, 2)), F(1, 3)), ((F(4, 7), F(3, 7)), F(19, 30)),
                         ((F(1), F(3, 5)), F(9, 20)), ((F(1), F(2, 3)), F(7, 12))]),
    _row("1,2,3", (1, 2, 3), [((F(1, 7), F(6, 7)), F(13, 28)), ((F(1, 5), F(4, 5)), F(13, 21)),
                              ((F(2, 7), F(1)), F(11, 30)), ((F(1, 5), F(1)), F(11, 20))]),
    _row("3,2,1", (3, 2, 1), [((F(4, 7), F(3, 7)), F(11, 30)), ((F(3, 5), F(2, 5)), F(13, 21)),
                              ((F(1), F(4, 7)), F(13, 28)), ((F(1), F(3, 5)), F(11, 20))]),
    _row("1,4,1", (1, 4, 1), [((F(2, 7), F(5, 7)), F(11, 30)), ((F(1, 3), F(2, 3)), F(3, 5)),
                              ((F(4, 7), F(1)), F(11, 30)), ((F(1, 2), F(1)), F(2, 3))]),
    _row("1,2,2,3", (1, 2, 2, 3), [((F(1, 9), F(8, 9)), F(17, 36)), ((F(1, 7), F(6, 7)), F(65, 72)),
                                   ((F(1, 5), F(1)), F(5, 56)), ((F(1, 7), F(1)), F(15, 28))]),
    _row("3,2,2,1", (3, 2, 2, 1), [((F(3, 5), F(2, 5)), F(5, 56)), ((F(5, 7), F(3, 7)), F(65, 72)),
                                   ((F(1), F(5, 9)), F(17, 36)), ((F(1), F(4, 7)), F(15, 28))]),
    _row("1,2,4,1", (1, 2, 4, 1), [((F(1, 5), F(4, 5)), F(7, 24)), ((F(1, 3), F(1)), F(3, 40)),
                                   ((F(2, 7), F(1)), F(19, 30))]),
    _row("1,4,2,1", (1, 4, 2, 1), [((F(1, 3), F(2, 3)), F(3, 40)), ((F(3, 5), F(1)), F(7, 24)),
                                   ((F(4, 7), F(1)), F(19, 30))]),
)


def reference_rows(max_param: int = 41, max_level: int = 20) -> list[ReferenceRow]:
    """Every reference row with parameters <= max_param and family levels <= max_level."""
    rows = [even_base(k) for k in range(2, max_param + 1, 2)]
    rows += [left_pair(l) for l in range(5, max_param + 1, 2)]
    rows += [right_pair(k) for k in range(5, max_param + 1, 2)]
    rows += [one_l_one(l) for l in range(6, max_param + 1, 2)]
    rows += list(FIXED_ROWS)
    for r in range(5, max_level + 1):
        rows += [left_family(r), right_family(r)]
    return rows


def reference_tuples(level: int, max_param: int = 41) -> set[tuple[int, ...]]:
    """Admissible tuples of one level expected with entries <= max_param."""
    return {
        row.tuple
        for row in reference_rows(max_param, max(level, 5))
        if len(row.tuple) == level and max(row.tuple) <= max_param
    }
