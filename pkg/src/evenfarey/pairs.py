"""Consecutive even-denominator pairs and their empirical statistics.

A single compiled pass over F_Q ∩ I records every pair of consecutive
even fractions together with r, the number of odd fractions between
them.  Results live in a :class:`PairTable` of numpy columns because at
Q in the thousands there are millions of pairs.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from . import _walk
from .errors import EmptyInput, EmptyResult, ZeroArea
from .farey import UNIT, Interval, _check_order, _walk_bounds
from .geometry import as_fraction


class TypedPair(NamedTuple):
    Q: int
    q_prev: int
    q_next: int
    r: int
    a_prev: int
    a_next: int


@dataclass(frozen=True)
class PairTable:
    """Column store of TypedPair records for one order Q."""

    Q: int
    q_prev: np.ndarray
    q_next: np.ndarray
    r: np.ndarray
    a_prev: np.ndarray
    a_next: np.ndarray

    def __len__(self):
        return int(self.q_prev.size)

    def __getitem__(self, i) -> TypedPair:
        return TypedPair(
            self.Q,
            int(self.q_prev[i]),
            int(self.q_next[i]),
            int(self.r[i]),
            int(self.a_prev[i]),
            int(self.a_next[i]),
        )

    def __iter__(self) -> Iterator[TypedPair]:
        for i in range(len(self)):
            yield self[i]

    def merge(self, other: "PairTable") -> "PairTable":
        if other.Q != self.Q:
            raise ValueError("cannot merge tables of different orders")
        return PairTable(
            self.Q,
            *(np.concatenate([getattr(self, c), getattr(other, c)]) for c in _COLUMNS),
        )


_COLUMNS = ("q_prev", "q_next", "r", "a_prev", "a_next")


def even_pairs(Q: int, interval: Interval = UNIT) -> PairTable:
    """All pairs of consecutive fractions of F_{Q,even} lying in ``interval``."""
    _check_order(Q)
    bounds = _walk_bounds(Q, interval)
    n_even = 0
    if bounds is not None:
        (a0, q0), (a1, q1), (ea, eq) = bounds
        n_even, _ = _walk.count_by_parity(Q, a0, q0, a1, q1, ea, eq)
    if n_even < 2:
        raise EmptyResult(f"fewer than two even fractions in F_{Q} ∩ {interval}")
    cols = [np.empty(n_even - 1, dtype=np.int64) for _ in _COLUMNS]
    n = _walk.collect_pairs(Q, a0, q0, a1, q1, ea, eq, *cols)
    assert n == n_even - 1
    return PairTable(Q, *cols)


def _require(pairs: PairTable):
    if len(pairs) == 0:
        raise EmptyInput("no pairs given")


def type_counts(pairs: PairTable) -> dict[int, int]:
    _require(pairs)
    values, counts = np.unique(pairs.r, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def type_histogram(pairs: PairTable) -> dict[int, Fraction]:
    """Relative frequency of each type r, as exact fractions."""
    counts = type_counts(pairs)
    total = len(pairs)
    return {r: Fraction(c, total) for r, c in counts.items()}


def small_sum_count(pairs: PairTable, Q: int | None = None) -> int:
    Q = pairs.Q if Q is None else Q
    return int(np.count_nonzero(pairs.q_prev + pairs.q_next <= Q))


def small_sum_probability(pairs: PairTable, Q: int | None = None) -> Fraction:
    """Share of pairs whose denominators add up to at most Q."""
    _require(pairs)
    return Fraction(small_sum_count(pairs, Q), len(pairs))


@dataclass(frozen=True)
class Box:
    """Closed square with the given center and half side, clipped to the unit square."""

    u: Fraction
    v: Fraction
    half_side: Fraction

    def __post_init__(self):
        for name in ("u", "v", "half_side"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.half_side <= 0:
            raise ValueError("half side must be positive")

    def clipped(self):
        x0 = max(self.u - self.half_side, Fraction(0))
        x1 = min(self.u + self.half_side, Fraction(1))
        y0 = max(self.v - self.half_side, Fraction(0))
        y1 = min(self.v + self.half_side, Fraction(1))
        return x0, x1, y0, y1

    def area(self) -> Fraction:
        x0, x1, y0, y1 = self.clipped()
        if x1 <= x0 or y1 <= y0:
            return Fraction(0)
        return (x1 - x0) * (y1 - y0)


def box_count(pairs: PairTable, box: Box, Q: int | None = None) -> int:
    """Number of normalized points (q_prev/Q, q_next/Q) inside the closed box."""
    Q = pairs.Q if Q is None else Q
    x0, x1, y0, y1 = box.clipped()

    def inside(q, lo, hi):
        # lo <= q/Q <= hi with exact integer comparisons
        return (q * lo.denominator >= lo.numerator * Q) & (q * hi.denominator <= hi.numerator * Q)

    mask = inside(pairs.q_prev, x0, x1) & inside(pairs.q_next, y0, y1)
    return int(np.count_nonzero(mask))


def local_density_estimate(pairs: PairTable, box: Box, Q: int | None = None) -> Fraction:
    """Points in the box divided by (number of pairs x area of the box inside [0,1]^2)."""
    _require(pairs)
    a = box.area()
    if a == 0:
        raise ZeroArea("box does not meet the unit square")
    return Fraction(box_count(pairs, box, Q), len(pairs)) / a


def grid_counts(pairs: PairTable, n: int, Q: int | None = None) -> np.ndarray:
    """n x n histogram; cell (i, j) holds points with q_prev/Q in [i/n, (i+1)/n) and q_next/Q in [j/n, (j+1)/n)."""
    if n < 1:
        raise ValueError("n must be positive")
    Q = pairs.Q if Q is None else Q
    i = np.minimum(pairs.q_prev * n // Q, n - 1)
    j = np.minimum(pairs.q_next * n // Q, n - 1)
    out = np.zeros((n, n), dtype=np.int64)
    np.add.at(out, (i, j), 1)
    return out


@dataclass
class EmpiricalSummary:
    """Mergeable pair statistics (a monoid under :meth:`merge`)."""

    total_pairs: int = 0
    per_type: Counter = None
    small_sum_count: int = 0

    def __post_init__(self):
        if self.per_type is None:
            self.per_type = Counter()

    @classmethod
    def from_pairs(cls, pairs: PairTable, Q: int | None = None) -> "EmpiricalSummary":
        if len(pairs) == 0:
            return cls()
        return cls(len(pairs), Counter(type_counts(pairs)), small_sum_count(pairs, Q))

    def merge(self, other: "EmpiricalSummary") -> "EmpiricalSummary":
        return EmpiricalSummary(
            self.total_pairs + other.total_pairs,
            self.per_type + other.per_type,
            self.small_sum_count + other.small_sum_count,
        )

    def to_json(self) -> dict:
        return {
            "total_pairs": self.total_pairs,
            "per_type": {str(r): c for r, c in sorted(self.per_type.items())},
            "small_sum_count": self.small_sum_count,
        }
