"""Farey sequences of order Q: enumeration, navigation and denominator chains.

The sequence is taken on (0, 1], i.e. 0/1 is left out unless explicitly
requested as an anchor.  Enumeration over a subinterval seeds the
next-term recurrence with the two Farey neighbours around the left end,
found by a Stern-Brocot descent, and then walks in O(1) memory.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from . import _walk
from .errors import (
    ChainLeavesRange,
    EndOfSequence,
    NotConsecutive,
    NotCoprime,
    NotNeighborPair,
)
from .numtheory import mod_inverse


class FareyFraction(NamedTuple):
    num: int
    den: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self):
        return f"{self.num}/{self.den}"


class Subset(enum.Enum):
    ALL = "all"
    ODD = "odd"
    EVEN = "even"

    def accepts(self, q: int) -> bool:
        if self is Subset.ALL:
            return True
        return (q % 2 == 0) == (self is Subset.EVEN)


_KERNEL_CODE = {Subset.ALL: _walk.ALL, Subset.ODD: _walk.ODD, Subset.EVEN: _walk.EVEN}


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] inside [0, 1].

    A single point (lo == hi) is allowed; statistics that need a positive
    length check ``length`` themselves.
    """

    lo: Fraction = Fraction(0)
    hi: Fraction = Fraction(1)

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if not 0 <= lo <= hi <= 1:
            raise ValueError(f"need 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


UNIT = Interval(Fraction(0), Fraction(1))


def _check_order(Q: int):
    if not isinstance(Q, (int, np.integer)) or Q < 1:
        raise ValueError(f"order Q must be a positive integer, got {Q!r}")


def neighbors(x: Fraction, Q: int) -> tuple[FareyFraction | None, FareyFraction | None]:
    """Closest elements of F_Q (with 0/1 included) strictly left and right of x."""
    _check_order(Q)
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    p, q = x.numerator, x.denominator
    if q <= Q:
        if q == 1:
            if p == 0:
                return None, FareyFraction(1, Q)
            return FareyFraction(Q - 1, Q), None
        r = mod_inverse(p, q)
        ql = r + q * ((Q - r) // q)
        qr = (q - r) + q * ((Q - q + r) // q)
        return FareyFraction((p * ql - 1) // q, ql), FareyFraction((p * qr + 1) // q, qr)
    a, b, c, d = 0, 1, 1, 1
    while b + d <= Q:
        if x * (b + d) < a + c:
            # mediant lies right of x: pull the right end leftwards
            t = (c - x * d) / (x * b - a)
            k = min(math.ceil(t) - 1, (Q - d) // b)
            c, d = k * a + c, k * b + d
        else:
            t = (x * b - a) / (c - x * d)
            k = min(math.ceil(t) - 1, (Q - b) // d)
            a, b = a + k * c, b + k * d
    return FareyFraction(a, b), FareyFraction(c, d)


def _first_at_least(lo: Fraction, Q: int, include_zero: bool):
    """(predecessor, first element >= lo) of the sequence."""
    if lo.denominator <= Q:
        if lo == 0 and not include_zero:
            return FareyFraction(0, 1), FareyFraction(1, Q)
        left, _ = neighbors(lo, Q)
        return left, FareyFraction(lo.numerator, lo.denominator)
    return neighbors(lo, Q)


def _last_at_most(hi: Fraction, Q: int) -> FareyFraction:
    if hi.denominator <= Q:
        return FareyFraction(hi.numerator, hi.denominator)
    return neighbors(hi, Q)[0]


def _successor(Q, a0, q0, a1, q1):
    k = (Q + q0) // q1
    return k * a1 - a0, k * q1 - q0


def iter_farey(
    Q: int,
    subset: Subset = Subset.ALL,
    interval: Interval = UNIT,
    include_zero: bool = False,
) -> Iterator[FareyFraction]:
    """Yield F_Q ∩ interval in increasing order, filtered by denominator parity."""
    _check_order(Q)
    prev, cur = _first_at_least(interval.lo, Q, include_zero)
    hn, hd = interval.hi.numerator, interval.hi.denominator
    if prev is None:
        # cur is the anchor 0/1; its successor is 1/Q
        if subset.accepts(1) and hn >= 0:
            yield cur
        prev, cur = cur, FareyFraction(1, Q)
    a0, q0 = prev
    a1, q1 = cur
    want_even = subset is Subset.EVEN
    everything = subset is Subset.ALL
    while a1 * hd <= hn * q1:
        if everything or ((q1 % 2 == 0) == want_even):
            yield FareyFraction(a1, q1)
        if q1 == 1 and a1 == 1:
            return
        k = (Q + q0) // q1
        a0, q0, a1, q1 = a1, q1, k * a1 - a0, k * q1 - q0


def enumerate_farey(
    Q: int,
    subset: Subset = Subset.ALL,
    interval: Interval = UNIT,
    include_zero: bool = False,
) -> list[FareyFraction]:
    """F_Q ∩ interval as a list; see :func:`iter_farey`."""
    return list(iter_farey(Q, subset, interval, include_zero))


def brute_force(
    Q: int,
    subset: Subset = Subset.ALL,
    interval: Interval = UNIT,
    include_zero: bool = False,
) -> list[FareyFraction]:
    """Reference enumeration: every reduced a/q, filtered, then sorted."""
    _check_order(Q)
    out = []
    for q in range(1, Q + 1):
        if not subset.accepts(q):
            continue
        for a in range(0 if include_zero else 1, q + 1):
            if math.gcd(a, q) == 1 and interval.lo * q <= a <= interval.hi * q:
                out.append(FareyFraction(a, q))
    out.sort(key=lambda f: Fraction(f.num, f.den))
    return out


def _walk_bounds(Q: int, interval: Interval):
    if Q > _walk.MAX_ORDER:
        raise OverflowError(f"Q={Q} exceeds the 64-bit walk limit {_walk.MAX_ORDER}")
    prev, first = _first_at_least(interval.lo, Q, include_zero=False)
    last = _last_at_most(interval.hi, Q)
    if last is None or first is None or Fraction(*first) > Fraction(*last):
        return None
    return prev, first, last


def farey_arrays(Q: int, subset: Subset = Subset.ALL, interval: Interval = UNIT):
    """Numerators and denominators of F_Q ∩ interval as int64 arrays (compiled walk)."""
    _check_order(Q)
    bounds = _walk_bounds(Q, interval)
    if bounds is None:
        return _walk.empty_int_array(), _walk.empty_int_array()
    (a0, q0), (a1, q1), (ea, eq) = bounds
    n_even, n_odd = _walk.count_by_parity(Q, a0, q0, a1, q1, ea, eq)
    size = {Subset.ALL: n_even + n_odd, Subset.EVEN: n_even, Subset.ODD: n_odd}[subset]
    out_a = np.empty(size, dtype=np.int64)
    out_q = np.empty(size, dtype=np.int64)
    _walk.collect(Q, a0, q0, a1, q1, ea, eq, _KERNEL_CODE[subset], out_a, out_q)
    return out_a, out_q


def count_farey(Q: int, subset: Subset = Subset.ALL, interval: Interval = UNIT) -> int:
    """#(F_Q ∩ interval) restricted by parity, without materialising the sequence."""
    _check_order(Q)
    bounds = _walk_bounds(Q, interval)
    if bounds is None:
        return 0
    (a0, q0), (a1, q1), (ea, eq) = bounds
    n_even, n_odd = _walk.count_by_parity(Q, a0, q0, a1, q1, ea, eq)
    return {Subset.ALL: n_even + n_odd, Subset.EVEN: n_even, Subset.ODD: n_odd}[subset]


def next_fraction(Q: int, prev, cur) -> FareyFraction:
    """Successor of cur in F_Q, given its predecessor prev."""
    _check_order(Q)
    a0, q0 = prev
    a1, q1 = cur
    if a1 * q0 - a0 * q1 != 1 or q0 > Q or q1 > Q or q0 + q1 <= Q:
        raise NotConsecutive(f"{a0}/{q0} and {a1}/{q1} are not neighbours in F_{Q}")
    if a1 == q1:
        raise EndOfSequence("1/1 is the last element")
    return FareyFraction(*_successor(Q, a0, q0, a1, q1))


def index_of(Q: int, q_prev: int, q_cur: int) -> int:
    """The index floor((Q + q_prev) / q_cur) of a neighbour pair."""
    if (
        q_prev < 1
        or q_cur < 1
        or q_prev > Q
        or q_cur > Q
        or math.gcd(q_prev, q_cur) != 1
        or q_prev + q_cur <= Q
    ):
        raise NotNeighborPair(f"({q_prev}, {q_cur}) is not a neighbour pair for Q={Q}")
    return (Q + q_prev) // q_cur


def numerators_from_pair(q_prev: int, q_cur: int) -> tuple[int, int]:
    """Numerators of the unique consecutive fractions with these denominators."""
    if q_prev < 1 or q_cur < 1 or math.gcd(q_prev, q_cur) != 1:
        raise NotCoprime(f"denominators {q_prev} and {q_cur} share a factor")
    a_cur = 1 if q_cur == 1 else mod_inverse(q_prev, q_cur)
    return (a_cur * q_prev - 1) // q_cur, a_cur


@dataclass(frozen=True)
class DenominatorChain:
    Q: int
    dens: tuple[int, ...]
    ks: tuple[int, ...] = field(default=())


def chain(Q: int, q_prev: int, q_cur: int, steps: int) -> DenominatorChain:
    """Follow the denominator recurrence ``steps`` times from a neighbour pair."""
    index_of(Q, q_prev, q_cur)
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    dens = [q_prev, q_cur]
    ks = []
    for _ in range(steps):
        q0, q1 = dens[-2], dens[-1]
        if q1 == 1:
            raise ChainLeavesRange("the chain would step past 1/1")
        k = (Q + q0) // q1
        ks.append(k)
        dens.append(k * q1 - q0)
    return DenominatorChain(Q, tuple(dens), tuple(ks))
