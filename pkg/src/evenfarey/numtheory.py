"""Integer arithmetic: modular inverses, the Moebius sieve, coprime lattice counts."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import InvalidModulus, NotInvertible
from .geometry import ConvexPolygon


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m, as the representative in [0, m)."""
    if m < 2:
        raise InvalidModulus(f"modulus must be at least 2, got {m}")
    g, x, _ = ext_gcd(a % m, m)
    if g != 1:
        raise NotInvertible(f"{a} is not invertible modulo {m}")
    return x % m


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1


class ParityPair(NamedTuple):
    x_parity: Parity
    y_parity: Parity


EVEN_ODD = ParityPair(Parity.EVEN, Parity.ODD)
ODD_EVEN = ParityPair(Parity.ODD, Parity.EVEN)
ODD_ODD = ParityPair(Parity.ODD, Parity.ODD)


@dataclass(frozen=True)
class MobiusTable:
    limit: int
    values: np.ndarray  # values[d - 1] = mu(d)

    def __getitem__(self, d: int) -> int:
        if not 1 <= d <= self.limit:
            raise IndexError(d)
        return int(self.values[d - 1])

    def tolist(self) -> list[int]:
        return self.values.tolist()


def mobius_table(n: int) -> MobiusTable:
    """Sieve mu(1..n)."""
    if n < 1:
        raise ValueError("n must be positive")
    mu = np.ones(n + 1, dtype=np.int8)
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    for p in np.flatnonzero(is_prime):
        p = int(p)
        mu[p::p] *= -1
        if p * p <= n:
            mu[p * p :: p * p] = 0
    values = mu[1:].copy()
    values.flags.writeable = False
    return MobiusTable(n, values)


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _row_range(region: ConvexPolygon, y: int) -> tuple[int, int] | None:
    """Integer x range of the row at height y, honouring each constraint's strictness."""
    lo, hi = None, None
    for h in region.constraints:
        rest = h.b * y + h.c
        if h.a == 0:
            if rest < 0 or (h.strict and rest == 0):
                return None
            continue
        bound = -rest / h.a
        if h.a > 0:
            # x >= bound (or >)
            b = _floor(bound) + 1 if h.strict else _ceil(bound)
            lo = b if lo is None else max(lo, b)
        else:
            b = _ceil(bound) - 1 if h.strict else _floor(bound)
            hi = b if hi is None else min(hi, b)
    if lo is None or hi is None or lo > hi:
        return None
    return lo, hi


def _rows(region: ConvexPolygon):
    if region.is_empty:
        return
    _, _, y0, y1 = region.bounding_box()
    for y in range(_ceil(y0), _floor(y1) + 1):
        r = _row_range(region, y)
        if r is not None:
            yield y, r[0], r[1]


def _row_candidates(y: int, lo: int, hi: int, parity: ParityPair) -> np.ndarray:
    if y % 2 != parity.y_parity.value:
        return np.empty(0, dtype=np.int64)
    start = lo + ((parity.x_parity.value - lo) % 2)
    xs = np.arange(start, hi + 1, 2, dtype=np.int64)
    return xs[np.gcd(xs, y) == 1]


def count_parity_coprime(region: ConvexPolygon, parity: ParityPair = EVEN_ODD) -> int:
    """Lattice points (x, y) of the region with the given parities and gcd 1.

    Boundary points count when the defining constraint is non-strict, so a
    polygon built from vertices is treated as closed.  A zero-area polygon
    counts the lattice points lying on it.
    """
    total = 0
    for y, lo, hi in _rows(region):
        total += int(_row_candidates(y, lo, hi, parity).size)
    return total


def main_term(region: ConvexPolygon) -> float:
    """Leading term 2*Area/pi^2 for the number of coprime (even, odd) points."""
    return 2 * float(region.area()) / math.pi ** 2


def constrained_count(region: ConvexPolygon, interval) -> int:
    """Coprime (even x, odd y) points with the inverse of x mod y inside y*I.

    The inverse is the representative in [1, y], so y = 1 counts as 1.

    ``interval`` is anything with ``lo`` and ``hi`` attributes or a pair.
    """
    lo, hi = _bounds(interval)
    total = 0
    for y, xlo, xhi in _rows(region):
        xs = _row_candidates(y, xlo, xhi, EVEN_ODD)
        if xs.size == 0:
            continue
        if y == 1:
            # inverses are taken in [1, y], matching numerators in (0, 1]
            total += int(xs.size) if lo <= 1 <= hi else 0
            continue
        a, b = lo * y, hi * y
        for x in xs.tolist():
            inv = pow(x, -1, y)
            if a <= inv <= b:
                total += 1
    return total


def _bounds(interval) -> tuple[Fraction, Fraction]:
    if hasattr(interval, "lo"):
        return Fraction(interval.lo), Fraction(interval.hi)
    lo, hi = interval
    return Fraction(lo), Fraction(hi)
