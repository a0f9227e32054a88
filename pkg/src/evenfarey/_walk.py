"""Compiled inner loops that walk F_Q with the next-term recurrence.

Each kernel starts from two consecutive fractions (a0/q0, a1/q1), visits
a1/q1 first and stops after visiting ea/eq.  Denominators never exceed Q,
so int64 arithmetic is exact as long as Q * Q fits, which the callers check.
"""
import numba
import numpy as np

ALL, ODD, EVEN = 0, 1, 2

MAX_ORDER = 2_000_000_000


@numba.njit(cache=True)
def count_by_parity(Q, a0, q0, a1, q1, ea, eq):
    n_even = 0
    n_odd = 0
    while True:
        if q1 % 2 == 0:
            n_even += 1
        else:
            n_odd += 1
        if a1 == ea and q1 == eq:
            break
        k = (Q + q0) // q1
        a0, q0, a1, q1 = a1, q1, k * a1 - a0, k * q1 - q0
    return n_even, n_odd


@numba.njit(cache=True)
def collect(Q, a0, q0, a1, q1, ea, eq, which, out_a, out_q):
    n = 0
    while True:
        keep = which == ALL or (which == EVEN and q1 % 2 == 0) or (which == ODD and q1 % 2 == 1)
        if keep:
            out_a[n] = a1
            out_q[n] = q1
            n += 1
        if a1 == ea and q1 == eq:
            break
        k = (Q + q0) // q1
        a0, q0, a1, q1 = a1, q1, k * a1 - a0, k * q1 - q0
    return n


@numba.njit(cache=True)
def collect_pairs(Q, a0, q0, a1, q1, ea, eq, q_prev, q_next, r, a_prev, a_next):
    """Record consecutive even fractions together with the odd count between them."""
    n = 0
    have = False
    last_a = 0
    last_q = 0
    odd = 0
    while True:
        if q1 % 2 == 0:
            if have:
                q_prev[n] = last_q
                q_next[n] = q1
                r[n] = odd
                a_prev[n] = last_a
                a_next[n] = a1
                n += 1
            have = True
            last_a = a1
            last_q = q1
            odd = 0
        elif have:
            odd += 1
        if a1 == ea and q1 == eq:
            break
        k = (Q + q0) // q1
        a0, q0, a1, q1 = a1, q1, k * a1 - a0, k * q1 - q0
    return n


def empty_int_array():
    return np.empty(0, dtype=np.int64)
