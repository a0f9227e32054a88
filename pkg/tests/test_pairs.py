from fractions import Fraction as F

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from evenfarey.errors import EmptyInput, EmptyResult, ZeroArea
from evenfarey.farey import UNIT, Interval, Subset, chain, enumerate_farey
from evenfarey.pairs import (
    Box,
    EmpiricalSummary,
    PairTable,
    TypedPair,
    even_pairs,
    grid_counts,
    local_density_estimate,
    small_sum_probability,
    type_histogram,
)
from evenfarey.tessellation import is_admissible


def brute_pairs(Q, interval=UNIT):
    fs = enumerate_farey(Q, Subset.ALL, interval)
    out, last, odd = [], None, 0
    for f in fs:
        if f.den % 2:
            odd += 1
            continue
        if last is not None:
            out.append(TypedPair(Q, last.den, f.den, odd, last.num, f.num))
        last, odd = f, 0
    return out


def test_q6_pairs():
    pairs = even_pairs(6)
    assert [(p.q_prev, p.q_next, p.r) for p in pairs] == [(6, 4, 1), (4, 2, 2), (2, 4, 2), (4, 6, 1)]
    assert pairs[0] == TypedPair(6, 6, 4, 1, 1, 1)
    assert type_histogram(pairs) == {1: F(1, 2), 2: F(1, 2)}


def test_q5_pairs():
    pairs = even_pairs(5)
    assert [(p.q_prev, p.q_next, p.r) for p in pairs] == [(4, 2, 2), (2, 4, 2)]
    assert small_sum_probability(pairs) == 0


def test_q2_has_no_pairs():
    with pytest.raises(EmptyResult):
        even_pairs(2)


def test_small_sum_q6():
    # (4, 2) and (2, 4) both have q' + q'' = 6 <= 6
    assert small_sum_probability(even_pairs(6)) == F(1, 2)


def test_matches_walk_for_small_orders():
    for Q in range(3, 301, 7):
        for iv in (UNIT, Interval(F(1, 10), F(9, 20))):
            want = brute_pairs(Q, iv)
            if len(want) == 0:
                continue
            got = list(even_pairs(Q, iv))
            assert got == want


def test_parity_wall_and_admissible_tuples():
    for Q in (30, 101, 300):
        fs = enumerate_farey(Q, include_zero=True)
        pos = {(f.num, f.den): i for i, f in enumerate(fs)}
        for p in even_pairs(Q):
            assert p.r >= 1 and p.q_prev % 2 == 0 and p.q_next % 2 == 0
            i = pos[(p.a_prev, p.q_prev)]
            between = fs[i + 1 : i + 1 + p.r]
            assert all(f.den % 2 == 1 for f in between)
            # indices k_1..k_r, taken at the r odd fractions in between
            c = chain(Q, p.q_prev, fs[i + 1].den, p.r)
            assert c.dens[-1] == p.q_next
            assert is_admissible(c.ks)


def test_support_quadrilateral():
    for Q in range(2, 2001, 37):
        t = even_pairs(Q) if Q >= 4 else None
        if t is None:
            continue
        x, y = t.q_prev, t.q_next
        assert np.all(x <= Q) and np.all(y <= Q)
        assert np.all(2 * x + y >= Q) and np.all(x + 2 * y >= Q)


def test_histogram_sums_to_one():
    pairs = even_pairs(500)
    assert sum(type_histogram(pairs).values()) == 1
    single = PairTable(7, *(np.array([v]) for v in (6, 4, 3, 1, 1)))
    assert type_histogram(single) == {3: F(1)}
    empty = PairTable(7, *(np.empty(0, dtype=np.int64) for _ in range(5)))
    with pytest.raises(EmptyInput):
        type_histogram(empty)


def test_local_density_normalisation_and_zero():
    pairs = even_pairs(400)
    whole = Box(F(1, 2), F(1, 2), F(1, 2))
    assert local_density_estimate(pairs, whole) == 1
    # outside the support
    assert local_density_estimate(pairs, Box(F(1, 10), F(1, 10), F(1, 40))) == 0
    with pytest.raises(ZeroArea):
        local_density_estimate(pairs, Box(3, 3, F(1, 10)))


def test_local_density_q5000():
    pairs = even_pairs(5000)
    est = local_density_estimate(pairs, Box(F(11, 20), F(7, 20), F(1, 40)))
    assert abs(float(est) - 1) < 0.1
    assert local_density_estimate(pairs, Box(F(1, 10), F(1, 10), F(1, 40))) == 0


def test_grid_counts():
    pairs = even_pairs(6)
    assert grid_counts(pairs, 1).tolist() == [[4]]
    g = grid_counts(pairs, 3)
    # normalised points (1, 2/3), (2/3, 1/3), (1/3, 2/3), (2/3, 1)
    want = np.zeros((3, 3), dtype=int)
    for i, j in ((2, 2), (2, 1), (1, 2), (2, 2)):
        want[i, j] += 1
    assert g.tolist() == want.tolist()
    big = grid_counts(even_pairs(1000), 16)
    assert big.sum() == len(even_pairs(1000))
    assert (big == big.T).all()


@settings(deadline=None, max_examples=25)
@given(st.integers(4, 400), st.fractions(0, 1, max_denominator=50))
def test_summary_merges_over_a_split(Q, cut):
    """Splitting at a cut and merging the summaries loses at most the pair across the cut."""
    full = EmpiricalSummary.from_pairs(even_pairs(Q))
    left_iv, right_iv = Interval(F(0), cut), Interval(cut, F(1))
    parts = []
    for iv in (left_iv, right_iv):
        try:
            parts.append(even_pairs(Q, iv))
        except EmptyResult:
            parts.append(None)
    merged = EmpiricalSummary()
    for t in parts:
        if t is not None:
            merged = merged.merge(EmpiricalSummary.from_pairs(t))
    missing = full.total_pairs - merged.total_pairs
    assert missing in (0, 1)
    assert sum(merged.per_type.values()) == merged.total_pairs
    assert set(full.to_json()) == {"total_pairs", "per_type", "small_sum_count"}
