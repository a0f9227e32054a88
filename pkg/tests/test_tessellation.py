import random
from fractions import Fraction as F

import hypothesis.strategies as st
import pytest
import numpy as np
from hypothesis import given

from evenfarey.errors import EmptyCell, InvalidK, OutsideDomain
from evenfarey.farey import Interval, Subset, farey_arrays, index_of
from evenfarey.geometry import point
from evenfarey.tessellation import (
    admissible_cells,
    all_cells,
    base_cell,
    cell,
    checksum,
    is_admissible,
    last_coeffs,
    p_value,
    probe_center,
    t_inv,
    t_map,
    u_region,
    vertex_alpha,
)


def vset(poly):
    return {(p.x, p.y) for p in poly.vertices}


def left(r):
    return (1,) + (2,) * (r - 2) + (3,)


def right(r):
    return (3,) + (2,) * (r - 2) + (1,)


def test_p_value_examples():
    for r in range(2, 12):
        assert p_value(left(r)) == 2
        assert p_value((2,) * (r - 1) + (3,)) == 2 * r + 1
    assert p_value((1, 4, 1)) == 2
    assert p_value(()) == 1
    for k1, k2, k3 in ((1, 4, 1), (3, 2, 5), (7, 7, 7)):
        assert p_value((k1, k2, k3)) == k1 * k2 * k3 - k1 - k3


@given(st.lists(st.integers(1, 50), min_size=1, max_size=12))
def test_p_value_reversal_symmetry(ks):
    assert p_value(ks) == p_value(ks[::-1])


def test_p_value_symmetry_many():
    rng = random.Random(7)
    for _ in range(10**4):
        ks = [rng.randint(1, 40) for _ in range(rng.randint(1, 10))]
        assert p_value(ks) == p_value(ks[::-1])


def test_last_coeffs():
    for r in range(2, 15):
        assert last_coeffs(left(r)) == (2, 2 * r - 1)
        assert last_coeffs(right(r)) == (2, 1)
    assert last_coeffs((6,)) == (6, 1)


def test_t_map_examples():
    assert t_map((1, F(2, 3))) == (F(2, 3), 1)
    assert t_inv((F(2, 3), 1)) == (1, F(2, 3))
    assert t_map((F(1, 2), F(3, 4))) == (F(3, 4), 1)
    assert t_map((1, 1)) == (1, 1)
    # x + y = 1 is not part of the triangle
    with pytest.raises(OutsideDomain):
        t_map((F(1, 3), F(2, 3)))
    with pytest.raises(OutsideDomain):
        t_map((F(1, 4), F(1, 4)))


@given(st.fractions(F(1, 300), 1, max_denominator=300), st.fractions(F(1, 300), 1, max_denominator=300))
def test_t_map_inverse(x, y):
    if x + y <= 1:
        x, y = 1 - y / 2, 1 - x / 2
    p = point(x, y)
    q = t_map(p)
    assert q.x + q.y > 1 and 0 < q.x <= 1 and 0 < q.y <= 1
    assert t_inv(q) == p


def test_base_cells():
    assert vset(base_cell(1)) == {(0, 1), (F(1, 3), F(2, 3)), (1, 1)}
    assert vset(base_cell(2)) == {(F(1, 3), F(2, 3)), (F(1, 2), F(1, 2)), (1, F(2, 3)), (1, 1)}
    for k in range(2, 60):
        assert vset(base_cell(k)) == {
            (F(k - 1, k + 1), F(2, k + 1)),
            (F(k, k + 2), F(2, k + 2)),
            (1, F(2, k + 1)),
            (1, F(2, k)),
        }
        assert base_cell(k).area() == F(4, k * (k + 1) * (k + 2))
    with pytest.raises(InvalidK):
        base_cell(0)


def test_base_cell_boundary_ownership():
    # 1 + x = k y belongs to T_k, 1 + x = (k + 1) y does not
    p = point(F(4, 5), F(3, 5))  # 1 + x = 3 y
    assert base_cell(3).contains(p)
    assert not base_cell(2).contains(p)


def test_cells_examples():
    assert vset(cell((1, 3))) == {(F(1, 5), F(4, 5)), (F(2, 7), F(5, 7)), (F(1, 2), 1), (F(1, 3), 1)}
    assert vset(cell((1, 6, 1))) == {(F(3, 7), F(5, 7)), (F(1, 2), F(3, 4)), (F(5, 7), 1), (F(2, 3), 1)}
    assert vset(cell((1, 2, 4, 1))) == {(F(1, 5), F(4, 5)), (F(1, 3), 1), (F(2, 7), 1)}
    assert cell((1, 1)).area() == 0


def test_admissible_cells_levels():
    level2 = {c.tuple for c in admissible_cells(2, max_entry=25)}
    want = {(1, 3), (3, 1)} | {(1, l) for l in range(5, 26, 2)} | {(k, 1) for k in range(5, 26, 2)}
    assert level2 == want
    assert {c.tuple for c in admissible_cells(4, max_entry=41)} == {
        (1, 2, 2, 3), (3, 2, 2, 1), (1, 2, 4, 1), (1, 4, 2, 1)
    }
    assert {c.tuple for c in admissible_cells(7, max_entry=41)} == {left(7), right(7)}
    assert all(is_admissible(c.tuple) for c in admissible_cells(3, max_entry=41))
    with pytest.raises(ValueError):
        admissible_cells(1)


def test_window_filters_cells():
    near_axis = {c.tuple for c in admissible_cells(6, x_window=(0, F(1, 10)))}
    assert near_axis == {left(6)}
    far = admissible_cells(6, x_window=(F(7, 10), F(7, 10)))
    assert far == []


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_partition_with_exact_tail(r):
    K = 200
    cells = all_cells(r, K)
    total = sum((c.area() for c in cells), F(0))
    # T preserves area, so the cells with some entry > K fill exactly r * Area(k > K)
    assert F(1, 2) - total == r * F(2, (K + 1) * (K + 2))


def test_partition_points_have_one_owner():
    rng = random.Random(3)
    cells = all_cells(3, 60)
    for _ in range(300):
        d = rng.randint(5, 200)
        x, y = F(rng.randint(1, d), d), F(rng.randint(1, d), d)
        if x + y <= 1:
            continue
        ks, q = [], point(x, y)
        for _ in range(3):
            ks.append(int((1 + q.x) // q.y))
            q = t_map(q)
        owners = [c.tuple for c in cells if c.polygon.contains(point(x, y))]
        if max(ks) <= 60:
            assert owners == [tuple(ks)]


def _holds(h, x, y, Q):
    """h at (x/Q, y/Q) for integer arrays, scaled to integers."""
    d = h.a.denominator * h.b.denominator * h.c.denominator
    a, b, c = (int(t * d) for t in (h.a, h.b, h.c))
    v = a * x + b * y + c * Q
    return v > 0 if h.strict else v >= 0


def test_dynamical_consistency():
    for Q in range(2, 201):
        _, q = farey_arrays(Q, Subset.ALL, Interval(F(0), F(1)))
        q = np.concatenate([[1], q])  # 0/1 precedes the first fraction
        x, y = q[:-1], q[1:]
        ks = (Q + x) // y
        assert index_of(Q, int(x[0]), int(y[0])) == ks[0]
        for k in np.unique(ks).tolist():
            sel = ks == k
            for h in base_cell(k).constraints:
                assert _holds(h, x[sel], y[sel], Q).all()


def test_probe_center():
    assert probe_center((2,), (F(7, 10), F(9, 10))) == (F(7, 10), F(4, 5))
    u, v = F(1, 3), F(2, 9)
    assert probe_center((1, 3), (u, v)) == (u, (3 * u + v) / 2)
    # an anchor on the image of (x, y) maps back to (x, y)
    ks, x, y = (1, 2, 2, 3), F(1, 8), F(7, 8)
    pr, pr1 = last_coeffs(ks)
    assert probe_center(ks, (x, pr * y - pr1 * x)) == (x, y)


def test_vertex_alpha_examples():
    def alpha_at(ks, v):
        poly = cell(ks)
        i = [(p.x, p.y) for p in poly.vertices].index(v)
        return vertex_alpha(ks, i).alpha

    assert alpha_at((4,), (1, F(1, 2))) == F(1, 4)
    assert alpha_at((1, 2, 2, 3), (F(1, 5), 1)) == F(5, 56)
    assert alpha_at((1, 6, 1), (F(3, 7), F(5, 7))) == F(11, 60)


def test_checksum_examples():
    assert checksum((1, 6, 1)) == 1
    assert checksum((1, 2, 4, 1)) == 1
    assert checksum((2,)) == 2
    for c in admissible_cells(3, max_entry=41):
        n = len(c.polygon.vertices)
        assert checksum(c) == F(4 if n == 4 else 2, c.p)


def test_u_regions():
    assert vset(u_region((2,))) == {(F(1, 3), 1), (F(1, 2), F(1, 2)), (1, F(1, 3)), (1, 1)}
    assert vset(u_region((1, 3))) == {(F(1, 5), 1), (F(2, 7), F(4, 7)), (F(1, 2), F(1, 2)), (F(1, 3), 1)}
    assert vset(u_region((1, 2, 2, 3))) == {(F(1, 9), 1), (F(1, 7), F(5, 7)), (F(1, 5), F(3, 5)), (F(1, 7), 1)}
    with pytest.raises(EmptyCell):
        u_region((1, 1))
