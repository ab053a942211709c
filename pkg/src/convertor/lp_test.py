"""Tests for the exact simplex and elimination routines."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from convertor.lp import find_feasible_point, nullspace_vector, rank

F = Fraction


def test_feasible_box_returns_point_inside():
    # x >= 1, y >= 2, x + y = 5
    x = find_feasible_point(
        2,
        equalities=[([1, 1], 5)],
        inequalities=[([1, 0], 1), ([0, 1], 2)],
    )
    assert x is not None
    assert x[0] + x[1] == 5
    assert x[0] >= 1 and x[1] >= 2
    assert all(isinstance(v, Fraction) for v in x)


def test_infeasible_system_returns_none():
    # x >= 1 and -x >= 0 cannot both hold
    assert find_feasible_point(1, inequalities=[([1], 1), ([-1], 0)], free=True) is None


def test_nonnegativity_applies_unless_free():
    assert find_feasible_point(1, equalities=[([1], -3)]) is None
    assert find_feasible_point(1, equalities=[([1], -3)], free=True) == [F(-3)]


def test_no_constraints_gives_origin():
    assert find_feasible_point(3) == [F(0), F(0), F(0)]


def test_degenerate_convex_combination():
    # (1, 0) is the midpoint of (0, 0) and (2, 0)
    lam = find_feasible_point(
        2,
        equalities=[([0, 2], 1), ([0, 0], 0), ([1, 1], 1)],
    )
    assert lam == [F(1, 2), F(1, 2)]


def test_rank_and_nullspace():
    rows = [[F(1), F(2)], [F(2), F(4)]]
    assert rank(rows, 2) == 1
    v = nullspace_vector(rows, 2)
    assert v is not None and any(v)
    assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)
    assert nullspace_vector([[F(1), F(0)], [F(0), F(1)]], 2) is None
    assert rank([], 2) == 0
    assert nullspace_vector([], 2) == [F(1), F(0)]


small = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=4))
def test_nullspace_vector_is_orthogonal(rows):
    v = nullspace_vector(rows, 3)
    if v is None:
        assert rank(rows, 3) == 3
    else:
        assert any(v)
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)


@given(st.tuples(small, small), st.lists(st.tuples(small, small), min_size=1, max_size=4))
def test_feasible_point_found_for_satisfiable_inequalities(target, normals):
    # every inequality is built to hold at ``target``
    inequalities = [(n, n[0] * target[0] + n[1] * target[1] - 1) for n in normals]
    x = find_feasible_point(2, inequalities=inequalities, free=True)
    assert x is not None
    for n, b in inequalities:
        assert n[0] * x[0] + n[1] * x[1] >= b
