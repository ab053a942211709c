"""Tests for F, F', cycle detection and the structural checks."""

import pytest
from hypothesis import given, settings

from convertor.conftest import scenes_with_subsets
from convertor.directions import TotalOrder, WeakOrder
from convertor.dynamics import (
    Family,
    Operator,
    Trace,
    apply_F,
    apply_Fprime,
    check_conv_invariance,
    check_cycle_equivalence,
    check_decomposition,
    check_face_persistence,
    check_interleaving,
    check_membership_two_periodic,
    decomposes,
    find_cycle,
    is_eventually_two_periodic,
    iterate,
    membership_trace,
    omega_of_direction,
    proper_hull_faces,
    run_steps,
)
from convertor.exceptions import GeometryError, MaxIterationsError, OrderError
from convertor.fuzz import five_set_example
from convertor.geometry import Polytope, Scene, global_hull


def names(family: Family) -> set:
    return {p.name for p in family}


def test_segment_point_example_fprime_trace(triangle_scene, segment_point_start):
    trace = iterate(segment_point_start, Operator.FPRIME, triangle_scene)
    assert [names(state) for state in trace.history] == [
        {"AB", "C"},
        {"AC", "BC"},
        {"AB", "AC", "BC", "C"},
        {"ABC", "AC", "BC"},
    ]
    assert (trace.transient, trace.period) == (2, 2)
    assert names(trace.state(4)) == {"AB", "AC", "BC", "C"}


def test_segment_point_example_f_period_matches_fprime(triangle_scene, segment_point_start):
    f_trace = iterate(segment_point_start, "F", triangle_scene)
    fprime_trace = iterate(segment_point_start, "Fprime", triangle_scene)
    assert f_trace.period == fprime_trace.period == 2
    assert check_cycle_equivalence(segment_point_start, triangle_scene)


def test_single_vertex_is_a_fixed_point():
    scene = Scene.from_mapping(2, {"A": [0, 0]})
    start = Family.of([["A"]], scene)
    trace = iterate(start, Operator.F, scene)
    assert (trace.transient, trace.period) == (0, 1)
    assert apply_Fprime(start, scene) == start


def test_family_normalizes_members(triangle_scene):
    family = Family.of([["B", "A"], ["A", "B"], ["C"]], triangle_scene)
    assert len(family) == 2
    assert str(family) == "{AB, C}"
    with pytest.raises(GeometryError):
        Family(())


def test_operator_parse():
    assert Operator.parse("f'") is Operator.FPRIME
    assert Operator.parse(" G ") is Operator.GTAU
    with pytest.raises(OrderError):
        Operator.parse("H")


def test_find_cycle_reports_transient_and_period():
    # 0 -> 1 -> 2 -> 3 -> 4 -> 2
    trace = find_cycle(lambda x: x + 1 if x < 4 else 2, 0)
    assert (trace.transient, trace.period) == (2, 3)
    assert trace.history == (0, 1, 2, 3, 4)
    assert trace.cycle == (2, 3, 4)
    assert trace.state(7) == 4


def test_find_cycle_gives_up_with_history():
    with pytest.raises(MaxIterationsError) as info:
        find_cycle(lambda x: x + 1, 0, max_iter=5)
    assert info.value.history == [0, 1, 2, 3, 4, 5]


def test_trace_shape_is_validated():
    with pytest.raises(GeometryError):
        Trace((1, 2), 1, 2)


def test_omega_of_direction(triangle_scene, segment_point_start):
    assert omega_of_direction(segment_point_start, TotalOrder(("A", "C", "B")), triangle_scene).name == "AC"
    assert omega_of_direction(segment_point_start, WeakOrder((("A", "B"), ("C",))), triangle_scene).name == "ABC"
    with pytest.raises(OrderError):
        omega_of_direction(segment_point_start, WeakOrder((("A", "B", "C"),)), triangle_scene)


def test_f_on_collinear_points_uses_the_tied_direction(collinear_scene):
    start = Family.of([["A", "B", "C"]], collinear_scene)
    # the all-tied class exposes the whole segment
    assert names(apply_F(start, collinear_scene)) == {"A", "C", "AC"}
    assert names(apply_Fprime(start, collinear_scene)) == {"A", "C"}


def test_run_steps_and_membership(triangle_scene, segment_point_start):
    history = run_steps(segment_point_start, Operator.FPRIME, triangle_scene, 4)
    assert len(history) == 5
    assert history[4] == history[2]
    trace = iterate(segment_point_start, Operator.FPRIME, triangle_scene)
    ac = Polytope(("A", "C"))
    assert membership_trace(ac, trace) == [False, True, True, True]


def test_is_eventually_two_periodic():
    assert is_eventually_two_periodic([False, True, False], 1, 2)
    assert is_eventually_two_periodic([True, True, False, True], 1, 3) is False
    assert is_eventually_two_periodic([True], 0, 1)


def test_segment_point_example_checks(triangle_scene, segment_point_start):
    assert check_interleaving(segment_point_start, triangle_scene, 5)
    assert check_conv_invariance(segment_point_start, triangle_scene, 5)
    assert check_decomposition(segment_point_start, triangle_scene, 5)
    assert check_face_persistence(segment_point_start, triangle_scene, 6)
    assert check_membership_two_periodic(segment_point_start, triangle_scene)


def test_proper_hull_faces(triangle_scene, segment_point_start):
    faces = {p.name for p in proper_hull_faces(segment_point_start, triangle_scene)}
    assert faces == {"A", "B", "C", "AB", "AC", "BC"}


def test_decomposes(square_scene):
    parts = Family.of([["A", "B"], ["C", "D"], ["E"]], square_scene)
    square = Polytope(("A", "B", "C", "D"))
    assert decomposes(square, parts, square_scene)
    assert not decomposes(Polytope(("A", "C")), parts, square_scene)


def test_five_set_family_keeps_its_hull():
    scene, family = five_set_example()
    hull = global_hull(family, scene)
    assert global_hull(apply_F(family, scene), scene) == hull
    assert global_hull(apply_Fprime(family, scene), scene) == hull


@settings(max_examples=30, deadline=None)
@given(scenes_with_subsets(max_vertices=4))
def test_hull_is_conserved_by_both_maps(data):
    scene, subsets = data
    start = Family.of(subsets, scene)
    hull = global_hull(start, scene)
    assert global_hull(apply_F(start, scene), scene) == hull
    assert global_hull(apply_Fprime(start, scene), scene) == hull


@settings(max_examples=20, deadline=None)
@given(scenes_with_subsets(max_vertices=4))
def test_interleaving_on_random_planar_instances(data):
    scene, subsets = data
    start = Family.of(subsets, scene)
    assert check_interleaving(start, scene, 3)
