"""Tests for the abstract map G_tau and the oscillator check."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convertor.combinatorics import (
    OscillatorVerdict,
    SetFamily,
    d_image,
    g_tau,
    gtau_vs_fprime,
    is_oscillator,
    iterate_g,
    max_under,
    nonempty_subsets,
)
from convertor.directions import OrderFamily, TotalOrder, orders_from_scene
from convertor.dynamics import Family, Trace
from convertor.exceptions import CapExceededError, ConfigurationError, GeometryError, OrderError
from convertor.fuzz import vertex_labels

TRIANGLE_TAU = OrderFamily(
    tuple(TotalOrder(tuple(word)) for word in ("ACB", "ABC", "BCA", "BAC", "CAB", "CBA"))
)


def words(family: SetFamily) -> set:
    return {"".join(subset) for subset in family}


def test_set_family_normalizes():
    family = SetFamily((("B", "A"), ("A", "B"), ("C",)))
    assert family.members == (("A", "B"), ("C",))
    assert ("B", "A") in family
    assert 3 not in family
    with pytest.raises(GeometryError):
        SetFamily(((),))
    with pytest.raises(GeometryError):
        SetFamily(())


def test_max_under_and_d_image():
    order = TotalOrder(("C", "A", "B"))
    assert max_under(("A", "B"), order) == "A"
    assert d_image(SetFamily((("A", "B"), ("B",))), order) == ("A", "B")
    with pytest.raises(GeometryError):
        max_under((), order)
    with pytest.raises(OrderError):
        max_under(("Z",), order)


def test_segment_point_example_under_gtau():
    start = SetFamily((("A", "B"), ("C",)))
    trace = iterate_g(start, TRIANGLE_TAU)
    assert [words(state) for state in trace.history] == [
        {"AB", "C"},
        {"AC", "BC"},
        {"AB", "AC", "BC", "C"},
        {"ABC", "AC", "BC"},
    ]
    assert (trace.transient, trace.period) == (2, 2)


def test_triangle_scene_gives_the_six_order_tau(triangle_scene):
    assert orders_from_scene(triangle_scene) == TRIANGLE_TAU


def test_g_tau_rejects_unranked_labels():
    with pytest.raises(OrderError):
        g_tau(SetFamily((("A", "Z"),)), TRIANGLE_TAU)


def test_nonempty_subsets():
    assert nonempty_subsets("BA") == [("A",), ("B",), ("A", "B")]
    assert len(nonempty_subsets("ABC")) == 7


def test_exhaustive_oscillator_on_triangle_tau():
    verdict = is_oscillator(TRIANGLE_TAU)
    assert verdict.is_oscillator
    assert verdict.checked == 127
    assert verdict.witness is None


def test_sampled_oscillator_is_reproducible():
    first = is_oscillator(TRIANGLE_TAU, mode="sampled", count=50, seed=7)
    second = is_oscillator(TRIANGLE_TAU, mode="sampled", count=50, seed=7)
    assert first == second
    assert first.coverage == {"mode": "sampled", "count": 50, "seed": 7}


def test_oscillator_caps_and_modes():
    big = OrderFamily((TotalOrder(tuple("ABCDE")),))
    with pytest.raises(CapExceededError):
        is_oscillator(big)
    with pytest.raises(ConfigurationError):
        is_oscillator(TRIANGLE_TAU, mode="bogus")
    with pytest.raises(ConfigurationError):
        is_oscillator(TRIANGLE_TAU, mode="sampled", count=0)


def test_negative_verdict_needs_a_long_witness():
    start = SetFamily((("A",),))
    with pytest.raises(GeometryError):
        OscillatorVerdict(False, {"mode": "exhaustive"}, 1)
    with pytest.raises(GeometryError):
        OscillatorVerdict(False, {"mode": "exhaustive"}, 1, (start, Trace((start,), 0, 1)))


def test_gtau_matches_fprime_on_the_segment_point_example(triangle_scene, segment_point_start):
    report = gtau_vs_fprime(segment_point_start, triangle_scene, 4)
    assert report["identical"]
    assert report["flag_count"] == 0
    assert len(report["steps"]) == 5


def test_gtau_vs_fprime_flags_dropped_collinear_point(collinear_scene):
    start = Family.of([["A"], ["B"], ["C"]], collinear_scene)
    report = gtau_vs_fprime(start, collinear_scene, 1)
    flags = report["steps"][0]["flags"]
    assert flags and all(flag["dropped"] == ["B"] for flag in flags)
    assert flags[0]["maxima"] == ["A", "B", "C"]
    assert flags[0]["canonical"] == ["A", "C"]
    assert not report["identical"]


@st.composite
def taus_with_families(draw):
    """An order family over up to four labels plus a set family on them."""
    labels = vertex_labels(draw(st.integers(min_value=1, max_value=4)))
    rankings = draw(st.lists(st.permutations(labels), min_size=1, max_size=8, unique_by=tuple))
    tau = OrderFamily(tuple(TotalOrder(tuple(r)) for r in rankings))
    subset = st.lists(st.sampled_from(labels), min_size=1, unique=True)
    family = SetFamily(tuple(tuple(s) for s in draw(st.lists(subset, min_size=1, max_size=5))))
    return tau, family


@settings(max_examples=80, deadline=None)
@given(taus_with_families())
def test_d_image_stays_inside_the_union_and_is_no_larger(data):
    tau, family = data
    for order in tau:
        image = d_image(family, order)
        assert set(image) <= family.labels
        assert len(image) <= len(family)


@settings(max_examples=80, deadline=None)
@given(taus_with_families(), st.data())
def test_g_tau_shrinks_with_the_order_family(data, choice):
    tau, family = data
    kept = choice.draw(st.lists(st.sampled_from(tau.orders), min_size=1, unique=True))
    smaller = OrderFamily(tuple(kept))
    assert set(g_tau(family, smaller).members) <= set(g_tau(family, tau).members)
