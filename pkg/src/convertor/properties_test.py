"""Tests for the property suites behind ``check``."""

import pytest

from convertor.exceptions import ConfigurationError
from convertor.fuzz import FuzzConfig
from convertor.properties import PROPERTIES, run_check


@pytest.mark.parametrize("name", sorted(PROPERTIES))
def test_every_suite_passes_on_small_instances(name):
    config = FuzzConfig(trials=5, num_vertices=4, num_polytopes=2, seed=1)
    report = run_check(name, config, steps=3)
    assert report["property"] == name
    assert report["trials"] == 5
    assert report["passed"] == 5 and report["failed"] == 0
    assert report["first_counterexample"] is None


def test_support_inclusion_with_a_single_polytope():
    config = FuzzConfig(trials=10, num_vertices=4, num_polytopes=1, seed=3)
    assert run_check("support-inclusion", config)["failed"] == 0


def test_unknown_property():
    with pytest.raises(ConfigurationError):
        run_check("nonsense", FuzzConfig(trials=1))


def test_planar_only_suites_need_dim_two():
    with pytest.raises(ConfigurationError):
        run_check("sweep-vs-lp", FuzzConfig(dim=3, trials=1))


def test_checks_run_in_three_dimensions():
    config = FuzzConfig(dim=3, num_vertices=4, num_polytopes=2, trials=3, seed=8)
    assert run_check("conv-invariance", config, steps=2)["failed"] == 0
