"""Shared fixtures and hypothesis strategies for the convertor tests."""

import pytest
from hypothesis import strategies as st

from convertor.dynamics import Family
from convertor.fuzz import segment_point_example, vertex_labels
from convertor.geometry import Scene


@pytest.fixture
def triangle_scene() -> Scene:
    return segment_point_example()[0]


@pytest.fixture
def segment_point_start() -> Family:
    return segment_point_example()[1]


@pytest.fixture
def collinear_scene() -> Scene:
    return Scene.from_mapping(2, {"A": ["0", "0"], "B": ["1", "0"], "C": ["2", "0"]})


@pytest.fixture
def square_scene() -> Scene:
    return Scene.from_mapping(
        2, {"A": ["0", "0"], "B": ["1", "0"], "C": ["1", "1"], "D": ["0", "1"], "E": ["1/2", "1/2"]}
    )


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=3)


@st.composite
def planar_scenes(draw, min_vertices: int = 1, max_vertices: int = 5) -> Scene:
    """Scenes of distinct rational points in the plane."""
    points = draw(
        st.lists(
            st.tuples(rationals, rationals),
            min_size=min_vertices,
            max_size=max_vertices,
            unique=True,
        )
    )
    return Scene(2, tuple(zip(vertex_labels(len(points)), points)))


@st.composite
def scenes_with_subsets(draw, max_vertices: int = 5):
    """A planar scene plus one to three nonempty label subsets."""
    scene = draw(planar_scenes(max_vertices=max_vertices))
    subset = st.lists(st.sampled_from(scene.labels), min_size=1, unique=True)
    return scene, draw(st.lists(subset, min_size=1, max_size=3))
