"""Exact point scenes, canonical polytopes and supporting faces.

A polytope is stored as the sorted labels of its extreme points within a
scene, so polytope equality is plain tuple equality. Coordinates are
``Fraction`` values end to end; ties between projections are decided
exactly.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from convertor.exceptions import GeometryError, ParseError, UnknownLabelError
from convertor.logging_config import create_logger
from convertor.lp import find_feasible_point

logger = create_logger(__name__)

Point = Tuple[Fraction, ...]

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def parse_rational(value: Union[str, int, Fraction]) -> Fraction:
    """
    Convert a coordinate literal to an exact rational.

    Accepts integers, ``"p"``, ``"-p/q"`` and decimal strings such as
    ``"0.25"`` or ``"1e-3"``. Floats are refused because they are already
    rounded.

    :raises ParseError: If the value is not an exact literal
    """
    if isinstance(value, bool):
        raise ParseError(f"Boolean is not a coordinate: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if _RATIONAL.match(text) or _DECIMAL.match(text):
            try:
                return Fraction(text)
            except ZeroDivisionError:
                raise ParseError(f"Zero denominator in coordinate {value!r}")
        raise ParseError(f"Not an exact rational literal: {value!r}")
    raise ParseError(
        f"Coordinates must be strings or integers, got {type(value).__name__} {value!r}"
    )


def format_rational(value: Fraction) -> str:
    """Inverse of parse_rational for the ``"p"`` / ``"p/q"`` forms."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def inner(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def difference(u: Sequence[Fraction], v: Sequence[Fraction]) -> Point:
    return tuple(a - b for a, b in zip(u, v))


@dataclass(frozen=True)
class Scene:
    """A labeled finite point set in dimension ``dim``.

    ``vertices`` is kept sorted by label so equal scenes compare and hash
    equal whatever the input order. Scenes are cache keys for the
    enumeration code.
    """

    dim: int
    vertices: Tuple[Tuple[str, Point], ...]
    _index: Dict[str, Point] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or self.dim < 1:
            raise GeometryError(f"Scene dimension must be a positive integer, got {self.dim!r}")
        if not self.vertices:
            raise GeometryError("A scene needs at least one vertex")
        index: Dict[str, Point] = {}
        seen: Dict[Point, str] = {}
        for label, coords in self.vertices:
            if not isinstance(label, str) or not label:
                raise GeometryError(f"Vertex labels must be nonempty strings, got {label!r}")
            if label in index:
                raise GeometryError(f"Duplicate vertex label {label!r}")
            if len(coords) != self.dim:
                raise GeometryError(
                    f"Vertex {label!r} has {len(coords)} coordinates, scene dimension is {self.dim}"
                )
            if coords in seen:
                raise GeometryError(
                    f"Vertices {seen[coords]!r} and {label!r} share coordinates"
                )
            index[label] = coords
            seen[coords] = label
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))

    @classmethod
    def from_mapping(cls, dim: int, vertices: Mapping[str, Sequence]) -> "Scene":
        """Build a scene from ``label -> coordinate literals``."""
        parsed = tuple(
            (label, tuple(parse_rational(c) for c in coords))
            for label, coords in vertices.items()
        )
        return cls(dim, parsed)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(label for label, _ in self.vertices)

    def point(self, label: str) -> Point:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"Unknown vertex label {label!r}")

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.vertices)

    def check_labels(self, labels: Iterable[str]) -> None:
        for label in labels:
            if label not in self._index:
                raise UnknownLabelError(f"Unknown vertex label {label!r}")


@dataclass(frozen=True, order=True)
class Polytope:
    """Sorted labels of the extreme points of a polytope.

    Build instances through :func:`canonicalize`; the constructor only
    sorts and deduplicates.
    """

    labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            raise GeometryError("A polytope needs at least one vertex")
        object.__setattr__(self, "labels", tuple(sorted(set(self.labels))))

    def __iter__(self):
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self.labels

    @property
    def name(self) -> str:
        """Compact display name, ``AB`` for single-letter labels."""
        if all(len(label) == 1 for label in self.labels):
            return "".join(self.labels)
        return "{" + ",".join(self.labels) + "}"

    def __str__(self) -> str:
        return self.name


def is_extreme(label: str, labels: Iterable[str], scene: Scene) -> bool:
    """
    Whether the point is NOT a convex combination of the other points.

    Decided by exact feasibility of ``p = sum(l_i s_i), l_i >= 0,
    sum(l_i) = 1`` over the other listed points.

    :raises UnknownLabelError: If a label is not in the scene
    """
    members = set(labels)
    scene.check_labels(members | {label})
    others = sorted(members - {label})
    if not others:
        return True
    p = scene.point(label)
    points = [scene.point(o) for o in others]
    equalities = [([s[k] for s in points], p[k]) for k in range(scene.dim)]
    equalities.append(([Fraction(1)] * len(points), Fraction(1)))
    return find_feasible_point(len(points), equalities=equalities) is None


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def monotone_chain(scene: Scene, labels: Sequence[str]) -> List[str]:
    """Planar hull corners; collinear points are dropped by ``<= 0``."""
    ordered = sorted(labels, key=scene.point)
    if len(ordered) <= 2:
        return ordered

    def half(points: Sequence[str]) -> List[str]:
        chain: List[str] = []
        for label in points:
            while len(chain) >= 2 and _cross(
                scene.point(chain[-2]), scene.point(chain[-1]), scene.point(label)
            ) <= 0:
                chain.pop()
            chain.append(label)
        return chain

    lower = half(ordered)
    upper = half(list(reversed(ordered)))
    return lower[:-1] + upper[:-1]


@lru_cache(maxsize=65536)
def _canonical_labels(labels: frozenset, scene: Scene, method: str) -> Tuple[str, ...]:
    if method == "chain":
        corners = monotone_chain(scene, sorted(labels))
    else:
        corners = [label for label in labels if is_extreme(label, labels, scene)]
    return tuple(sorted(corners))


def canonicalize(labels: Iterable[str], scene: Scene, method: str = "auto") -> Polytope:
    """
    Reduce a label set to the extreme points of its convex hull.

    :param labels: Nonempty labels of the scene
    :param scene: The scene the labels live in
    :param method: ``"lp"`` (reference), ``"chain"`` (planar only) or
        ``"auto"`` (chain for planar scenes, LP otherwise)
    :raises GeometryError: If the label set is empty
    :raises UnknownLabelError: If a label is not in the scene
    """
    members = frozenset(labels)
    if not members:
        raise GeometryError("Cannot canonicalize an empty label set")
    scene.check_labels(members)
    if method == "auto":
        method = "chain" if scene.dim == 2 else "lp"
    if method == "chain" and scene.dim != 2:
        raise GeometryError("The monotone-chain path needs a planar scene")
    if method not in {"chain", "lp"}:
        raise GeometryError(f"Unknown canonicalization method {method!r}")
    return Polytope(_canonical_labels(members, scene, method))


def supporting_face(polytope: Polytope, direction, scene: Scene) -> Polytope:
    """
    The face of ``polytope`` maximizing the inner product with a direction.

    ``direction`` is either a rational vector or a vertex ordering: for a
    weak order the face is the highest-ranked block that meets the
    polytope, for a total order it is the earliest ranked vertex.

    :raises GeometryError: For a zero or wrongly sized direction vector
    """
    blocks = getattr(direction, "blocks", None)
    if blocks is not None:
        for block in blocks:
            hit = [label for label in block if label in polytope.labels]
            if hit:
                return Polytope(tuple(hit))
        raise GeometryError(f"Order {direction} does not cover polytope {polytope}")

    ranking = getattr(direction, "ranking", None)
    if ranking is not None:
        for label in ranking:
            if label in polytope.labels:
                return Polytope((label,))
        raise GeometryError(f"Order {direction} does not cover polytope {polytope}")

    vector = tuple(parse_rational(c) for c in direction)
    if len(vector) != scene.dim:
        raise GeometryError(
            f"Direction has {len(vector)} coordinates, scene dimension is {scene.dim}"
        )
    if not any(vector):
        raise GeometryError("Direction vector must be nonzero")
    values = {label: inner(scene.point(label), vector) for label in polytope.labels}
    best = max(values.values())
    return Polytope(tuple(label for label, v in values.items() if v == best))


def global_hull(polytopes: Iterable[Polytope], scene: Scene) -> Polytope:
    """
    Canonical hull of the union of all member vertex sets, C = Conv(family).

    :raises GeometryError: If there are no polytopes
    """
    union = set()
    count = 0
    for polytope in polytopes:
        union.update(polytope.labels)
        count += 1
    if not count:
        raise GeometryError("Cannot take the hull of an empty family")
    return canonicalize(union, scene)


def contains(outer: Polytope, inner_polytope: Polytope, scene: Scene) -> bool:
    """Whether Conv(inner) is a subset of Conv(outer)."""
    return canonicalize(set(outer.labels) | set(inner_polytope.labels), scene) == outer
