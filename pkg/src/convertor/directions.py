"""Direction classes of a scene.

Every direction ``d`` sorts the scene vertices by ``<v, d>``. Directions
with no ties give total orders (the restricted directions), and all
directions up to face-equivalence give weak orders. There are finitely
many of each; this module enumerates them exactly.

Realizability is an LP question: strict separations are written with
margin 1, which is equivalent to ``> 0`` because the constraints are
positively homogeneous in ``d``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import combinations
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

from convertor.config import TOTAL_ORDER_CAP, WEAK_ORDER_CAP
from convertor.exceptions import CapExceededError, OrderError
from convertor.geometry import Point, Polytope, Scene, difference, inner, supporting_face
from convertor.logging_config import create_logger
from convertor.lp import find_feasible_point, nullspace_vector, rank

logger = create_logger(__name__)

ONE = Fraction(1)


@dataclass(frozen=True, order=True)
class TotalOrder:
    """A ranking of every vertex, furthest first."""

    ranking: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranking", tuple(self.ranking))
        if not self.ranking:
            raise OrderError("A total order needs at least one label")
        if len(set(self.ranking)) != len(self.ranking):
            raise OrderError(f"Repeated label in order {self.ranking}")

    @property
    def labels(self) -> FrozenSet[str]:
        return frozenset(self.ranking)

    @property
    def word(self) -> str:
        """``ACB`` style spelling for single-letter labels."""
        if all(len(label) == 1 for label in self.ranking):
            return "".join(self.ranking)
        return " ".join(self.ranking)

    def __str__(self) -> str:
        return self.word

    def check_against(self, scene: Scene) -> None:
        if set(self.ranking) != set(scene.labels):
            raise OrderError(f"Order {self.word} is not a permutation of the scene labels")


@dataclass(frozen=True, order=True)
class WeakOrder:
    """An ordered partition of the vertices, highest-projection block first.

    The plain constructor checks only that the blocks are disjoint and
    nonempty, since it has no scene to test against. Use :meth:`realized`
    (or ``weak_order_from_json`` with a scene) to also require that some
    nonzero direction realizes the order. Enumeration only ever yields
    realized orders.
    """

    blocks: Tuple[Tuple[str, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(tuple(sorted(block)) for block in self.blocks)
        if not blocks:
            raise OrderError("A weak order needs at least one block")
        seen = set()
        for block in blocks:
            if not block:
                raise OrderError("Weak order blocks must be nonempty")
            if seen & set(block) or len(set(block)) != len(block):
                raise OrderError(f"Weak order blocks overlap: {blocks}")
            seen.update(block)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def realized(cls, blocks: Sequence[Sequence[str]], scene: Scene) -> "WeakOrder":
        """Construct and insist that some nonzero direction realizes it."""
        order = cls(tuple(tuple(block) for block in blocks))
        if not realizes_weak(order, scene):
            raise OrderError(f"Weak order {order} is not realized by any direction")
        return order

    @property
    def labels(self) -> FrozenSet[str]:
        return frozenset(label for block in self.blocks for label in block)

    @property
    def is_total(self) -> bool:
        return all(len(block) == 1 for block in self.blocks)

    def reversed(self) -> "WeakOrder":
        return WeakOrder(tuple(reversed(self.blocks)))

    def __str__(self) -> str:
        return " > ".join("".join(block) if all(len(x) == 1 for x in block) else ",".join(block)
                          for block in self.blocks)

    def check_against(self, scene: Scene) -> None:
        if self.labels != set(scene.labels):
            raise OrderError(f"Blocks of {self} do not partition the scene labels")


@dataclass(frozen=True)
class OrderFamily:
    """A nonempty set of total orders over one label set, stored sorted."""

    orders: Tuple[TotalOrder, ...]

    def __post_init__(self) -> None:
        orders = tuple(sorted(set(self.orders)))
        if not orders:
            raise OrderError("An order family needs at least one order")
        ground = orders[0].labels
        for order in orders[1:]:
            if order.labels != ground:
                raise OrderError(
                    f"Orders {orders[0].word} and {order.word} rank different label sets"
                )
        object.__setattr__(self, "orders", orders)

    @property
    def labels(self) -> FrozenSet[str]:
        return self.orders[0].labels

    def __iter__(self) -> Iterator[TotalOrder]:
        return iter(self.orders)

    def __len__(self) -> int:
        return len(self.orders)


def _chain_constraints(
    chain: Sequence[Point],
) -> List[Tuple[Point, Fraction]]:
    return [(difference(a, b), ONE) for a, b in zip(chain, chain[1:])]


def _weak_constraints(blocks: Sequence[Sequence[str]], rest: Sequence[str], scene: Scene):
    equalities = []
    for block in blocks:
        head = scene.point(block[0])
        for label in block[1:]:
            equalities.append((difference(head, scene.point(label)), Fraction(0)))
    heads = [scene.point(block[0]) for block in blocks]
    inequalities = _chain_constraints(heads)
    for label in rest:
        inequalities.append((difference(heads[-1], scene.point(label)), ONE))
    return equalities, inequalities


def _solve_weak(blocks: Sequence[Sequence[str]], rest: Sequence[str], scene: Scene):
    equalities, inequalities = _weak_constraints(blocks, rest, scene)
    if not inequalities:
        # everything tied: need a nonzero d orthogonal to all differences
        return nullspace_vector([row for row, _ in equalities], scene.dim)
    return find_feasible_point(scene.dim, equalities, inequalities, free=True)


def realizes_total(order: TotalOrder, scene: Scene) -> bool:
    """
    Whether some direction ranks the vertices exactly as ``order``.

    :raises OrderError: If the order is not a permutation of the scene labels
    """
    order.check_against(scene)
    return witness_direction(order, scene) is not None


def realizes_weak(order: WeakOrder, scene: Scene) -> bool:
    """
    Whether some nonzero direction ties each block and separates blocks.

    The single-block order is decided by exact rank: it is realizable iff
    the difference vectors do not span the space.

    :raises OrderError: If the blocks do not partition the scene labels
    """
    order.check_against(scene)
    if len(order.blocks) == 1:
        labels = order.blocks[0]
        head = scene.point(labels[0])
        rows = [difference(scene.point(label), head) for label in labels[1:]]
        return rank(rows, scene.dim) < scene.dim
    return witness_direction(order, scene) is not None


def witness_direction(order, scene: Scene) -> Optional[List[Fraction]]:
    """A direction vector realizing a total or weak order, or None."""
    order.check_against(scene)
    if isinstance(order, TotalOrder):
        if len(order.ranking) == 1:
            return [ONE] + [Fraction(0)] * (scene.dim - 1)
        chain = [scene.point(label) for label in order.ranking]
        return find_feasible_point(scene.dim, inequalities=_chain_constraints(chain), free=True)
    return _solve_weak(order.blocks, (), scene)


def _total_prefix_feasible(prefix: Sequence[str], rest: Sequence[str], scene: Scene) -> bool:
    chain = [scene.point(label) for label in prefix]
    inequalities = _chain_constraints(chain)
    for label in rest:
        inequalities.append((difference(chain[-1], scene.point(label)), ONE))
    return find_feasible_point(scene.dim, inequalities=inequalities, free=True) is not None


def _check_cap(scene: Scene, cap: int, what: str) -> None:
    if len(scene) > cap:
        raise CapExceededError(
            f"Scene has {len(scene)} vertices; {what} enumeration is capped at {cap}"
        )


def _angle_compare(a: Point, b: Point) -> int:
    def half(p: Point) -> int:
        return 0 if p[1] > 0 or (p[1] == 0 and p[0] > 0) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _ray(x: Fraction, y: Fraction) -> Point:
    scale = max(abs(x), abs(y))
    return (x / scale, y / scale)


def sweep_total_orders(scene: Scene) -> List[TotalOrder]:
    """
    Planar enumeration by rotating a direction once around the circle.

    The order only changes when the direction crosses a normal of some
    difference vector. One sample direction strictly inside each arc
    between consecutive critical rays gives every total order.
    """
    if scene.dim != 2:
        raise OrderError("The rotational sweep needs a planar scene")
    labels = scene.labels
    rays = set()
    for a, b in combinations(labels, 2):
        dx, dy = difference(scene.point(a), scene.point(b))
        rays.add(_ray(-dy, dx))
        rays.add(_ray(dy, -dx))
    if not rays:
        return [TotalOrder(labels)]

    ordered = sorted(rays, key=cmp_to_key(_angle_compare))
    found = set()
    for k, r in enumerate(ordered):
        s = ordered[(k + 1) % len(ordered)]
        if r[0] * s[1] - r[1] * s[0] > 0:
            sample = (r[0] + s[0], r[1] + s[1])
        else:
            # opposite rays: all points collinear
            sample = (-r[1], r[0])
        values = {label: inner(scene.point(label), sample) for label in labels}
        if len(set(values.values())) != len(values):
            raise OrderError(f"Sweep sample {sample} is a tie direction")
        found.add(TotalOrder(tuple(sorted(labels, key=lambda x: -values[x]))))
    return sorted(found)


def filter_total_orders(scene: Scene, prune: bool = True) -> List[TotalOrder]:
    """
    Enumerate permutations of V and keep the realizable ones.

    Permutations are built furthest-first; with ``prune`` a prefix is
    dropped as soon as no direction puts it strictly above the remaining
    vertices, since no completion can then be realized.
    """
    labels = sorted(scene.labels)
    found: List[TotalOrder] = []

    def extend(prefix: Tuple[str, ...], rest: Tuple[str, ...]) -> None:
        if not rest:
            order = TotalOrder(prefix)
            if realizes_total(order, scene):
                found.append(order)
            return
        for label in rest:
            new_prefix = prefix + (label,)
            new_rest = tuple(x for x in rest if x != label)
            if prune and new_rest and not _total_prefix_feasible(new_prefix, new_rest, scene):
                continue
            extend(new_prefix, new_rest)

    extend((), tuple(labels))
    return sorted(found)


@lru_cache(maxsize=256)
def _total_orders(scene: Scene, method: str) -> Tuple[TotalOrder, ...]:
    if method == "sweep":
        orders = sweep_total_orders(scene)
    else:
        orders = filter_total_orders(scene)
    logger.debug(f"Enumerated {len(orders)} total orders by {method}")
    return tuple(orders)


def enumerate_total_orders(
    scene: Scene, method: str = "auto", cap: int = TOTAL_ORDER_CAP
) -> List[TotalOrder]:
    """
    All realizable total orders of the scene, each once, sorted.

    :param method: ``"sweep"`` (planar), ``"lp"`` or ``"auto"``
    :raises CapExceededError: If the scene has more than ``cap`` vertices
    """
    _check_cap(scene, cap, "total-order")
    if method == "auto":
        method = "sweep" if scene.dim == 2 else "lp"
    if method not in {"sweep", "lp"}:
        raise OrderError(f"Unknown enumeration method {method!r}")
    return list(_total_orders(scene, method))


def _ordered_partitions(
    scene: Scene, prune: bool
) -> Iterator[Tuple[Tuple[str, ...], ...]]:
    def extend(prefix, rest):
        if not rest:
            yield prefix
            return
        for size in range(1, len(rest) + 1):
            for block in combinations(rest, size):
                new_prefix = prefix + (block,)
                new_rest = tuple(x for x in rest if x not in block)
                if prune and new_rest and _solve_weak(new_prefix, new_rest, scene) is None:
                    continue
                yield from extend(new_prefix, new_rest)

    yield from extend((), tuple(sorted(scene.labels)))


@lru_cache(maxsize=256)
def _weak_orders(scene: Scene, prune: bool) -> Tuple[WeakOrder, ...]:
    found = [
        WeakOrder(blocks)
        for blocks in _ordered_partitions(scene, prune)
        if realizes_weak(WeakOrder(blocks), scene)
    ]
    logger.debug(f"Enumerated {len(found)} weak orders")
    return tuple(sorted(found))


def enumerate_weak_orders(
    scene: Scene, cap: int = WEAK_ORDER_CAP, prune: bool = True
) -> List[WeakOrder]:
    """
    All realizable weak orders of the scene, each once, sorted.

    Ordered set partitions are generated block by block and filtered
    through :func:`realizes_weak`; ``prune`` skips partial partitions
    whose blocks cannot sit strictly above the remaining vertices.

    :raises CapExceededError: If the scene has more than ``cap`` vertices
    """
    _check_cap(scene, cap, "weak-order")
    return list(_weak_orders(scene, prune))


def orders_from_scene(scene: Scene, cap: int = TOTAL_ORDER_CAP) -> OrderFamily:
    """The geometric order family of a scene (its restricted directions)."""
    return OrderFamily(tuple(enumerate_total_orders(scene, cap=cap)))


def exposed_faces(polytope: Polytope, scene: Scene, cap: int = WEAK_ORDER_CAP) -> List[Polytope]:
    """Distinct supporting faces of ``polytope`` over all direction classes."""
    faces = {supporting_face(polytope, w, scene) for w in enumerate_weak_orders(scene, cap=cap)}
    return sorted(faces)
