"""The convertor maps F and F' and their iteration.

``apply_F`` sends a family to the hulls of its members' supporting faces
over every direction class (weak orders); ``apply_Fprime`` does the same
over the restricted directions only (total orders). ``find_cycle`` iterates
any step map until the first repeated state and reports the transient and
period exactly, keeping the whole history.

The ``check_*`` functions run a start family forward and test one
structural property along the way; they return False on the first
violation.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Sequence, Tuple, TypeVar

from convertor.config import DEFAULT_MAX_ITER, TOTAL_ORDER_CAP, WEAK_ORDER_CAP
from convertor.directions import (
    TotalOrder,
    WeakOrder,
    enumerate_total_orders,
    enumerate_weak_orders,
    exposed_faces,
    realizes_total,
    realizes_weak,
)
from convertor.exceptions import GeometryError, MaxIterationsError, OrderError
from convertor.geometry import (
    Polytope,
    Scene,
    canonicalize,
    contains,
    global_hull,
    supporting_face,
)
from convertor.logging_config import create_logger

logger = create_logger(__name__)

State = TypeVar("State", bound=Hashable)


class Operator(str, Enum):
    """Step maps that can be iterated."""

    F = "F"
    FPRIME = "Fprime"
    GTAU = "gtau"

    @classmethod
    def parse(cls, value: str) -> "Operator":
        aliases = {
            "f": cls.F,
            "fprime": cls.FPRIME,
            "f'": cls.FPRIME,
            "gtau": cls.GTAU,
            "g": cls.GTAU,
        }
        try:
            return aliases[value.strip().lower()]
        except KeyError:
            raise OrderError(f"Unknown operator {value!r}; expected F, Fprime or gtau")


@dataclass(frozen=True)
class Family:
    """A deduplicated, sorted, nonempty set of canonical polytopes."""

    members: Tuple[Polytope, ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(set(self.members)))
        if not members:
            raise GeometryError("A family needs at least one polytope")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, sets: Iterable[Iterable[str]], scene: Scene) -> "Family":
        """Canonicalize each label set against the scene."""
        return cls(tuple(canonicalize(labels, scene) for labels in sets))

    def __iter__(self) -> Iterator[Polytope]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, polytope: object) -> bool:
        return polytope in self.members

    def __str__(self) -> str:
        return "{" + ", ".join(p.name for p in self.members) + "}"

    def check_against(self, scene: Scene) -> None:
        for polytope in self.members:
            scene.check_labels(polytope.labels)


@dataclass(frozen=True)
class Trace:
    """States X_0 .. X_{mu+lambda-1}, all distinct, with X_{mu+lambda} = X_mu."""

    history: Tuple
    transient: int
    period: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "history", tuple(self.history))
        if self.transient < 0 or self.period < 1:
            raise GeometryError(
                f"Invalid trace shape: transient={self.transient}, period={self.period}"
            )
        if len(self.history) != self.transient + self.period:
            raise GeometryError(
                f"Trace history has {len(self.history)} states, expected "
                f"{self.transient + self.period}"
            )

    def state(self, i: int):
        """X_i for any i >= 0, folding indices past the history into the cycle."""
        if i < len(self.history):
            return self.history[i]
        return self.history[self.transient + (i - self.transient) % self.period]

    @property
    def cycle(self) -> Tuple:
        return self.history[self.transient:]


def find_cycle(step: Callable[[State], State], start: State, max_iter: int = DEFAULT_MAX_ITER) -> Trace:
    """
    Iterate ``step`` from ``start`` until the first repeated state.

    Visited states are kept in a dict keyed by the state itself (hash plus
    full equality), which gives the exact transient and period.

    :raises MaxIterationsError: If ``max_iter`` steps produce no repeat
    """
    if max_iter < 1:
        raise GeometryError(f"max_iter must be positive, got {max_iter}")
    seen: Dict[State, int] = {start: 0}
    history: List[State] = [start]
    current = start
    for _ in range(max_iter):
        current = step(current)
        first = seen.get(current)
        if first is not None:
            return Trace(tuple(history), first, len(history) - first)
        seen[current] = len(history)
        history.append(current)
    raise MaxIterationsError(
        f"No repeated state within {max_iter} iterations", history=history
    )


def _omega(family: Family, direction, scene: Scene) -> Polytope:
    union = set()
    for polytope in family:
        union.update(supporting_face(polytope, direction, scene).labels)
    return canonicalize(union, scene)


def omega_of_direction(family: Family, direction, scene: Scene) -> Polytope:
    """
    Omega(d): the hull of the supporting faces of every member at ``d``.

    :param direction: A WeakOrder or TotalOrder over the scene labels
    :raises OrderError: If the order is not realized by any direction
    """
    family.check_against(scene)
    if isinstance(direction, WeakOrder):
        realized = realizes_weak(direction, scene)
    elif isinstance(direction, TotalOrder):
        realized = realizes_total(direction, scene)
    else:
        raise OrderError(f"Expected a WeakOrder or TotalOrder, got {type(direction).__name__}")
    if not realized:
        raise OrderError(f"Order {direction} is not realized by any direction")
    return _omega(family, direction, scene)


def apply_F(family: Family, scene: Scene, cap: int = WEAK_ORDER_CAP) -> Family:
    """F(Omega) over every direction class of the scene."""
    family.check_against(scene)
    orders = enumerate_weak_orders(scene, cap=cap)
    return Family(tuple(_omega(family, w, scene) for w in orders))


def apply_Fprime(family: Family, scene: Scene, cap: int = TOTAL_ORDER_CAP) -> Family:
    """F'(Omega) over the restricted directions (total orders) only."""
    family.check_against(scene)
    orders = enumerate_total_orders(scene, cap=cap)
    return Family(tuple(_omega(family, t, scene) for t in orders))


def step_map(operator: Operator, scene: Scene) -> Callable[[Family], Family]:
    if operator == Operator.F:
        return lambda family: apply_F(family, scene)
    if operator == Operator.FPRIME:
        return lambda family: apply_Fprime(family, scene)
    raise OrderError(f"Operator {operator.value} does not act on geometric families")


def iterate(
    start: Family, operator: Operator, scene: Scene, max_iter: int = DEFAULT_MAX_ITER
) -> Trace:
    """Iterate F or F' from ``start`` to its first recurrence."""
    if not isinstance(operator, Operator):
        operator = Operator.parse(operator)
    start.check_against(scene)
    trace = find_cycle(step_map(operator, scene), start, max_iter)
    logger.debug(
        f"{operator.value} trace from {start}: transient={trace.transient}, period={trace.period}"
    )
    return trace


def run_steps(start: Family, operator: Operator, scene: Scene, steps: int) -> List[Family]:
    """X_0 .. X_steps without cycle detection."""
    step = step_map(operator, scene)
    history = [start]
    for _ in range(steps):
        history.append(step(history[-1]))
    return history


def membership_trace(polytope: Polytope, trace: Trace) -> List[bool]:
    """For each state in the history, whether ``polytope`` is a member."""
    return [polytope in state for state in trace.history]


def is_eventually_two_periodic(bits: Sequence[bool], transient: int, period: int) -> bool:
    """
    Whether a membership sequence over a trace satisfies b_i = b_{i+2}
    from the transient on, reading indices past the history in the cycle.
    """
    def at(i: int) -> bool:
        if i < len(bits):
            return bits[i]
        return bits[transient + (i - transient) % period]

    return all(at(i) == at(i + 2) for i in range(transient, transient + period))


def check_interleaving(start: Family, scene: Scene, steps: int) -> bool:
    """
    Along the F-run Omega_i and the F'-run Omega'_i from ``start``, check
    F(Omega'_i) = F(Omega_i) and F'(Omega'_i) = F'(Omega_i) at every step.
    """
    omega, omega_prime = start, start
    for i in range(steps):
        next_omega = apply_F(omega, scene)
        next_prime = apply_Fprime(omega, scene)
        if apply_F(omega_prime, scene) != next_omega:
            logger.warning(f"F(Omega'_{i}) differs from F(Omega_{i})")
            return False
        if apply_Fprime(omega_prime, scene) != next_prime:
            logger.warning(f"F'(Omega'_{i}) differs from F'(Omega_{i})")
            return False
        omega, omega_prime = next_omega, next_prime
    return True


def check_cycle_equivalence(start: Family, scene: Scene, max_iter: int = DEFAULT_MAX_ITER) -> bool:
    """Whether the F-trace and the F'-trace from ``start`` share their period."""
    f_trace = iterate(start, Operator.F, scene, max_iter)
    fprime_trace = iterate(start, Operator.FPRIME, scene, max_iter)
    return f_trace.period == fprime_trace.period


def check_conv_invariance(start: Family, scene: Scene, steps: int) -> bool:
    """Whether the global hull stays the same along the F-run."""
    hull = global_hull(start, scene)
    return all(global_hull(family, scene) == hull for family in run_steps(start, Operator.F, scene, steps))


def proper_hull_faces(start: Family, scene: Scene) -> List[Polytope]:
    """Supporting faces C_w of the global hull C with C_w != C."""
    hull = global_hull(start, scene)
    return [face for face in exposed_faces(hull, scene) if face != hull]


def check_face_persistence(start: Family, scene: Scene, steps: int) -> bool:
    """Whether every proper hull face present at step n is present at n + 2."""
    history = run_steps(start, Operator.F, scene, steps)
    faces = proper_hull_faces(start, scene)
    for n in range(len(history) - 2):
        for face in faces:
            if face in history[n] and face not in history[n + 2]:
                logger.warning(f"Face {face} present at step {n} but not at step {n + 2}")
                return False
    return True


def check_membership_two_periodic(
    start: Family, scene: Scene, max_iter: int = DEFAULT_MAX_ITER
) -> bool:
    """Whether membership of every proper hull face is eventually 2-periodic under F."""
    trace = iterate(start, Operator.F, scene, max_iter)
    return all(
        is_eventually_two_periodic(membership_trace(face, trace), trace.transient, trace.period)
        for face in proper_hull_faces(start, scene)
    )


def decomposes(polytope: Polytope, parts: Family, scene: Scene) -> bool:
    """
    Whether ``polytope`` is the hull of some members of ``parts``.

    If any subfamily works then so does the largest one contained in the
    polytope, so only that one is tried.
    """
    inside = [q for q in parts if contains(polytope, q, scene)]
    if not inside:
        return False
    return canonicalize({label for q in inside for label in q.labels}, scene) == polytope


def check_decomposition(start: Family, scene: Scene, steps: int) -> bool:
    """Whether each member of F(Omega_i) is a hull of members of F'(Omega_i)."""
    omega = start
    for _ in range(steps):
        full, restricted = apply_F(omega, scene), apply_Fprime(omega, scene)
        for polytope in full:
            if not decomposes(polytope, restricted, scene):
                logger.warning(f"{polytope} is not a hull of members of {restricted}")
                return False
        omega = full
    return True
