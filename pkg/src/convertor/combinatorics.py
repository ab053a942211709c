"""The abstract map G_tau on collections of subsets.

Given a finite label set V and a family tau of total orders on V,
``g_tau`` sends a collection X of subsets to the set of its per-order
maxima images ``{ {max_t(S) : S in X} : t in tau }``. No convex-hull
reduction happens here; :func:`gtau_vs_fprime` measures where the
geometric map F' and this set-theoretic map part ways.
"""

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from convertor.config import DEFAULT_MAX_ITER, OSCILLATOR_CAP
from convertor.directions import OrderFamily, TotalOrder, orders_from_scene
from convertor.dynamics import Family, Trace, apply_Fprime, find_cycle
from convertor.exceptions import CapExceededError, ConfigurationError, GeometryError, OrderError
from convertor.geometry import Scene, canonicalize
from convertor.logging_config import create_logger

logger = create_logger(__name__)


@dataclass(frozen=True)
class SetFamily:
    """A nonempty set of nonempty label subsets, stored sorted."""

    members: Tuple[Tuple[str, ...], ...]

    def __post_init__(self) -> None:
        members = set()
        for subset in self.members:
            subset = tuple(sorted(set(subset)))
            if not subset:
                raise GeometryError("Set family members must be nonempty")
            members.add(subset)
        if not members:
            raise GeometryError("A set family needs at least one member")
        object.__setattr__(self, "members", tuple(sorted(members)))

    @classmethod
    def from_family(cls, family: Family) -> "SetFamily":
        return cls(tuple(p.labels for p in family))

    @property
    def labels(self) -> FrozenSet[str]:
        return frozenset(label for subset in self.members for label in subset)

    def __iter__(self) -> Iterator[Tuple[str, ...]]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, subset: object) -> bool:
        try:
            return tuple(sorted(set(subset))) in self.members
        except TypeError:
            return False

    def __str__(self) -> str:
        return "{" + ", ".join("".join(s) for s in self.members) + "}"


@dataclass(frozen=True)
class OscillatorVerdict:
    """Outcome of an oscillator check; a failing verdict carries its witness."""

    is_oscillator: bool
    coverage: Dict
    checked: int
    witness: Optional[Tuple[SetFamily, Trace]] = field(default=None)

    def __post_init__(self) -> None:
        if not self.is_oscillator and (self.witness is None or self.witness[1].period <= 2):
            raise GeometryError("A negative verdict needs a witness trace with period > 2")


def max_under(subset: Iterable[str], order: TotalOrder) -> str:
    """
    The element of ``subset`` ranked earliest (furthest) by ``order``.

    :raises GeometryError: If the subset is empty
    :raises OrderError: If an element is not ranked by the order
    """
    members = set(subset)
    if not members:
        raise GeometryError("Cannot take the maximum of an empty set")
    outside = members - order.labels
    if outside:
        raise OrderError(f"Elements {sorted(outside)} are not ranked by {order.word}")
    return next(label for label in order.ranking if label in members)


def d_image(family: SetFamily, order: TotalOrder) -> Tuple[str, ...]:
    """The set of maxima of the members under one order, sorted."""
    return tuple(sorted({max_under(subset, order) for subset in family}))


def g_tau(family: SetFamily, tau: OrderFamily) -> SetFamily:
    """
    G_tau(X) = { D_t(X) : t in tau }.

    :raises OrderError: If X uses labels that tau does not rank
    """
    outside = family.labels - tau.labels
    if outside:
        raise OrderError(f"Labels {sorted(outside)} are not ranked by the order family")
    return SetFamily(tuple(d_image(family, order) for order in tau))


def iterate_g(start: SetFamily, tau: OrderFamily, max_iter: int = DEFAULT_MAX_ITER) -> Trace:
    """Iterate G_tau from ``start`` until the first repeated collection."""
    return find_cycle(lambda family: g_tau(family, tau), start, max_iter)


def nonempty_subsets(labels: Iterable[str]) -> List[Tuple[str, ...]]:
    """All nonempty subsets, by size then lexicographically."""
    ordered = sorted(labels)
    return [s for size in range(1, len(ordered) + 1) for s in combinations(ordered, size)]


def _families_from_mask(subsets: List[Tuple[str, ...]], mask: int) -> SetFamily:
    return SetFamily(tuple(s for bit, s in enumerate(subsets) if mask >> bit & 1))


def is_oscillator(
    tau: OrderFamily,
    mode: str = "exhaustive",
    count: int = 1000,
    seed: int = 0,
    cap: int = OSCILLATOR_CAP,
    max_iter: int = DEFAULT_MAX_ITER,
) -> OscillatorVerdict:
    """
    Check that every start collection cycles with period at most 2.

    ``exhaustive`` walks all 2^(2^|V| - 1) - 1 nonempty collections in
    bitmask order; ``sampled`` draws ``count`` collections from a seeded
    generator. The first violating start (in that order) is the witness.

    :raises CapExceededError: For exhaustive mode above ``cap`` labels
    """
    subsets = nonempty_subsets(tau.labels)
    if mode == "exhaustive":
        if len(tau.labels) > cap:
            raise CapExceededError(
                f"Exhaustive oscillator check is capped at {cap} labels, got {len(tau.labels)}"
            )
        starts = (_families_from_mask(subsets, m) for m in range(1, 2 ** len(subsets)))
        coverage = {"mode": "exhaustive"}
    elif mode == "sampled":
        if count < 1:
            raise ConfigurationError(f"Sample count must be positive, got {count}")
        rng = random.Random(seed)

        def draw() -> Iterator[SetFamily]:
            for _ in range(count):
                mask = 0
                while mask == 0:
                    mask = rng.getrandbits(len(subsets))
                yield _families_from_mask(subsets, mask)

        starts = draw()
        coverage = {"mode": "sampled", "count": count, "seed": seed}
    else:
        raise ConfigurationError(f"Unknown oscillator mode {mode!r}")

    checked = 0
    for start in starts:
        trace = iterate_g(start, tau, max_iter)
        checked += 1
        if trace.period > 2:
            logger.warning(f"Start {start} cycles with period {trace.period}")
            return OscillatorVerdict(False, coverage, checked, (start, trace))
    logger.info(f"✅ {checked} start collections all cycle with period at most 2")
    return OscillatorVerdict(True, coverage, checked)


def gtau_vs_fprime(start: Family, scene: Scene, steps: int) -> dict:
    """
    Run F' and G_tau (tau from the scene) side by side from one start.

    Per step the report says whether the two states hold the same label
    sets, and flags every order whose raw maxima set lost a non-extreme
    point to canonicalization along the F' run.
    """
    tau = orders_from_scene(scene)
    raw = SetFamily.from_family(start)
    prime = start
    report_steps = []
    for i in range(steps + 1):
        identical = SetFamily.from_family(prime) == raw
        flags = []
        if i < steps:
            prime_sets = SetFamily.from_family(prime)
            for order in tau:
                maxima = d_image(prime_sets, order)
                kept = canonicalize(maxima, scene).labels
                if kept != maxima:
                    flags.append(
                        {
                            "order": list(order.ranking),
                            "maxima": list(maxima),
                            "canonical": list(kept),
                            "dropped": sorted(set(maxima) - set(kept)),
                        }
                    )
        report_steps.append({"step": i, "identical": identical, "flags": flags})
        if i < steps:
            raw = g_tau(raw, tau)
            prime = apply_Fprime(prime, scene)

    return {
        "identical": all(entry["identical"] for entry in report_steps),
        "flag_count": sum(len(entry["flags"]) for entry in report_steps),
        "steps": report_steps,
    }
