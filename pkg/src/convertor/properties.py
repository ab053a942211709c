"""Property suites run by the ``check`` subcommand.

Each suite draws seeded random instances from a :class:`FuzzConfig` and
applies one checker per instance. The report counts passes and failures
and keeps a replayable bundle of the first counterexample.
"""

import random
from typing import Callable, Dict, List, Tuple

from convertor.directions import (
    enumerate_total_orders,
    enumerate_weak_orders,
    witness_direction,
)
from convertor.dynamics import (
    Family,
    _omega,
    check_conv_invariance,
    check_cycle_equivalence,
    check_decomposition,
    check_face_persistence,
    check_interleaving,
    check_membership_two_periodic,
)
from convertor.exceptions import ConfigurationError
from convertor.fuzz import FuzzConfig, random_scene, random_subsets
from convertor.geometry import Scene, contains, global_hull, supporting_face
from convertor.logging_config import create_logger
from convertor.serialization import family_to_json, scene_to_json

logger = create_logger(__name__)

Checker = Callable[[Scene, Family, FuzzConfig, int], bool]

DEFAULT_STEPS = 6


def _interleaving(scene: Scene, start: Family, config: FuzzConfig, steps: int) -> bool:
    return check_interleaving(start, scene, steps) and check_cycle_equivalence(
        start, scene, config.max_iter
    )


def _conv_invariance(scene: Scene, start: Family, config: FuzzConfig, steps: int) -> bool:
    return check_conv_invariance(start, scene, steps)


def _support_inclusion(scene: Scene, start: Family, config: FuzzConfig, steps: int) -> bool:
    """P_d lies in the hull of the members' faces at d, P the hull of the family."""
    hull = global_hull(start, scene)
    for order in enumerate_weak_orders(scene):
        if not contains(_omega(start, order, scene), supporting_face(hull, order, scene), scene):
            logger.warning(f"Face of {hull} at {order} escapes Omega({order})")
            return False
    return True


def _decomposition(scene: Scene, start: Family, config: FuzzConfig, steps: int) -> bool:
    return check_decomposition(start, scene, steps)


def _face_persistence(scene: Scene, start: Family, config: FuzzConfig, steps: int) -> bool:
    return check_face_persistence(start, scene, steps)


def _membership_two_periodic(scene: Scene, start: Family, config: FuzzConfig, steps: int) -> bool:
    return check_membership_two_periodic(start, scene, config.max_iter)


def _support_idempotence(scene: Scene, start: Family, config: FuzzConfig, steps: int) -> bool:
    """(P_d)_d = P_d, and the order's witness vector exposes the same face."""
    for polytope in start:
        for order in enumerate_weak_orders(scene):
            face = supporting_face(polytope, order, scene)
            if supporting_face(face, order, scene) != face:
                return False
            if supporting_face(polytope, witness_direction(order, scene), scene) != face:
                logger.warning(f"Witness vector of {order} disagrees on {polytope}")
                return False
    return True


def _sweep_vs_lp(scene: Scene, start: Family, config: FuzzConfig, steps: int) -> bool:
    return enumerate_total_orders(scene, method="sweep") == enumerate_total_orders(scene, method="lp")


def _count_law(scene: Scene, start: Family, config: FuzzConfig, steps: int) -> bool:
    n = len(scene)
    return len(enumerate_total_orders(scene)) == max(n * (n - 1), 1)


PROPERTIES: Dict[str, Checker] = {
    "interleaving": _interleaving,
    "conv-invariance": _conv_invariance,
    "support-inclusion": _support_inclusion,
    "decomposition": _decomposition,
    "face-persistence": _face_persistence,
    "membership-2periodic": _membership_two_periodic,
    "sweep-vs-lp": _sweep_vs_lp,
    "support-idempotence": _support_idempotence,
    "count-law": _count_law,
}

PLANAR_ONLY = {"sweep-vs-lp", "count-law"}


def draw_instance(rng: random.Random, config: FuzzConfig, name: str) -> Tuple[Scene, List[Tuple[str, ...]]]:
    """One random scene and raw start subsets; count-law varies |V| in [3, num_vertices]."""
    num_vertices = config.num_vertices
    general_position = config.general_position
    if name == "count-law":
        general_position = True
        if num_vertices >= 3:
            num_vertices = rng.randint(3, num_vertices)
    scene = random_scene(
        rng,
        config.dim,
        num_vertices,
        config.coordinate_bound,
        config.max_denominator,
        general_position=general_position,
        simplex=config.simplex_mode,
    )
    return scene, random_subsets(rng, scene.labels, config.num_polytopes)


def run_check(name: str, config: FuzzConfig, steps: int = DEFAULT_STEPS) -> dict:
    """
    Run one named property suite over ``config.trials`` seeded instances.

    :raises ConfigurationError: For an unknown property or a planar-only
        property on a non-planar configuration
    """
    if name not in PROPERTIES:
        raise ConfigurationError(
            f"Unknown property {name!r}; expected one of {', '.join(sorted(PROPERTIES))}"
        )
    config.validate()
    if name in PLANAR_ONLY and config.dim != 2:
        raise ConfigurationError(f"Property {name!r} needs dim = 2, got {config.dim}")

    checker = PROPERTIES[name]
    rng = random.Random(config.seed)
    passed, failed, first = 0, 0, None
    logger.info(f"🔎 Checking {name} over {config.trials} instances (seed={config.seed})")
    for trial in range(config.trials):
        scene, raw_start = draw_instance(rng, config, name)
        start = Family.of(raw_start, scene)
        if checker(scene, start, config, steps):
            passed += 1
            continue
        failed += 1
        if first is None:
            first = {
                "trial": trial,
                "seed": config.seed,
                "property": name,
                "scene": scene_to_json(scene),
                "start": family_to_json(start),
            }
            logger.error(f"❌ {name} failed on trial {trial}")

    if not failed:
        logger.info(f"✅ {name}: {passed}/{config.trials} passed")
    return {
        "property": name,
        "trials": config.trials,
        "passed": passed,
        "failed": failed,
        "first_counterexample": first,
    }
