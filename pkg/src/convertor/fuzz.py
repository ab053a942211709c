"""Seeded random instances and batch experiment runs.

A fuzz run draws ``trials`` scenes and start families from one seeded
generator, iterates the chosen operator to recurrence and tabulates the
transients and periods. Periods above 2 are kept as replayable bundles.
"""

import hashlib
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from convertor.combinatorics import SetFamily, iterate_g
from convertor.config import DEFAULT_MAX_ITER, DEFAULT_SEED, TOTAL_ORDER_CAP, WEAK_ORDER_CAP
from convertor.directions import orders_from_scene
from convertor.dynamics import Family, Operator, Trace, iterate
from convertor.exceptions import CapExceededError, ConfigurationError
from convertor.geometry import Scene, difference, global_hull
from convertor.logging_config import create_logger
from convertor.lp import rank
from convertor.serialization import (
    family_from_json,
    family_to_json,
    scene_from_json,
    scene_to_json,
    set_family_from_json,
    trace_to_json,
)
from convertor.storage import dumps_json

logger = create_logger(__name__)

MAX_SAMPLING_ATTEMPTS = 2000


@dataclass
class FuzzConfig:
    """Parameters of a fuzz run; ``validate`` enforces the caps."""

    dim: int = 2
    num_vertices: int = 4
    num_polytopes: int = 3
    coordinate_bound: int = 6
    seed: int = DEFAULT_SEED
    trials: int = 100
    operator: Operator = Operator.F
    simplex_mode: bool = False
    general_position: bool = False
    max_denominator: int = 3
    max_iter: int = DEFAULT_MAX_ITER

    def validate(self) -> "FuzzConfig":
        """
        Check the configuration.

        :raises ConfigurationError: For inconsistent or non-positive values
        :raises CapExceededError: If the operator's enumeration cap is exceeded
        """
        if not isinstance(self.operator, Operator):
            self.operator = Operator.parse(self.operator)
        if self.trials < 1:
            raise ConfigurationError(f"trials must be positive, got {self.trials}")
        for name in ("dim", "num_vertices", "num_polytopes", "coordinate_bound", "max_denominator"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.simplex_mode and self.num_vertices != self.dim + 1:
            raise ConfigurationError(
                f"simplex mode needs dim + 1 = {self.dim + 1} vertices, got {self.num_vertices}"
            )
        cap = WEAK_ORDER_CAP if self.operator == Operator.F else TOTAL_ORDER_CAP
        if self.num_vertices > cap:
            raise CapExceededError(
                f"{self.num_vertices} vertices exceed the {self.operator.value} enumeration cap of {cap}"
            )
        return self

    def to_json(self) -> dict:
        document = asdict(self)
        document["operator"] = self.operator.value
        return document


def vertex_labels(count: int) -> List[str]:
    """``A``, ``B``, ... and ``V26``, ``V27``, ... past the alphabet."""
    return [chr(ord("A") + i) if i < 26 else f"V{i}" for i in range(count)]


def random_rational(rng: random.Random, bound: int, max_denominator: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_denominator))


def is_affinely_independent(points: Sequence[Tuple[Fraction, ...]], dim: int) -> bool:
    rows = [difference(p, points[0]) for p in points[1:]]
    return rank(rows, dim) == len(rows)


def has_collinear_triple(points: Sequence[Tuple[Fraction, ...]], dim: int) -> bool:
    return any(
        rank([difference(b, a), difference(c, a)], dim) < 2
        for a, b, c in combinations(points, 3)
    )


def has_parallel_pairs(points: Sequence[Tuple[Fraction, ...]], dim: int) -> bool:
    directions = [difference(b, a) for a, b in combinations(points, 2)]
    return any(rank([u, v], dim) < 2 for u, v in combinations(directions, 2))


def random_scene(
    rng: random.Random,
    dim: int,
    num_vertices: int,
    bound: int = 6,
    max_denominator: int = 3,
    general_position: bool = False,
    simplex: bool = False,
) -> Scene:
    """
    Draw a scene by rejection sampling.

    ``general_position`` (dimension 2 and up) rejects collinear triples
    and parallel vertex-pair directions; ``simplex`` asks for affinely
    independent vertices.

    :raises ConfigurationError: If no acceptable scene turns up
    """
    labels = vertex_labels(num_vertices)
    for _ in range(MAX_SAMPLING_ATTEMPTS):
        points = [
            tuple(random_rational(rng, bound, max_denominator) for _ in range(dim))
            for _ in range(num_vertices)
        ]
        if len(set(points)) != len(points):
            continue
        if simplex and not is_affinely_independent(points, dim):
            continue
        if general_position and dim >= 2 and (
            has_collinear_triple(points, dim) or has_parallel_pairs(points, dim)
        ):
            continue
        return Scene(dim, tuple(zip(labels, points)))
    raise ConfigurationError(
        f"No acceptable scene after {MAX_SAMPLING_ATTEMPTS} draws; raise coordinate_bound"
    )


def random_subsets(rng: random.Random, labels: Sequence[str], count: int) -> List[Tuple[str, ...]]:
    """``count`` nonempty subsets, each label kept with probability 1/2."""
    subsets = []
    for _ in range(count):
        subset: Tuple[str, ...] = ()
        while not subset:
            subset = tuple(label for label in labels if rng.random() < 0.5)
        subsets.append(subset)
    return subsets


def scene_digest(scene: Scene) -> str:
    return hashlib.sha256(dumps_json(scene_to_json(scene)).encode("utf-8")).hexdigest()[:16]


def segment_point_example() -> Tuple[Scene, Family]:
    """The three-vertex worked example: a segment AB and a point C."""
    scene = Scene.from_mapping(2, {"A": ["0", "0"], "B": ["2", "0"], "C": ["1", "2"]})
    return scene, Family.of([("A", "B"), ("C",)], scene)


def five_set_example() -> Tuple[Scene, Family]:
    """A hull C built from a point, two segments, a triangle and a rectangle."""
    scene = Scene.from_mapping(
        2,
        {
            "A": ["0", "0"],
            "B": ["4", "0"],
            "C": ["4", "2"],
            "D": ["0", "2"],
            "E": ["2", "4"],
            "F": ["2", "1"],
        },
    )
    family = Family.of(
        [("F",), ("A", "E"), ("B", "F"), ("C", "D", "E"), ("A", "B", "C", "D")], scene
    )
    return scene, family


def demo_instances() -> Dict[str, Tuple[Scene, Family]]:
    return {"segment-point": segment_point_example(), "five-set": five_set_example()}


def run_instance(scene: Scene, raw_start: Sequence[Sequence[str]], operator: Operator, max_iter: int) -> Tuple[object, Trace]:
    """Iterate one operator from raw start subsets; returns (start, trace)."""
    if operator == Operator.GTAU:
        start = SetFamily(tuple(tuple(s) for s in raw_start))
        return start, iterate_g(start, orders_from_scene(scene), max_iter)
    start = Family.of(raw_start, scene)
    return start, iterate(start, operator, scene, max_iter)


@dataclass
class RunReport:
    """Per-trial results, period histogram, findings and property tallies."""

    config: dict
    trials: List[dict] = field(default_factory=list)
    findings: List[dict] = field(default_factory=list)
    tallies: Dict[str, int] = field(default_factory=dict)
    failed: bool = False

    def trial_table(self) -> pd.DataFrame:
        columns = ["trial", "scene_digest", "transient", "period", "start"]
        return pd.DataFrame(self.trials, columns=columns)

    @property
    def histogram(self) -> Dict[str, int]:
        counts = self.trial_table()["period"].value_counts().sort_index()
        return {str(int(period)): int(count) for period, count in counts.items()}

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "trials": self.trials,
            "histogram": self.histogram,
            "findings": self.findings,
            "tallies": dict(self.tallies),
            "failed": self.failed,
        }

    def write_csv(self, path: str) -> str:
        table = self.trial_table()
        table["start"] = table["start"].map(lambda s: dumps_json(s).strip().replace("\n", ""))
        table.to_csv(path, index=False)
        logger.info(f"💾 Wrote {path}")
        return path


def run_fuzz(config: FuzzConfig) -> RunReport:
    """
    Execute a fuzz run; deterministic for a given configuration.

    In simplex mode a period above 2 is impossible for correct code and
    marks the report failed; otherwise such trials become findings.
    """
    config.validate()
    rng = random.Random(config.seed)
    report = RunReport(config=config.to_json())
    report.tallies = {"hull_conserved": 0, "hull_checked": 0, "period_le_2": 0}
    logger.info(
        f"🚀 Fuzzing {config.trials} trials of {config.operator.value} "
        f"(dim={config.dim}, |V|={config.num_vertices}, seed={config.seed})"
    )

    for index in range(config.trials):
        scene = random_scene(
            rng,
            config.dim,
            config.num_vertices,
            config.coordinate_bound,
            config.max_denominator,
            general_position=config.general_position,
            simplex=config.simplex_mode,
        )
        raw_start = random_subsets(rng, scene.labels, config.num_polytopes)
        start, trace = run_instance(scene, raw_start, config.operator, config.max_iter)

        report.trials.append(
            {
                "trial": index,
                "scene_digest": scene_digest(scene),
                "start": family_to_json(start),
                "transient": trace.transient,
                "period": trace.period,
            }
        )
        if trace.period <= 2:
            report.tallies["period_le_2"] += 1
        if config.operator != Operator.GTAU:
            hull = global_hull(start, scene)
            report.tallies["hull_checked"] += 1
            if all(global_hull(state, scene) == hull for state in trace.history):
                report.tallies["hull_conserved"] += 1

        if trace.period > 2:
            logger.warning(f"⚠️ Trial {index}: period {trace.period} > 2")
            report.findings.append(finding_bundle(config, index, scene, raw_start, trace))
            if config.simplex_mode:
                report.failed = True

    logger.info(f"✅ Fuzz complete. Period histogram: {report.histogram}")
    return report


def finding_bundle(
    config: FuzzConfig, index: int, scene: Scene, raw_start: Sequence[Sequence[str]], trace: Trace
) -> dict:
    """The self-contained reproduction record of one trial."""
    return {
        "trial": index,
        "seed": config.seed,
        "operator": config.operator.value,
        "scene": scene_to_json(scene),
        "start": [list(s) for s in raw_start],
        "trace": trace_to_json(trace),
    }


def replay_bundle(bundle: dict, max_iter: Optional[int] = None) -> bool:
    """Re-run a finding bundle and confirm it reproduces the same trace."""
    scene = scene_from_json(bundle["scene"])
    operator = Operator.parse(bundle["operator"])
    if operator == Operator.GTAU:
        raw_start = set_family_from_json(bundle["start"]).members
    else:
        raw_start = [member.labels for member in family_from_json(bundle["start"], scene).members]
    _, trace = run_instance(scene, raw_start, operator, max_iter or DEFAULT_MAX_ITER)
    return trace_to_json(trace) == bundle["trace"]
