"""JSON encoding and decoding of scenes, orders, families and traces.

Every ``*_to_json`` returns plain lists and dicts; every ``*_from_json``
validates structure and raises :class:`ParseError` on malformed input.
"""

from typing import Any, Optional, Union

from convertor.combinatorics import OscillatorVerdict, SetFamily
from convertor.directions import OrderFamily, TotalOrder, WeakOrder
from convertor.dynamics import Family, Trace
from convertor.exceptions import ParseError
from convertor.geometry import Polytope, Scene, canonicalize, format_rational
from convertor.storage import read_json


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ParseError(message)


def _label_list(doc: Any, what: str) -> list:
    _expect(isinstance(doc, list), f"{what} must be an array of labels")
    _expect(all(isinstance(x, str) for x in doc), f"{what} labels must be strings")
    return doc


def scene_to_json(scene: Scene) -> dict:
    return {
        "dim": scene.dim,
        "vertices": {
            label: [format_rational(c) for c in coords] for label, coords in scene.vertices
        },
    }


def scene_from_json(doc: Any) -> Scene:
    _expect(isinstance(doc, dict), "Scene must be a JSON object")
    _expect("dim" in doc and "vertices" in doc, "Scene needs 'dim' and 'vertices'")
    dim = doc["dim"]
    _expect(isinstance(dim, int) and not isinstance(dim, bool), "'dim' must be an integer")
    vertices = doc["vertices"]
    _expect(isinstance(vertices, dict), "'vertices' must map labels to coordinate arrays")
    for label, coords in vertices.items():
        _expect(isinstance(coords, list), f"Coordinates of {label!r} must be an array")
    return Scene.from_mapping(dim, vertices)


def polytope_to_json(polytope: Polytope) -> list:
    return list(polytope.labels)


def polytope_from_json(doc: Any, scene: Scene) -> Polytope:
    return canonicalize(_label_list(doc, "Polytope"), scene)


def family_to_json(family: Union[Family, SetFamily]) -> list:
    if isinstance(family, Family):
        return [polytope_to_json(member) for member in family.members]
    return [list(member) for member in family.members]


def family_from_json(doc: Any, scene: Scene) -> Family:
    _expect(isinstance(doc, list) and doc, "Family must be a nonempty array of label arrays")
    return Family.of((_label_list(member, "Family member") for member in doc), scene)


def set_family_from_json(doc: Any) -> SetFamily:
    _expect(isinstance(doc, list) and doc, "Set family must be a nonempty array of label arrays")
    return SetFamily(tuple(tuple(_label_list(member, "Set family member")) for member in doc))


def total_order_to_json(order: TotalOrder) -> list:
    return list(order.ranking)


def total_order_from_json(doc: Any) -> TotalOrder:
    return TotalOrder(tuple(_label_list(doc, "Total order")))


def weak_order_to_json(order: WeakOrder) -> list:
    return [list(block) for block in order.blocks]


def weak_order_from_json(doc: Any, scene: Optional[Scene] = None) -> WeakOrder:
    """Decode a weak order; with a scene, it must also be realizable there."""
    _expect(isinstance(doc, list), "Weak order must be an array of blocks")
    blocks = tuple(tuple(_label_list(block, "Weak order block")) for block in doc)
    if scene is not None:
        return WeakOrder.realized(blocks, scene)
    return WeakOrder(blocks)


def order_family_to_json(tau: OrderFamily) -> list:
    return [total_order_to_json(order) for order in tau]


def order_family_from_json(doc: Any) -> OrderFamily:
    _expect(isinstance(doc, list) and doc, "Order family must be a nonempty array of orders")
    return OrderFamily(tuple(total_order_from_json(order) for order in doc))


def trace_to_json(trace: Trace) -> dict:
    return {
        "history": [family_to_json(state) for state in trace.history],
        "transient": trace.transient,
        "period": trace.period,
    }


def trace_from_json(doc: Any, scene: Optional[Scene] = None) -> Trace:
    """Decode a trace; states are Families with a scene, SetFamilies without."""
    _expect(isinstance(doc, dict), "Trace must be a JSON object")
    for key in ("history", "transient", "period"):
        _expect(key in doc, f"Trace needs {key!r}")
    _expect(isinstance(doc["history"], list), "'history' must be an array of families")
    for key in ("transient", "period"):
        _expect(isinstance(doc[key], int) and not isinstance(doc[key], bool), f"{key!r} must be an integer")
    if scene is None:
        history = tuple(set_family_from_json(state) for state in doc["history"])
    else:
        history = tuple(family_from_json(state, scene) for state in doc["history"])
    return Trace(history, doc["transient"], doc["period"])


def verdict_to_json(verdict: OscillatorVerdict) -> dict:
    witness = None
    if verdict.witness is not None:
        start, trace = verdict.witness
        witness = {"start": family_to_json(start), "trace": trace_to_json(trace)}
    return {
        "oscillator": verdict.is_oscillator,
        "coverage": dict(verdict.coverage),
        "checked": verdict.checked,
        "witness": witness,
    }


def load_document(path: str) -> Any:
    """Read a JSON file, turning I/O and decoding failures into ParseError."""
    try:
        return read_json(path)
    except (OSError, ValueError) as e:
        raise ParseError(f"Cannot read JSON from {path}: {e}")


def load_scene(path: str) -> Scene:
    return scene_from_json(load_document(path))


def load_family(path: str, scene: Scene) -> Family:
    return family_from_json(load_document(path), scene)
