"""Static SVG drawings of planar scenes, families and traces.

Floats appear only here, to place marks on the canvas; nothing computed
from them flows back into the exact code.
"""

import xml.etree.ElementTree as ET
from typing import List, Optional, Sequence

from convertor.dynamics import Family, Trace
from convertor.exceptions import RenderError
from convertor.geometry import Polytope, Scene, monotone_chain
from convertor.logging_config import create_logger

logger = create_logger(__name__)

PANEL = 260
MARGIN = 36
CAPTION = 24
PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#17becf",
    "#8c564b",
    "#e377c2",
)


class _Frame:
    """Maps scene coordinates into a square panel, y axis pointing up."""

    def __init__(self, scene: Scene, x0: float = 0.0):
        xs = [float(p[0]) for _, p in scene.vertices]
        ys = [float(p[1]) for _, p in scene.vertices]
        self.left, self.bottom = min(xs), min(ys)
        span = max(max(xs) - self.left, max(ys) - self.bottom) or 1.0
        self.scale = (PANEL - 2 * MARGIN) / span
        self.x0 = x0

    def __call__(self, point) -> tuple:
        x = self.x0 + MARGIN + (float(point[0]) - self.left) * self.scale
        y = CAPTION + PANEL - MARGIN - (float(point[1]) - self.bottom) * self.scale
        return round(x, 2), round(y, 2)


def svgroot(width: int, height: int) -> ET.Element:
    return ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        version="1.1",
        width=f"{width}px",
        height=f"{height}px",
        viewBox=f"0 0 {width} {height}",
    )


def _path(points: Sequence[tuple], closed: bool) -> str:
    d = f"M{points[0][0]} {points[0][1]}" + "".join(f"L{x} {y}" for x, y in points[1:])
    return d + "z" if closed else d


def _draw_polytope(group: ET.Element, polytope: Polytope, scene: Scene, frame: _Frame, color: str) -> None:
    corners = monotone_chain(scene, polytope.labels)
    points = [frame(scene.point(label)) for label in corners]
    attrs = {"stroke": color, "stroke-width": "2.5", "fill": "none"}
    if len(points) == 1:
        x, y = points[0]
        ET.SubElement(group, "circle", cx=str(x), cy=str(y), r="7", fill="none", stroke=color, **{"stroke-width": "2.5"})
    elif len(points) == 2:
        ET.SubElement(group, "path", d=_path(points, closed=False), **attrs)
    else:
        attrs["fill"] = color
        attrs["fill-opacity"] = "0.12"
        ET.SubElement(group, "path", d=_path(points, closed=True), **attrs)
    ET.SubElement(group, "title").text = polytope.name


def _draw_panel(root: ET.Element, scene: Scene, family: Family, x0: float, caption: Optional[str]) -> None:
    frame = _Frame(scene, x0)
    panel = ET.SubElement(root, "g")
    if caption:
        title = ET.SubElement(
            panel, "text", x=str(x0 + PANEL / 2), y=str(CAPTION - 6), **{"text-anchor": "middle", "font-size": "14"}
        )
        title.text = caption
    for i, polytope in enumerate(family):
        _draw_polytope(ET.SubElement(panel, "g"), polytope, scene, frame, PALETTE[i % len(PALETTE)])
    for label, point in scene.vertices:
        x, y = frame(point)
        ET.SubElement(panel, "circle", cx=str(x), cy=str(y), r="3", fill="black")
        text = ET.SubElement(panel, "text", x=str(x + 6), y=str(y - 6), **{"font-size": "13"})
        text.text = label


def _check_planar(scene: Scene) -> None:
    if scene.dim != 2:
        raise RenderError(f"Only planar scenes can be drawn, got dimension {scene.dim}")


def render_families(scene: Scene, families: Sequence[Family], captions: Optional[Sequence[str]] = None) -> ET.Element:
    """
    One panel per family, left to right.

    :raises RenderError: If the scene is not planar
    """
    _check_planar(scene)
    if not families:
        raise RenderError("Nothing to render")
    captions = list(captions) if captions is not None else [None] * len(families)
    root = svgroot(PANEL * len(families), PANEL + CAPTION)
    for i, (family, caption) in enumerate(zip(families, captions)):
        family.check_against(scene)
        _draw_panel(root, scene, family, i * PANEL, caption)
    return root


def render_family(scene: Scene, family: Family, caption: Optional[str] = None) -> ET.Element:
    return render_families(scene, [family], [caption])


def render_trace(scene: Scene, trace: Trace) -> ET.Element:
    """Panels X_0 .. X_{mu+lambda}, the last one repeating X_mu."""
    states: List[Family] = list(trace.history) + [trace.state(len(trace.history))]
    captions = [f"step {i}: {state}" for i, state in enumerate(states)]
    return render_families(scene, states, captions)


def to_svg_text(root: ET.Element) -> str:
    return ET.tostring(root, encoding="unicode") + "\n"
