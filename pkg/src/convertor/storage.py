"""Local output utilities.

Reports, traces and drawings are written under the output directory.
JSON is always written with sorted keys so identical inputs give
byte-identical files.
"""

import json
import os
from typing import Any, Optional

from convertor.config import OUTPUT_DIR
from convertor.logging_config import create_logger

logger = create_logger(__name__)


def get_output_paths(output_dir: Optional[str] = None) -> dict:
    """Get the local paths used for generated artifacts."""
    root = output_dir or OUTPUT_DIR
    return {
        "output_dir": root,
        "reports_dir": os.path.join(root, "reports"),
        "findings_dir": os.path.join(root, "findings"),
        "svg_dir": os.path.join(root, "svg"),
    }


def ensure_output_directories(output_dir: Optional[str] = None) -> dict:
    """Ensure all output directories exist and return their paths."""
    paths = get_output_paths(output_dir)
    for path in paths.values():
        os.makedirs(path, exist_ok=True)
        logger.debug(f"📁 Ensured directory exists: {path}")
    return paths


def dumps_json(document: Any) -> str:
    """Deterministic JSON text for a document."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(document: Any, path: str) -> str:
    """Write a JSON document, creating parent directories as needed."""
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_json(document))
    logger.info(f"💾 Wrote {path}")
    return path


def write_text(text: str, path: str) -> str:
    """Write a text artifact such as an SVG drawing."""
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    logger.info(f"💾 Wrote {path}")
    return path


def read_json(path: str) -> Any:
    """Read a JSON document; decoding errors surface as ``ValueError``."""
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)
