"""Convertor package: exact dynamics of the convertor maps on polytope families.

This package contains the geometry, direction enumeration, iteration and
experiment modules behind the ``convertor`` command line.
"""

from convertor.logging_config import create_logger

__version__ = "0.1.0"

# Package-level logger; modules create their own children by name
logger = create_logger(__name__)


def describe_package() -> dict:
    """Package details, logged at debug level by the command line."""
    return {
        "name": "convertor-dynamics",
        "version": __version__,
        "modules": [
            "geometry",
            "lp",
            "directions",
            "dynamics",
            "combinatorics",
            "serialization",
            "render",
            "fuzz",
            "properties",
            "harness.run",
        ],
    }
