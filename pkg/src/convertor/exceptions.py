"""
Custom exceptions for the convertor package.

This module defines a hierarchy of exceptions to provide more
precise error handling across geometry, enumeration and dynamics,
and to let the command line map each failure to its exit code.
"""


class ConvertorBaseError(Exception):
    """
    Base exception for all convertor-related errors.

    All custom exceptions in the package inherit from this class.
    """

    pass


class ConfigurationError(ConvertorBaseError):
    """
    Raised when there are configuration-related issues.

    This exception is used when:
    - Environment variables hold values that are not integers
    - Enumeration caps are non-positive or above the hard ceilings
    - A fuzz configuration is inconsistent (e.g. zero trials)
    """

    pass


class ParseError(ConvertorBaseError):
    """
    Raised when an input document cannot be decoded.

    Covers problems with:
    - Malformed JSON
    - Coordinates that are not exact rational literals
    - Structurally wrong scene, family, order or trace documents
    """

    pass


class GeometryError(ConvertorBaseError):
    """
    Raised for invalid geometric input.

    Covers issues such as:
    - Empty label sets or empty families
    - Zero direction vectors
    - Coincident scene points or mismatched dimensions
    """

    pass


class UnknownLabelError(GeometryError):
    """Raised when a label does not name a vertex of the scene."""

    pass


class OrderError(ConvertorBaseError):
    """
    Raised for invalid vertex orderings.

    Covers orders that are not permutations of V, blocks that do not
    partition V, unrealizable orders and order families over different
    label sets.
    """

    pass


class CapExceededError(ConvertorBaseError):
    """
    Raised when an enumeration would exceed its configured cap.

    Factorial growth of the candidate sets makes these hard limits.
    """

    pass


class MaxIterationsError(ConvertorBaseError):
    """
    Raised when iteration reaches max_iter without a repeated state.

    The partial history is kept on the exception for diagnostics.
    """

    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = list(history or [])


class PropertyFailureError(ConvertorBaseError):
    """
    Raised when a property that must hold is violated.

    The reproduction bundle is attached so the failure can be replayed.
    """

    def __init__(self, message, bundle=None):
        super().__init__(message)
        self.bundle = bundle


class RenderError(ConvertorBaseError):
    """Raised when a scene cannot be drawn (only planar scenes are)."""

    pass
