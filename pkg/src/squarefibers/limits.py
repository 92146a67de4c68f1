"""Desk-scale size limits and the shared error taxonomy.

Everything in this package is exact and enumeration-heavy, so every
entry point is bounded.  The bounds are deliberately small: the point
is auditable computation, not asymptotic reach.
"""

MAX_FIELD_ORDER = 2**20
MAX_POLY_DEGREE = 64
MAX_PARTITION_WEIGHT = 64
MAX_CLASS_COUNT = 10**6
MAX_GROUP_ORDER = 10**6
HARD_GROUP_ORDER = 10**7
MAX_ENUMERATION_SPACE = 2**24


class InputError(ValueError):
    """Malformed or mathematically invalid input (CLI exit code 2)."""


class ScaleLimitError(ValueError):
    """Request exceeds the configured desk-scale bounds (CLI exit code 3)."""
