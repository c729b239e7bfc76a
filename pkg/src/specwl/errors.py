"""Exception types and size caps shared across the package."""
from __future__ import annotations

import os


class SpecWLError(Exception):
    """Base class for library errors."""


class GraphFormatError(SpecWLError, ValueError):
    """Malformed graph6 or edge-list input."""


class InvalidInputError(SpecWLError, ValueError):
    """Arguments violate an operation's precondition."""


class AdjacentBlockError(InvalidInputError):
    """A quotient block contains two adjacent vertices."""


class CapExceededError(SpecWLError):
    """Input is larger than the configured desk-scale cap."""


class EigensolverError(SpecWLError):
    """The floating-point eigendecomposition failed or was inconsistent."""


# Vertex caps per operation; SPECWL_CAP_VERTICES overrides all of them.
VERTEX_CAPS = {
    "isomorphism": 12,
    "fwl2": 40,
    "local2": 40,
    "local4": 16,
    "ptree": 32,
    "enumerate": 8,
    "pebble": 24,
    "spasm": 8,
    "hom_brute": 8,
}

# Table-size caps (number of tuples or subsets); not affected by the override.
SIZE_CAPS = {
    "korder": 1 << 16,
    "sympower": 1 << 12,
}


def cap(name: str) -> int:
    if name in SIZE_CAPS:
        return SIZE_CAPS[name]
    override = os.environ.get("SPECWL_CAP_VERTICES")
    if override:
        return int(override)
    return VERTEX_CAPS[name]


def check_cap(name: str, size: int, limit: int | None = None) -> None:
    bound = cap(name) if limit is None else limit
    if size > bound:
        raise CapExceededError(f"{name}: size {size} exceeds cap {bound}")
