"""Python bindings for the fskit library."""

from ._core import (
    Error,
    Map,
    NotOrderPreserving,
    ParseError,
    Presentation,
    UndefinedAt,
    UnsupportedClass,
    ValidationError,
    abelianize,
    germ_presentation,
    run,
)

__all__ = [
    "Error",
    "Map",
    "NotOrderPreserving",
    "ParseError",
    "Presentation",
    "UndefinedAt",
    "UnsupportedClass",
    "ValidationError",
    "abelianize",
    "germ_presentation",
    "run",
]
