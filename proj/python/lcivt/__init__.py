"""Exact root finding for power series over non-Archimedean ordered fields."""

from ._lcivt import (
    ConvergenceError,
    DomainError,
    LcivtError,
    Mode,
    Number,
    ParseError,
    ResourceError,
    Series,
    UndecidableError,
    count_zeros,
    factor,
    ivt_root,
    multiplicity_at,
    run,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "LcivtError",
    "Mode",
    "Number",
    "ParseError",
    "ResourceError",
    "Series",
    "UndecidableError",
    "count_zeros",
    "factor",
    "ivt_root",
    "multiplicity_at",
    "run",
]
