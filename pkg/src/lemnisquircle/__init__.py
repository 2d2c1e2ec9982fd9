"""Squircle and lemniscate: arc lengths, sector areas, the lemniscate and
squigonometric functions, and numerical checks of the identities between them.
"""

from .lemnifuncs import cl, constants, cos4, sin4, sl, slh, tan4, varpi
from .numerics import (
    BracketError,
    DomainError,
    NonConvergence,
    NumericsError,
    ToleranceConfig,
    integrate,
    solve_monotone,
)
from .relations import IdentityReport, verify_all

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "DomainError",
    "IdentityReport",
    "NonConvergence",
    "NumericsError",
    "ToleranceConfig",
    "cl",
    "constants",
    "cos4",
    "integrate",
    "sin4",
    "sl",
    "slh",
    "solve_monotone",
    "tan4",
    "varpi",
    "verify_all",
]
