"""
Identity verification: every relation between the squircle and lemniscate is
turned into a residual function (left side minus right side), swept over a
grid, and summarised as an IdentityReport.

Each verifier takes an optional ``offset`` that is added to every residual.
It exists so tests and the CLI can inject a systematic error and watch the
matching report fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import curves
from . import lemnifuncs as lf
from .curves import QUARTER_PI
from .numerics import NumericsError, gamma, integrate

__all__ = [
    "GridSpec",
    "IdentityReport",
    "DEFAULT_TOLERANCE",
    "VERIFIERS",
    "verify_theorem1",
    "verify_theorem2",
    "verify_siegel",
    "verify_arc_equality",
    "verify_squig_relation",
    "verify_tan4_relation",
    "verify_slh_relation",
    "verify_pythagorean",
    "verify_duplication",
    "verify_historic",
    "verify_area_corollary",
    "verify_final_remark",
    "verify_all",
    "run_verifier",
]

DEFAULT_TOLERANCE = 1e-9
DEFAULT_INSET = 1e-6
GEOMETRY_POINTS = 257
FUNCTION_POINTS = 128

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    n: int
    endpoint_inset: float = DEFAULT_INSET

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"grid needs at least 2 points, got n={self.n}")
        if not self.lo + self.endpoint_inset < self.hi - self.endpoint_inset:
            raise ValueError(
                f"inset {self.endpoint_inset} leaves no room in [{self.lo}, {self.hi}]"
            )

    def points(self) -> np.ndarray:
        a = self.lo + self.endpoint_inset
        b = self.hi - self.endpoint_inset
        k = np.arange(self.n)
        pts = a + k * ((b - a) / (self.n - 1))
        pts[-1] = b
        return pts


@dataclass(frozen=True)
class IdentityReport:
    name: str
    grid: Optional[GridSpec]
    max_abs_residual: float
    argmax: float
    tolerance: float
    passed: bool
    samples: int
    failures: int = 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_abs_residual": self.max_abs_residual,
            "argmax": self.argmax,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "samples": self.samples,
        }


def _sweep(name, grid, residual, tol, offset) -> IdentityReport:
    worst, where, failures = -1.0, float(grid.lo), 0
    for x in grid.points():
        x = float(x)
        try:
            r = abs(residual(x) + offset)
        except NumericsError:
            failures += 1
            r = math.inf
        if math.isnan(r):
            failures += 1
            r = math.inf
        # Strict comparison: ties go to the earliest grid point.
        if r > worst:
            worst, where = r, x
    return IdentityReport(
        name=name,
        grid=grid,
        max_abs_residual=worst,
        argmax=where,
        tolerance=tol,
        passed=worst <= tol,
        samples=grid.n,
        failures=failures,
    )


def _pairwise(name, values: Sequence[float], tol, offset) -> IdentityReport:
    """Report over all pairs of independently computed values.

    ``argmax`` is the index of the worst pair in (0-1, 1-2, 0-2) order.
    """
    pairs = [(0, 1), (1, 2), (0, 2)]
    diffs = [abs(values[i] - values[j] + offset) for i, j in pairs]
    k = int(np.argmax(diffs))
    worst = diffs[k]
    return IdentityReport(
        name=name,
        grid=None,
        max_abs_residual=worst,
        argmax=float(k),
        tolerance=tol,
        passed=worst <= tol,
        samples=len(values),
    )


def _default(grid, lo, hi, n):
    return grid if grid is not None else GridSpec(lo, hi, n)


# --------------------------------------------------------------------------- #
#  Geometric relations
# --------------------------------------------------------------------------- #

def theorem1_residual(alpha: float) -> float:
    """Arc from C to the vertex minus 2 sqrt(2) times the sector OPB'."""
    return curves.arc_c_to_p(alpha) - 2.0 * _SQRT2 * curves.squircle_sector_area(alpha)


def verify_theorem1(grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    grid = _default(grid, 0.0, QUARTER_PI, GEOMETRY_POINTS)
    return _sweep("theorem1", grid, theorem1_residual, tol, offset)


def theorem2_residual(R: float) -> float:
    """Arc from O to D minus 2 sqrt(2) times the sector OPB', with OB = R."""
    od = curves.d_of_b(R)
    # 1 - OD = 2 R^4 / ((1 + R^4)(1 + OD)), which survives OD rounding to 1.
    R4 = R ** 4
    l = curves.lemniscate_arc_radial(0.0, od, hi_gap=2.0 * R4 / ((1.0 + R4) * (1.0 + od)))
    alpha = math.atan(curves.tan_alpha_of_R(R))
    return l - 2.0 * _SQRT2 * curves.squircle_sector_area(alpha)


def verify_theorem2(grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    grid = _default(grid, 0.0, 1.0, GEOMETRY_POINTS)
    return _sweep("theorem2", grid, theorem2_residual, tol, offset)


def siegel_residual(T: float) -> float:
    # 1 - R(T) = (1 - T^2)^2 / (q (q + sqrt(2) T)) with q = sqrt(1 + T^4),
    # exact where R(T) itself has rounded to within an ulp of 1.
    q = math.sqrt(1.0 + T ** 4)
    gap = (1.0 - T) ** 2 * (1.0 + T) ** 2 / (q * (q + _SQRT2 * T))
    left = curves.lemniscate_arc_radial(0.0, curves.siegel_R_of_T(T), hi_gap=gap)
    return left - _SQRT2 * curves.slope_area_integral(T)


def verify_siegel(grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    grid = _default(grid, 0.0, 1.0, GEOMETRY_POINTS)
    return _sweep("siegel", grid, siegel_residual, tol, offset)


def arc_equality_residual(alpha: float) -> float:
    """O-to-D arc minus C-to-P arc for the same point B at angle alpha."""
    l1 = curves.lemniscate_arc_radial(0.0, curves.d_of_alpha(alpha), hi_gap=curves.d_gap_of_alpha(alpha))
    l2 = curves.arc_c_to_p(alpha)
    return l1 - l2


def verify_arc_equality(grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    grid = _default(grid, 0.0, QUARTER_PI, GEOMETRY_POINTS)
    return _sweep("arc_equality", grid, arc_equality_residual, tol, offset)


def final_remark_residual(R: float) -> float:
    left = curves.lemniscate_arc_radial(R * R, 1.0)
    return left - _SQRT2 * curves.slope_area_integral(curves.tan_alpha_of_R(R))


def verify_final_remark(grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    grid = _default(grid, 0.0, 1.0, GEOMETRY_POINTS)
    return _sweep("final_remark", grid, final_remark_residual, tol, offset)


def historic_values():
    """The three members of the classical quarter-lobe identity."""
    q1 = curves.lemniscate_arc_radial(0.0, 1.0)
    q2 = gamma(0.25) ** 2 / (4.0 * math.sqrt(2.0 * math.pi))
    q3 = _SQRT2 * _quartic_root_area()
    return q1, q2, q3


def _quartic_root_area() -> float:
    """Integral of (1 - x^4)^(1/4) over [0, 1], the squircle quadrant area."""

    def f(x, d_lo, d_hi):
        one_minus_x = np.where(d_hi < d_lo, d_hi, 1.0 - x)
        return (one_minus_x * (1.0 + x) * (1.0 + x * x)) ** 0.25

    return integrate(f, (0.0, 1.0), endpoint_distances=True).value


def verify_historic(tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    return _pairwise("historic", historic_values(), tol, offset)


def area_values():
    """Squircle area three ways: octant sector, Cartesian quadrature, sqrt(2) varpi."""
    return (
        8.0 * curves.squircle_sector_area(QUARTER_PI),
        4.0 * _quartic_root_area(),
        _SQRT2 * lf.varpi(),
    )


def verify_area_corollary(tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    return _pairwise("area_corollary", area_values(), tol, offset)


# --------------------------------------------------------------------------- #
#  Function identities
# --------------------------------------------------------------------------- #

def squig_residual(t: float) -> float:
    c, s = lf.cos4(t), lf.sin4(t)
    c2, s2 = c * c, s * s
    return lf.cl(_SQRT2 * t) - (c2 - s2) / (c2 + s2)


def verify_squig_relation(grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    grid = _default(grid, 0.0, lf.varpi() / (2.0 * _SQRT2), FUNCTION_POINTS)
    return _sweep("squig_relation", grid, squig_residual, tol, offset)


def tan4_residual(u: float) -> float:
    c = lf.cl(2.0 * u)
    return lf.tan4(_SQRT2 * u) ** 2 - (1.0 - c) / (1.0 + c)


def verify_tan4_relation(grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    grid = _default(grid, 0.0, 0.25 * lf.varpi(), FUNCTION_POINTS)
    return _sweep("tan4_relation", grid, tan4_residual, tol, offset)


def slh_residual(u: float) -> float:
    """slh(sqrt(2) u) - sl(u)(1 + cl(u)^2) / (sqrt(2) cl(u)).

    Past u = varpi/4 the left side is evaluated from its distance to the
    pole, sqrt(2) (varpi/2 - u), the same quarter-period gap cl(u) is built
    from.  Both sides then see one consistent argument; otherwise the
    rounding of sqrt(2) u alone would cost ~1e-4 next to the pole.
    """
    half = 0.5 * lf.varpi()
    s, c = lf.sl(u), lf.cl(u)
    rhs = s * (1.0 + c * c) / (_SQRT2 * c)
    if u <= 0.5 * half:
        lhs = lf.slh(_SQRT2 * u)
    else:
        lhs = lf.slh_near_pole(_SQRT2 * (half - u))
    return lhs - rhs


def verify_slh_relation(grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    grid = _default(grid, 0.0, 0.5 * lf.varpi(), FUNCTION_POINTS)
    return _sweep("slh_relation", grid, slh_residual, tol, offset)


def pythagorean_residual(u: float) -> float:
    s2, c2 = lf.sl(u) ** 2, lf.cl(u) ** 2
    return c2 + s2 + c2 * s2 - 1.0


def verify_pythagorean(grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    grid = _default(grid, 0.0, 0.5 * lf.varpi(), FUNCTION_POINTS)
    return _sweep("pythagorean", grid, pythagorean_residual, tol, offset)


def duplication_residual(u: float) -> float:
    return lf.cl_duplication(u) - lf.extend_cl(2.0 * u)


def verify_duplication(grid: Optional[GridSpec] = None, tol: float = DEFAULT_TOLERANCE, *, offset: float = 0.0):
    grid = _default(grid, 0.0, 0.5 * lf.varpi(), FUNCTION_POINTS)
    return _sweep("duplication", grid, duplication_residual, tol, offset)


# --------------------------------------------------------------------------- #
#  Registry
# --------------------------------------------------------------------------- #

VERIFIERS: Dict[str, Callable[..., IdentityReport]] = {
    "area_corollary": verify_area_corollary,
    "arc_equality": verify_arc_equality,
    "duplication": verify_duplication,
    "final_remark": verify_final_remark,
    "historic": verify_historic,
    "pythagorean": verify_pythagorean,
    "siegel": verify_siegel,
    "slh_relation": verify_slh_relation,
    "squig_relation": verify_squig_relation,
    "tan4_relation": verify_tan4_relation,
    "theorem1": verify_theorem1,
    "theorem2": verify_theorem2,
}

_GRIDLESS = {"historic", "area_corollary"}


def run_verifier(
    name: str,
    tol: float = DEFAULT_TOLERANCE,
    *,
    grid_n: Optional[int] = None,
    offset: float = 0.0,
) -> IdentityReport:
    """Run one verifier by name, optionally overriding the grid size."""
    fn = VERIFIERS[name]
    if name in _GRIDLESS:
        return fn(tol, offset=offset)
    grid = None
    if grid_n is not None:
        grid = _default_grid(name, grid_n)
    return fn(grid, tol, offset=offset)


def _default_grid(name: str, n: int) -> GridSpec:
    w = lf.varpi()
    bounds = {
        "theorem1": (0.0, QUARTER_PI),
        "arc_equality": (0.0, QUARTER_PI),
        "theorem2": (0.0, 1.0),
        "siegel": (0.0, 1.0),
        "final_remark": (0.0, 1.0),
        "squig_relation": (0.0, w / (2.0 * _SQRT2)),
        "tan4_relation": (0.0, 0.25 * w),
        "slh_relation": (0.0, 0.5 * w),
        "pythagorean": (0.0, 0.5 * w),
        "duplication": (0.0, 0.5 * w),
    }
    lo, hi = bounds[name]
    return GridSpec(lo, hi, n)


def verify_all(
    tol: float = DEFAULT_TOLERANCE,
    *,
    offsets: Optional[Dict[str, float]] = None,
    grid_n: Optional[int] = None,
) -> List[IdentityReport]:
    """Every verifier with its default grid, in name order.

    A failing report never stops the run.  ``offsets`` maps verifier names
    to a perturbation added to that verifier's residuals.
    """
    offsets = offsets or {}
    unknown = set(offsets) - set(VERIFIERS)
    if unknown:
        raise KeyError(f"unknown verifier(s): {sorted(unknown)}")
    return [
        run_verifier(name, tol, grid_n=grid_n, offset=offsets.get(name, 0.0))
        for name in sorted(VERIFIERS)
    ]
