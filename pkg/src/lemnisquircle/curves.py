"""
The lemniscate (x^2 + y^2)^2 = x^2 - y^2 and the squircle x^4 + y^4 = 1.

Everything here works in the first octant or first quadrant; the rest of
either curve follows by symmetry.  Angles are radians.

The float ``QUARTER_PI = math.pi / 4`` is treated as the exact angle of the
lemniscate's node at the origin.  Quantities near it are computed from the
complementary angle ``QUARTER_PI - theta`` so that, for instance,
``lemniscate_r(QUARTER_PI)`` is exactly 0 and the arc length up to it is the
full quarter lobe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .numerics import DomainError, ToleranceConfig, integrate

__all__ = [
    "QUARTER_PI",
    "HALF_PI",
    "PolarPoint",
    "CartesianPoint",
    "lemniscate_r",
    "lemniscate_point_from_r",
    "lemniscate_point_at_angle",
    "squircle_point_param",
    "squircle_r2_tan",
    "squircle_r2_cos",
    "radial_projection_to_squircle",
    "beta_of_alpha",
    "beta_gap_of_alpha",
    "d_beta_d_alpha",
    "lemniscate_arc_theta",
    "lemniscate_arc_radial",
    "arc_c_to_p",
    "squircle_sector_area",
    "squircle_sector_area_tan",
    "slope_area_integral",
    "siegel_R_of_T",
    "d_of_b",
    "d_of_alpha",
    "d_gap_of_alpha",
    "tan_alpha_of_R",
]

QUARTER_PI = 0.25 * math.pi
HALF_PI = 0.5 * math.pi
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class PolarPoint:
    r: float
    theta: float

    def __post_init__(self):
        if not self.r >= 0:
            raise DomainError(f"polar radius must be nonnegative, got {self.r}")

    def to_cartesian(self) -> "CartesianPoint":
        return CartesianPoint(self.r * math.cos(self.theta), self.r * math.sin(self.theta))


@dataclass(frozen=True)
class CartesianPoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


def _check(name, value, lo, hi, *, hi_open=False):
    value = float(value)
    ok = lo <= value < hi if hi_open else lo <= value <= hi
    if not ok:
        bracket = ")" if hi_open else "]"
        raise DomainError(f"{name}={value!r} outside [{lo!r}, {hi!r}{bracket}")
    return value


def _cos_2theta(theta: float) -> float:
    """cos(2 theta) for theta in [0, pi/4], exact zero at QUARTER_PI."""
    if theta > 0.5 * QUARTER_PI:
        return math.sin(2.0 * (QUARTER_PI - theta))
    return math.cos(2.0 * theta)


# --------------------------------------------------------------------------- #
#  Pointwise geometry
# --------------------------------------------------------------------------- #

def lemniscate_r(theta: float) -> float:
    """Polar radius sqrt(cos 2 theta) of the lemniscate, theta in [0, pi/4]."""
    theta = _check("theta", theta, 0.0, QUARTER_PI)
    return math.sqrt(_cos_2theta(theta))


def lemniscate_point_from_r(r: float) -> CartesianPoint:
    """First-quadrant lemniscate point at distance `r` from the origin."""
    r = _check("r", r, 0.0, 1.0)
    r2 = r * r
    return CartesianPoint(r * math.sqrt(0.5 * (1.0 + r2)), r * math.sqrt(0.5 * (1.0 - r2)))


def lemniscate_point_at_angle(theta: float) -> CartesianPoint:
    r = lemniscate_r(theta)
    return CartesianPoint(r * math.cos(theta), r * math.sin(theta))


def squircle_point_param(s: float) -> CartesianPoint:
    """(sqrt(cos s), sqrt(sin s)) for s in [0, pi/2]."""
    s = _check("s", s, 0.0, HALF_PI)
    if s >= HALF_PI:
        return CartesianPoint(0.0, 1.0)
    return CartesianPoint(math.sqrt(math.cos(s)), math.sqrt(math.sin(s)))


def squircle_r2_tan(theta: float) -> float:
    """Squared squircle radius from the sec/tan polar form; theta in [0, pi/2)."""
    theta = _check("theta", theta, 0.0, HALF_PI, hi_open=True)
    t = math.tan(theta)
    sec2 = 1.0 + t * t
    return sec2 / math.sqrt(1.0 + t ** 4)


def squircle_r2_cos(theta: float) -> float:
    """Squared squircle radius sqrt(2) / sqrt(1 + cos^2 2 theta), any theta."""
    c = math.cos(2.0 * float(theta))
    return _SQRT2 / math.sqrt(1.0 + c * c)


def radial_projection_to_squircle(theta: float) -> CartesianPoint:
    """Where the ray at angle theta (in [0, pi/4]) meets the squircle."""
    theta = _check("theta", theta, 0.0, QUARTER_PI)
    t = math.tan(theta)
    x = (1.0 + t ** 4) ** -0.25
    return CartesianPoint(x, t * x)


def beta_of_alpha(alpha: float) -> float:
    """Polar angle of C given the polar angle alpha of B.

    Solves cos(2 beta) = cos^2(2 alpha).  With c = cos 2 alpha the matching
    sine is sin(2 beta) = sin(2 alpha) sqrt(1 + c^2), and atan2 of the pair
    keeps full relative precision at both ends, where arccos would not.
    """
    alpha = _check("alpha", alpha, 0.0, QUARTER_PI)
    c = _cos_2theta(alpha)
    return 0.5 * math.atan2(_sin_2theta(alpha) * math.sqrt(1.0 + c * c), c * c)


def beta_gap_of_alpha(alpha: float) -> float:
    """pi/4 - beta_of_alpha(alpha), accurate even when it is far below
    the spacing of floats near pi/4 (as alpha -> pi/4 it behaves like
    2 (pi/4 - alpha)^2)."""
    alpha = _check("alpha", alpha, 0.0, QUARTER_PI)
    c = _cos_2theta(alpha)
    return 0.5 * math.atan2(c * c, _sin_2theta(alpha) * math.sqrt(1.0 + c * c))


def d_beta_d_alpha(alpha: float) -> float:
    alpha = _check("alpha", alpha, 0.0, QUARTER_PI)
    c = _cos_2theta(alpha)
    return 2.0 * c / math.sqrt(1.0 + c * c)


# --------------------------------------------------------------------------- #
#  Arc lengths and areas
# --------------------------------------------------------------------------- #

def _quad(f, lo, hi, tol, **kw) -> float:
    return integrate(f, (lo, hi), tol, **kw).value


def lemniscate_arc_theta(
    theta_lo: float,
    theta_hi: float,
    tol: Optional[ToleranceConfig] = None,
    *,
    hi_gap: Optional[float] = None,
) -> float:
    """Lemniscate arc length between two polar angles in [0, pi/4].

    Integrates 1 / sqrt(cos 2 theta); the inverse square root singularity at
    pi/4 is handled through the exact distance to the upper limit.

    Parameters
    ----------
    hi_gap : float, optional
        pi/4 - theta_hi when known more precisely than the rounded
        theta_hi carries it (see beta_gap_of_alpha).
    """
    lo = _check("theta_lo", theta_lo, 0.0, QUARTER_PI)
    hi = _check("theta_hi", theta_hi, 0.0, QUARTER_PI)
    if lo > hi:
        raise DomainError(f"theta_lo={lo!r} exceeds theta_hi={hi!r}")
    if hi_gap is None:
        hi_gap = QUARTER_PI - hi
    elif not 0.0 <= hi_gap <= QUARTER_PI or abs((QUARTER_PI - hi_gap) - hi) > 1e-14:
        raise DomainError(f"hi_gap={hi_gap!r} inconsistent with theta_hi={hi!r}")
    if lo == hi:
        return 0.0

    def f(theta, d_lo, d_hi):
        near_node = hi_gap + d_hi
        return 1.0 / np.sqrt(np.where(
            near_node < 0.5 * QUARTER_PI,
            np.sin(2.0 * near_node),
            np.cos(2.0 * theta),
        ))

    return _quad(f, lo, hi, tol, endpoint_distances=True)


def lemniscate_arc_radial(
    r_lo: float,
    r_hi: float,
    tol: Optional[ToleranceConfig] = None,
    *,
    hi_gap: Optional[float] = None,
) -> float:
    """Lemniscate arc length between two radial distances in [0, 1].

    Integrates 1 / sqrt(1 - r^4) with 1 - r^4 factored as
    (1 - r)(1 + r)(1 + r^2) and 1 - r taken as (1 - r_hi) + distance to
    r_hi, which stays positive even when a node rounds onto 1.

    Parameters
    ----------
    hi_gap : float, optional
        1 - r_hi when the caller knows it more precisely than the rounded
        r_hi does.  Near the vertex the arc behaves like sqrt(1 - r), so a
        gap of 1e-24 hidden by r_hi == 1.0 is still worth 1e-12 of length.
    """
    lo = _check("r_lo", r_lo, 0.0, 1.0)
    hi = _check("r_hi", r_hi, 0.0, 1.0)
    if lo > hi:
        raise DomainError(f"r_lo={lo!r} exceeds r_hi={hi!r}")
    if hi_gap is None:
        hi_gap = 1.0 - hi
    elif not 0.0 <= hi_gap <= 1.0 or abs((1.0 - hi_gap) - hi) > 1e-14:
        raise DomainError(f"hi_gap={hi_gap!r} inconsistent with r_hi={hi!r}")
    if lo == hi:
        return 0.0

    def f(r, d_lo, d_hi):
        return 1.0 / np.sqrt((hi_gap + d_hi) * (1.0 + r) * (1.0 + r * r))

    return _quad(f, lo, hi, tol, endpoint_distances=True)


def arc_c_to_p(alpha: float, tol: Optional[ToleranceConfig] = None) -> float:
    """Lemniscate arc from C, at polar angle beta(alpha), to the vertex P.

    C's distance to the node is passed to the quadrature separately: near
    alpha = pi/4 it is far below the float spacing at pi/4, and the arc
    depends on it through a square root.
    """
    beta = beta_of_alpha(alpha)
    return lemniscate_arc_theta(0.0, beta, tol, hi_gap=beta_gap_of_alpha(alpha))


def squircle_sector_area(alpha: float, tol: Optional[ToleranceConfig] = None) -> float:
    """Area of the squircle sector between the positive x-axis and angle alpha.

    Uses the cos form a = (1/sqrt 2) * integral of 1/sqrt(1 + cos^2 2 theta),
    alpha in [0, pi/2].
    """
    alpha = _check("alpha", alpha, 0.0, HALF_PI)
    if alpha == 0.0:
        return 0.0

    def f(theta):
        c = np.cos(2.0 * theta)
        return 1.0 / np.sqrt(1.0 + c * c)

    return _quad(f, 0.0, alpha, tol) / _SQRT2


def slope_area_integral(slope: float, tol: Optional[ToleranceConfig] = None) -> float:
    """Integral of dv / sqrt(1 + v^4) from 0 to `slope` (which may be +inf).

    This is twice the squircle sector area up to the ray of that slope, and
    the defining integral of the hyperbolic lemniscate sine.  The range past
    1 is folded back with v -> 1/v, which keeps every piece on a short
    interval.
    """
    slope = float(slope)
    if not slope >= 0:
        raise DomainError(f"slope={slope!r} must be nonnegative")
    if slope == 0.0:
        return 0.0
    f = lambda v: 1.0 / np.sqrt(1.0 + v ** 4)
    if slope <= 1.0:
        return _quad(f, 0.0, slope, tol)
    head = _quad(f, 0.0, 1.0, tol)
    if math.isinf(slope):
        return 2.0 * head
    return 2.0 * head - _quad(f, 0.0, 1.0 / slope, tol)


def squircle_sector_area_tan(alpha: float, tol: Optional[ToleranceConfig] = None) -> float:
    """Same area as squircle_sector_area, from the tan form: half of
    slope_area_integral(tan alpha).  alpha = pi/2 uses the improper integral.
    """
    alpha = _check("alpha", alpha, 0.0, HALF_PI)
    if alpha == 0.0:
        return 0.0
    slope = math.inf if alpha >= HALF_PI else math.tan(alpha)
    return 0.5 * slope_area_integral(slope, tol)


# --------------------------------------------------------------------------- #
#  Couplings between B, D and the slope T
# --------------------------------------------------------------------------- #

def siegel_R_of_T(T: float) -> float:
    """R = sqrt(2) T / sqrt(1 + T^4), the substitution relating the lemniscate
    arc integral to the slope integral."""
    T = _check("T", T, 0.0, 1.0)
    return _SQRT2 * T / math.sqrt(1.0 + T ** 4)


def d_of_b(R: float) -> float:
    """OD = sqrt((1 - R^4) / (1 + R^4)) for OB = R in [0, 1]."""
    R = _check("R", R, 0.0, 1.0)
    R2 = R * R
    # 1 - R is exact for R >= 1/2, so the factored form has no cancellation.
    return math.sqrt((1.0 - R) * (1.0 + R) * (1.0 + R2) / (1.0 + R2 * R2))


def _sin_2theta(theta: float) -> float:
    """sin(2 theta) for theta in [0, pi/4], exact one at QUARTER_PI."""
    if theta > 0.5 * QUARTER_PI:
        return math.cos(2.0 * (QUARTER_PI - theta))
    return math.sin(2.0 * theta)


def d_of_alpha(alpha: float) -> float:
    """d_of_b(lemniscate_r(alpha)) without rounding OB first.

    With OB^2 = cos 2 alpha, 1 - OB^4 = sin^2 2 alpha, so OD =
    sin 2 alpha / sqrt(1 + cos^2 2 alpha) keeps full relative precision as
    alpha -> 0, where OB -> 1 and the rounded OB would lose most digits.
    """
    alpha = _check("alpha", alpha, 0.0, QUARTER_PI)
    c = _cos_2theta(alpha)
    return min(_sin_2theta(alpha) / math.sqrt(1.0 + c * c), 1.0)


def d_gap_of_alpha(alpha: float) -> float:
    """1 - d_of_alpha(alpha) = 2 c^2 / (q (q + s)), c = cos 2 alpha,
    s = sin 2 alpha, q = sqrt(1 + c^2); exact as D approaches the vertex."""
    alpha = _check("alpha", alpha, 0.0, QUARTER_PI)
    c = _cos_2theta(alpha)
    q = math.sqrt(1.0 + c * c)
    return 2.0 * c * c / (q * (q + _sin_2theta(alpha)))


def tan_alpha_of_R(R: float) -> float:
    """Slope y/x of the lemniscate point at radius R."""
    R = _check("R", R, 0.0, 1.0)
    R2 = R * R
    return math.sqrt((1.0 - R2) / (1.0 + R2))
