"""
Lemniscate constant and functions, each obtained by inverting an arc-length
or area integral from :mod:`lemnisquircle.curves`.

sl(u)     radius of the lemniscate point at arc length u from the origin
cl(u)     radius at arc length u from the vertex (1, 0); cl(u) = sl(varpi/2 - u)
slh(t)    inverse of t = integral_0^s dv / sqrt(1 + v^4)
cos4, sin4  squircle point whose sector from the x-axis has area t/2

Inversions are safeguarded Newton iterations whose derivative is the
integrand itself.  Arguments within a quarter period of a singular or
near-singular end are rewritten in terms of their distance to that end,
where the inverse is well conditioned.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from . import curves
from .numerics import DomainError, NonConvergence, ToleranceConfig, gamma, integrate, solve_monotone

__all__ = [
    "Constants",
    "varpi",
    "constants",
    "sl",
    "cl",
    "extend_sl",
    "extend_cl",
    "slh",
    "slh_near_pole",
    "cos4",
    "sin4",
    "tan4",
    "cl_duplication",
    "SLH_GUARD",
]

_SQRT2 = math.sqrt(2.0)
# Relative accuracy asked of every integral that feeds an inversion.
_INNER_TOL = ToleranceConfig(abs_tol=1e-300, rel_tol=1e-14)
SLH_GUARD = 1e-6
# A point computed as pole - guard by the caller may round to just inside.
_GUARD_SLACK = 1.0 - 1e-9

_varpi_lock = threading.Lock()
_varpi_value = None


def varpi() -> float:
    """The lemniscate constant, twice the quarter-lobe arc length."""
    global _varpi_value
    if _varpi_value is None:
        with _varpi_lock:
            if _varpi_value is None:
                _varpi_value = 2.0 * curves.lemniscate_arc_radial(0.0, 1.0, _INNER_TOL)
    return _varpi_value


@dataclass(frozen=True)
class Constants:
    varpi: float
    gamma_quarter: float
    squircle_area: float


def constants() -> Constants:
    w = varpi()
    return Constants(varpi=w, gamma_quarter=gamma(0.25), squircle_area=_SQRT2 * w)


def _invert(g, bracket, target, dg):
    """Root of the monotone residual g on bracket.

    Newton is driven to ~1e-15 relative to the target, well past the
    1e-12 contract, because sl and slh feed identities that compound their
    errors.  If quadrature noise stops it short, the best iterate is kept
    provided it still meets the contract.
    """
    tight = max(1e-15 * target, 1e-300)
    try:
        return solve_monotone(g, bracket, tight, dg=dg).root
    except NonConvergence as exc:
        best = exc.best
        if best is not None and abs(best.residual) <= 1e-12 * min(1.0, target):
            return best.root
        raise


# --------------------------------------------------------------------------- #
#  sl and cl
# --------------------------------------------------------------------------- #

# Below this the odd series sl(u) = u - u^5/10 + O(u^9) and
# slh(t) = t + t^5/10 + O(t^9) are exact to rounding.
_SERIES_LIMIT = 1e-4


def _sl_from_origin(u: float) -> float:
    """sl(u) for 0 <= u <= varpi/4, solving arc(0, s) = u."""
    if u < _SERIES_LIMIT:
        return u - u ** 5 / 10.0
    return _invert(
        lambda s: curves.lemniscate_arc_radial(0.0, s, _INNER_TOL) - u,
        (0.0, min(u, 1.0)),
        u,
        dg=lambda s: 1.0 / math.sqrt(1.0 - s ** 4),
    )


def _vertex_arc(w: float) -> float:
    """Arc length from radius 1 - w^2 out to the vertex.

    Substituting r = 1 - q^2 turns 1/sqrt(1 - r^4) into the smooth integrand
    2 / sqrt((2 - q^2)(1 + (1 - q^2)^2)).
    """
    if w == 0.0:
        return 0.0

    def f(q):
        q2 = q * q
        r = 1.0 - q2
        return 2.0 / np.sqrt((2.0 - q2) * (1.0 + r * r))

    return integrate(f, (0.0, w), _INNER_TOL).value


def _sl_from_vertex(gap: float) -> float:
    """sl(varpi/2 - gap) for 0 <= gap <= varpi/4, i.e. cl(gap).

    Solved for w = sqrt(1 - s) where the arc from the vertex is smooth and
    has slope near 1, so small gaps keep full relative precision.
    """
    if gap == 0.0:
        return 1.0
    w = _invert(
        lambda w: _vertex_arc(w) - gap,
        (0.0, min(gap, 1.0)),
        gap,
        dg=lambda w: 2.0 / math.sqrt((2.0 - w * w) * (1.0 + (1.0 - w * w) ** 2)),
    )
    return 1.0 - w * w


def _check_quarter_domain(name: str, u: float) -> float:
    u = float(u)
    half = 0.5 * varpi()
    if not 0.0 <= u <= half:
        raise DomainError(f"{name}: argument {u!r} outside domain [0, ϖ/2] = [0, {half!r}]")
    return u


def sl(u: float) -> float:
    """Lemniscate sine on [0, varpi/2]."""
    u = _check_quarter_domain("sl", u)
    half = 0.5 * varpi()
    if u <= 0.5 * half:
        return _sl_from_origin(u)
    return _sl_from_vertex(half - u)


def cl(u: float) -> float:
    """Lemniscate cosine on [0, varpi/2], defined as sl(varpi/2 - u)."""
    u = _check_quarter_domain("cl", u)
    half = 0.5 * varpi()
    if u >= 0.5 * half:
        return _sl_from_origin(half - u)
    return _sl_from_vertex(u)


def extend_sl(u: float) -> float:
    """sl on the whole real line: odd, sl(varpi - u) = sl(u), period 2 varpi."""
    u = float(u)
    if not math.isfinite(u):
        raise DomainError(f"extend_sl: non-finite argument {u!r}")
    w = varpi()
    u = math.remainder(u, 2.0 * w)  # now in [-w, w]
    if u < 0:
        return -extend_sl(-u)
    if u > 0.5 * w:
        u = w - u
    return sl(min(u, 0.5 * w))


def extend_cl(u: float) -> float:
    """cl on the whole real line via cl(u) = sl(varpi/2 - u)."""
    return extend_sl(0.5 * varpi() - float(u))


def cl_duplication(u: float) -> float:
    """Right-hand side of the doubling formula for cl, evaluated from cl(u)."""
    c2 = extend_cl(u) ** 2
    den = 1.0 + 2.0 * c2 - c2 * c2
    if abs(den) <= 1e-12:
        raise DomainError(f"cl_duplication: denominator vanishes at u={u!r}")
    return (-1.0 + 2.0 * c2 + c2 * c2) / den


# --------------------------------------------------------------------------- #
#  slh and the squigonometric functions
# --------------------------------------------------------------------------- #

def _slh_small(t: float) -> float:
    """slh(t) for 0 <= t <= varpi/(2 sqrt 2), where the result is <= 1."""
    if t < _SERIES_LIMIT:
        return t + t ** 5 / 10.0
    return _invert(
        lambda s: curves.slope_area_integral(s, _INNER_TOL) - t,
        (t, min(_SQRT2 * t, 1.0)),
        t,
        dg=lambda s: 1.0 / math.sqrt(1.0 + s ** 4),
    )


def slh_near_pole(gap: float, guard: float = SLH_GUARD) -> float:
    """slh(varpi/sqrt(2) - gap), computed from the gap.

    The substitution v -> 1/v maps the tail of the defining integral onto
    its head, so slh(P - g) = 1 / slh(g) with P = varpi/sqrt(2).
    """
    gap = float(gap)
    pole = varpi() / _SQRT2
    if not (guard * _GUARD_SLACK <= gap <= pole):
        raise DomainError(
            f"slh: distance {gap!r} to the pole ϖ/√2 must lie in [{guard!r}, {pole!r}]"
        )
    if gap >= 0.5 * pole:
        return _slh_small(pole - gap)
    return 1.0 / _slh_small(gap)


def slh(t: float, guard: float = SLH_GUARD) -> float:
    """Hyperbolic lemniscate sine on [0, varpi/sqrt(2) - guard]."""
    t = float(t)
    pole = varpi() / _SQRT2
    if not (0.0 <= t and pole - t >= guard * _GUARD_SLACK):
        raise DomainError(
            f"slh: argument {t!r} outside domain [0, ϖ/√2 - {guard:g}] = [0, {pole - guard!r}]"
        )
    if t <= 0.5 * pole:
        return _slh_small(t)
    return 1.0 / _slh_small(pole - t)


def _check_quadrant(name: str, t: float) -> float:
    t = float(t)
    top = varpi() / _SQRT2
    if not 0.0 <= t <= top:
        raise DomainError(f"{name}: argument {t!r} outside domain [0, ϖ/√2] = [0, {top!r}]")
    return t


def _octant_point(t: float):
    """(cos4, sin4) for t in the first octant, from tan alpha = slh(t)."""
    T = _slh_small(t)
    x = (1.0 + T ** 4) ** -0.25
    return x, T * x


def _squig_point(t: float):
    top = varpi() / _SQRT2
    if t <= 0.5 * top:
        return _octant_point(t)
    c, s = _octant_point(top - t)
    return s, c


def cos4(t: float) -> float:
    """Squigonometric cosine on [0, varpi/sqrt(2)]."""
    return _squig_point(_check_quadrant("cos4", t))[0]


def sin4(t: float) -> float:
    """Squigonometric sine on [0, varpi/sqrt(2)]."""
    return _squig_point(_check_quadrant("sin4", t))[1]


def tan4(t: float) -> float:
    t = _check_quadrant("tan4", t)
    c, s = _squig_point(t)
    if c <= 0.0:
        raise DomainError(f"tan4: cos4 vanishes at t={t!r}")
    return s / c
