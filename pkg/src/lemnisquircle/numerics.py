"""
Numerical substrate: double-exponential quadrature, safeguarded root finding,
the arithmetic-geometric mean and a Lanczos gamma function.

Integrands are evaluated on numpy arrays of nodes.  Anything written with
numpy ufuncs works unchanged; a callable returning a scalar is broadcast.

Endpoint singularities
----------------------
A node that sits 1e-17 away from an endpoint cannot be told apart from the
endpoint once it has been rounded to a float, so an integrand that blows up
like ``(b - x)**-0.5`` loses roughly ``2*sqrt(eps)`` worth of mass if it only
ever sees ``x``.  Pass ``endpoint_distances=True`` and the integrand is called
as ``f(x, d_lo, d_hi)`` where ``d_lo = x - lo`` and ``d_hi = hi - x`` are
computed directly from the transformation, to full relative precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple, Union

import numpy as np

__all__ = [
    "NumericsError",
    "DomainError",
    "NonConvergence",
    "BracketError",
    "Interval",
    "QuadratureResult",
    "ToleranceConfig",
    "RootResult",
    "integrate",
    "solve_monotone",
    "agm",
    "gamma",
]

_HALF_PI = 0.5 * math.pi

# Largest |t| for the finite-interval rule: beyond it exp(-2*(pi/2)*sinh t)
# underflows and the node coincides with the endpoint even in distance form.
_TANH_SINH_TMAX = 6.2
# exp-sinh on [lo, inf): lower end where the distance to lo underflows, upper
# end where x ~ 1e83 (ample for integrands decaying at least like x**-2).
_EXP_SINH_TMIN = -6.7
_EXP_SINH_TMAX = 5.5


class NumericsError(ArithmeticError):
    """Base class for failures raised by this package."""


class DomainError(NumericsError, ValueError):
    """An argument lies outside the admissible domain."""


class BracketError(NumericsError, ValueError):
    """The root bracket does not enclose a sign change."""


class NonConvergence(NumericsError):
    """An iteration ran out of budget.

    ``best`` holds the best estimate produced so far (a QuadratureResult or a
    RootResult) so callers can still report partial data.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi) or math.isinf(lo) or hi == -math.inf:
            raise DomainError(f"interval endpoints must be finite (hi may be +inf): [{lo}, {hi}]")
        if lo > hi:
            raise DomainError(f"empty interval with lo > hi: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def improper(self) -> bool:
        return self.hi == math.inf


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class ToleranceConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_levels: int = 12

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_levels < 1:
            raise DomainError("max_levels must be at least 1")

    def target(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_TOLERANCE = ToleranceConfig()


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int


# --------------------------------------------------------------------------- #
#  Node tables
# --------------------------------------------------------------------------- #

def _level_abscissae(level: int, tmin: float, tmax: float) -> np.ndarray:
    """Values of t added at `level` (step 2**-level), within [tmin, tmax]."""
    h = 2.0 ** -level
    kmin = math.ceil(tmin / h)
    kmax = math.floor(tmax / h)
    k = np.arange(kmin, kmax + 1)
    if level > 0:
        k = k[k % 2 == 1]
    return k * h


def _frozen(*arrays):
    for a in arrays:
        a.setflags(write=False)
    return arrays


@lru_cache(maxsize=None)
def _tanh_sinh_nodes(level: int):
    """Nodes for the [-1, 1] rule, as (t, c, w) with c = 1 - |u|.

    ``c`` is the distance from the node to the nearer end of [-1, 1]; it is
    computed as 2 e / (1 + e) with e = exp(-2 s) so it keeps full relative
    precision all the way down to underflow.  The sign of ``t`` says which
    end is nearer.  ``w`` omits the step factor h.
    """
    t = _level_abscissae(level, -_TANH_SINH_TMAX, _TANH_SINH_TMAX)
    s = _HALF_PI * np.sinh(np.abs(t))
    e = np.exp(-2.0 * s)
    c = 2.0 * e / (1.0 + e)
    w = _HALF_PI * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2
    keep = c > 0.0
    return _frozen(t[keep], c[keep], w[keep])


@lru_cache(maxsize=None)
def _exp_sinh_nodes(level: int):
    """Nodes for [0, inf) as (x, w), x = exp(pi/2 sinh t)."""
    t = _level_abscissae(level, _EXP_SINH_TMIN, _EXP_SINH_TMAX)
    x = np.exp(_HALF_PI * np.sinh(t))
    w = _HALF_PI * np.cosh(t) * x
    keep = x > 0.0
    return _frozen(x[keep], w[keep])


def _coerce_interval(interval) -> Interval:
    if isinstance(interval, Interval):
        return interval
    lo, hi = interval
    return Interval(lo, hi)


def _evaluate(f, args, n):
    with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
        y = f(*args)
    y = np.broadcast_to(np.asarray(y, dtype=float), (n,))
    return y


def _finite_level(f, lo, hi, level, endpoint_distances):
    half = 0.5 * (hi - lo)
    t, c, w = _tanh_sinh_nodes(level)
    near = half * c
    far = half * (2.0 - c)
    upper = t > 0
    d_lo = np.where(upper, far, near)
    d_hi = np.where(upper, near, far)
    x = np.where(upper, hi - d_hi, lo + d_lo)
    if endpoint_distances:
        mask = (d_lo > 0.0) & (d_hi > 0.0)
        args = (x[mask], d_lo[mask], d_hi[mask])
    else:
        # Transformed nodes must stay strictly inside; rounding may push the
        # outermost ones onto an endpoint.
        mask = (x > lo) & (x < hi)
        args = (x[mask],)
    y = _evaluate(f, args, int(mask.sum()))
    if not np.all(np.isfinite(y)):
        bad = args[0][~np.isfinite(y)][0]
        raise DomainError(f"integrand is not finite at interior abscissa x={bad!r}")
    return half * float(np.dot(w[mask], y)), y.size


def _improper_level(f, lo, level, endpoint_distances):
    x0, w = _exp_sinh_nodes(level)
    x = lo + x0
    if endpoint_distances:
        args = (x, x0, np.full_like(x, math.inf))
    else:
        mask = x > lo
        x, w = x[mask], w[mask]
        args = (x,)
    y = _evaluate(f, args, x.size)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise DomainError(f"integrand is not finite at interior abscissa x={bad!r}")
    return float(np.dot(w, y)), y.size


def integrate(
    f: Callable,
    interval: Union[Interval, Tuple[float, float]],
    tol: Optional[ToleranceConfig] = None,
    *,
    endpoint_distances: bool = False,
) -> QuadratureResult:
    """Integrate `f` over `interval` by tanh-sinh (exp-sinh for hi = +inf).

    The step size is halved each level, reusing every earlier evaluation,
    until two successive levels agree within
    ``max(abs_tol, rel_tol * |value|)``.  At least three levels are always
    taken so a coarse, accidentally-flat pair cannot stop the refinement.

    Parameters
    ----------
    f : callable
        Vectorised integrand, ``f(x)`` or ``f(x, d_lo, d_hi)`` when
        `endpoint_distances` is true.
    interval : Interval or (lo, hi)
    tol : ToleranceConfig, optional

    Returns
    -------
    QuadratureResult
        ``error_estimate`` is the difference between the last two levels,
        which over-estimates the error of the final one for this scheme.

    Raises
    ------
    DomainError
        lo > hi, or `f` produced a non-finite value at an interior node.
    NonConvergence
        `max_levels` refinements did not meet the tolerance; ``.best``
        carries the final estimate.
    """
    iv = _coerce_interval(interval)
    tol = tol or DEFAULT_TOLERANCE
    if iv.lo == iv.hi:
        return QuadratureResult(0.0, 0.0, 0)

    if iv.improper:
        step = lambda level: _improper_level(f, iv.lo, level, endpoint_distances)
    else:
        step = lambda level: _finite_level(f, iv.lo, iv.hi, level, endpoint_distances)

    total, evaluations = step(0)
    estimate = total
    previous = None
    diff = math.inf
    max_levels = max(tol.max_levels, 3)
    for level in range(1, max_levels + 1):
        part, n = step(level)
        total += part
        evaluations += n
        previous, estimate = estimate, total * 2.0 ** -level
        diff = abs(estimate - previous)
        if level >= 3 and diff <= tol.target(estimate):
            return QuadratureResult(estimate, diff, evaluations)
    best = QuadratureResult(estimate, diff, evaluations)
    raise NonConvergence(
        f"quadrature did not converge in {max_levels} levels (last change {diff:.3e})",
        best=best,
    )


# --------------------------------------------------------------------------- #
#  Root finding
# --------------------------------------------------------------------------- #

def solve_monotone(
    g: Callable[[float], float],
    bracket: Union[Interval, Tuple[float, float]],
    tol: float,
    *,
    dg: Optional[Callable[[float], float]] = None,
    x0: Optional[float] = None,
    max_iter: int = 200,
) -> RootResult:
    """Find x in `bracket` with |g(x)| <= tol for monotone `g`.

    Newton steps when `dg` is given, secant steps otherwise.  A step that
    would leave the current bracket, or that is not at least halving the
    previous step, is replaced by bisection, so the iterate never escapes
    the bracket and the iteration cannot stall.
    """
    iv = _coerce_interval(bracket)
    a, b = iv.lo, iv.hi
    ga, gb = float(g(a)), float(g(b))
    if abs(ga) <= tol:
        return RootResult(a, ga, 0)
    if abs(gb) <= tol:
        return RootResult(b, gb, 0)
    if math.isnan(ga) or math.isnan(gb) or ga * gb > 0:
        raise BracketError(f"no sign change on [{a}, {b}]: g(lo)={ga}, g(hi)={gb}")
    lo_negative = ga < 0

    if x0 is None:
        x, gx = (a, ga) if abs(ga) < abs(gb) else (b, gb)
    else:
        x = min(max(float(x0), a), b)
        gx = ga if x == a else gb if x == b else float(g(x))
    x_prev, g_prev = (b, gb) if x == a else (a, ga)
    best = RootResult(x, gx, 0)
    dx = dx_old = b - a

    for iteration in range(1, max_iter + 1):
        if abs(gx) <= tol:
            return RootResult(x, gx, iteration - 1)
        if (gx < 0) == lo_negative:
            a, ga = x, gx
        else:
            b, gb = x, gx

        if dg is not None:
            slope = float(dg(x))
        else:
            slope = (gx - g_prev) / (x - x_prev) if x != x_prev else 0.0
        dx_old = dx
        step = x - gx / slope if slope != 0 and math.isfinite(slope) else math.nan
        if not a < step < b or abs(2.0 * gx) > abs(dx_old * slope):
            step = a + 0.5 * (b - a)
        if step <= a or step >= b:
            # Bracket has collapsed to adjacent floats.
            break
        dx = abs(step - x)
        x_prev, g_prev = x, gx
        x = step
        gx = float(g(x))
        if abs(gx) <= abs(best.residual):  # ties: later iterates sit in a smaller bracket
            best = RootResult(x, gx, iteration)

    raise NonConvergence(
        f"root not within tolerance {tol:g} after {max_iter} iterations "
        f"(best residual {best.residual:.3e} at x={best.root!r})",
        best=best,
    )


# --------------------------------------------------------------------------- #
#  AGM and gamma
# --------------------------------------------------------------------------- #

def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive numbers."""
    a, b = float(a), float(b)
    if not (a > 0 and b > 0) or math.isinf(a) or math.isinf(b):
        raise DomainError(f"agm needs positive finite arguments, got {a}, {b}")
    for _ in range(64):
        if abs(a - b) <= 2.0 * math.ulp(max(a, b)):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def gamma(x: float) -> float:
    """Gamma function for x > 0.

    Arguments below 1/2 are shifted up with Gamma(x) = Gamma(x + 1) / x
    rather than reflected, so only the positive axis is covered.
    """
    x = float(x)
    if not x > 0 or math.isinf(x):
        raise DomainError(f"gamma is implemented for finite x > 0 only, got {x}")
    scale = 1.0
    while x < 0.5:
        scale /= x
        x += 1.0
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    # t**(z + 0.5) overflows well before gamma itself does; split the power.
    p = t ** (0.5 * (z + 0.5))
    return scale * _SQRT_TWO_PI * p * (p * math.exp(-t)) * acc
