"""
Static SVG reconstructions of the two squircle/lemniscate configurations.

fig1: point B on the lemniscate, its radial projection B' on the squircle,
      C with OC = OB^2, and the lemniscate arc from C to the vertex P bold.
fig3: same B and B', D with OD^2 = (1 - OB^4)/(1 + OB^4), arc from O to D bold.

The octant sector OPB' is shaded together with all eight of its images under
the symmetries of the squircle, so the shaded area is A = 8a and the bold
arcs (four copies) have total length L = 4l.

Geometry is built first as a FigureModel in curve coordinates, which tests
can check against the curve equations, then mapped to pixels with
[-1.3, 1.3]^2 filling the canvas and y pointing up.  Output is plain text
with fixed-precision numbers, so identical inputs give identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from . import curves
from .curves import QUARTER_PI
from .numerics import DomainError

Point = Tuple[float, float]

VIEW_HALF_WIDTH = 1.3
VARIANTS = ("fig1", "fig3")

_OCTANT_MAPS = (
    lambda x, y: (x, y),
    lambda x, y: (y, x),
    lambda x, y: (-y, x),
    lambda x, y: (-x, y),
    lambda x, y: (-x, -y),
    lambda x, y: (-y, -x),
    lambda x, y: (y, -x),
    lambda x, y: (x, -y),
)
_QUADRANT_MAPS = (
    lambda x, y: (x, y),
    lambda x, y: (-x, y),
    lambda x, y: (-x, -y),
    lambda x, y: (x, -y),
)


@dataclass(frozen=True)
class FigureSpec:
    alpha: float
    variant: str = "fig1"
    width_px: int = 600
    height_px: int = 600

    def __post_init__(self):
        if not 0.0 <= self.alpha <= QUARTER_PI:
            raise DomainError(f"alpha={self.alpha!r} outside [0, π/4]")
        if self.variant not in VARIANTS:
            raise DomainError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.width_px < 100 or self.height_px < 100:
            raise DomainError("figure dimensions must be at least 100 px")


@dataclass
class FigureModel:
    squircle: List[Point]
    lemniscate_lobes: List[List[Point]]
    sectors: List[List[Point]]
    bold_arcs: List[List[Point]]
    labels: Dict[str, Point] = field(default_factory=dict)


def _squircle_loop(per_octant: int = 64) -> List[Point]:
    thetas = np.linspace(0.0, QUARTER_PI, per_octant + 1)
    octant = [tuple(curves.radial_projection_to_squircle(float(t))) for t in thetas]
    # Walk the octants counterclockwise, reversing every other one so the
    # pieces join end to end.
    loop: List[Point] = []
    for k, m in enumerate(_OCTANT_MAPS):
        piece = [m(x, y) for x, y in octant]
        if k % 2:
            piece.reverse()
        loop.extend(piece if not loop else piece[1:])
    return loop


def _lemniscate_quarter(per_quarter: int) -> List[Point]:
    """First-quadrant lemniscate from O to P, denser near the vertex."""
    phis = np.linspace(0.0, 0.5 * math.pi, per_quarter + 1)
    pts = [tuple(curves.lemniscate_point_from_r(min(math.sin(float(p)), 1.0))) for p in phis]
    pts[-1] = (1.0, 0.0)
    return pts


def _lemniscate_lobes(per_quarter: int = 256) -> List[List[Point]]:
    q = _lemniscate_quarter(per_quarter)
    right = q + [(x, -y) for x, y in reversed(q)][1:]
    left = [(-x, y) for x, y in right]
    return [right, left]


def _sector(alpha: float, n: int = 96) -> List[Point]:
    thetas = np.linspace(0.0, alpha, n + 1)
    rim = [tuple(curves.radial_projection_to_squircle(float(t))) for t in thetas]
    return [(0.0, 0.0)] + rim


def build_model(spec: FigureSpec) -> FigureModel:
    alpha = spec.alpha
    r_b = curves.lemniscate_r(alpha)
    b = (r_b * math.cos(alpha), r_b * math.sin(alpha))
    b_prime = tuple(curves.radial_projection_to_squircle(alpha))
    labels: Dict[str, Point] = {"O": (0.0, 0.0), "P": (1.0, 0.0), "B": b, "B′": b_prime}

    if spec.variant == "fig1":
        beta = curves.beta_of_alpha(alpha)
        labels["C"] = tuple(curves.lemniscate_point_at_angle(beta))
        arc = [tuple(curves.lemniscate_point_at_angle(float(t)))
               for t in np.linspace(beta, 0.0, 129)] if beta > 0 else []
    else:
        r_d = curves.d_of_b(r_b)
        labels["D"] = tuple(curves.lemniscate_point_from_r(r_d))
        arc = [tuple(curves.lemniscate_point_from_r(float(r)))
               for r in np.linspace(0.0, r_d, 129)] if r_d > 0 else []

    sectors = []
    if alpha > 0:
        base = _sector(alpha)
        sectors = [[m(x, y) for x, y in base] for m in _OCTANT_MAPS]
    bold = [[m(x, y) for x, y in arc] for m in _QUADRANT_MAPS] if arc else []

    return FigureModel(
        squircle=_squircle_loop(),
        lemniscate_lobes=_lemniscate_lobes(),
        sectors=sectors,
        bold_arcs=bold,
        labels=labels,
    )


# --------------------------------------------------------------------------- #
#  SVG output
# --------------------------------------------------------------------------- #

class _Canvas:
    def __init__(self, width: int, height: int):
        self.width, self.height = width, height

    def px(self, x: float, y: float) -> Tuple[float, float]:
        span = 2.0 * VIEW_HALF_WIDTH
        return (
            (x + VIEW_HALF_WIDTH) / span * self.width,
            (VIEW_HALF_WIDTH - y) / span * self.height,
        )

    def points(self, pts) -> str:
        return " ".join("%.3f,%.3f" % self.px(x, y) for x, y in pts)


def render_svg(model: FigureModel, spec: FigureSpec) -> str:
    c = _Canvas(spec.width_px, spec.height_px)
    w, h = spec.width_px, spec.height_px
    title = "Arc from C to P" if spec.variant == "fig1" else "Arc from O to D"
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f"<title>{title} (alpha={spec.alpha:.17g})</title>",
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
        '<g id="sector" fill="#9ecae1" fill-opacity="0.7" stroke="none">',
    ]
    for poly in model.sectors:
        out.append(f'<polygon points="{c.points(poly)}"/>')
    out.append("</g>")
    out.append(
        f'<polyline id="squircle" fill="none" stroke="#08519c" stroke-width="1.5" '
        f'points="{c.points(model.squircle)}"/>'
    )
    for k, lobe in enumerate(model.lemniscate_lobes):
        out.append(
            f'<polyline id="lemniscate-{k}" fill="none" stroke="#444444" stroke-width="1.2" '
            f'points="{c.points(lobe)}"/>'
        )
    out.append('<g id="bold-arc" fill="none" stroke="#cb181d" stroke-width="4" stroke-linecap="round">')
    for arc in model.bold_arcs:
        out.append(f'<polyline points="{c.points(arc)}"/>')
    out.append("</g>")
    x1, y1 = c.px(*model.labels["O"])
    x2, y2 = c.px(*model.labels["B′"])
    out.append(
        f'<line id="ray" x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
        'stroke="#000000" stroke-width="0.8" stroke-dasharray="4 3"/>'
    )
    out.append('<g id="labels" font-family="serif" font-size="16" fill="#000000">')
    for name, (x, y) in model.labels.items():
        u, v = c.px(x, y)
        out.append(f'<circle cx="{u:.3f}" cy="{v:.3f}" r="3"/>')
        out.append(f'<text x="{u + 5:.3f}" y="{v - 5:.3f}">{name}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def figure_svg(spec: FigureSpec) -> str:
    return render_svg(build_model(spec), spec)
