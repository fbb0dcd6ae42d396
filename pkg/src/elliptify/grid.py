"""Diagnostic grid diagrams.

Two pictures per mapping: the Cartesian grid of the square pushed into the
disc, and a polar grid (rings and spokes) of the disc pulled back into the
square.  Drawings are plain polyline collections that serialise to SVG.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ParamError
from .mappings import Kind, Mapping, as_mapping, continuum_value, disc_to_square, modulator, square_to_disc

__all__ = [
    "OPEN_MARGIN",
    "Polyline",
    "VectorDrawing",
    "grid_residual",
    "render_polar_grid_in_square",
    "render_square_grid_in_disc",
    "to_svg",
]

# open mappings are drawn on [-(1 - OPEN_MARGIN), 1 - OPEN_MARGIN] to stay off the rims
OPEN_MARGIN = 1e-3

_COLORS = {
    "frame": "#000000",
    "vertical": "#c0392b",
    "horizontal": "#2471a3",
    "ring": "#c0392b",
    "spoke": "#2471a3",
}


@dataclass(frozen=True, eq=False)
class Polyline:
    """Vertices (n, 2) of one drawn curve; ``role`` says what it is the image of."""

    points: np.ndarray
    role: str
    level: float = 0.0
    closed: bool = False


@dataclass
class VectorDrawing:
    """Polylines in unit coordinates ([-1, 1] on both axes, y up)."""

    title: str
    space: str  # "disc" or "square": where the vertices live
    polylines: list = field(default_factory=list)

    def by_role(self, role: str) -> list:
        return [p for p in self.polylines if p.role == role]

    def vertices(self) -> np.ndarray:
        pts = [p.points for p in self.polylines if p.role != "frame"]
        return np.concatenate(pts) if pts else np.zeros((0, 2))


def _limit(m: Mapping) -> float:
    return 1.0 - OPEN_MARGIN if m.is_open else 1.0


def _circle(samples: int) -> np.ndarray:
    th = np.linspace(0.0, 2.0 * np.pi, samples)
    return np.column_stack([np.cos(th), np.sin(th)])


def _square() -> np.ndarray:
    return np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]])


def render_square_grid_in_disc(
    mapping, n_lines: int = 11, samples_per_line: int = 101, *, numeric_fallback: bool = True, config=None
) -> VectorDrawing:
    """Images of the lines x = c and y = c under the square-to-disc map.

    ``n_lines`` evenly spaced values of c are used in each direction,
    including both edges of the (possibly inset) square.
    """
    m = as_mapping(mapping)
    if n_lines < 2:
        raise ParamError(f"n_lines must be >= 2, got {n_lines}")
    if samples_per_line < 2:
        raise ParamError(f"samples_per_line must be >= 2, got {samples_per_line}")
    lim = _limit(m)
    levels = np.linspace(-lim, lim, n_lines)
    s = np.linspace(-lim, lim, samples_per_line)
    cc, ss = np.meshgrid(levels, s, indexing="ij")

    drawing = VectorDrawing(m.title, "disc", [Polyline(_circle(4 * samples_per_line + 1), "frame", 1.0, True)])
    u, v = square_to_disc(m, cc, ss, numeric_fallback=numeric_fallback, config=config)
    for i, c in enumerate(levels):
        drawing.polylines.append(Polyline(np.column_stack([u[i], v[i]]), "vertical", float(c)))
    u, v = square_to_disc(m, ss.T, cc.T, numeric_fallback=numeric_fallback, config=config)
    for i, c in enumerate(levels):
        drawing.polylines.append(Polyline(np.column_stack([u[:, i], v[:, i]]), "horizontal", float(c)))
    return drawing


def render_polar_grid_in_square(
    mapping, n_rings: int = 8, n_spokes: int = 16, samples: int = 181, *, numeric_fallback: bool = True, config=None
) -> VectorDrawing:
    """Images of concentric circles and radial spokes under disc-to-square.

    Rings sit at radii t = k / n_rings (k = 1..n_rings, the outermost pulled
    in for open mappings); spokes run from the centre to the rim.
    """
    m = as_mapping(mapping)
    if n_rings < 1 or n_spokes < 1:
        raise ParamError("need at least one ring and one spoke")
    if samples < 3:
        raise ParamError(f"samples must be >= 3, got {samples}")
    lim = _limit(m)
    radii = np.minimum(np.arange(1, n_rings + 1) / n_rings, lim)
    th = np.linspace(0.0, 2.0 * np.pi, samples)
    # close each ring on its first vertex exactly
    cos_t, sin_t = np.cos(th), np.sin(th)
    cos_t[-1], sin_t[-1] = cos_t[0], sin_t[0]

    drawing = VectorDrawing(m.title, "square", [Polyline(_square(), "frame", 1.0, True)])
    rr, ct = np.meshgrid(radii, cos_t, indexing="ij")
    _, st = np.meshgrid(radii, sin_t, indexing="ij")
    x, y = disc_to_square(m, rr * ct, rr * st, numeric_fallback=numeric_fallback, config=config)
    for i, t in enumerate(radii):
        drawing.polylines.append(Polyline(np.column_stack([x[i], y[i]]), "ring", float(t), True))

    angles = 2.0 * np.pi * np.arange(n_spokes) / n_spokes
    r = np.linspace(0.0, lim, samples)
    aa, rs = np.meshgrid(angles, r, indexing="ij")
    x, y = disc_to_square(m, rs * np.cos(aa), rs * np.sin(aa), numeric_fallback=numeric_fallback, config=config)
    for i, a in enumerate(angles):
        drawing.polylines.append(Polyline(np.column_stack([x[i], y[i]]), "spoke", float(a)))
    return drawing


def _line_residual(kind: Kind, role: str, c: float, pts: np.ndarray) -> Optional[np.ndarray]:
    """Residual of the conic each grid line lands on, where one is known."""
    if abs(c) < 1e-12:
        return None
    a, b = pts[:, 0], pts[:, 1]
    if role == "horizontal":
        a, b = b, a
    if kind is Kind.ELLIPTICAL_GRID:
        return a * a / (c * c) + b * b / (2.0 - c * c) - 1.0
    if kind is Kind.SQUELCHED_GRID:
        return a * a / (c * c) + b * b - 1.0
    return None


def grid_residual(drawing: VectorDrawing, mapping) -> Optional[float]:
    """Largest contour-identity residual over a rendered drawing.

    Polar drawings: every ring of radius r must land on the squircle where
    modulator(t)^2 = r^2, t^2 being the kind's continuum value (for
    FG-Squircular this is x^2 + y^2 - x^2 y^2 = r^2).  Cartesian drawings:
    grid lines of the Elliptical and Squelched Grids must land on their
    ellipses.  Returns None when the kind has no such identity.
    """
    m = as_mapping(mapping)
    worst = None
    for line in drawing.polylines:
        res = None
        if line.role == "ring" and m.has_continuum:
            x, y = line.points[:, 0], line.points[:, 1]
            t = np.sqrt(continuum_value(m, x, y))
            res = modulator(m, t) ** 2 - line.level**2
        elif line.role in ("vertical", "horizontal"):
            res = _line_residual(m.kind, line.role, line.level, line.points)
        if res is not None:
            val = float(np.max(np.abs(res)))
            worst = val if worst is None else max(worst, val)
    return worst


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def to_svg(drawing: VectorDrawing, size: int = 512, margin: int = 16, stroke_width: float = 1.0) -> str:
    """Serialise to an SVG 1.1 document; output is byte-stable for equal input."""
    if size <= 2 * margin:
        raise ParamError("size must exceed twice the margin")
    span = (size - 2 * margin) / 2.0

    def path(pts: np.ndarray, closed: bool) -> str:
        px = margin + (pts[:, 0] + 1.0) * span
        py = margin + (1.0 - pts[:, 1]) * span
        coords = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(px, py))
        tag = "polygon" if closed else "polyline"
        return f'<{tag} points="{coords}"/>'

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{drawing.title} ({drawing.space})</title>",
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    for role in ("frame", "vertical", "horizontal", "ring", "spoke"):
        lines = drawing.by_role(role)
        if not lines:
            continue
        width = stroke_width * (1.5 if role == "frame" else 1.0)
        out.append(
            f'<g id="{role}" fill="none" stroke="{_COLORS[role]}" stroke-width="{width:g}" '
            'stroke-linejoin="round">'
        )
        out.extend(path(p.points, p.closed) for p in lines)
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
