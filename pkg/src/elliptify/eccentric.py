"""Rectangle <-> ellipse mappings built from the square <-> disc ones.

The rectangle [-a, a] x [-b, b] and its inscribed ellipse share the same
aspect ratio.  Dividing by (a, b) removes the eccentricity, the unit mapping
does the work, and multiplying by (a, b) puts the eccentricity back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParamError
from .mappings import DiscPoint, SquarePoint, as_mapping, disc_to_square, square_to_disc

__all__ = ["EllipsePoint", "RectPoint", "RectSpec", "ellipse_to_rect", "rect_to_ellipse"]

RectPoint = SquarePoint
EllipsePoint = DiscPoint


@dataclass(frozen=True)
class RectSpec:
    """Half-width ``a`` and half-height ``b`` of the rectangle/ellipse pair."""

    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        for name in ("a", "b"):
            val = getattr(self, name)
            if not (isinstance(val, (int, float, np.floating, np.integer)) and math.isfinite(val) and val > 0):
                raise ParamError(f"half-extent {name} must be a positive finite number, got {val!r}")
            object.__setattr__(self, name, float(val))

    @classmethod
    def from_size(cls, width: int, height: int) -> "RectSpec":
        """Spec for an image: a = width / height, b = 1."""
        if width < 1 or height < 1:
            raise ParamError(f"image size must be positive, got {width}x{height}")
        return cls(width / height, 1.0)

    @property
    def aspect(self) -> float:
        return self.a / self.b


def _unit(spec: RectSpec):
    return spec.a == 1.0 and spec.b == 1.0


def rect_to_ellipse(mapping, spec: RectSpec, x0, y0, *, numeric_fallback: bool = True, config=None) -> EllipsePoint:
    """Map rectangle coordinates to ellipse coordinates."""
    m = as_mapping(mapping)
    if _unit(spec):
        return square_to_disc(m, x0, y0, numeric_fallback=numeric_fallback, config=config)
    x = np.asarray(x0, dtype=float) / spec.a
    y = np.asarray(y0, dtype=float) / spec.b
    u, v = square_to_disc(m, x, y, numeric_fallback=numeric_fallback, config=config)
    return EllipsePoint(spec.a * u, spec.b * v)


def ellipse_to_rect(mapping, spec: RectSpec, u0, v0, *, numeric_fallback: bool = True, config=None) -> RectPoint:
    """Map ellipse coordinates to rectangle coordinates."""
    m = as_mapping(mapping)
    if _unit(spec):
        return disc_to_square(m, u0, v0, numeric_fallback=numeric_fallback, config=config)
    u = np.asarray(u0, dtype=float) / spec.a
    v = np.asarray(v0, dtype=float) / spec.b
    x, y = disc_to_square(m, u, v, numeric_fallback=numeric_fallback, config=config)
    return RectPoint(spec.a * x, spec.b * y)
