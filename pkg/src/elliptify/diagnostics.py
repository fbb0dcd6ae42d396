"""Quasi-random samples and round-trip error measurement."""

from __future__ import annotations

import numpy as np
from scipy.stats import qmc

from .inversion import InversionConfig
from .mappings import Kind, Mapping, as_mapping, disc_to_square, square_to_disc

__all__ = ["disc_samples", "roundtrip_error", "roundtrip_threshold", "square_samples"]

THRESHOLD_ANALYTIC = 1e-9
THRESHOLD_CONFORMAL = 1e-6
THRESHOLD_NUMERIC = 1e-8


def _halton(n: int) -> np.ndarray:
    # unscrambled, so the point set is fixed; the first point (0, 0) is skipped
    return qmc.Halton(d=2, scramble=False).random(n + 1)[1:]


def square_samples(n: int, eps: float = 1e-6):
    """n low-discrepancy points in [-1 + eps, 1 - eps]^2."""
    h = _halton(n)
    p = (2.0 * h - 1.0) * (1.0 - eps)
    return p[:, 0], p[:, 1]


def disc_samples(n: int, eps: float = 1e-6):
    """n low-discrepancy points, uniform by area, in the disc of radius 1 - eps."""
    h = _halton(n)
    r = np.sqrt(h[:, 0]) * (1.0 - eps)
    th = 2.0 * np.pi * h[:, 1]
    return r * np.cos(th), r * np.sin(th)


def roundtrip_threshold(mapping) -> float:
    m = as_mapping(mapping)
    if m.kind is Kind.SCHWARZ_CHRISTOFFEL:
        return THRESHOLD_CONFORMAL
    if m.analytic_forward and m.analytic_inverse:
        return THRESHOLD_ANALYTIC
    return THRESHOLD_NUMERIC


def roundtrip_error(mapping, n: int = 10_000, eps: float = 1e-6, config: InversionConfig | None = None) -> float:
    """Max-norm error of going there and back on n interior samples.

    Starts in the square and goes square -> disc -> square, except for a kind
    whose only closed form is disc -> square, which starts in the disc.  A
    missing direction is solved numerically.
    """
    m: Mapping = as_mapping(mapping)
    if m.analytic_forward:
        x, y = square_samples(n, eps)
        u, v = square_to_disc(m, x, y, config=config)
        bx, by = disc_to_square(m, u, v, numeric_fallback=True, config=config)
        return float(max(np.max(np.abs(bx - x)), np.max(np.abs(by - y))))
    u, v = disc_samples(n, eps)
    x, y = disc_to_square(m, u, v, config=config)
    bu, bv = square_to_disc(m, x, y, numeric_fallback=True, config=config)
    return float(max(np.max(np.abs(bu - u)), np.max(np.abs(bv - v))))
