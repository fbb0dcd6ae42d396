"""Square <-> disc mappings.

Every mapping is a pair of vectorised point transforms between the square
[-1, 1]^2 (coordinates x, y) and the unit disc (coordinates u, v).  The
``Mapping`` value describes one mapping together with its capability flags;
``square_to_disc`` and ``disc_to_square`` are the public entry points and
take care of domain checks, degenerate inputs and the numerical fallback for
directions that have no closed form.

Most disc-to-square formulas are quadratic-formula roots of the form
``(-A + sqrt(B)) / D``.  They are evaluated in the rationalised form
``(B - A^2) / (D (A + sqrt(B)))``, which is the same branch but does not
cancel catastrophically near the axes, and usually removes the division by
``u`` or ``v`` altogether.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import elliptic
from .errors import CapabilityError, DomainError, NumericError, ParamError

__all__ = [
    "DISC_TOL",
    "DiscPoint",
    "Kind",
    "Mapping",
    "SquarePoint",
    "SquircleParams",
    "as_mapping",
    "blended",
    "blended_grid_forward",
    "blended_grid_inverse",
    "continuum_value",
    "disc_to_square",
    "get_mapping",
    "is_rampant",
    "lame_parametric_disc_to_square",
    "lame_radial_forward",
    "list_mappings",
    "modulator",
    "square_to_disc",
]

# Negative discriminants in [-DISC_TOL, 0) are rounding noise and clamp to 0.
DISC_TOL = 1e-12
# Closed mappings accept points this far outside the boundary and snap them back.
BOUNDARY_SLACK = 1e-12
# disc points with u^2 + v^2 within this of 1 count as rim points (two ulps)
RIM_ULP = 4.5e-16

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)


class SquarePoint(NamedTuple):
    x: object
    y: object


class DiscPoint(NamedTuple):
    u: object
    v: object


class Kind(str, enum.Enum):
    SCHWARZ_CHRISTOFFEL = "schwarz-christoffel"
    FG_SQUIRCULAR = "fg-squircular"
    ELLIPTICAL_GRID = "elliptical-grid"
    TWO_SQUIRCULAR = "2-squircular"
    THREE_SQUIRCULAR = "3-squircular"
    TAPERED2 = "tapered2"
    TAPERED4 = "tapered4"
    NON_AXIAL_2 = "non-axial-2"
    NON_AXIAL_HALF = "non-axial-half"
    SQUELCHED_GRID = "squelched-grid"
    VERTICAL_SQUELCH = "vertical-squelch"
    HORIZONTAL_SQUELCH = "horizontal-squelch"
    BLENDED_ELLIPTICAL_GRID = "blended-grid"
    THREE_HALVES_SQUIRCULAR = "1.5-squircular"
    HALF_SQUIRCULAR = "0.5-squircular"
    FOUR_SQUIRCULAR = "4-squircular"
    NON_AXIAL_TAPERED2 = "non-axial-tapered2"
    LAME_RADIAL = "lame-radial"
    LAME_PARAMETRIC = "lame-parametric"


_ALIASES = {
    "stretched-schwarz-christoffel": Kind.SCHWARZ_CHRISTOFFEL,
    "sc": Kind.SCHWARZ_CHRISTOFFEL,
    "fg": Kind.FG_SQUIRCULAR,
    "blended-elliptical-grid": Kind.BLENDED_ELLIPTICAL_GRID,
    "three-halves-squircular": Kind.THREE_HALVES_SQUIRCULAR,
    "half-squircular": Kind.HALF_SQUIRCULAR,
    "non-axial-1/2": Kind.NON_AXIAL_HALF,
}


# --------------------------------------------------------------------------
# helpers


def _sq1m(a):
    """1 - a**2 without cancellation near |a| = 1."""
    return (1.0 - a) * (1.0 + a)


def _sqrt_disc(d):
    """Square root of a discriminant, clamping rounding noise below zero."""
    if np.any(d < -DISC_TOL):
        worst = float(np.min(d))
        raise NumericError(f"discriminant {worst:.3e} is negative beyond rounding noise")
    return np.sqrt(np.maximum(d, 0.0))


def _pass(mask, out, inp):
    """Degenerate rule: copy the input coordinate wherever ``mask`` holds."""
    return np.where(mask, inp, out)


def _axial(fn):
    """Wrap a kernel so both Cartesian axes map to themselves exactly."""

    def wrapped(p, q):
        with np.errstate(divide="ignore", invalid="ignore"):
            a, b = fn(p, q)
        on_axis = (p == 0.0) | (q == 0.0)
        return _pass(on_axis, a, p), _pass(on_axis, b, q)

    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


# --------------------------------------------------------------------------
# Schwarz-Christoffel (conformal)


def _sc_forward(x, y):
    ke = elliptic.k_e()
    z = ke * (0.5 + 0.5j) * (x + 1j * y) - ke
    w = (1.0 - 1.0j) / _SQRT2 * elliptic.jacobi_cn(z)
    return w.real, w.imag


def _sc_inverse(u, v):
    ke = elliptic.k_e()
    w = (1.0 + 1.0j) / _SQRT2 * (u + 1j * v)
    mod = np.abs(w)
    # |w| = u^2 + v^2 <= 1; rounding past the rim would leave acos's principal strip
    w = np.where(mod > 1.0, w / np.where(mod > 1.0, mod, 1.0), w)
    f = elliptic.legendre_f(np.arccos(w))
    q = (1.0 - 1.0j) / (-ke) * f
    return q.real + 1.0, q.imag - 1.0


# --------------------------------------------------------------------------
# FG-Squircular and its squircular-nonlinearity variants


def _fg_forward(x, y):
    w = x * y / np.hypot(x, y)
    f = np.sqrt(1.0 - w * w)
    return x * f, y * f


def _fg_inverse(u, v):
    w = 2.0 * u * v / np.hypot(u, v)
    f = np.sqrt(2.0 / (1.0 + _sqrt_disc(1.0 - w * w)))
    return u * f, v * f


def _two_sq_forward(x, y):
    f = np.sqrt(1.0 / (1.0 + x * x * y * y))
    return x * f, y * f


def _two_sq_inverse(u, v):
    root = _sqrt_disc(1.0 - 4.0 * u * u * v * v)
    f = np.sqrt(2.0 / (1.0 + root))
    return u * f, v * f


def _three_sq_core(a, b, sign):
    """Shared body of both 3-Squircular directions; only ``sign`` differs."""
    root = _sqrt_disc(1.0 + sign * 4.0 * a * a * b * b * (a * a + b * b))
    f = np.sqrt(2.0 / (1.0 + root))
    return a * f, b * f


def _three_sq_forward(x, y):
    return _three_sq_core(x, y, 1.0)


def _three_sq_inverse(u, v):
    return _three_sq_core(u, v, -1.0)


def _tapered2_t2(x, y):
    a = _sq1m(x)
    b = _sq1m(y)
    den = a + b - a * b
    corner = den == 0.0
    return np.where(corner, 1.0, (x * x * b + y * y * a) / np.where(corner, 1.0, den))


def _tapered2_forward(x, y):
    rho = np.hypot(x, y)
    cx = x / rho
    cy = y / rho
    a = _sq1m(x)
    b = _sq1m(y)
    den = a + b - a * b
    corner = den == 0.0
    f = np.sqrt(np.where(corner, 0.5, (cx * cx * b + cy * cy * a) / np.where(corner, 1.0, den)))
    return x * f, y * f


def _tapered2_inverse(u, v):
    r = np.hypot(u, v)
    w = 2.0 * u * v / r
    f = np.sqrt(2.0 / (1.0 + _sqrt_disc(1.0 + w * w * (r * r - 2.0))))
    return u * f, v * f


def _tapered4_t2(x, y):
    p = x * x * y * y
    g = p * (2.0 * (x * x + y * y) - 3.0 * p)
    return (2.0 * (x * x + y * y) - 3.0 * p) / (1.0 + _sqrt_disc(1.0 - g))


def _tapered4_forward(x, y):
    p = x * x * y * y
    w = x * y / np.hypot(x, y)
    g = p * (2.0 * (x * x + y * y) - 3.0 * p)
    f = np.sqrt((2.0 - 3.0 * w * w) / (1.0 + _sqrt_disc(1.0 - g)))
    return x * f, y * f


def _tapered4_inverse(u, v):
    r = np.hypot(u, v)
    w = u * v / r
    r4 = r**4
    f = np.sqrt(2.0 / (1.0 + _sqrt_disc(1.0 + 2.0 * w * w * (r4 - 3.0))))
    return u * f, v * f


def _three_halves_ratio(x, y):
    # t / rho for the positive root of t^2 + x^2 y^2 t - rho^2 = 0
    p = x * x * y * y
    rho = np.hypot(x, y)
    return 2.0 * rho / (np.hypot(p, 2.0 * rho) + p)


def _three_halves_forward(x, y):
    f = _three_halves_ratio(x, y)
    return x * f, y * f


def _half_sq_ratio(x, y):
    # t / rho for the largest root of t^3 - rho^2 t + x^2 y^2 = 0.  All three
    # roots are real, so the trigonometric form stays real where Cardano's
    # radical would not.
    rho = np.hypot(x, y)
    w = x * y / rho
    arg = np.clip(-(1.5 * _SQRT3) * w * w / rho, -1.0, 1.0)
    return (2.0 / _SQRT3) * np.cos(np.arccos(arg) / 3.0)


def _half_sq_t(x, y):
    return np.hypot(x, y) * _half_sq_ratio(x, y)


def _half_sq_forward(x, y):
    f = _half_sq_ratio(x, y)
    return x * f, y * f


def _four_sq_ratio(x, y):
    # The single real root tau = t^2 of x^2 y^2 tau^3 + tau - rho^2 = 0 in
    # hyperbolic form is tau / rho^2 = 3 sinh(asinh(z) / 3) / z with
    # z = (3 sqrt 3 / 2) rho^2 |xy|; the ratio tends to 1 as z -> 0, so it
    # survives underflow of z.
    z = (1.5 * _SQRT3) * (x * x + y * y) * np.abs(x * y)
    small = z == 0.0
    zs = np.where(small, 1.0, z)
    return np.where(small, 1.0, 3.0 * np.sinh(np.arcsinh(zs) / 3.0) / zs)


def _four_sq_t2(x, y):
    return np.hypot(x, y) ** 2 * _four_sq_ratio(x, y)


def _four_sq_forward(x, y):
    f = np.sqrt(_four_sq_ratio(x, y))
    return x * f, y * f


# --------------------------------------------------------------------------
# axial-nonlinearity (modulated) radial mappings


def _two_sq_t2(x, y):
    return (x * x + y * y) / (1.0 + x * x * y * y)


def _non_axial_2_forward(x, y):
    f = np.hypot(x, y) / (1.0 + x * x * y * y)
    return x * f, y * f


def _signed_sqrt(a):
    return np.sign(a) * np.sqrt(np.abs(a))


def _non_axial_2_inverse(u, v):
    # x^4 = 2 u^4 / (A + sqrt(B)); both A and sqrt(B) carry a factor r^2
    r = np.hypot(u, v)
    w = u * v / r
    scaled = 1.0 - 2.0 * w * w + _sqrt_disc(1.0 - 4.0 * w * w)
    with np.errstate(divide="ignore"):
        f = (2.0 / scaled) ** 0.25 / np.sqrt(r)
    x = np.where(v == 0.0, _signed_sqrt(u), u * f)
    y = np.where(u == 0.0, _signed_sqrt(v), v * f)
    return x, y


def _non_axial_half_forward(x, y):
    with np.errstate(divide="ignore"):
        g = (1.0 + x * x * y * y) ** -0.25 / np.sqrt(np.hypot(x, y))
    u = np.where(y == 0.0, _signed_sqrt(x), x * g)
    v = np.where(x == 0.0, _signed_sqrt(y), y * g)
    return u, v


def _non_axial_half_inverse(u, v):
    r = np.hypot(u, v)
    root = _sqrt_disc(1.0 - 4.0 * u * u * v * v * r**4)
    f = r * np.sqrt(2.0 / (1.0 + root))
    x = np.where(v == 0.0, np.sign(u) * u * u, u * f)
    y = np.where(u == 0.0, np.sign(v) * v * v, v * f)
    return x, y


def _non_axial_tapered2_forward(x, y):
    p = x * x * y * y
    f = np.sqrt(2.0 + 2.0 * p - x * x - y * y) / (1.0 + p)
    return x * f, y * f


# --------------------------------------------------------------------------
# Elliptical Grid family (open variants exclude the rims)


def _eg_forward(x, y):
    return x * np.sqrt(1.0 - 0.5 * y * y), y * np.sqrt(1.0 - 0.5 * x * x)


def _eg_inverse(u, v):
    c = 2.0 + u * u - v * v
    d = 2.0 - u * u + v * v
    su = 2.0 * _SQRT2 * u
    sv = 2.0 * _SQRT2 * v
    x = su / (_sqrt_disc(c + su) + _sqrt_disc(c - su))
    y = sv / (_sqrt_disc(d + sv) + _sqrt_disc(d - sv))
    return x, y


def _squelched_forward(x, y):
    a = _sq1m(x)
    b = _sq1m(y)
    den = a + b - a * b
    return x * np.sqrt(b / den), y * np.sqrt(a / den)


def _squelched_inverse(u, v):
    return u / np.sqrt(_sq1m(v)), v / np.sqrt(_sq1m(u))


def _squelched_t2(x, y):
    return _tapered2_t2(x, y)


def _vertical_forward(x, y):
    return x + 0.0, y * np.sqrt(_sq1m(x))


def _vertical_inverse(u, v):
    return u + 0.0, v / np.sqrt(_sq1m(u))


def _horizontal_forward(x, y):
    return x * np.sqrt(_sq1m(y)), y + 0.0


def _horizontal_inverse(u, v):
    return u / np.sqrt(_sq1m(v)), v + 0.0


def _linear_t2(x, y):
    return x * x + y * y - x * x * y * y


def _blended_forward(beta):
    def fwd(x, y):
        a = _sq1m(x)
        b = _sq1m(y)
        den = (1.0 + beta) * (a + b) + (beta * beta - 1.0) * a * b
        u = x * np.sqrt((1.0 + beta * b) * (b + beta * a) / den)
        v = y * np.sqrt((1.0 + beta * a) * (a + beta * b) / den)
        return u, v

    return fwd


def _blended_inverse(beta):
    def inv(u, v):
        k4 = 4.0 * beta * (beta + 1.0)
        cu = beta + 1.0 + beta * u * u - v * v
        cv = beta + 1.0 - u * u + beta * v * v
        x = u * np.sqrt(2.0 * (beta + 1.0) / (cu + _sqrt_disc(cu * cu - k4 * u * u)))
        y = v * np.sqrt(2.0 * (beta + 1.0) / (cv + _sqrt_disc(cv * cv - k4 * v * v)))
        return x, y

    return inv


# --------------------------------------------------------------------------
# Lame-curve mappings


def _lame_scaled_norm(x, y):
    """(Lame n-norm / max-norm, max-norm) with n = 2 / ((1 - |x|)(1 - |y|))."""
    ax = np.abs(x)
    ay = np.abs(y)
    m = np.maximum(ax, ay)
    with np.errstate(divide="ignore", invalid="ignore"):
        n = 2.0 / ((1.0 - ax) * (1.0 - ay))
        # scaled by the max to keep |x|**n from underflowing; n = inf on the rim
        # gives the max-norm, i.e. the square itself
        s = (ax / m) ** n + (ay / m) ** n
        return s ** (1.0 / n), m


def _lame_norm(x, y):
    ratio, m = _lame_scaled_norm(x, y)
    return m * ratio


def _lame_radial_forward(x, y):
    ratio, m = _lame_scaled_norm(x, y)
    f = np.sqrt((m / np.hypot(x, y)) ** 2 * ratio**2)
    return x * f, y * f


def _lame_radial_t2(x, y):
    return _lame_norm(x, y) ** 2


def _lame_parametric_inverse(u, v):
    e = 1.0 - (u * u + v * v)
    return np.sign(u) * np.abs(u) ** e, np.sign(v) * np.abs(v) ** e


# --------------------------------------------------------------------------
# modulators m(t): |disc point| = m(t) where t^2 is the induced continuum


def _identity_mod(t):
    return t


def _square_mod(t):
    return t * t


def _sqrt_mod(t):
    return np.sqrt(t)


def _tapered_mod(t):
    return t * np.sqrt(2.0 - t * t)


@dataclass(frozen=True)
class _KindInfo:
    title: str
    is_open: bool
    radial: bool
    axial: bool
    forward: Optional[Callable]
    inverse: Optional[Callable]
    continuum: Optional[Callable] = None
    modulator: Optional[Callable] = None


_INFO = {
    Kind.SCHWARZ_CHRISTOFFEL: _KindInfo(
        "Schwarz-Christoffel", False, False, False, _sc_forward, _sc_inverse
    ),
    Kind.FG_SQUIRCULAR: _KindInfo(
        "FG-Squircular", False, True, True, _fg_forward, _fg_inverse, _linear_t2, _identity_mod
    ),
    Kind.ELLIPTICAL_GRID: _KindInfo(
        "Elliptical Grid", False, False, True, _eg_forward, _eg_inverse
    ),
    Kind.TWO_SQUIRCULAR: _KindInfo(
        "2-Squircular", False, True, True, _two_sq_forward, _two_sq_inverse, _two_sq_t2, _identity_mod
    ),
    Kind.THREE_SQUIRCULAR: _KindInfo(
        "3-Squircular",
        False,
        True,
        True,
        _three_sq_forward,
        _three_sq_inverse,
        lambda x, y: 2.0 * (x * x + y * y) / (1.0 + np.sqrt(1.0 + 4.0 * x * x * y * y * (x * x + y * y))),
        _identity_mod,
    ),
    Kind.TAPERED2: _KindInfo(
        "Tapered2", False, True, True, _tapered2_forward, _tapered2_inverse, _tapered2_t2, _identity_mod
    ),
    Kind.TAPERED4: _KindInfo(
        "Tapered4", False, True, True, _tapered4_forward, _tapered4_inverse, _tapered4_t2, _identity_mod
    ),
    Kind.NON_AXIAL_2: _KindInfo(
        "Non-Axial 2", False, True, False, _non_axial_2_forward, _non_axial_2_inverse, _two_sq_t2, _square_mod
    ),
    Kind.NON_AXIAL_HALF: _KindInfo(
        "Non-Axial 1/2",
        False,
        True,
        False,
        _non_axial_half_forward,
        _non_axial_half_inverse,
        _two_sq_t2,
        _sqrt_mod,
    ),
    Kind.SQUELCHED_GRID: _KindInfo(
        "Squelched Grid", True, False, True, _squelched_forward, _squelched_inverse, _squelched_t2, _identity_mod
    ),
    Kind.VERTICAL_SQUELCH: _KindInfo(
        "Vertical Squelch", True, False, True, _vertical_forward, _vertical_inverse, _linear_t2, _identity_mod
    ),
    Kind.HORIZONTAL_SQUELCH: _KindInfo(
        "Horizontal Squelch",
        True,
        False,
        True,
        _horizontal_forward,
        _horizontal_inverse,
        _linear_t2,
        _identity_mod,
    ),
    Kind.BLENDED_ELLIPTICAL_GRID: _KindInfo("Blended Elliptical Grid", True, False, True, None, None),
    Kind.THREE_HALVES_SQUIRCULAR: _KindInfo(
        "3/2-Squircular",
        False,
        True,
        True,
        _three_halves_forward,
        None,
        lambda x, y: (np.hypot(x, y) * _three_halves_ratio(x, y)) ** 2,
        _identity_mod,
    ),
    Kind.HALF_SQUIRCULAR: _KindInfo(
        "1/2-Squircular",
        False,
        True,
        True,
        _half_sq_forward,
        None,
        lambda x, y: _half_sq_t(x, y) ** 2,
        _identity_mod,
    ),
    Kind.FOUR_SQUIRCULAR: _KindInfo(
        "4-Squircular", False, True, True, _four_sq_forward, None, _four_sq_t2, _identity_mod
    ),
    Kind.NON_AXIAL_TAPERED2: _KindInfo(
        "Non-Axial Tapered2",
        False,
        True,
        False,
        _non_axial_tapered2_forward,
        None,
        _two_sq_t2,
        _tapered_mod,
    ),
    Kind.LAME_RADIAL: _KindInfo(
        "Lame Radial", False, True, True, _lame_radial_forward, None, _lame_radial_t2, _identity_mod
    ),
    Kind.LAME_PARAMETRIC: _KindInfo(
        "Lame Parametric", True, False, False, None, _lame_parametric_inverse
    ),
}

# Degenerate origin handling for the radial kernels that divide by |(x, y)|.
_ORIGIN_SAFE = {Kind.SCHWARZ_CHRISTOFFEL, Kind.ELLIPTICAL_GRID, Kind.BLENDED_ELLIPTICAL_GRID}


@dataclass(frozen=True)
class Mapping:
    """One square<->disc mapping plus its capability flags.

    ``beta`` is only meaningful for the Blended Elliptical Grid, where it
    must lie in (0, 1]; it defaults to 0.5 there.
    """

    kind: Kind
    beta: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.BLENDED_ELLIPTICAL_GRID:
            beta = 0.5 if self.beta is None else float(self.beta)
            if not (0.0 < beta <= 1.0) or math.isnan(beta):
                raise ParamError(f"blend parameter beta must lie in (0, 1], got {self.beta!r}")
            object.__setattr__(self, "beta", beta)
        elif self.beta is not None:
            raise ParamError(f"{self.kind.value} takes no beta parameter")

    @property
    def _info(self) -> _KindInfo:
        return _INFO[self.kind]

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def title(self) -> str:
        if self.kind is Kind.BLENDED_ELLIPTICAL_GRID:
            return f"{self._info.title} (beta={self.beta:g})"
        return self._info.title

    @property
    def eccentric_title(self) -> str:
        """User-facing name of the rectangle<->ellipse lift."""
        if self.kind is Kind.SCHWARZ_CHRISTOFFEL:
            return "Stretched Schwarz-Christoffel"
        return self.title

    @property
    def is_open(self) -> bool:
        return self._info.is_open

    @property
    def radial(self) -> bool:
        return self._info.radial

    @property
    def axial(self) -> bool:
        return self._info.axial

    @property
    def analytic_forward(self) -> bool:
        return self.kind is Kind.BLENDED_ELLIPTICAL_GRID or self._info.forward is not None

    @property
    def analytic_inverse(self) -> bool:
        return self.kind is Kind.BLENDED_ELLIPTICAL_GRID or self._info.inverse is not None

    @property
    def has_continuum(self) -> bool:
        return self._info.continuum is not None

    def forward_kernel(self) -> Optional[Callable]:
        """Raw vectorised square->disc formula (no domain checks), or None."""
        if self.kind is Kind.BLENDED_ELLIPTICAL_GRID:
            return _axial(_blended_forward(self.beta))
        return self._origin_guard(self._info.forward)

    def inverse_kernel(self) -> Optional[Callable]:
        """Raw vectorised disc->square formula (no domain checks), or None."""
        if self.kind is Kind.BLENDED_ELLIPTICAL_GRID:
            return _axial(_blended_inverse(self.beta))
        return self._origin_guard(self._info.inverse)

    def _origin_guard(self, fn):
        """Add the degenerate-input rules: axes fixed for axial kinds, origin fixed."""
        if fn is None:
            return None
        if self.axial:
            return _axial(fn)
        if self.kind in _ORIGIN_SAFE:
            return fn

        def guarded(p, q):
            with np.errstate(divide="ignore", invalid="ignore"):
                a, b = fn(p, q)
            origin = (p == 0.0) & (q == 0.0)
            return _pass(origin, a, p), _pass(origin, b, q)

        return guarded

    def flags(self) -> dict:
        return {
            "open": self.is_open,
            "analytic_forward": self.analytic_forward,
            "analytic_inverse": self.analytic_inverse,
            "radial": self.radial,
            "axial": self.axial,
        }


def blended(beta: float) -> Mapping:
    return Mapping(Kind.BLENDED_ELLIPTICAL_GRID, beta)


def get_mapping(name: str, beta: Optional[float] = None) -> Mapping:
    """Look up a mapping by its kebab-case name (or a known alias)."""
    key = name.strip().lower()
    kind = _ALIASES.get(key)
    if kind is None:
        try:
            kind = Kind(key)
        except ValueError:
            raise ParamError(f"unknown mapping {name!r}") from None
    if kind is not Kind.BLENDED_ELLIPTICAL_GRID and beta is not None:
        raise ParamError(f"{kind.value} takes no beta parameter")
    return Mapping(kind, beta)


def as_mapping(obj) -> Mapping:
    if isinstance(obj, Mapping):
        return obj
    if isinstance(obj, Kind):
        return Mapping(obj)
    if isinstance(obj, str):
        return get_mapping(obj)
    raise TypeError(f"cannot interpret {obj!r} as a mapping")


def list_mappings() -> list:
    """One Mapping per registry kind (blended grid at its default beta)."""
    return [Mapping(kind) for kind in Kind]


# --------------------------------------------------------------------------
# public point transforms


def _prepare(a, b):
    a_arr = np.asarray(a, dtype=float)
    b_arr = np.asarray(b, dtype=float)
    scalar = a_arr.ndim == 0 and b_arr.ndim == 0
    a_arr, b_arr = np.broadcast_arrays(a_arr, b_arr)
    if not (np.all(np.isfinite(a_arr)) and np.all(np.isfinite(b_arr))):
        raise DomainError("coordinates must be finite")
    return a_arr.astype(float, copy=True), b_arr.astype(float, copy=True), scalar


def _finish(a, b, scalar):
    if scalar:
        return float(a) + 0.0, float(b) + 0.0
    return a + 0.0, b + 0.0


def _check_square(m: Mapping, x, y):
    ax = np.abs(x)
    ay = np.abs(y)
    if m.is_open:
        bad = (ax >= 1.0) | (ay >= 1.0)
        if bad.any():
            i = int(np.flatnonzero(bad.ravel())[0])
            raise DomainError(
                f"{m.name} is an open mapping: square point "
                f"({x.ravel()[i]:.15g}, {y.ravel()[i]:.15g}) must satisfy |x| < 1 and |y| < 1 "
                "(the rim and corners are singular)"
            )
        return x, y
    bad = (ax > 1.0 + BOUNDARY_SLACK) | (ay > 1.0 + BOUNDARY_SLACK)
    if bad.any():
        i = int(np.flatnonzero(bad.ravel())[0])
        raise DomainError(
            f"square point ({x.ravel()[i]:.15g}, {y.ravel()[i]:.15g}) lies outside the square: "
            "need |x| <= 1 and |y| <= 1"
        )
    return np.clip(x, -1.0, 1.0), np.clip(y, -1.0, 1.0)


def _check_disc(m: Mapping, u, v):
    r2 = u * u + v * v
    if m.is_open:
        bad = r2 >= 1.0
        if bad.any():
            i = int(np.flatnonzero(bad.ravel())[0])
            raise DomainError(
                f"{m.name} is an open mapping: disc point "
                f"({u.ravel()[i]:.15g}, {v.ravel()[i]:.15g}) must satisfy u^2 + v^2 < 1 "
                "(the rim is singular)"
            )
        return u, v
    bad = r2 > 1.0 + BOUNDARY_SLACK
    if bad.any():
        i = int(np.flatnonzero(bad.ravel())[0])
        raise DomainError(
            f"disc point ({u.ravel()[i]:.15g}, {v.ravel()[i]:.15g}) lies outside the unit disc: "
            "need u^2 + v^2 <= 1"
        )
    over = r2 > 1.0
    if over.any():
        s = np.where(over, 1.0 / np.sqrt(np.where(over, r2, 1.0)), 1.0)
        u = u * s
        v = v * s
    return u, v


def _snap_to_square_rim(r2, x, y):
    """Put images of rim points exactly on the square boundary.

    Near the corner preimages the inverse behaves like a square root, so the
    last-ulp position of a rim point moves its image by ~1e-8; rim points are
    therefore recognised within RIM_ULP and their images scaled onto the rim.
    Axis images are left alone; every kind is exact there.
    """
    rim = (r2 >= 1.0 - RIM_ULP) & (x != 0.0) & (y != 0.0)
    if rim.any():
        big = np.maximum(np.abs(x), np.abs(y))
        s = np.where(rim & (big > 0.0), 1.0 / np.where(big > 0.0, big, 1.0), 1.0)
        x = x * s
        y = y * s
    return np.clip(x, -1.0, 1.0), np.clip(y, -1.0, 1.0)


def _snap_to_disc_rim(x, y, u, v):
    """Square-boundary points land exactly on the unit circle (to rounding)."""
    rim = np.maximum(np.abs(x), np.abs(y)) == 1.0
    if rim.any():
        r = np.hypot(u, v)
        s = np.where(rim, 1.0 / np.where(rim, r, 1.0), 1.0)
        u = u * s
        v = v * s
    return u, v


def square_to_disc(mapping, x, y, *, numeric_fallback: bool = True, config=None) -> DiscPoint:
    """Map square coordinates (x, y) to disc coordinates (u, v).

    Scalars give floats back, arrays give arrays.  Directions without a
    closed form are solved numerically unless ``numeric_fallback`` is off,
    in which case CapabilityError is raised.
    """
    m = as_mapping(mapping)
    x, y, scalar = _prepare(x, y)
    x, y = _check_square(m, x, y)
    if m.analytic_forward:
        u, v = m.forward_kernel()(x, y)
        if not m.is_open:
            u, v = _snap_to_disc_rim(x, y, u, v)
    elif numeric_fallback:
        from .inversion import invert

        u, v = invert(m, x, y, direction="s2d", config=config)
    else:
        raise CapabilityError(f"{m.name} has no closed-form square-to-disc direction")
    return DiscPoint(*_finish(u, v, scalar))


def disc_to_square(mapping, u, v, *, numeric_fallback: bool = True, config=None) -> SquarePoint:
    """Map disc coordinates (u, v) to square coordinates (x, y)."""
    m = as_mapping(mapping)
    u, v, scalar = _prepare(u, v)
    u, v = _check_disc(m, u, v)
    if m.analytic_inverse:
        x, y = m.inverse_kernel()(u, v)
    elif numeric_fallback:
        from .inversion import invert

        x, y = invert(m, u, v, direction="d2s", config=config)
    else:
        raise CapabilityError(f"{m.name} has no closed-form disc-to-square direction")
    if not m.is_open:
        x, y = _snap_to_square_rim(u * u + v * v, x, y)
    return SquarePoint(*_finish(x, y, scalar))


def blended_grid_forward(beta: float, x, y) -> DiscPoint:
    """Blended Elliptical Grid, square to disc, for blend parameter beta."""
    return square_to_disc(blended(beta), x, y)


def blended_grid_inverse(beta: float, u, v) -> SquarePoint:
    """Blended Elliptical Grid, disc to square, for blend parameter beta."""
    return disc_to_square(blended(beta), u, v)


def lame_radial_forward(x, y) -> DiscPoint:
    return square_to_disc(Kind.LAME_RADIAL, x, y)


def lame_parametric_disc_to_square(u, v) -> SquarePoint:
    return disc_to_square(Kind.LAME_PARAMETRIC, u, v)


# --------------------------------------------------------------------------
# squircles, continua, rampant functions


@dataclass(frozen=True)
class SquircleParams:
    """Fernandez-Guasti squircle x^2 + y^2 - (s^2/t^2) x^2 y^2 = t^2."""

    s: float
    t: float

    def __post_init__(self):
        if not self.s >= 0.0:
            raise ParamError(f"squareness s must be >= 0, got {self.s!r}")
        if not 0.0 < self.t <= 1.0:
            raise ParamError(f"radius t must lie in (0, 1], got {self.t!r}")

    def residual(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return x * x + y * y - (self.s / self.t) ** 2 * x * x * y * y - self.t**2


def continuum_value(mapping, x, y):
    """Squared continuum parameter t^2 of the squircle through (x, y).

    For every kind where it is defined, u^2 + v^2 = modulator(t)^2.
    """
    m = as_mapping(mapping)
    if m.kind is Kind.BLENDED_ELLIPTICAL_GRID or not m.has_continuum:
        raise CapabilityError(f"{m.name} has no squircular continuum")
    x, y, scalar = _prepare(x, y)
    bad = (np.abs(x) > 1.0 + BOUNDARY_SLACK) | (np.abs(y) > 1.0 + BOUNDARY_SLACK)
    if bad.any():
        raise DomainError("continuum is only defined on the square")
    x = np.clip(x, -1.0, 1.0)
    y = np.clip(y, -1.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t2 = m._info.continuum(x, y)
    t2 = np.where((x == 0.0) | (y == 0.0), x * x + y * y, t2) if m.axial or m.radial else t2
    return float(t2) if scalar else t2


def modulator(mapping, t):
    """Radial modulator m(t) of a kind (identity for linear-parameter kinds)."""
    m = as_mapping(mapping)
    if m._info.modulator is None:
        raise CapabilityError(f"{m.name} has no modulator")
    return m._info.modulator(np.asarray(t, dtype=float))


def is_rampant(f: Callable, n: int = 1000, atol: float = 1e-12) -> bool:
    """Check f(0)=0, f(1)=1, monotone and continuous on [0, 1] by sampling.

    Continuity is judged by refinement: the largest jump between neighbouring
    samples must shrink when the grid is made 8x finer.
    """
    coarse = np.linspace(0.0, 1.0, n + 1)
    fine = np.linspace(0.0, 1.0, 8 * n + 1)
    fc = np.asarray(f(coarse), dtype=float)
    ff = np.asarray(f(fine), dtype=float)
    if not (np.all(np.isfinite(fc)) and np.all(np.isfinite(ff))):
        return False
    if abs(fc[0]) > atol or abs(fc[-1] - 1.0) > atol:
        return False
    dc = np.diff(fc)
    df = np.diff(ff)
    if dc.min() < -atol or df.min() < -atol:
        return False
    jump_c = dc.max()
    jump_f = df.max()
    return bool(jump_c < 1e-3 or jump_f < 0.9 * jump_c)
