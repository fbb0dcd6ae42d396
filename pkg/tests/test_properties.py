"""Property tests for the mapping invariants (hypothesis, derandomized)."""

import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from elliptify.mappings import (
    Kind,
    blended,
    continuum_value,
    disc_to_square,
    list_mappings,
    modulator,
    square_to_disc,
)

MAPPINGS = list_mappings() + [blended(b) for b in (0.25, 0.75, 1.0)]
FORWARD = [m for m in MAPPINGS if m.analytic_forward]
INVERSE = [m for m in MAPPINGS if m.analytic_inverse]
BIDIRECTIONAL = [m for m in MAPPINGS if m.analytic_forward and m.analytic_inverse]
RADIAL = [m for m in MAPPINGS if m.radial]
AXIAL = [m for m in MAPPINGS if m.axial]
CONTINUUM = [m for m in MAPPINGS if m.has_continuum and m.analytic_forward]
SQUELCH_1D = {Kind.VERTICAL_SQUELCH, Kind.HORIZONTAL_SQUELCH}

coord = st.floats(-1.0, 1.0, allow_nan=False)
inner = st.floats(-0.999, 0.999, allow_nan=False)


def ids(m):
    return m.title


@st.composite
def square_point(draw, is_open):
    c = inner if is_open else coord
    return draw(c), draw(c)


@st.composite
def disc_point(draw, is_open):
    r = draw(st.floats(0.0, 0.999 if is_open else 1.0))
    th = draw(st.floats(0.0, 2 * math.pi))
    return r * math.cos(th), r * math.sin(th)


def _group(x, y):
    """The 8 symmetries of the square applied to (x, y): (transform, image)."""
    ops = [
        lambda a, b: (a, b),
        lambda a, b: (-a, b),
        lambda a, b: (a, -b),
        lambda a, b: (-a, -b),
        lambda a, b: (b, a),
        lambda a, b: (-b, a),
        lambda a, b: (b, -a),
        lambda a, b: (-b, -a),
    ]
    return ops


@pytest.mark.parametrize("m", FORWARD, ids=ids)
@given(data=st.data())
def test_forward_containment(m, data):
    x, y = data.draw(square_point(m.is_open))
    u, v = square_to_disc(m, x, y)
    assert math.isfinite(u) and math.isfinite(v)
    assert u * u + v * v <= 1.0 + 1e-12


@pytest.mark.parametrize("m", INVERSE, ids=ids)
@given(data=st.data())
def test_inverse_containment(m, data):
    u, v = data.draw(disc_point(m.is_open))
    x, y = disc_to_square(m, u, v)
    assert max(abs(x), abs(y)) <= 1.0 + 1e-12


@pytest.mark.parametrize("m", BIDIRECTIONAL, ids=ids)
@given(data=st.data())
def test_round_trip(m, data):
    lim = 1.0 - 1e-6
    x = data.draw(st.floats(-lim, lim))
    y = data.draw(st.floats(-lim, lim))
    bx, by = disc_to_square(m, *square_to_disc(m, x, y))
    tol = 1e-6 if m.kind is Kind.SCHWARZ_CHRISTOFFEL else 1e-9
    assert max(abs(bx - x), abs(by - y)) < tol


@pytest.mark.parametrize("m", [m for m in FORWARD if m.kind not in SQUELCH_1D], ids=ids)
@given(data=st.data())
def test_forward_square_symmetry(m, data):
    x, y = data.draw(square_point(m.is_open))
    u, v = square_to_disc(m, x, y)
    for op in _group(x, y):
        gu, gv = square_to_disc(m, *op(x, y))
        eu, ev = op(u, v)
        assert abs(gu - eu) < 1e-12 and abs(gv - ev) < 1e-12


@pytest.mark.parametrize("m", [m for m in INVERSE if m.kind not in SQUELCH_1D], ids=ids)
@given(data=st.data())
def test_inverse_square_symmetry(m, data):
    u, v = data.draw(disc_point(m.is_open))
    x, y = disc_to_square(m, u, v)
    for op in _group(u, v):
        gx, gy = disc_to_square(m, *op(u, v))
        ex, ey = op(x, y)
        assert abs(gx - ex) < 1e-12 and abs(gy - ey) < 1e-12


@given(data=st.data())
def test_squelch_variants_reflections_and_swap(data):
    # the one-directional squelches keep the reflections; a swap turns one into the other
    x, y = data.draw(square_point(True))
    vu, vv = square_to_disc("vertical-squelch", x, y)
    hu, hv = square_to_disc("horizontal-squelch", y, x)
    assert (hv, hu) == (vu, vv)
    for sx in (-1, 1):
        for sy in (-1, 1):
            for name in ("vertical-squelch", "horizontal-squelch"):
                u, v = square_to_disc(name, x, y)
                assert square_to_disc(name, sx * x, sy * y) == (sx * u, sy * v)


@pytest.mark.parametrize("m", RADIAL, ids=ids)
@given(data=st.data())
def test_radial_angle_preserved(m, data):
    x, y = data.draw(square_point(m.is_open))
    # below this the non-axial kinds underflow to 0 and carry no angle
    assume(math.hypot(x, y) > 1e-150)
    u, v = square_to_disc(m, x, y)
    assert abs(math.atan2(v, u) - math.atan2(y, x)) < 1e-12 or abs(abs(math.atan2(v, u)) - math.pi) < 1e-12


@pytest.mark.parametrize("m", AXIAL, ids=ids)
@given(t=inner)
def test_axial_identity_forward(m, t):
    assert square_to_disc(m, t, 0.0) == (t, 0.0)
    assert square_to_disc(m, 0.0, t) == (0.0, t)


@pytest.mark.parametrize("m", [m for m in AXIAL if m.analytic_inverse], ids=ids)
@given(t=inner)
def test_axial_identity_inverse(m, t):
    assert disc_to_square(m, t, 0.0) == (t, 0.0)
    assert disc_to_square(m, 0.0, t) == (0.0, t)


@given(t=coord)
def test_non_axial_axis_powers(t):
    assert square_to_disc("non-axial-2", t, 0.0) == (math.copysign(t * t, t), 0.0)
    assert disc_to_square("non-axial-2", t, 0.0)[0] == pytest.approx(math.copysign(math.sqrt(abs(t)), t), abs=1e-15)
    assert disc_to_square("non-axial-half", t, 0.0) == (math.copysign(t * t, t), 0.0)
    assert disc_to_square("non-axial-half", 0.0, t) == (0.0, math.copysign(t * t, t))
    assert square_to_disc("non-axial-half", t, 0.0)[0] == pytest.approx(math.copysign(math.sqrt(abs(t)), t), abs=1e-15)


@pytest.mark.parametrize("m", CONTINUUM, ids=ids)
@given(data=st.data())
def test_continuum_identity(m, data):
    x, y = data.draw(square_point(m.is_open))
    u, v = square_to_disc(m, x, y)
    t2 = continuum_value(m, x, y)
    mt = float(modulator(m, math.sqrt(t2)))
    assert abs(u * u + v * v - mt * mt) < 1e-12


@given(data=st.data())
def test_three_squircular_forward_inverse_differ_by_sign(data):
    a = data.draw(st.floats(-0.7, 0.7))
    b = data.draw(st.floats(-0.7, 0.7))
    from elliptify.mappings import _three_sq_core

    fa, fb = _three_sq_core(np.float64(a), np.float64(b), 1.0)
    assert (fa, fb) == tuple(square_to_disc("3-squircular", a, b))
    ia, ib = _three_sq_core(np.float64(a), np.float64(b), -1.0)
    assert (ia, ib) == tuple(disc_to_square("3-squircular", a, b))


@pytest.mark.parametrize("m", FORWARD, ids=ids)
def test_batch_matches_pointwise(m):
    xs = np.linspace(-0.93, 0.97, 23)
    ys = np.linspace(0.91, -0.89, 23)
    u, v = square_to_disc(m, xs, ys)
    # numpy may take SIMD or scalar paths for transcendental functions, which can
    # differ in the last bit; anything beyond one ulp would mean mixing of elements
    for i in range(len(xs)):
        pu, pv = square_to_disc(m, xs[i], ys[i])
        assert abs(u[i] - pu) <= 2.3e-16 and abs(v[i] - pv) <= 2.3e-16
