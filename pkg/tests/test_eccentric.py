import math

import numpy as np
import pytest

from elliptify.diagnostics import disc_samples, square_samples
from elliptify.eccentric import RectSpec, ellipse_to_rect, rect_to_ellipse
from elliptify.errors import DomainError, ParamError
from elliptify.mappings import disc_to_square, list_mappings, square_to_disc

R2 = math.sqrt(2.0)
# mpmath, 30 digits: 3 g(0.5, 0.5), 2 h(0.5, 0.5) for 2-Squircular
TWO_SQ_32 = (1.45521375021799784, 0.970142500145331894)

BIDIRECTIONAL = [m for m in list_mappings() if m.analytic_forward and m.analytic_inverse]
AXIAL = [m for m in list_mappings() if m.axial]


def test_fg_corner():
    u, v = rect_to_ellipse("fg-squircular", RectSpec(2, 1), 2.0, 1.0)
    assert u == pytest.approx(R2, abs=1e-15) and v == pytest.approx(1 / R2, abs=1e-15)
    x, y = ellipse_to_rect("fg-squircular", RectSpec(2, 1), R2, 1 / R2)
    assert x == pytest.approx(2.0, abs=1e-12) and y == pytest.approx(1.0, abs=1e-12)


def test_two_squircular_reference():
    u, v = rect_to_ellipse("2-squircular", RectSpec(3, 2), 1.5, 1.0)
    assert u == pytest.approx(TWO_SQ_32[0], abs=1e-15)
    assert v == pytest.approx(TWO_SQ_32[1], abs=1e-15)


@pytest.mark.parametrize("m", AXIAL, ids=lambda m: m.name)
def test_axial_survives_scaling(m):
    spec = RectSpec(1.7, 0.6)
    assert tuple(rect_to_ellipse(m, spec, 1.2, 0.0)) == (1.2, 0.0)
    assert tuple(rect_to_ellipse(m, spec, 0.0, -0.5)) == (0.0, -0.5)


@pytest.mark.parametrize("m", BIDIRECTIONAL, ids=lambda m: m.name)
def test_center_fixed(m):
    assert tuple(ellipse_to_rect(m, RectSpec(1.91, 1), 0.0, 0.0)) == (0.0, 0.0)


def test_elliptical_grid_wide_aspect():
    spec = RectSpec(1.91, 1.0)
    x, y = square_samples(10_000, 1e-6)
    q = (spec.a * x, spec.b * y)
    p = rect_to_ellipse("elliptical-grid", spec, *q)
    back = ellipse_to_rect("elliptical-grid", spec, *p)
    err = max(np.max(np.abs(back[0] - q[0])), np.max(np.abs(back[1] - q[1])))
    assert err < 1e-9 * spec.a


@pytest.mark.parametrize("m", BIDIRECTIONAL, ids=lambda m: m.name)
def test_scaling_commutation(m):
    spec = RectSpec(2.5, 0.8)
    x, y = square_samples(500, 1e-3)
    u, v = rect_to_ellipse(m, spec, spec.a * x, spec.b * y)
    gu, gv = square_to_disc(m, x, y)
    assert np.max(np.abs(u - spec.a * gu)) < 1e-12
    assert np.max(np.abs(v - spec.b * gv)) < 1e-12


@pytest.mark.parametrize("m", BIDIRECTIONAL, ids=lambda m: m.name)
def test_unit_spec_is_core_bit_for_bit(m):
    x, y = square_samples(300, 1e-3)
    assert all(np.array_equal(a, b) for a, b in zip(rect_to_ellipse(m, RectSpec(), x, y), square_to_disc(m, x, y)))
    u, v = disc_samples(300, 1e-3)
    assert all(np.array_equal(a, b) for a, b in zip(ellipse_to_rect(m, RectSpec(), u, v), disc_to_square(m, u, v)))


@pytest.mark.parametrize("aspect", [1.0, 1.5, 1.91, 2.0])
@pytest.mark.parametrize("m", BIDIRECTIONAL, ids=lambda m: m.name)
def test_ellipse_side_roundtrip(m, aspect):
    spec = RectSpec(aspect, 1.0)
    u, v = disc_samples(2000, 1e-6)
    p = (spec.a * u, spec.b * v)
    q = ellipse_to_rect(m, spec, *p)
    back = rect_to_ellipse(m, spec, *q)
    tol = 1e-6 if m.name == "schwarz-christoffel" else 1e-9
    assert max(np.max(np.abs(back[0] - p[0])), np.max(np.abs(back[1] - p[1]))) < tol * max(spec.a, spec.b)


def test_containment():
    spec = RectSpec(1.5, 1.0)
    x, y = square_samples(2000, 0.0)
    u, v = rect_to_ellipse("fg-squircular", spec, spec.a * x, spec.b * y)
    assert np.all((u / spec.a) ** 2 + (v / spec.b) ** 2 <= 1.0 + 1e-12)


def test_domain_errors():
    with pytest.raises(DomainError):
        rect_to_ellipse("fg-squircular", RectSpec(2, 1), 2.1, 0.0)
    with pytest.raises(DomainError):
        ellipse_to_rect("fg-squircular", RectSpec(2, 1), 1.8, 0.5)
    with pytest.raises(DomainError):
        rect_to_ellipse("squelched-grid", RectSpec(2, 1), 2.0, 1.0)


@pytest.mark.parametrize("a,b", [(0, 1), (-1, 1), (1, float("inf")), (float("nan"), 1)])
def test_spec_validation(a, b):
    with pytest.raises(ParamError):
        RectSpec(a, b)


def test_from_size():
    s = RectSpec.from_size(768, 512)
    assert (s.a, s.b, s.aspect) == (1.5, 1.0, 1.5)
    with pytest.raises(ParamError):
        RectSpec.from_size(0, 5)


def test_stretched_name():
    from elliptify.mappings import get_mapping

    assert get_mapping("schwarz-christoffel").eccentric_title == "Stretched Schwarz-Christoffel"
    assert get_mapping("stretched-schwarz-christoffel").name == "schwarz-christoffel"
