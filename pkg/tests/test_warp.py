import numpy as np
import pytest
from chart import interior_mask, make_chart, psnr_rgb, reference_roundtrip

from elliptify.eccentric import RectSpec
from elliptify.errors import CapabilityError, ParamError
from elliptify.mappings import list_mappings
from elliptify.warp import (
    RasterImage,
    WarpJob,
    crop,
    elliptify,
    load_png,
    pixel_to_unit,
    psnr,
    rectify,
    save_png,
    unit_to_pixel,
)

NAMES = [m.name for m in list_mappings()]


@pytest.fixture(scope="module")
def chart():
    return make_chart()


@pytest.fixture(scope="module")
def small():
    rng = np.random.default_rng(7)
    px = rng.integers(0, 256, size=(41, 63, 4), dtype=np.uint8)
    px[..., 3] = 255
    return RasterImage(px)


def _ellipse_mask(h, w):
    spec = RectSpec.from_size(w, h)
    iy, ix = np.mgrid[0:h, 0:w]
    x, y = pixel_to_unit(ix, iy, w, h, spec)
    return (x / spec.a) ** 2 + (y / spec.b) ** 2 < 1.0


def test_pixel_to_unit_examples():
    x, y = pixel_to_unit(0, 0, 2, 2)
    assert (float(x), float(y)) == (-0.5, 0.5)
    x, y = pixel_to_unit(2, 3, 5, 7)
    assert (float(x), float(y)) == (0.0, 0.0)
    x, y = pixel_to_unit(767, 511, 768, 512)
    assert float(x) == pytest.approx(1.5 - 1.5 / 768) and float(y) == pytest.approx(-1 + 1 / 512)


def test_pixel_roundtrip_integer():
    iy, ix = np.mgrid[0:37, 0:53]
    x, y = pixel_to_unit(ix, iy, 53, 37)
    px, py = unit_to_pixel(x, y, 53, 37)
    assert np.array_equal(np.rint(px), ix) and np.array_equal(np.rint(py), iy)
    assert np.max(np.abs(px - ix)) < 1e-12 and np.max(np.abs(py - iy)) < 1e-12


def test_crop_baseline(small):
    out = crop(small)
    mask = _ellipse_mask(small.height, small.width)
    assert np.array_equal(out.pixels[mask], small.pixels[mask])
    assert np.all(out.pixels[~mask][:, 3] == 0)


def test_crop_then_rectify_nearest_exact(small):
    out = crop(small)
    back = rectify(out, WarpJob(None, "crop-baseline", "nearest"))
    mask = _ellipse_mask(small.height, small.width)
    assert np.array_equal(back.pixels[mask], small.pixels[mask])


@pytest.mark.parametrize("name", NAMES)
def test_center_pixel_preserved(name, small):
    e = elliptify(small, WarpJob(name, "elliptify"))
    r = rectify(small, WarpJob(name, "rectify"))
    cy, cx = small.height // 2, small.width // 2
    assert np.array_equal(e.pixels[cy, cx], small.pixels[cy, cx])
    assert np.array_equal(r.pixels[cy, cx], small.pixels[cy, cx])


@pytest.mark.parametrize("name", ["fg-squircular", "schwarz-christoffel", "squelched-grid", "4-squircular"])
def test_alpha_mask_is_ellipse(name, small):
    out = elliptify(small, WarpJob(name, "elliptify"))
    mask = _ellipse_mask(small.height, small.width)
    assert np.array_equal(out.pixels[..., 3] > 0, mask)


def test_rectify_ignores_outside(small):
    e = elliptify(small, WarpJob("fg-squircular", "elliptify"))
    junk = e.pixels.copy()
    junk[junk[..., 3] == 0, :3] = 255
    a = rectify(e, WarpJob("fg-squircular", "rectify"))
    b = rectify(RasterImage(junk), WarpJob("fg-squircular", "rectify"))
    assert a == b


@pytest.mark.parametrize("name", ["fg-squircular", "elliptical-grid", "schwarz-christoffel", "tapered4"])
def test_roundtrip_psnr_vs_reference(name, chart):
    e = elliptify(chart, WarpJob(name, "elliptify"))
    back = rectify(e, WarpJob(name, "rectify"))
    mask = interior_mask(chart.height, chart.width)
    ours = psnr(back, chart, mask)
    ref = psnr_rgb(reference_roundtrip(chart, name), chart.pixels[..., :3], mask)
    assert ours >= 30.0
    assert ours >= ref - 0.5


def test_deterministic_across_jobs(small):
    a = elliptify(small, WarpJob("non-axial-tapered2", "elliptify", jobs=1))
    b = elliptify(small, WarpJob("non-axial-tapered2", "elliptify", jobs=4))
    c = elliptify(small, WarpJob("non-axial-tapered2", "elliptify", jobs=4))
    assert a == b == c


def test_oversample(small):
    one = elliptify(small, WarpJob("fg-squircular", "elliptify"))
    three = elliptify(small, WarpJob("fg-squircular", "elliptify", oversample=3))
    cy, cx = small.height // 2, small.width // 2
    assert three.pixels.shape == one.pixels.shape
    # averaging smooths the random image, and the boundary gains partial coverage
    assert three.pixels[..., :3].astype(float).std() < one.pixels[..., :3].astype(float).std()
    partial = (three.pixels[..., 3] > 0) & (three.pixels[..., 3] < 255)
    assert partial.any()
    assert np.all(three.pixels[_ellipse_mask(small.height, small.width) & ~partial, 3] == 255)
    assert three.pixels[cy, cx, 3] == 255


def test_nearest_values_come_from_source(small):
    out = elliptify(small, WarpJob("elliptical-grid", "elliptify", "nearest"))
    src = {tuple(p) for p in small.pixels.reshape(-1, 4)}
    inside = out.pixels[..., 3] > 0
    assert all(tuple(p) in src for p in out.pixels[inside])


def test_capability_without_fallback(small):
    with pytest.raises(CapabilityError):
        elliptify(small, WarpJob("4-squircular", "elliptify", numeric_fallback=False))
    with pytest.raises(CapabilityError):
        rectify(small, WarpJob("lame-parametric", "rectify", numeric_fallback=False))
    elliptify(small, WarpJob("lame-parametric", "elliptify", numeric_fallback=False))


def test_open_kinds_never_raise(small):
    for name in ("squelched-grid", "lame-parametric", "vertical-squelch"):
        for d in ("elliptify", "rectify"):
            out = (elliptify if d == "elliptify" else rectify)(small, WarpJob(name, d))
            assert out.pixels.shape == small.pixels.shape


@pytest.mark.parametrize(
    "kw",
    [dict(direction="sideways"), dict(interpolation="cubic"), dict(oversample=0), dict(jobs=0)],
)
def test_job_validation(kw):
    with pytest.raises(ParamError):
        WarpJob("fg-squircular", **kw)


def test_spec_must_match(small):
    with pytest.raises(ParamError):
        elliptify(small, WarpJob("fg-squircular", spec=RectSpec(1, 1)))


def test_png_io(tmp_path, small):
    p = tmp_path / "a.png"
    save_png(small, p)
    assert load_png(p) == small
    rgb = tmp_path / "rgb.png"
    from PIL import Image

    Image.fromarray(small.pixels[..., :3]).save(rgb)
    img = load_png(rgb)
    assert np.all(img.pixels[..., 3] == 255)
    with pytest.raises(OSError):
        load_png(tmp_path / "missing.png")
