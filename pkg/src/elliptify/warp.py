"""Raster warping between rectangle and ellipse images.

Warps use inverse sampling: every output pixel centre (or k x k sub-pixel
centre when oversampling) is pushed through the opposite-direction mapping
into the source image, which is then interpolated there.

Alpha is a coverage mask.  Source pixels with alpha 0 contribute nothing,
colours are averaged with alpha weights, and output alpha 0 marks pixels
outside the mapped region.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from PIL import Image

from .eccentric import RectSpec, ellipse_to_rect, rect_to_ellipse
from .errors import CapabilityError, ParamError
from .inversion import InversionConfig
from .mappings import Mapping, as_mapping

__all__ = [
    "DIRECTIONS",
    "INTERPOLATIONS",
    "RasterImage",
    "WarpJob",
    "crop",
    "elliptify",
    "load_png",
    "pixel_to_unit",
    "psnr",
    "rectify",
    "save_png",
    "unit_to_pixel",
    "warp",
]

DIRECTIONS = ("elliptify", "rectify", "crop-baseline")
INTERPOLATIONS = ("bilinear", "nearest")

# rows handed to one worker at a time; results do not depend on this value
_ROW_CHUNK = 32


@dataclass(frozen=True, eq=False)
class RasterImage:
    """An 8-bit RGBA image stored as a (height, width, 4) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim == 2:
            arr = np.stack([arr, arr, arr, np.full_like(arr, 255)], axis=-1)
        elif arr.ndim == 3 and arr.shape[2] == 3:
            arr = np.concatenate([arr, np.full(arr.shape[:2] + (1,), 255, dtype=arr.dtype)], axis=-1)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ParamError(f"expected an (h, w, 4) RGBA array, got shape {np.shape(self.pixels)}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ParamError("image must be at least 1x1")
        if arr.dtype != np.uint8:
            arr = np.clip(np.rint(np.asarray(arr, dtype=float)), 0, 255).astype(np.uint8)
        object.__setattr__(self, "pixels", np.ascontiguousarray(arr))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        return isinstance(other, RasterImage) and np.array_equal(self.pixels, other.pixels)


def load_png(path) -> RasterImage:
    with Image.open(path) as im:
        return RasterImage(np.array(im.convert("RGBA")))


def save_png(img: RasterImage, path) -> None:
    Image.fromarray(img.pixels).save(path, format="PNG")


def pixel_to_unit(ix, iy, w: int, h: int, spec: Optional[RectSpec] = None):
    """Pixel centre (ix, iy) to rectangle coordinates, y pointing up.

    The rectangle defaults to a = w / h, b = 1.  Fractional indices are
    allowed (sub-pixel sample positions).
    """
    spec = spec or RectSpec.from_size(w, h)
    ix = np.asarray(ix, dtype=float)
    iy = np.asarray(iy, dtype=float)
    x = ((ix + 0.5) / w * 2.0 - 1.0) * spec.a
    y = (1.0 - (iy + 0.5) / h * 2.0) * spec.b
    return x, y


def unit_to_pixel(x, y, w: int, h: int, spec: Optional[RectSpec] = None):
    """Inverse of :func:`pixel_to_unit`, returning continuous pixel indices."""
    spec = spec or RectSpec.from_size(w, h)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    px = (x / spec.a + 1.0) * 0.5 * w - 0.5
    py = (1.0 - y / spec.b) * 0.5 * h - 0.5
    return px, py


@dataclass(frozen=True)
class WarpJob:
    """What to do to an image.

    A ``mapping`` of None stands for the identity, i.e. the crop baseline.
    ``spec`` is derived from the image when omitted; if given, its aspect
    must match the image.
    """

    mapping: Optional[Mapping] = None
    direction: str = "elliptify"
    interpolation: str = "bilinear"
    oversample: int = 1
    spec: Optional[RectSpec] = None
    numeric_fallback: bool = True
    jobs: Optional[int] = None
    config: InversionConfig = field(default_factory=InversionConfig)

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ParamError(f"direction must be one of {DIRECTIONS}, got {self.direction!r}")
        if self.interpolation not in INTERPOLATIONS:
            raise ParamError(f"interpolation must be one of {INTERPOLATIONS}, got {self.interpolation!r}")
        if int(self.oversample) != self.oversample or self.oversample < 1:
            raise ParamError(f"oversample must be an integer >= 1, got {self.oversample!r}")
        if self.jobs is not None and self.jobs < 1:
            raise ParamError(f"jobs must be >= 1, got {self.jobs!r}")
        if self.mapping is not None:
            object.__setattr__(self, "mapping", as_mapping(self.mapping))

    def resolve_spec(self, img: RasterImage) -> RectSpec:
        if self.spec is None:
            return RectSpec.from_size(img.width, img.height)
        if not np.isclose(self.spec.aspect, img.width / img.height, rtol=1e-12, atol=0.0):
            raise ParamError(
                f"spec aspect {self.spec.aspect:.6g} does not match image aspect {img.width}/{img.height}"
            )
        return self.spec


def _sample(src: np.ndarray, px, py, interpolation: str):
    """Alpha-weighted interpolation of src (h, w, 4 float) at pixel coords.

    Returns (rgb, alpha) where alpha is averaged over the neighbours that are
    themselves inside the source region.
    """
    h, w = src.shape[:2]
    px = np.clip(px, 0.0, w - 1.0)
    py = np.clip(py, 0.0, h - 1.0)
    if interpolation == "nearest":
        vals = src[np.rint(py).astype(np.intp), np.rint(px).astype(np.intp)]
        return vals[:, :3], vals[:, 3]

    x0 = np.floor(px).astype(np.intp)
    y0 = np.floor(py).astype(np.intp)
    fx = px - x0
    fy = py - y0
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    acc = np.zeros((px.size, 3))
    wa_sum = np.zeros(px.size)
    wv_sum = np.zeros(px.size)
    for yi, xi, wt in (
        (y0, x0, (1.0 - fx) * (1.0 - fy)),
        (y0, x1, fx * (1.0 - fy)),
        (y1, x0, (1.0 - fx) * fy),
        (y1, x1, fx * fy),
    ):
        v = src[yi, xi]
        a = v[:, 3]
        wa = wt * a
        acc += wa[:, None] * v[:, :3]
        wa_sum += wa
        wv_sum += np.where(a > 0.0, wt, 0.0)
    ok = wa_sum > 0.0
    safe = np.where(ok, wa_sum, 1.0)
    rgb = np.where(ok[:, None], acc / safe[:, None], 0.0)
    alpha = np.where(ok, wa_sum / np.where(wv_sum > 0.0, wv_sum, 1.0), 0.0)
    return rgb, alpha


def _source_coords(job: WarpJob, spec: RectSpec, w: int, h: int, px, py):
    """Where the output sample positions (pixel coords) read from, plus coverage."""
    x, y = pixel_to_unit(px, py, w, h, spec)
    if job.mapping is None or job.direction == "crop-baseline":
        # identity map, restricted to the ellipse when elliptifying
        inside = np.ones(px.shape, dtype=bool)
        if job.direction != "rectify":
            inside = (x / spec.a) ** 2 + (y / spec.b) ** 2 < 1.0
        return px, py, inside
    if job.direction == "elliptify":
        inside = (x / spec.a) ** 2 + (y / spec.b) ** 2 < 1.0
        sx = np.zeros_like(x)
        sy = np.zeros_like(y)
        if inside.any():
            sx[inside], sy[inside] = ellipse_to_rect(
                job.mapping, spec, x[inside], y[inside], numeric_fallback=job.numeric_fallback, config=job.config
            )
    else:
        inside = np.ones(px.shape, dtype=bool)
        sx, sy = rect_to_ellipse(
            job.mapping, spec, x, y, numeric_fallback=job.numeric_fallback, config=job.config
        )
    qx, qy = unit_to_pixel(sx, sy, w, h, spec)
    return qx, qy, inside


def _render_rows(src: np.ndarray, job: WarpJob, spec: RectSpec, r0: int, r1: int) -> np.ndarray:
    h, w = src.shape[:2]
    k = int(job.oversample)
    cols = np.arange(w, dtype=float)
    rows = np.arange(r0, r1, dtype=float)
    acc_rgb = np.zeros((r1 - r0, w, 3))
    acc_a = np.zeros((r1 - r0, w))
    for sy in range(k):
        for sx in range(k):
            # sub-pixel centre offsets; k = 1 gives the pixel centre exactly
            ox = (sx + 0.5) / k - 0.5
            oy = (sy + 0.5) / k - 0.5
            py, px = np.meshgrid(rows + oy, cols + ox, indexing="ij")
            qx, qy, inside = _source_coords(job, spec, w, h, px.ravel(), py.ravel())
            rgb, alpha = _sample(src, qx, qy, job.interpolation)
            alpha = np.where(inside, alpha, 0.0)
            acc_rgb += (alpha[:, None] * rgb).reshape(r1 - r0, w, 3)
            acc_a += alpha.reshape(r1 - r0, w)
    ok = acc_a > 0.0
    rgb = np.where(ok[..., None], acc_rgb / np.where(ok, acc_a, 1.0)[..., None], 0.0)
    out = np.concatenate([rgb, (acc_a / (k * k))[..., None]], axis=-1)
    return np.clip(np.rint(out), 0.0, 255.0).astype(np.uint8)


def _check_capability(job: WarpJob) -> None:
    m = job.mapping
    if m is None or job.direction == "crop-baseline" or job.numeric_fallback:
        return
    if job.direction == "elliptify" and not m.analytic_inverse:
        raise CapabilityError(
            f"{m.name}: elliptify needs the disc-to-square direction, which has no closed form "
            "(enable the numeric fallback)"
        )
    if job.direction == "rectify" and not m.analytic_forward:
        raise CapabilityError(
            f"{m.name}: rectify needs the square-to-disc direction, which has no closed form "
            "(enable the numeric fallback)"
        )


def warp(img: RasterImage, job: WarpJob) -> RasterImage:
    """Run ``job`` on ``img``; output has the same size as the input."""
    _check_capability(job)
    spec = job.resolve_spec(img)
    src = img.pixels.astype(float)
    h = img.height
    bounds = [(r, min(r + _ROW_CHUNK, h)) for r in range(0, h, _ROW_CHUNK)]
    jobs = job.jobs or os.cpu_count() or 1
    if jobs == 1 or len(bounds) == 1:
        parts = [_render_rows(src, job, spec, r0, r1) for r0, r1 in bounds]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda b: _render_rows(src, job, spec, b[0], b[1]), bounds))
    return RasterImage(np.concatenate(parts, axis=0))


def elliptify(img: RasterImage, job: WarpJob) -> RasterImage:
    """Rectangle image to ellipse image (pixels outside the ellipse get alpha 0)."""
    if job.direction == "rectify":
        raise ParamError("elliptify called with a rectify job")
    return warp(img, job)


def rectify(img: RasterImage, job: WarpJob) -> RasterImage:
    """Ellipse image back to a rectangle image; source alpha marks the ellipse."""
    if job.direction == "elliptify":
        raise ParamError("rectify called with an elliptify job")
    if job.direction == "crop-baseline":
        # crop is the identity inside the ellipse: read every pixel in place
        job = replace(job, mapping=None, direction="rectify")
    return warp(img, job)


def crop(img: RasterImage, *, jobs: Optional[int] = None) -> RasterImage:
    """Baseline: keep the inscribed ellipse as is and clear the corners."""
    return warp(img, WarpJob(None, "crop-baseline", "nearest", jobs=jobs))


def psnr(a: RasterImage, b: RasterImage, mask: Optional[np.ndarray] = None) -> float:
    """Peak signal-to-noise ratio in dB over the RGB channels of masked pixels."""
    x = a.pixels[..., :3].astype(float)
    y = b.pixels[..., :3].astype(float)
    if mask is not None:
        x = x[mask]
        y = y[mask]
    mse = float(np.mean((x - y) ** 2))
    if mse == 0.0:
        return float("inf")
    return 10.0 * np.log10(255.0**2 / mse)
