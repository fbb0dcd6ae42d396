"""Command-line interface.

Exit codes: 0 success, 1 a check failed (round trip or grid verification)
or a numeric solve did not converge, 2 bad arguments or a point outside the
domain, 3 file I/O failure, 4 the requested direction is unavailable.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import __version__
from .diagnostics import roundtrip_error, roundtrip_threshold
from .eccentric import RectSpec, ellipse_to_rect, rect_to_ellipse
from .errors import CapabilityError, MappingError
from .grid import grid_residual, render_polar_grid_in_square, render_square_grid_in_disc, to_svg
from .inversion import InversionConfig
from .mappings import Kind, Mapping, disc_to_square, get_mapping, list_mappings, square_to_disc
from .warp import WarpJob, elliptify, load_png, rectify, save_png

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_CAPABILITY = 4

CROP = "crop"
GRID_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so main() returns codes."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _add_map(p, allow_crop=False):
    names = "a registry name (see --list-maps)" + (" or 'crop'" if allow_crop else "")
    p.add_argument("--map", required=True, metavar="NAME", help=f"mapping: {names}")
    p.add_argument("--beta", type=float, default=None, help="blend parameter in (0, 1] for blended-grid")
    p.add_argument(
        "--numeric-fallback",
        action="store_true",
        help="solve directions without a closed form numerically instead of failing",
    )
    p.add_argument("--tol", type=float, default=1e-10, help="accepted residual of numeric inverses")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="elliptify",
        description="Square/disc and rectangle/ellipse mappings for points, images and diagrams.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--list-maps", action="store_true", help="list every mapping with its capabilities")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    for name, helptext in (
        ("elliptify", "warp a rectangular image into its inscribed ellipse"),
        ("rectify", "warp an elliptical image (alpha marks the ellipse) back to the rectangle"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_map(p, allow_crop=True)
        p.add_argument("--interp", choices=("bilinear", "nearest"), default="bilinear")
        p.add_argument("--oversample", type=int, default=1, help="k x k samples per output pixel")
        p.add_argument("--jobs", type=int, default=None, help="worker threads (default: logical cores)")
        p.add_argument("input", help="input PNG")
        p.add_argument("output", help="output PNG")

    p = sub.add_parser("probe", help="map a single point")
    _add_map(p)
    p.add_argument("--dir", required=True, choices=("s2d", "d2s", "r2e", "e2r"), dest="direction")
    p.add_argument("--a", type=float, default=1.0, help="half-width for r2e/e2r")
    p.add_argument("--b", type=float, default=1.0, help="half-height for r2e/e2r")
    p.add_argument("x", type=float)
    p.add_argument("y", type=float)

    p = sub.add_parser("roundtrip", help="measure the round-trip error on quasi-random samples")
    p.add_argument("--map", required=True, metavar="NAME")
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("-n", type=int, default=10_000, help="number of samples")
    p.add_argument("--eps", type=float, default=1e-6, help="inset from the boundary")

    p = sub.add_parser("grid", help="render a diagnostic grid diagram as SVG")
    _add_map(p)
    p.add_argument("--style", required=True, choices=("polar-in-square", "cartesian-in-disc"))
    p.add_argument("--out", required=True, help="output SVG path")
    p.add_argument("--lines", type=int, default=11, help="grid lines per direction (cartesian-in-disc)")
    p.add_argument("--rings", type=int, default=8, help="rings (polar-in-square)")
    p.add_argument("--spokes", type=int, default=16, help="spokes (polar-in-square)")
    p.add_argument("--samples", type=int, default=181, help="vertices per curve")
    p.add_argument("--size", type=int, default=512, help="SVG viewport size in pixels")
    p.add_argument("--verify", action="store_true", help="check contour identities and report the residual")
    return parser


def _fmt(v: float) -> str:
    s = f"{v:.15g}"
    return "0" if s == "-0" else s


def _mapping(args) -> Mapping:
    return get_mapping(args.map, args.beta)


def _config(args) -> InversionConfig:
    return InversionConfig(tol=args.tol)


def _list_maps(out) -> int:
    rows = []
    for m in list_mappings():
        rows.append(
            (
                m.name,
                "open" if m.is_open else "closed",
                "analytic" if m.analytic_forward else "numeric",
                "analytic" if m.analytic_inverse else "numeric",
                "radial" if m.radial else "-",
                "axial" if m.axial else "-",
                m.title,
            )
        )
    header = ("name", "domain", "s2d", "d2s", "radial", "axial", "title")
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header) - 1)]
    for r in [header] + rows:
        cells = [c.ljust(w) for c, w in zip(r[:-1], widths)]
        print("  ".join(cells + [r[-1]]), file=out)
    return EXIT_OK


def _warp(args, out) -> int:
    if args.map.strip().lower() == CROP:
        if args.beta is not None:
            raise argparse.ArgumentTypeError("crop takes no --beta")
        job = WarpJob(None, "crop-baseline", args.interp, args.oversample, jobs=args.jobs)
    else:
        job = WarpJob(
            _mapping(args),
            args.command,
            args.interp,
            args.oversample,
            numeric_fallback=args.numeric_fallback,
            jobs=args.jobs,
            config=_config(args),
        )
    img = load_png(args.input)
    result = elliptify(img, job) if args.command == "elliptify" else rectify(img, job)
    save_png(result, args.output)
    return EXIT_OK


def _probe(args, out) -> int:
    m = _mapping(args)
    kw = dict(numeric_fallback=args.numeric_fallback, config=_config(args))
    if args.direction == "s2d":
        res = square_to_disc(m, args.x, args.y, **kw)
    elif args.direction == "d2s":
        res = disc_to_square(m, args.x, args.y, **kw)
    elif args.direction == "r2e":
        res = rect_to_ellipse(m, RectSpec(args.a, args.b), args.x, args.y, **kw)
    else:
        res = ellipse_to_rect(m, RectSpec(args.a, args.b), args.x, args.y, **kw)
    print(f"{_fmt(res[0])} {_fmt(res[1])}", file=out)
    return EXIT_OK


def _roundtrip(args, out) -> int:
    m = _mapping(args)
    if args.n < 1:
        raise argparse.ArgumentTypeError("-n must be at least 1")
    if not 0.0 <= args.eps < 1.0:
        raise argparse.ArgumentTypeError("--eps must lie in [0, 1)")
    err = roundtrip_error(m, args.n, args.eps)
    thr = roundtrip_threshold(m)
    ok = err < thr
    via = "analytic" if m.analytic_forward and m.analytic_inverse else "numeric inverse"
    print(f"{m.name}: n={args.n} max_err={err:.3e} threshold={thr:.0e} ({via}) {'ok' if ok else 'FAIL'}", file=out)
    return EXIT_OK if ok else EXIT_CHECK


def _grid(args, out) -> int:
    m = _mapping(args)
    kw = dict(numeric_fallback=args.numeric_fallback, config=_config(args))
    if args.style == "polar-in-square":
        drawing = render_polar_grid_in_square(m, args.rings, args.spokes, args.samples, **kw)
    else:
        drawing = render_square_grid_in_disc(m, args.lines, args.samples, **kw)
    svg = to_svg(drawing, size=args.size)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    if args.verify:
        worst = grid_residual(drawing, m)
        if worst is None:
            print(f"{m.name}: no contour identity to verify for {args.style}", file=out)
            return EXIT_OK
        ok = worst <= GRID_TOL
        print(f"{m.name}: max contour residual {worst:.3e} {'ok' if ok else 'FAIL'}", file=out)
        return EXIT_OK if ok else EXIT_CHECK
    return EXIT_OK


_COMMANDS = {
    "elliptify": _warp,
    "rectify": _warp,
    "probe": _probe,
    "roundtrip": _roundtrip,
    "grid": _grid,
}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    if args.list_maps:
        return _list_maps(out)
    if args.command is None:
        parser.print_usage(err)
        print("elliptify: error: a command or --list-maps is required", file=err)
        return EXIT_USAGE

    where = f"{args.command} --map {args.map}"
    try:
        return _COMMANDS[args.command](args, out)
    except CapabilityError as exc:
        print(f"elliptify: {where}: unavailable: {exc}", file=err)
        return EXIT_CAPABILITY
    except (ValueError, argparse.ArgumentTypeError) as exc:
        # DomainError and ParamError are ValueErrors
        print(f"elliptify: {where}: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"elliptify: {where}: I/O error: {exc}", file=err)
        return EXIT_IO
    except MappingError as exc:
        print(f"elliptify: {where}: {exc}", file=err)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
