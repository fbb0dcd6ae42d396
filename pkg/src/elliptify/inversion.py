"""Numerical inversion for mapping directions that have no closed form.

Two solvers are provided.  ``invert_radial`` exploits the radial constraint:
the unknown point lies on the ray through the target, so only its distance
from the origin is unknown and the problem is a monotone 1-D root find.
``invert_newton2d`` is a damped Newton iteration with a finite-difference
Jacobian for the general case.

Both iterate every element to convergence independently and freeze it, so a
point's result does not depend on the batch it was solved in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CapabilityError,
    ConvergenceError,
    DomainError,
    NonMonotoneError,
    ParamError,
    SingularJacobianError,
)
from .mappings import Kind, Mapping, as_mapping

__all__ = ["InversionConfig", "invert", "invert_lame_parametric", "invert_newton2d", "invert_radial"]

STRATEGIES = ("auto", "radial-1d", "newton-2d")

_FD_STEP = 1e-7
_BRACKET_SLACK = 1e-12
_EPS = np.finfo(float).eps
_GUESS_LIMIT = 1.0 - 1e-3
# below this 1 - u^2 - v^2 the Lame parametric image would be x = 1 in double precision
_LOG_SIGMA_MIN = np.log(1e-300)


@dataclass(frozen=True)
class InversionConfig:
    """Settings for the numerical inverse.

    ``tol`` is the accepted forward residual (infinity norm) of a solution;
    the solvers themselves iterate to machine precision.
    """

    tol: float = 1e-10
    max_iter: int = 100
    strategy: str = "auto"

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ParamError(f"tol must be positive, got {self.tol!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ParamError(f"max_iter must be an integer >= 1, got {self.max_iter!r}")
        if self.strategy not in STRATEGIES:
            raise ParamError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")


def _known(m: Mapping, direction: str):
    """The closed-form kernel to invert and whether the unknown lives in the square."""
    if direction == "d2s":
        fn = m.forward_kernel()
        unknown_in_square = True
    elif direction == "s2d":
        fn = m.inverse_kernel()
        unknown_in_square = False
    else:
        raise ValueError(f"direction must be 's2d' or 'd2s', got {direction!r}")
    if fn is None:
        raise CapabilityError(f"{m.name} has no closed form in either direction for {direction}")

    def call(p, q):
        with np.errstate(all="ignore"):
            return fn(p, q)

    return call, unknown_in_square


def _as_arrays(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a, b = np.broadcast_arrays(a, b)
    return a.ravel().copy(), b.ravel().copy(), a.shape


def _residual(fn, p, q, ta, tb):
    a, b = fn(p, q)
    return np.maximum(np.abs(a - ta), np.abs(b - tb))


def _check_residual(fn, p, q, ta, tb, tol, name):
    res = _residual(fn, p, q, ta, tb)
    bad = ~(res <= tol)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise ConvergenceError(
            f"{name}: numeric inverse missed target ({ta[i]:.15g}, {tb[i]:.15g}) "
            f"with residual {res[i]:.3e} > tol {tol:.1e}"
        )


def invert_radial(mapping, target_a, target_b, direction: str = "d2s", config: InversionConfig | None = None):
    """Invert a radial mapping by a 1-D safeguarded Newton solve along the ray.

    ``direction`` names the direction being produced: ``"d2s"`` turns disc
    targets into square points using the square->disc formula, ``"s2d"`` the
    reverse.  Returns arrays shaped like the broadcast targets.
    """
    cfg = config or InversionConfig()
    m = as_mapping(mapping)
    if not m.radial:
        raise CapabilityError(f"{m.name} is not radial; use the 2-D solver")
    fn, in_square = _known(m, direction)
    ta, tb, shape = _as_arrays(target_a, target_b)

    r = np.hypot(ta, tb)
    nz = r > 0.0
    da = np.where(nz, ta / np.where(nz, r, 1.0), 1.0)
    db = np.where(nz, tb / np.where(nz, r, 1.0), 0.0)
    lam_max = 1.0 / np.maximum(np.abs(da), np.abs(db)) if in_square else np.ones_like(r)

    def g(lam, idx):
        a, b = fn(lam * da[idx], lam * db[idx])
        return a * da[idx] + b * db[idx]

    idx_all = np.flatnonzero(nz)
    top = g(lam_max[idx_all], idx_all)
    short = top < r[idx_all] - _BRACKET_SLACK
    if short.any():
        i = idx_all[np.flatnonzero(short)[0]]
        raise NonMonotoneError(
            f"{m.name}: no bracket for target radius {r[i]:.15g} along direction "
            f"({da[i]:.6g}, {db[i]:.6g}); ray ends at {top[np.flatnonzero(short)[0]]:.15g}"
        )

    lo = np.zeros_like(r)
    hi = lam_max.copy()
    lam = np.minimum(r, lam_max)
    active = nz.copy()
    for _ in range(cfg.max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        x = lam[idx]
        f = g(x, idx) - r[idx]
        below = f < 0.0
        lo[idx] = np.where(below, x, lo[idx])
        hi[idx] = np.where(below, hi[idx], x)
        h = np.minimum(_FD_STEP, 0.5 * lam_max[idx])
        xp = np.minimum(x + h, lam_max[idx])
        xm = np.maximum(x - h, 0.0)
        slope = (g(xp, idx) - g(xm, idx)) / (xp - xm)
        with np.errstate(all="ignore"):
            newton = x - f / slope
        ok = (slope > 0.0) & (newton > lo[idx]) & (newton < hi[idx])
        nxt = np.where(ok, newton, 0.5 * (lo[idx] + hi[idx]))
        done = (f == 0.0) | (np.abs(nxt - x) <= 2.0 * _EPS * np.maximum(x, _EPS)) | (
            hi[idx] - lo[idx] <= 2.0 * _EPS * np.maximum(hi[idx], _EPS)
        )
        lam[idx] = np.where(f == 0.0, x, nxt)
        active[idx] = ~done

    pa = np.where(nz, lam * da, 0.0)
    pb = np.where(nz, lam * db, 0.0)
    if m.axial:
        on_axis = (ta == 0.0) | (tb == 0.0)
        pa = np.where(on_axis, ta, pa)
        pb = np.where(on_axis, tb, pb)
    _check_residual(fn, pa, pb, ta, tb, cfg.tol, m.name)
    return pa.reshape(shape), pb.reshape(shape)


def _project(p, q, in_square: bool, is_open: bool, lim: float | None = None):
    """Pull iterates back into the unknown's domain (or a margin inside it)."""
    if lim is None:
        lim = np.nextafter(1.0, 0.0) if is_open else 1.0
    if in_square:
        return np.clip(p, -lim, lim), np.clip(q, -lim, lim)
    r = np.hypot(p, q)
    over = r > lim
    s = np.where(over, lim / np.where(over, r, 1.0), 1.0)
    return p * s, q * s


def _initial_guess(ta, tb, in_square: bool):
    """Identity guess; square targets headed for the disc are first shrunk radially
    (max-norm to Euclidean norm) so the guess starts inside, away from the rim."""
    if in_square:
        return _project(ta, tb, True, False, _GUESS_LIMIT)
    r = np.hypot(ta, tb)
    s = np.where(r > 0.0, np.maximum(np.abs(ta), np.abs(tb)) / np.where(r > 0.0, r, 1.0), 1.0)
    return _project(ta * s, tb * s, False, False, _GUESS_LIMIT)


def _depth(p, q, in_square: bool):
    """How far a point has gone toward the rim: max-norm in the square, radius in the disc."""
    if in_square:
        return np.maximum(np.abs(p), np.abs(q))
    return np.hypot(p, q)


def _fd_column(fn, p, q, h, axis, in_square, is_open):
    """Central difference along one coordinate, one-sided at the domain edge."""
    e = (h, 0.0) if axis == 0 else (0.0, h)
    pp, qp = _project(p + e[0], q + e[1], in_square, is_open)
    pm, qm = _project(p - e[0], q - e[1], in_square, is_open)
    # projection onto the disc may move the other coordinate; fall back to the base point
    keep_p = (pp == p + e[0]) & (qp == q + e[1])
    keep_m = (pm == p - e[0]) & (qm == q - e[1])
    pp, qp = np.where(keep_p, pp, p), np.where(keep_p, qp, q)
    pm, qm = np.where(keep_m, pm, p), np.where(keep_m, qm, q)
    span = np.where(keep_p, h, 0.0) + np.where(keep_m, h, 0.0)
    a1, b1 = fn(pp, qp)
    a2, b2 = fn(pm, qm)
    with np.errstate(all="ignore"):
        return (a1 - a2) / span, (b1 - b2) / span


def invert_newton2d(mapping, target_a, target_b, direction: str = "d2s", config: InversionConfig | None = None):
    """Invert any mapping with damped Newton steps on the 2-D residual.

    The Jacobian comes from central differences with step 1e-7 and the
    iteration starts from the target itself (the identity guess).
    """
    cfg = config or InversionConfig()
    m = as_mapping(mapping)
    fn, in_square = _known(m, direction)
    ta, tb, shape = _as_arrays(target_a, target_b)

    p, q = _initial_guess(ta, tb, in_square)
    a, b = fn(p, q)
    fa = a - ta
    fb = b - tb
    res = np.hypot(fa, fb)
    active = res > 0.0
    h = _FD_STEP
    for _ in range(cfg.max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        pi, qi = p[idx], q[idx]
        j11, j21 = _fd_column(fn, pi, qi, h, 0, in_square, m.is_open)
        j12, j22 = _fd_column(fn, pi, qi, h, 1, in_square, m.is_open)
        det = j11 * j22 - j12 * j21
        singular = ~np.isfinite(det) | (np.abs(det) < 1e-300)
        if singular.any():
            i = idx[np.flatnonzero(singular)[0]]
            raise SingularJacobianError(
                f"{m.name}: singular Jacobian at ({p[i]:.15g}, {q[i]:.15g}) "
                f"while inverting ({ta[i]:.15g}, {tb[i]:.15g})"
            )
        sp = (j22 * fa[idx] - j12 * fb[idx]) / det
        sq = (j11 * fb[idx] - j21 * fa[idx]) / det

        # backtracking: halve the step until the Euclidean residual drops
        alpha = np.ones(idx.size)
        accepted = np.zeros(idx.size, dtype=bool)
        new_p, new_q = pi.copy(), qi.copy()
        new_fa, new_fb, new_res = fa[idx].copy(), fb[idx].copy(), res[idx].copy()
        for _ in range(40):
            pend = np.flatnonzero(~accepted)
            if pend.size == 0:
                break
            cp, cq = _project(
                pi[pend] - alpha[pend] * sp[pend], qi[pend] - alpha[pend] * sq[pend], in_square, m.is_open
            )
            ca, cb = fn(cp, cq)
            cfa = ca - ta[idx[pend]]
            cfb = cb - tb[idx[pend]]
            cres = np.hypot(cfa, cfb)
            # fraction-to-boundary: a step may close at most half the gap to the rim
            room = _depth(cp, cq, in_square) <= 0.5 * (1.0 + _depth(pi[pend], qi[pend], in_square))
            good = (cres < res[idx[pend]]) & room
            take = pend[good]
            new_p[take], new_q[take] = cp[good], cq[good]
            new_fa[take], new_fb[take], new_res[take] = cfa[good], cfb[good], cres[good]
            accepted[take] = True
            alpha[pend[~good]] *= 0.5

        step = np.maximum(np.abs(new_p - pi), np.abs(new_q - qi))
        p[idx], q[idx] = new_p, new_q
        fa[idx], fb[idx], res[idx] = new_fa, new_fb, new_res
        tiny = step <= 2.0 * _EPS * np.maximum(np.maximum(np.abs(new_p), np.abs(new_q)), _EPS)
        active[idx] = accepted & (new_res > 0.0) & ~tiny

    _check_residual(fn, p, q, ta, tb, cfg.tol, m.name)
    return p.reshape(shape), q.reshape(shape)


def invert_lame_parametric(target_x, target_y, config: InversionConfig | None = None):
    """Square->disc for the parametric Lame mapping via a scalar equation.

    With sigma = 1 - u^2 - v^2 the closed form gives |u| = |x|^(1/sigma), so
    sigma is the root of 1 - sigma = |x|^(2/sigma) + |y|^(2/sigma).  The
    difference of the two sides falls strictly as sigma grows, so the root is
    unique in (0, 1].  Near the corners sigma is tiny; solving for it directly,
    in log space, keeps its relative precision, which forming 1 - s would lose.
    """
    cfg = config or InversionConfig()
    tx, ty, shape = _as_arrays(target_x, target_y)
    ax = np.abs(tx)
    ay = np.abs(ty)
    if np.any(ax >= 1.0) or np.any(ay >= 1.0):
        raise DomainError("lame-parametric is open: need |x| < 1 and |y| < 1")
    with np.errstate(divide="ignore"):
        lx = np.log(ax)
        ly = np.log(ay)

    def h(tau, i):
        # value and tau-derivative of 1 - sigma - |x|^(2/sigma) - |y|^(2/sigma)
        sig = np.exp(tau)
        e = 2.0 / sig
        px = np.exp(e * lx[i])
        py = np.exp(e * ly[i])
        dx = np.where(px > 0.0, px * lx[i], 0.0)
        dy = np.where(py > 0.0, py * ly[i], 0.0)
        return 1.0 - sig - px - py, -sig + e * (dx + dy)

    n = tx.size
    lo = np.full(n, _LOG_SIGMA_MIN)
    hi = np.zeros(n)
    tau = np.log(np.maximum(1.0 - tx * tx - ty * ty, 0.5))
    active = (ax > 0.0) | (ay > 0.0)
    with np.errstate(all="ignore"):
        for _ in range(cfg.max_iter):
            idx = np.flatnonzero(active)
            if idx.size == 0:
                break
            t = tau[idx]
            f, slope = h(t, idx)
            above = f > 0.0
            lo[idx] = np.where(above, t, lo[idx])
            hi[idx] = np.where(above, hi[idx], t)
            newton = t - f / slope
            ok = (slope < 0.0) & (newton > lo[idx]) & (newton < hi[idx])
            nxt = np.where(ok, newton, 0.5 * (lo[idx] + hi[idx]))
            done = (f == 0.0) | (np.abs(nxt - t) <= 4.0 * _EPS) | (hi[idx] - lo[idx] <= 4.0 * _EPS)
            tau[idx] = np.where(f == 0.0, t, nxt)
            active[idx] = ~done

    inv_sigma = np.exp(-tau)
    u = np.sign(tx) * ax**inv_sigma
    v = np.sign(ty) * ay**inv_sigma
    fn, _ = _known(Mapping(Kind.LAME_PARAMETRIC), "s2d")
    _check_residual(fn, u, v, tx, ty, cfg.tol, Kind.LAME_PARAMETRIC.value)
    return u.reshape(shape), v.reshape(shape)


def invert(mapping, target_a, target_b, direction: str, config: InversionConfig | None = None):
    """Produce the missing direction of ``mapping`` numerically.

    With strategy ``auto`` radial kinds use the ray solver, the parametric
    Lame mapping its scalar reduction, and everything else 2-D Newton.
    """
    cfg = config or InversionConfig()
    m = as_mapping(mapping)
    strategy = cfg.strategy
    if strategy == "auto":
        if m.radial:
            strategy = "radial-1d"
        elif m.kind is Kind.LAME_PARAMETRIC and direction == "s2d":
            return invert_lame_parametric(target_a, target_b, cfg)
        else:
            strategy = "newton-2d"
    if strategy == "radial-1d":
        return invert_radial(m, target_a, target_b, direction, cfg)
    return invert_newton2d(m, target_a, target_b, direction, cfg)
