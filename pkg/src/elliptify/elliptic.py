"""Complex elliptic functions needed by the conformal (Schwarz-Christoffel) map.

Only the pieces that map uses are provided: the incomplete integral of the
first kind F(phi, k) for complex amplitude, the Jacobi function cn(z, k) for
complex argument, and the quarter period K(k).  Everything is vectorised over
numpy arrays and every element is iterated independently, so results do not
depend on how a batch of points is split up.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "DEFAULT_K",
    "agm",
    "carlson_rf",
    "complete_k",
    "jacobi_cn",
    "jacobi_sncndn",
    "k_e",
    "legendre_f",
]

DEFAULT_K = 1.0 / math.sqrt(2.0)
MAX_ITER = 64
AGM_TOL = 1e-14

# Carlson's duplication stops once 4**-m * Q < |A_m|; the fifth-order series
# then leaves a relative error near r / 4 with Q = (3 r) ** (-1/6) * max|A0 - x|.
_RF_R = 2.2e-16
_RF_QSCALE = (3.0 * _RF_R) ** (-1.0 / 6.0)


def agm(a: float, b: float, tol: float = AGM_TOL, max_iter: int = MAX_ITER) -> float:
    """Arithmetic-geometric mean of two positive reals."""
    for _ in range(max_iter):
        if abs(a - b) <= tol * abs(a):
            return 0.5 * (a + b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    raise ConvergenceError(f"AGM did not converge in {max_iter} iterations")


def complete_k(k: float = DEFAULT_K) -> float:
    """Complete integral of the first kind K(k) = pi / (2 agm(1, k'))."""
    if not 0.0 <= k < 1.0:
        raise DomainError(f"modulus must lie in [0, 1), got {k!r}")
    return math.pi / (2.0 * agm(1.0, math.sqrt(1.0 - k * k)))


_K_E = complete_k(DEFAULT_K)


def k_e() -> float:
    """Quarter period F(pi/2, 1/sqrt(2)) ~ 1.854 used by the conformal square map."""
    return _K_E


def _modulus_k(k: float) -> float:
    return _K_E if k == DEFAULT_K else complete_k(k)


def carlson_rf(x, y, z):
    """Carlson's symmetric integral R_F(x, y, z) for complex arguments.

    Arguments must avoid the closed negative real axis (at most one of them
    may be zero).  Each element stops duplicating as soon as it alone has
    converged.
    """
    x, y, z = np.broadcast_arrays(
        np.asarray(x, dtype=complex), np.asarray(y, dtype=complex), np.asarray(z, dtype=complex)
    )
    shape = x.shape
    x = x.ravel().copy()
    y = y.ravel().copy()
    z = z.ravel().copy()
    a0 = (x + y + z) / 3.0
    q = _RF_QSCALE * np.maximum(np.maximum(np.abs(a0 - x), np.abs(a0 - y)), np.abs(a0 - z))
    dx0 = a0 - x
    dy0 = a0 - y
    a = a0.copy()
    scale = np.ones(x.shape)

    active = q >= np.abs(a)
    for _ in range(MAX_ITER):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        sx = np.sqrt(x[idx])
        sy = np.sqrt(y[idx])
        sz = np.sqrt(z[idx])
        lam = sx * (sy + sz) + sy * sz
        x[idx] = 0.25 * (x[idx] + lam)
        y[idx] = 0.25 * (y[idx] + lam)
        z[idx] = 0.25 * (z[idx] + lam)
        a[idx] = 0.25 * (a[idx] + lam)
        q[idx] *= 0.25
        scale[idx] *= 4.0
        active[idx] = q[idx] >= np.abs(a[idx])
    else:
        if active.any():
            raise ConvergenceError(f"R_F duplication did not converge in {MAX_ITER} iterations")

    xx = dx0 / (scale * a)
    yy = dy0 / (scale * a)
    zz = -(xx + yy)
    e2 = xx * yy - zz * zz
    e3 = xx * yy * zz
    series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0
    return (series / np.sqrt(a)).reshape(shape)


def legendre_f(phi, k: float = DEFAULT_K):
    """Incomplete elliptic integral of the first kind F(phi, k), complex phi.

    The amplitude is reduced into the strip |Re phi| <= pi/2 with
    F(phi + n pi) = F(phi) + 2 n K and oddness.  On |Re phi| <= pi/4 the
    Carlson form sin(phi) R_F(cos^2, 1 - k^2 sin^2, 1) is used directly; the
    rest of the strip is measured from the quarter period,

        F(pi/2 + t) = K + sin(t) / k' * R_F(cos^2 t, 1 + (k/k')^2 sin^2 t, 1),

    which keeps every R_F argument off the negative real axis (Re phi = pi/2
    would otherwise put cos^2 phi exactly on the cut).
    """
    phi_arr = np.asarray(phi, dtype=complex)
    if not np.all(np.isfinite(phi_arr)):
        raise DomainError("amplitude must be finite")
    scalar = phi_arr.ndim == 0
    phi_arr = np.atleast_1d(phi_arr)

    kk = k * k
    kp2 = 1.0 - kk
    big_k = _modulus_k(k)

    n = np.floor((phi_arr.real + 0.5 * math.pi) / math.pi)
    r = phi_arr - n * math.pi
    sign = np.where(r.real < 0.0, -1.0, 1.0)
    r = r * sign

    out = np.empty_like(r)
    near = r.real <= 0.25 * math.pi
    if near.any():
        rn = r[near]
        s = np.sin(rn)
        c = np.cos(rn)
        out[near] = s * carlson_rf(c * c, 1.0 - kk * s * s, 1.0)
    far = ~near
    if far.any():
        t = r[far] - 0.5 * math.pi
        st = np.sin(t)
        ct = np.cos(t)
        out[far] = big_k + st / math.sqrt(kp2) * carlson_rf(ct * ct, 1.0 + (kk / kp2) * st * st, 1.0)

    result = 2.0 * n * big_k + sign * out
    return result[0] if scalar else result


def _agm_table(k: float):
    """Descending AGM sequences (a_n, c_n) for modulus k."""
    a = [1.0]
    b = math.sqrt(1.0 - k * k)
    c = [k]
    for _ in range(MAX_ITER):
        if abs(c[-1]) <= AGM_TOL * a[-1]:
            return a, c
        an = 0.5 * (a[-1] + b)
        c.append(0.5 * (a[-1] - b))
        b = math.sqrt(a[-1] * b)
        a.append(an)
    raise ConvergenceError(f"AGM did not converge in {MAX_ITER} iterations")


def jacobi_sncndn(u, k: float = DEFAULT_K):
    """Real-argument sn, cn, dn by descending Landen (AGM) recursion."""
    u = np.asarray(u, dtype=float)
    if k == 0.0:
        return np.sin(u), np.cos(u), np.ones_like(u)
    a, c = _agm_table(k)
    n = len(a) - 1
    phi = (2.0**n) * a[n] * u
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c[j] / a[j] * np.sin(phi)))
    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = np.sqrt(1.0 - k * k * sn * sn)
    return sn, cn, dn


def jacobi_cn(z, k: float = DEFAULT_K):
    """Jacobi cn(z, k) for complex z.

    Built from real-argument sn/cn/dn with the imaginary-argument addition
    formula (parameter m = k^2, complementary modulus k'):

        cn(x + iy) = (c c1 - i s d s1 d1) / (c1^2 + m s^2 s1^2)
    """
    z_arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z_arr)):
        raise DomainError("argument must be finite")
    kp = math.sqrt(1.0 - k * k)
    s, c, d = jacobi_sncndn(z_arr.real, k)
    s1, c1, d1 = jacobi_sncndn(z_arr.imag, kp)
    den = c1 * c1 + k * k * s * s * s1 * s1
    out = (c * c1 - 1j * s * d * s1 * d1) / den
    return out[()] if out.ndim == 0 else out
