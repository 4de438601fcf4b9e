"""numba-compiled kernel implementations (default backend).

Mirrors _ref.py exactly; scalar inner loops instead of vectorized numpy.
"""

import numpy as np
from numba import njit

_SPREAD_TOL = 2e-3
_MAX_ITER = 120


@njit(cache=True)
def _rf_one(x, y, z):
    for _ in range(_MAX_ITER):
        mu = (x + y + z) / 3.0
        spread = max(abs(x - mu), abs(y - mu), abs(z - mu))
        if spread <= _SPREAD_TOL * mu:
            break
        sx, sy, sz = np.sqrt(x), np.sqrt(y), np.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
    mu = (x + y + z) / 3.0
    big_x = 1.0 - x / mu
    big_y = 1.0 - y / mu
    big_z = -big_x - big_y
    e2 = big_x * big_y - big_z * big_z
    e3 = big_x * big_y * big_z
    series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0
    return series / np.sqrt(mu)


@njit(cache=True)
def _rj_one(x0, y0, z0, p0):
    a0 = (x0 + y0 + z0 + 2.0 * p0) / 5.0
    delta = (p0 - x0) * (p0 - y0) * (p0 - z0)
    x, y, z, pp, a = x0, y0, z0, p0, a0
    fac = 1.0
    rc_sum = 0.0
    bound = max(abs(a0 - x0), abs(a0 - y0), abs(a0 - z0), abs(a0 - p0))
    for _ in range(_MAX_ITER):
        if fac * bound <= _SPREAD_TOL * abs(a):
            break
        sx, sy, sz, sp = np.sqrt(x), np.sqrt(y), np.sqrt(z), np.sqrt(pp)
        dm = (sp + sx) * (sp + sy) * (sp + sz)
        em = delta * fac**3 / (dm * dm)
        rc_sum += fac / dm * _rf_one(1.0, 1.0 + em, 1.0 + em)
        lam = sx * sy + sy * sz + sz * sx
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        pp = 0.25 * (pp + lam)
        a = 0.25 * (a + lam)
        fac *= 0.25
    big_x = (a0 - x0) * fac / a
    big_y = (a0 - y0) * fac / a
    big_z = (a0 - z0) * fac / a
    big_p = -(big_x + big_y + big_z) / 2.0
    xyz = big_x * big_y * big_z
    p2 = big_p * big_p
    e2 = big_x * big_y + big_x * big_z + big_y * big_z - 3.0 * p2
    e3 = xyz + 2.0 * e2 * big_p + 4.0 * p2 * big_p
    e4 = (2.0 * xyz + e2 * big_p + 3.0 * p2 * big_p) * big_p
    e5 = xyz * p2
    series = (
        1.0
        - 3.0 * e2 / 14.0
        + e3 / 6.0
        + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0
    )
    return fac * series / (a * np.sqrt(a)) + 6.0 * rc_sum


@njit(cache=True)
def _rf_arr(x, y, z):
    out = np.empty_like(x)
    for i in range(x.size):
        out.flat[i] = _rf_one(x.flat[i], y.flat[i], z.flat[i])
    return out


@njit(cache=True)
def _rj_arr(x, y, z, p):
    out = np.empty_like(x)
    for i in range(x.size):
        out.flat[i] = _rj_one(x.flat[i], y.flat[i], z.flat[i], p.flat[i])
    return out


def rf(x, y, z):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    return _rf_arr(
        np.ascontiguousarray(x), np.ascontiguousarray(y), np.ascontiguousarray(z)
    )


def rj(x, y, z, p):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    return _rj_arr(
        np.ascontiguousarray(x),
        np.ascontiguousarray(y),
        np.ascontiguousarray(z),
        np.ascontiguousarray(p),
    )


@njit(cache=True)
def _polyval(coeffs, x):
    acc = 0.0
    for j in range(coeffs.size - 1, -1, -1):
        acc = acc * x + coeffs[j]
    return acc


@njit(cache=True)
def panel_sqrt(tlo, thi, a, b, wc, e_lo, e_hi, nc, dc, recip, nodes, wts):
    half = 0.5 * (thi - tlo)
    mid = 0.5 * (thi + tlo)
    total = 0.0
    wmin = np.inf
    dmin = np.inf
    for i in range(nodes.size):
        theta = mid + half * nodes[i]
        s = np.sin(theta)
        c = np.cos(theta)
        u = (b - a) * s * s
        xs = a + u
        jac = (b - a) * 2.0 * s * c * half
        xe = 1.0 / xs if recip else xs
        w = _polyval(wc, xe)
        if e_lo == 1:
            w = w * u
        if e_hi == 1:
            w = w * ((b - a) * c * c)
        num = _polyval(nc, xe)
        den = _polyval(dc, xe)
        if w < wmin:
            wmin = w
        if abs(den) < dmin:
            dmin = abs(den)
        if w <= 0.0 or den == 0.0:
            return np.nan, wmin, dmin
        f = num / (den * np.sqrt(w))
        if recip:
            f = f / (xs * xs)
        total += wts[i] * f * jac
    return total, wmin, dmin
