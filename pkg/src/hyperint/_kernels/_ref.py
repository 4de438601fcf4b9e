"""Pure-numpy kernel implementations (fallback backend).

Same contracts as the jit backend: symmetric elliptic integrals by the
duplication algorithm, and one Gauss-Legendre panel of the square-root
weighted quadrature.  All array arguments are float64.
"""

import numpy as np

_SPREAD_TOL = 2e-3  # duplication stops here; series tail error ~ tol**6
_MAX_ITER = 120


def rf(x, y, z):
    """Carlson symmetric integral of the first kind, elementwise.

    Arguments must be non-negative with at most one zero per triple.
    """
    x = np.asarray(x, dtype=np.float64).copy()
    y = np.asarray(y, dtype=np.float64).copy()
    z = np.asarray(z, dtype=np.float64).copy()
    for _ in range(_MAX_ITER):
        mu = (x + y + z) / 3.0
        spread = np.maximum(
            np.abs(x - mu), np.maximum(np.abs(y - mu), np.abs(z - mu))
        )
        if np.all(spread <= _SPREAD_TOL * mu):
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


def rj(x, y, z, p):
    """Carlson symmetric integral of the third kind, elementwise, p > 0."""
    x0 = np.asarray(x, dtype=np.float64).copy()
    y0 = np.asarray(y, dtype=np.float64).copy()
    z0 = np.asarray(z, dtype=np.float64).copy()
    p0 = np.asarray(p, dtype=np.float64).copy()
    a0 = (x0 + y0 + z0 + 2.0 * p0) / 5.0
    delta = (p0 - x0) * (p0 - y0) * (p0 - z0)
    x, y, z, pp, a = x0.copy(), y0.copy(), z0.copy(), p0.copy(), a0.copy()
    fac = np.ones_like(a)
    rc_sum = np.zeros_like(a)
    bound = np.maximum(
        np.maximum(np.abs(a0 - x0), np.abs(a0 - y0)),
        np.maximum(np.abs(a0 - z0), np.abs(a0 - p0)),
    )
    for _ in range(_MAX_ITER):
        if np.all(fac * bound <= _SPREAD_TOL * np.abs(a)):
            break
        sx, sy, sz, sp = np.sqrt(x), np.sqrt(y), np.sqrt(z), np.sqrt(pp)
        dm = (sp + sx) * (sp + sy) * (sp + sz)
        em = delta * fac**3 / (dm * dm)
        rc_sum = rc_sum + fac / dm * rf(
            np.ones_like(em), 1.0 + em, 1.0 + em
        )
        lam = sx * sy + sy * sz + sz * sx
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        pp = 0.25 * (pp + lam)
        a = 0.25 * (a + lam)
        fac = 0.25 * fac
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


def panel_sqrt(tlo, thi, a, b, wc, e_lo, e_hi, nc, dc, recip, nodes, wts):
    """One Gauss-Legendre panel of int num/(den*sqrt(w)) dx on a sin^2 map.

    The substitution x = a + (b-a) sin^2(theta) runs over theta in
    [tlo, thi] inside [0, pi/2].  The effective weight is
    wc(x) * (x-a)^e_lo * (b-x)^e_hi with e_lo, e_hi in {0, 1}; the caller
    deflates simple endpoint roots out of wc so that both factors can be
    formed as (b-a) sin^2 / (b-a) cos^2 without cancellation.  With
    ``recip`` the integrand is evaluated at 1/x and divided by x^2
    (change of variable for infinite tails).  Returns (panel value,
    min weight value, min |den| value); the caller checks positivity.
    """
    half = 0.5 * (thi - tlo)
    theta = 0.5 * (thi + tlo) + half * nodes
    s = np.sin(theta)
    c = np.cos(theta)
    u = (b - a) * s * s
    xs = a + u
    jac = (b - a) * 2.0 * s * c * half
    xe = 1.0 / xs if recip else xs
    w = np.polynomial.polynomial.polyval(xe, wc)
    if e_lo == 1:
        w = w * u
    if e_hi == 1:
        w = w * ((b - a) * c * c)
    num = np.polynomial.polynomial.polyval(xe, nc)
    den = np.polynomial.polynomial.polyval(xe, dc)
    wmin = float(np.min(w))
    dmin = float(np.min(np.abs(den)))
    if wmin <= 0.0 or dmin == 0.0:
        return np.nan, wmin, dmin
    f = num / (den * np.sqrt(w))
    if recip:
        f = f / (xs * xs)
    return float(np.sum(wts * f * jac)), wmin, dmin
