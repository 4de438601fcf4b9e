"""Tests for the float layer: Carlson kernels, Legendre forms, quadrature.

Every value is checked against an independent route: scipy's Carlson
implementations, the arithmetic-geometric mean, desingularized scipy
quadrature, or the package's own second route (formula layer vs adaptive
panels).
"""

import math
import os
import subprocess
import sys

import numpy as np
import pytest
from scipy import integrate, special as sps

from hyperint import (
    DomainError,
    Polynomial,
    QuadratureSpec,
    adaptive_gl,
    canonical_i0,
    canonical_p,
    carlson_rc,
    carlson_rf,
    carlson_rj,
    default_tolerance,
    ellip_f,
    ellip_pi,
    lauricella_fd,
    lauricella_fd_series,
    quad_sqrt,
    quad_sqrt_pv,
)
from hyperint._kernels import _jit, _ref

from conftest import agm


# ---------------------------------------------------------------- Carlson

def test_rf_against_scipy(rng):
    for _ in range(80):
        x, y, z = (rng.uniform(1e-3, 50.0) for _ in range(3))
        assert carlson_rf(x, y, z) == pytest.approx(
            float(sps.elliprf(x, y, z)), rel=5e-15
        )


def test_rf_zero_argument(rng):
    for _ in range(30):
        y, z = rng.uniform(1e-3, 50.0), rng.uniform(1e-3, 50.0)
        assert carlson_rf(0.0, y, z) == pytest.approx(
            float(sps.elliprf(0.0, y, z)), rel=5e-15
        )


def test_rf_complete_integral_vs_agm():
    # K(m) = RF(0, 1-m, 1) and K(m) = pi / (2 agm(1, sqrt(1-m)))
    for m in (0.1, 0.5, 0.75, 0.9, 0.99):
        k_agm = math.pi / (2.0 * agm(1.0, math.sqrt(1.0 - m)))
        assert carlson_rf(0.0, 1.0 - m, 1.0) == pytest.approx(k_agm, rel=1e-15)


def test_rf_homogeneity(rng):
    # RF(cx, cy, cz) = RF(x, y, z) / sqrt(c)
    for _ in range(20):
        x, y, z = (rng.uniform(0.1, 10.0) for _ in range(3))
        c = rng.uniform(0.5, 4.0)
        assert carlson_rf(c * x, c * y, c * z) == pytest.approx(
            carlson_rf(x, y, z) / math.sqrt(c), rel=1e-14
        )


def test_rf_domain_errors():
    with pytest.raises(DomainError):
        carlson_rf(-1.0, 2.0, 3.0)
    with pytest.raises(DomainError):
        carlson_rf(0.0, 0.0, 3.0)


def test_rc_closed_forms():
    # RC(0, y) = pi / (2 sqrt(y)); RC(x, x) = 1 / sqrt(x)
    assert carlson_rc(0.0, 4.0) == pytest.approx(math.pi / 4.0, rel=1e-15)
    assert carlson_rc(9.0, 9.0) == pytest.approx(1.0 / 3.0, rel=1e-15)
    # x < y: RC = arccos(sqrt(x/y)) / sqrt(y - x)
    x, y = 1.0, 3.0
    assert carlson_rc(x, y) == pytest.approx(
        math.acos(math.sqrt(x / y)) / math.sqrt(y - x), rel=1e-14
    )
    # x > y: RC = arctanh(sqrt(y/x)) / ... via log form
    x, y = 5.0, 2.0
    ref = math.atanh(math.sqrt((x - y) / x)) / math.sqrt(x - y)
    assert carlson_rc(x, y) == pytest.approx(ref, rel=1e-14)
    with pytest.raises(DomainError):
        carlson_rc(1.0, 0.0)


def test_rj_against_scipy(rng):
    for _ in range(80):
        x, y, z = (rng.uniform(1e-3, 50.0) for _ in range(3))
        p = rng.uniform(1e-3, 50.0)
        assert carlson_rj(x, y, z, p) == pytest.approx(
            float(sps.elliprj(x, y, z, p)), rel=2e-13
        )


def test_rj_degenerate_cases():
    # RJ(x, x, x, x) = x^(-3/2)
    assert carlson_rj(4.0, 4.0, 4.0, 4.0) == pytest.approx(0.125, rel=1e-14)
    # RJ(x, y, z, z) = RD(x, y, z)
    assert carlson_rj(1.0, 2.0, 3.0, 3.0) == pytest.approx(
        float(sps.elliprd(1.0, 2.0, 3.0)), rel=1e-13
    )


def test_rj_principal_value(rng):
    # negative fourth argument: scipy's elliprj takes the same convention
    for _ in range(40):
        x, y, z = sorted(rng.uniform(1e-2, 20.0) for _ in range(3))
        p = -rng.uniform(1e-2, 20.0)
        ours = carlson_rj(x, y, z, p, principal_value=True)
        assert ours == pytest.approx(float(sps.elliprj(x, y, z, p)), rel=5e-13)


def test_rj_domain_errors():
    with pytest.raises(DomainError):
        carlson_rj(1.0, 2.0, 3.0, 0.0)
    with pytest.raises(DomainError):
        carlson_rj(1.0, 2.0, 3.0, -1.0)  # needs principal_value=True


# ---------------------------------------------------------- Legendre forms

def test_ellip_f_complete_vs_agm():
    for l in (0.1, 0.5, math.sqrt(0.75), 0.95):
        k_agm = math.pi / (2.0 * agm(1.0, math.sqrt(1.0 - l * l)))
        assert ellip_f(math.pi / 2, l) == pytest.approx(k_agm, rel=1e-15)


def test_ellip_f_against_scipy(rng):
    for _ in range(60):
        phi = rng.uniform(-1.5, 1.5)
        l = rng.uniform(0.0, 0.99)
        assert ellip_f(phi, l) == pytest.approx(
            float(sps.ellipkinc(phi, l * l)), rel=1e-13, abs=1e-15
        )


def test_ellip_f_odd_and_periodic():
    l = 0.8
    assert ellip_f(-0.7, l) == pytest.approx(-ellip_f(0.7, l), rel=1e-15)
    k = ellip_f(math.pi / 2, l)
    # F(phi + n pi) = F(phi) + 2 n K
    assert ellip_f(0.4 + 2 * math.pi, l) == pytest.approx(
        ellip_f(0.4, l) + 4 * k, rel=1e-14
    )
    assert ellip_f(0.4 - math.pi, l) == pytest.approx(
        ellip_f(0.4, l) - 2 * k, rel=1e-14
    )


def test_ellip_f_domain_error():
    with pytest.raises(DomainError):
        ellip_f(math.pi / 2, 1.2)


def _pi_quad_oracle(phi, h, l):
    def f(theta):
        s2 = np.sin(theta) ** 2
        return 1.0 / ((1.0 - h * s2) * np.sqrt(1.0 - l * l * s2))

    val, _ = integrate.quad(f, 0.0, phi, epsabs=1e-14, epsrel=1e-14)
    return val


def test_ellip_pi_against_quadrature(rng):
    for _ in range(25):
        phi = rng.uniform(0.1, 1.5)
        l = rng.uniform(0.0, 0.95)
        h = rng.uniform(-3.0, 0.9 / math.sin(phi) ** 2)
        assert ellip_pi(phi, h, l) == pytest.approx(
            _pi_quad_oracle(phi, h, l), rel=1e-12
        )


def test_ellip_pi_reduces_to_f():
    assert ellip_pi(1.1, 0.0, 0.6) == pytest.approx(ellip_f(1.1, 0.6), rel=1e-15)


def test_ellip_pi_principal_value():
    # pole inside the range: compare with a Cauchy-weight oracle
    phi, h, l = 1.2, 2.0, 0.5
    theta0 = math.asin(math.sqrt(1.0 / h))

    def g(theta):
        # smooth part: (theta - theta0) / (1 - h sin^2), removable at theta0
        s2 = math.sin(theta) ** 2
        return (theta - theta0) / ((1.0 - h * s2) * math.sqrt(1.0 - l * l * s2))

    oracle, _ = integrate.quad(
        g, 0.0, phi, weight="cauchy", wvar=theta0, epsabs=1e-13
    )
    ours = ellip_pi(phi, h, l, principal_value=True)
    assert ours == pytest.approx(oracle, rel=1e-10)
    with pytest.raises(DomainError):
        ellip_pi(phi, h, l)  # same point without the flag


def test_ellip_pi_singular_characteristic():
    phi = 0.7
    h = 1.0 / math.sin(phi) ** 2
    with pytest.raises(DomainError):
        ellip_pi(phi, h, 0.3)


# ------------------------------------------------- canonical-form helpers

def test_canonical_i0_vs_quadrature():
    # I0(t, k) = int_0^t ds / sqrt(s (1-s) (1-k s))
    for t, k in ((0.3, 0.5), (0.7, 0.9), (0.44, 0.75), (1.0, 0.5)):
        w = Polynomial([0, 1]) * Polynomial([1, -1]) * Polynomial([1, -k])
        direct = quad_sqrt(QuadratureSpec(weight=w, a=0.0, b=t, rel_tol=1e-13))
        assert canonical_i0(t, k) == pytest.approx(direct, rel=1e-12)


def test_canonical_p_vs_quadrature():
    for t, h, k in ((0.3, 0.6, 0.5), (0.7, -1.5, 0.9), (0.44, 1.2, 0.75)):
        w = Polynomial([0, 1]) * Polynomial([1, -1]) * Polynomial([1, -k])
        direct = quad_sqrt(
            QuadratureSpec(weight=w, a=0.0, b=t, den=Polynomial([1, -h]),
                           rel_tol=1e-13)
        )
        assert canonical_p(t, h, k) == pytest.approx(direct, rel=1e-12)


def test_canonical_p_principal_value():
    # pole 1/h inside (0, t): formula route vs symmetric-window quadrature
    t, h, k = 0.9, 2.0, 0.5
    w = Polynomial([0, 1]) * Polynomial([1, -1]) * Polynomial([1, -k])
    direct = quad_sqrt_pv(
        QuadratureSpec(weight=w, a=0.0, b=t,
                       num=Polynomial([-1.0 / h]), rel_tol=1e-13),
        1.0 / h,
    )
    assert canonical_p(t, h, k, principal_value=True) == pytest.approx(
        direct, rel=1e-11
    )
    with pytest.raises(DomainError):
        canonical_p(t, h, k)


def test_canonical_i0_domain():
    with pytest.raises(DomainError):
        canonical_i0(1.2, 0.5)
    with pytest.raises(DomainError):
        canonical_i0(0.9, 1.2)  # k t > 1 puts a root inside


# ------------------------------------------------------------- quadrature

def test_quad_sqrt_finite_vs_substitution_oracle():
    # int_0^1 (x+2) / ((x+1) sqrt(x (1-x) (x+3))) dx, x = sin^2 u
    def f(u):
        x = math.sin(u) ** 2
        return 2.0 * (x + 2.0) / ((x + 1.0) * math.sqrt(x + 3.0))

    oracle, _ = integrate.quad(f, 0.0, math.pi / 2, epsabs=1e-14, epsrel=1e-14)
    w = Polynomial([0, 1]) * Polynomial([1, -1]) * Polynomial([3, 1])
    val = quad_sqrt(
        QuadratureSpec(weight=w, a=0, b=1, num=Polynomial([2, 1]),
                       den=Polynomial([1, 1]), rel_tol=1e-13)
    )
    assert val == pytest.approx(oracle, rel=1e-12)


def test_quad_sqrt_infinite_tail_with_endpoint_root():
    # int_4^inf dx / sqrt((x-1)(x-2)(x-3)(x-4)), x = 4 + u^2
    def f(u):
        u2 = u * u
        return 2.0 / math.sqrt((3.0 + u2) * (2.0 + u2) * (1.0 + u2))

    oracle, _ = integrate.quad(f, 0.0, np.inf, epsabs=1e-14, epsrel=1e-14)
    w = Polynomial.from_roots([1, 2, 3, 4], 1)
    val = quad_sqrt(QuadratureSpec(weight=w, a=4.0, b=math.inf, rel_tol=1e-13))
    assert val == pytest.approx(oracle, rel=1e-13)


def test_quad_sqrt_roots_at_both_endpoints():
    # complete piece on [3, 4]: weight (x-1)(x-2)(x-3)(4-x)
    def f(u):
        x = 3.0 + math.sin(u) ** 2
        return 2.0 / math.sqrt((x - 1.0) * (x - 2.0))

    oracle, _ = integrate.quad(f, 0.0, math.pi / 2, epsabs=1e-14, epsrel=1e-14)
    w = Polynomial.from_roots([1, 2, 3], 1) * Polynomial([4, -1])
    val = quad_sqrt(QuadratureSpec(weight=w, a=3, b=4, rel_tol=1e-13))
    assert val == pytest.approx(oracle, rel=1e-13)


def test_quad_sqrt_doubly_infinite():
    # int_R dx / ((x^2+1) sqrt(x^2+2)) = pi / sqrt(2) * ... check vs quad
    def f(x):
        return 1.0 / ((x * x + 1.0) * math.sqrt(x * x + 2.0))

    oracle, _ = integrate.quad(f, -np.inf, np.inf, epsabs=1e-14)
    val = quad_sqrt(
        QuadratureSpec(weight=Polynomial([2, 0, 1]), a=-math.inf, b=math.inf,
                       den=Polynomial([1, 0, 1]), rel_tol=1e-13)
    )
    assert val == pytest.approx(oracle, rel=1e-13)


def test_quad_sqrt_empty_and_reversed():
    w = Polynomial([1, 1])
    assert quad_sqrt(QuadratureSpec(weight=w, a=2.0, b=2.0)) == 0.0
    with pytest.raises(DomainError):
        quad_sqrt(QuadratureSpec(weight=w, a=3.0, b=2.0))


def test_quad_sqrt_rejects_bad_weight():
    # negative inside
    w = Polynomial.from_roots([1, 2, 3, 4], 1)
    with pytest.raises(DomainError):
        quad_sqrt(QuadratureSpec(weight=w, a=3, b=4))
    # double root at an endpoint is not integrable
    wd = Polynomial.from_roots([4, 4, 1], 1)
    with pytest.raises(DomainError):
        quad_sqrt(QuadratureSpec(weight=wd, a=4, b=6))
    # constant weight carries no square-root structure
    with pytest.raises(DomainError):
        quad_sqrt(QuadratureSpec(weight=Polynomial([4]), a=0, b=1))


def test_quad_sqrt_rejects_vanishing_denominator():
    w = Polynomial([1, 0, 1])
    with pytest.raises(DomainError):
        quad_sqrt(
            QuadratureSpec(weight=w, a=0, b=2, den=Polynomial([-1, 1]))
        )


def test_quad_sqrt_pv_against_cauchy_oracle():
    # PV int_4^6 dx / ((x-5) sqrt((x-1)(x-2)(x-3)(x-4))), x = 4 + 2 sin^2 u
    u0 = math.asin(math.sqrt(0.5))

    def g(u):
        # x - 4 = 2 sin^2 u cancels the jacobian's sin u, and
        # x - 5 = sin(2(u - u0)) splits off a removable ratio at u0
        x = 4.0 + 2.0 * math.sin(u) ** 2
        f = 2.0 * math.sqrt(2.0) * math.cos(u) / math.sqrt(
            (x - 1.0) * (x - 2.0) * (x - 3.0)
        )
        d = u - u0
        ratio = 0.5 if d == 0 else d / math.sin(2.0 * d)
        return f * ratio

    oracle, _ = integrate.quad(
        g, 0.0, math.pi / 2, weight="cauchy", wvar=u0, epsabs=1e-13
    )
    w = Polynomial.from_roots([1, 2, 3, 4], 1)
    val = quad_sqrt_pv(QuadratureSpec(weight=w, a=4, b=6, rel_tol=1e-13), 5.0)
    assert val == pytest.approx(oracle, rel=1e-10)


def test_quad_sqrt_pv_domain_errors():
    w = Polynomial.from_roots([1, 2, 3, 4], 1)
    with pytest.raises(DomainError):
        quad_sqrt_pv(QuadratureSpec(weight=w, a=4, b=6), 7.0)  # outside
    with pytest.raises(DomainError):
        quad_sqrt_pv(
            QuadratureSpec(weight=w, a=4, b=6, den=Polynomial([-5, 1])), 5.0
        )


def test_adaptive_gl_known_integrals():
    assert adaptive_gl(np.sin, 0.0, math.pi, rel_tol=1e-13) == pytest.approx(
        2.0, rel=1e-13
    )
    val = adaptive_gl(lambda x: np.exp(-x * x), 0.0, 3.0, rel_tol=1e-13)
    assert val == pytest.approx(math.sqrt(math.pi) / 2 * math.erf(3.0), rel=1e-13)


def test_default_tolerance_env(monkeypatch):
    monkeypatch.delenv("HYPERINT_TOLERANCE", raising=False)
    assert default_tolerance() == 1e-12
    monkeypatch.setenv("HYPERINT_TOLERANCE", "1e-9")
    assert default_tolerance() == 1e-9


# ------------------------------------------------------------- Lauricella

def test_lauricella_integral_vs_series(rng):
    for _ in range(15):
        n = rng.randint(1, 4)
        bs = [rng.uniform(0.1, 1.5) for _ in range(n)]
        xs = [rng.uniform(-0.5, 0.5) for _ in range(n)]
        a = rng.uniform(0.2, 1.5)
        c = a + rng.uniform(0.3, 1.5)
        left = lauricella_fd(a, bs, c, xs)
        right = lauricella_fd_series(a, bs, c, xs)
        assert left == pytest.approx(right, rel=1e-11)


def test_lauricella_one_variable_is_gauss_2f1():
    for a, b, c, x in ((0.5, 0.3, 1.0, 0.4), (1.2, 0.7, 2.5, -0.3)):
        assert lauricella_fd(a, [b], c, [x]) == pytest.approx(
            float(sps.hyp2f1(a, b, c, x)), rel=1e-12
        )


def test_lauricella_empty_is_one():
    assert lauricella_fd(0.5, [], 1.0, []) == pytest.approx(1.0, rel=1e-13)
    assert lauricella_fd_series(0.5, [], 1.0, []) == 1.0


def test_lauricella_domain_errors():
    with pytest.raises(DomainError):
        lauricella_fd(1.5, [0.5], 1.0, [0.3])  # needs c > a
    with pytest.raises(DomainError):
        lauricella_fd(0.5, [0.5], 1.0, [1.0])  # x must stay below 1


# ------------------------------------------------------------- backends

def test_backend_kernels_agree(rng):
    pts = np.array([[rng.uniform(1e-2, 30.0) for _ in range(4)]
                    for _ in range(50)])
    x, y, z, p = pts.T
    np.testing.assert_allclose(_jit.rf(x, y, z), _ref.rf(x, y, z), rtol=3e-15)
    np.testing.assert_allclose(
        _jit.rj(x, y, z, p), _ref.rj(x, y, z, p), rtol=5e-14
    )


def test_backend_panel_agrees():
    from hyperint.special import _gl_nodes

    nodes, wts = _gl_nodes()
    wc = np.array([24.0, -50.0, 35.0, -10.0, 1.0])
    one = np.array([1.0])
    args = (0.1, 0.8, 4.0, 52.0, wc, 0, 0, one, one, False, nodes, wts)
    va, wa, da = _jit.panel_sqrt(*args)
    vb, wb, db = _ref.panel_sqrt(*args)
    assert va == pytest.approx(vb, rel=1e-14)
    assert (wa, da) == pytest.approx((wb, db), rel=1e-12)


def test_backend_env_flag_selects_numpy():
    code = "import hyperint.special as s; print(s.KERNEL_BACKEND)"
    env = dict(os.environ, HYPERINT_PURE_NUMPY="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.stdout.strip() == "numpy"
