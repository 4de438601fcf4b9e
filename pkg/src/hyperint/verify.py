"""Verification harness crossing the exact and numeric layers.

Every reduction identity can be checked two independent ways: replaying
it in exact rational arithmetic, and integrating both sides numerically.
This module packages those checks as reports, plus seeded random suites
that sweep the public surface at desk scale.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple, Union

import numpy as np

from .canonical import canonical_form, d4_orbit
from .errors import DomainError
from .moebius import (
    INF,
    Homography,
    apply_element,
    cross_ratio,
    dihedral_elements,
    is_inf,
    r_operator,
)
from .ratpoly import (
    LaurentPolynomial,
    Polynomial,
    Scalar,
    elementary_symmetric,
    scalar_str,
)
from .reduction import BasisIntegral, ReductionResult, recurrence_oracle, reduce, reduction_residual
from .special import QuadratureSpec, lauricella_fd, quad_sqrt, quad_sqrt_pv

__all__ = [
    "VerificationReport",
    "verify_reduction_exact",
    "verify_reduction_numeric",
    "verify_orbit",
    "verify_lauricella",
    "run_reduction_suite",
    "run_canonical_suite",
    "run_property_suite",
]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verification case."""

    case: str
    mode: str  # "exact" | "numeric"
    residual: Union[Scalar, float, str]
    passed: bool

    def to_json_line(self) -> str:
        residual = (
            self.residual
            if isinstance(self.residual, str)
            else scalar_str(self.residual)
        )
        return json.dumps(
            {
                "case": self.case,
                "mode": self.mode,
                "pass": self.passed,
                "residual": residual,
            },
            separators=(",", ":"),
        )


def _laurent_size(e: LaurentPolynomial) -> str:
    if e.is_zero():
        return "0"
    worst = max(abs(Fraction(c)) if not isinstance(c, float) else abs(c) for c in e.terms.values())
    return scalar_str(worst)


def verify_reduction_exact(
    q: Polynomial, p: Scalar, n: int, result: ReductionResult
) -> VerificationReport:
    """Replay the reduction identity in exact arithmetic.

    The claimed antiderivative is differentiated and multiplied through by
    sqrt(Q); passing means the difference with (x-p)**n is the literal
    zero (Laurent) polynomial.
    """
    if (result.q, result.p, result.n) != (q, p, n):
        raise DomainError("result does not belong to the stated reduction")
    residual = reduction_residual(result)
    case = f"reduce M={q.degree} n={n} p={scalar_str(p)}"
    return VerificationReport(case, "exact", _laurent_size(residual), residual.is_zero())


def _real_roots(poly: Polynomial) -> List[float]:
    coeffs = [float(c) for c in poly.coeffs]
    if len(coeffs) < 2:
        return []
    out = []
    for r in np.roots(coeffs[::-1]):
        if abs(r.imag) <= 1e-9 * max(1.0, abs(r.real)):
            out.append(float(r.real))
    return out


def _power_spec(q: Polynomial, p: Scalar, exponent: int, a: float, b: float) -> QuadratureSpec:
    shift = Polynomial([-p, 1])
    if exponent >= 0:
        return QuadratureSpec(q, a, b, num=shift**exponent)
    return QuadratureSpec(q, a, b, den=shift ** (-exponent))


def verify_reduction_numeric(
    q: Polynomial,
    p: Scalar,
    n: int,
    result: ReductionResult,
    interval: Tuple[float, float],
    tol: float = 1e-9,
) -> VerificationReport:
    """Integrate both sides of the reduction over an interval.

    The weight must be positive there, so the interval may not touch a
    root; a pole at p must stay outside whenever negative powers of
    (x - p) appear on either side.
    """
    if (result.q, result.p, result.n) != (q, p, n):
        raise DomainError("result does not belong to the stated reduction")
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise DomainError("empty interval")
    for root in _real_roots(q):
        if a - 1e-12 <= root <= b + 1e-12:
            raise DomainError("interval touches a root of the weight")
    has_negative = n < 0 or any(el.n < 0 for el in result.basic_coeffs)
    if has_negative and a <= float(p) <= b:
        raise DomainError("pole lies inside the interval")
    lhs = quad_sqrt(_power_spec(q, p, n, a, b))
    rhs = 0.0
    for el, coeff in result.basic_coeffs.items():
        rhs += float(coeff) * quad_sqrt(_power_spec(q, el.p, el.n, a, b))
    elem = result.elementary
    if not elem.is_zero():
        rhs += float(elem(b)) * math.sqrt(float(q(b)))
        rhs -= float(elem(a)) * math.sqrt(float(q(a)))
    residual = abs(lhs - rhs)
    case = f"reduce-numeric M={q.degree} n={n} p={scalar_str(p)} on [{a:g},{b:g}]"
    return VerificationReport(case, "numeric", residual, residual <= tol)


def _definite_oracle(comb) -> float:
    """Quadrature of the integral a definite combination stands for."""
    labels = [float(v) for v in comb.labels]
    weight = Polynomial.from_roots(comb.labels, leading=comb.leading * comb.arc_sign)
    x4 = labels[-1]
    if is_inf(comb.u):
        pieces = [(x4, math.inf)]
    elif float(comb.u) > x4:
        pieces = [(x4, float(comb.u))]
    else:
        pieces = [(x4, math.inf), (-math.inf, float(comb.u))]
    num = Polynomial([0, 1]) if comb.kind == "x" else Polynomial([1])
    total = 0.0
    for lo, hi in pieces:
        if comb.kind == "pole":
            pole = float(comb.pole)
            if lo < pole < hi:
                total += quad_sqrt_pv(QuadratureSpec(weight, lo, hi), pole)
            else:
                spec = QuadratureSpec(weight, lo, hi, den=Polynomial([-pole, 1.0]))
                total += quad_sqrt(spec)
        else:
            total += quad_sqrt(QuadratureSpec(weight, lo, hi, num=num))
    return total


def verify_orbit(
    kind: str, roots, u, p=None, leading: Scalar = 1, tol: float = 1e-9
) -> VerificationReport:
    """All eight relabelings must agree and match direct quadrature."""
    orbit = d4_orbit(kind, leading, roots, u=u, p=p)
    values = [record.combination.value() for record in orbit]
    spread = max(values) - min(values)
    prefactors_equal = len({record.prefactor_sq for record in orbit}) == 1
    oracle = _definite_oracle(orbit[0].combination)
    residual = max(spread, abs(values[0] - oracle))
    case = f"orbit kind={kind} u={u} p={p}"
    return VerificationReport(
        case, "numeric", residual, residual <= tol and prefactors_equal
    )


def verify_lauricella(tol: float = 1e-6, perturbation: Scalar = 0) -> VerificationReport:
    """Check the multivariate-hypergeometric face of a pole reduction.

    The reduction of (x - 3/2)**-3 over the quintic with roots 0..4 has
    vanishing boundary terms on [0, 1], so its basic coefficients satisfy
    an identity between F_D values; the same identity is integrated
    directly as a second route.  A nonzero perturbation is a negative
    control added to one coefficient, and must make the check fail.
    """
    quintic = Polynomial.from_roots((0, 1, 2, 3, 4), leading=Fraction(1, 24))
    pole = Fraction(3, 2)
    res = reduce(quintic, pole, -3)
    # raw column entries: coefficients on the shifted powers (x - 3/2)**l
    coeffs: Dict[int, Fraction] = {
        l: c for l, c in res.column.entries.items() if l >= -1
    }
    if perturbation:
        coeffs[0] = coeffs[0] + perturbation
    xs = (2.0 / 3.0, 1.0 / 2.0, 1.0 / 3.0, 1.0 / 4.0)
    half = (0.5, 0.5, 0.5)
    lhs_fd = lauricella_fd(0.5, (3.0,) + half, 1.0, xs)
    rhs_fd = 0.0
    for exp, coeff in sorted(coeffs.items()):
        scale = (-1.5) ** (exp + 3)
        rhs_fd += scale * float(coeff) * lauricella_fd(0.5, (-exp,) + half, 1.0, xs)
    residual_fd = abs(lhs_fd - rhs_fd)

    lhs_quad = quad_sqrt(_power_spec(quintic, pole, -3, 0.0, 1.0))
    rhs_quad = 0.0
    for exp, coeff in sorted(coeffs.items()):
        rhs_quad += float(coeff) * quad_sqrt(
            _power_spec(quintic, pole, exp, 0.0, 1.0)
        )
    residual_quad = abs(lhs_quad - rhs_quad)
    # the two routes describe the same number up to the Euler factor
    bridge = abs(lhs_quad - (-1.5) ** -3 * math.pi * lhs_fd)
    residual = max(residual_fd, residual_quad, bridge)
    return VerificationReport("lauricella-pole-identity", "numeric", residual, residual <= tol)


# -- seeded random suites ---------------------------------------------------


def _rand_fraction(rng: random.Random, span: int = 9, dmax: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, dmax))


def _rand_weight(rng: random.Random, degree: int) -> Polynomial:
    while True:
        coeffs = [_rand_fraction(rng) for _ in range(degree)]
        lead = _rand_fraction(rng)
        if lead != 0:
            return Polynomial(coeffs + [lead])


def _rand_distinct(rng: random.Random, count: int, span: int = 24) -> Tuple[Fraction, ...]:
    seen = set()
    while len(seen) < count:
        seen.add(Fraction(rng.randint(-4 * span, 4 * span), rng.choice((1, 2, 4))))
    return tuple(sorted(seen))


def run_reduction_suite(seed: int = 20260814, count: int = 200) -> List[VerificationReport]:
    """Random reductions: exact identity plus band-vs-recurrence equality."""
    rng = random.Random(seed)
    reports = []
    for i in range(count):
        m = rng.randint(3, 8)
        n = rng.randint(-6, 15)
        q = _rand_weight(rng, m)
        while True:
            p = _rand_fraction(rng)
            if q(p) != 0:
                break
        result = reduce(q, p, n)
        residual = reduction_residual(result)
        oracle = recurrence_oracle(q, p, n)
        agree = (
            result.basic_coeffs == oracle.basic_coeffs
            and result.elementary == oracle.elementary
        )
        case = f"reduction-suite[seed={seed}] #{i} M={m} n={n}"
        reports.append(
            VerificationReport(
                case, "exact", _laurent_size(residual), residual.is_zero() and agree
            )
        )
    return reports


def run_canonical_suite(seed: int = 20260814, count: int = 50) -> List[VerificationReport]:
    """Random even root cycles: exact identity, moduli ordering, epsilon."""
    rng = random.Random(seed)
    reports = []
    for i in range(count):
        n = rng.choice((4, 6, 8))
        base = _rand_distinct(rng, n)
        rotation = rng.randrange(n)
        labels = base[rotation:] + base[:rotation]
        if rng.random() < 0.5:
            labels = labels[::-1]
        while True:
            lead = _rand_fraction(rng)
            if lead != 0:
                break
        form = canonical_form(lead, labels)
        ordered = all(
            form.k[j] > form.k[j + 1] for j in range(len(form.k) - 1)
        ) and 1 > form.k[0] and form.k[-1] > 0
        tied = form.prefactor_sq * form.homography.det**2 == abs(form.c)
        ok = form.identity_residual().is_zero() and ordered and tied
        case = f"canonical-suite[seed={seed}] #{i} N={n} eps={form.epsilon}"
        reports.append(VerificationReport(case, "exact", "0" if ok else "1", ok))
    return reports


def _compose_elements(n: int, g: Tuple[str, int], h: Tuple[str, int]) -> Tuple[str, int]:
    """Group law for relabelings, g after h."""

    def norm(k: int) -> int:
        return ((k - 1) % n) + 1

    (gk, gi), (hk, hi) = g, h
    if gk == "tau" and hk == "tau":
        return ("tau", norm(gi + hi))
    if gk == "tau" and hk == "eta":
        return ("eta", norm(hi - gi))
    if gk == "eta" and hk == "tau":
        return ("eta", norm(gi + hi))
    return ("tau", norm(hi - gi))


def _rand_homography(rng: random.Random) -> Homography:
    while True:
        a, b, c, d = (_rand_fraction(rng, 5, 3) for _ in range(4))
        if a * d - b * c != 0:
            return Homography(a, b, c, d)


def _check_cross_ratio(rng: random.Random) -> bool:
    points: List = list(_rand_distinct(rng, 4, span=6))
    if rng.random() < 0.2:
        points[rng.randrange(4)] = INF
    hom = _rand_homography(rng)
    value = cross_ratio(*points)
    mapped = cross_ratio(*(hom.apply(pt) for pt in points))
    return mapped == value


def _check_arc_coordinates(rng: random.Random) -> bool:
    n = rng.choice((4, 6, 8))
    base = _rand_distinct(rng, n)
    rotation = rng.randrange(n)
    labels = base[rotation:] + base[:rotation]
    if rng.random() < 0.5:
        labels = labels[::-1]
    ts = [
        cross_ratio(labels[-2], labels[-1], labels[0], labels[j])
        for j in range(1, n - 2)
    ]
    return all(t > 1 for t in ts) and all(
        ts[j] < ts[j + 1] for j in range(len(ts) - 1)
    )


def _check_operator_laws(rng: random.Random) -> bool:
    hom = _rand_homography(rng)
    f = Polynomial([_rand_fraction(rng, 4, 3) for _ in range(rng.randint(1, 4))])
    g = Polynomial([_rand_fraction(rng, 4, 3) for _ in range(rng.randint(1, 4))])
    k, l = max(f.degree, 0), max(g.degree, 0)
    product_law = r_operator(hom, k + l, f * g) == r_operator(hom, k, f) * r_operator(
        hom, l, g
    )
    x0 = _rand_fraction(rng, 4, 3)
    numerator = Polynomial([hom.b, hom.a], "t")
    denominator = Polynomial([hom.d, hom.c], "t")
    linear_law = r_operator(hom, 1, Polynomial([-x0, 1])) == numerator - x0 * denominator
    raise_law = r_operator(hom, k + 1, f) == denominator * r_operator(hom, k, f)
    return product_law and linear_law and raise_law


def _check_group_law(rng: random.Random) -> bool:
    n = rng.randint(3, 8)
    seq = tuple(range(1, n + 1))
    elements = dihedral_elements(n)
    g = elements[rng.randrange(2 * n)]
    h = elements[rng.randrange(2 * n)]
    combined = _compose_elements(n, g, h)
    return apply_element(g, apply_element(h, seq)) == apply_element(combined, seq)


def _check_sigma_coefficients(rng: random.Random) -> bool:
    count = rng.randint(3, 6)
    roots = _rand_distinct(rng, count, span=8)
    lead = _rand_fraction(rng, 5, 3)
    if lead == 0:
        lead = Fraction(1)
    poly = Polynomial.from_roots(roots, leading=lead)
    return all(
        poly.coeff(count - j) == lead * (-1) ** j * elementary_symmetric(roots, j)
        for j in range(count + 1)
    )


_PROPERTY_CHECKS = (
    ("cross-ratio-invariance", _check_cross_ratio),
    ("arc-coordinates-monotone", _check_arc_coordinates),
    ("pullback-operator-laws", _check_operator_laws),
    ("relabeling-group-law", _check_group_law),
    ("sigma-coefficients", _check_sigma_coefficients),
)


def run_property_suite(seed: int = 20260814, count: int = 1000) -> List[VerificationReport]:
    """Seeded structural properties, round-robin across five families."""
    rng = random.Random(seed)
    reports = []
    for i in range(count):
        name, check = _PROPERTY_CHECKS[i % len(_PROPERTY_CHECKS)]
        ok = check(rng)
        case = f"property-suite[seed={seed}] #{i} {name}"
        reports.append(VerificationReport(case, "exact", "0" if ok else "1", ok))
    return reports
