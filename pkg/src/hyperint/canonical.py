"""Canonical form of square-root-of-polynomial integrands.

Given P with N = 2m distinct real roots, a projective substitution
x = psi(t) anchored at three of the roots turns dx/sqrt|P(x)| into a
multiple of dt/sqrt(t(1-t)(1-k_2 t)...(1-k_{N-2} t)).  For quartics the
canonical integrals reduce to Legendre F and Pi, indefinitely and over
arcs of the projective line, with a dihedral orbit of equivalent formula
variants obtained by relabeling the roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .errors import DomainError
from .moebius import (
    INF,
    Homography,
    ProjPoint,
    RootCycle,
    apply_element,
    cross_ratio,
    dihedral_elements,
    in_arc,
    is_inf,
    r_operator,
    x_canonical,
)
from .ratpoly import Polynomial, Scalar, scalar_str
from .special import canonical_i0, canonical_p, ellip_f, ellip_pi

__all__ = [
    "CanonicalForm",
    "EllipticCombination",
    "EllipticParams",
    "EllipticTerm",
    "OrbitRecord",
    "PullbackForm",
    "canonical_form",
    "canonical_matrix",
    "d4_orbit",
    "elliptic_definite",
    "elliptic_reduce",
    "pullback_form",
]


def _coerce(v) -> Scalar:
    return Fraction(v) if isinstance(v, int) else v


def canonical_matrix(x_prev, x_last, x_first) -> Homography:
    """Substitution sending infinity, 0, 1 to three anchor roots.

    The returned map psi satisfies psi(inf) = x_prev, psi(0) = x_last and
    psi(1) = x_first; its determinant is
    (x_last - x_first)(x_last - x_prev)(x_prev - x_first).
    """
    x_prev, x_last, x_first = (_coerce(v) for v in (x_prev, x_last, x_first))
    if len({x_prev, x_last, x_first}) != 3:
        raise DomainError("anchor points must be pairwise distinct")
    return Homography(
        (x_first - x_last) * x_prev,
        -(x_first - x_prev) * x_last,
        x_first - x_last,
        -(x_first - x_prev),
    )


def _cycle(roots) -> RootCycle:
    return roots if isinstance(roots, RootCycle) else RootCycle.from_roots(roots)


def _arc_sign(leading, roots: Tuple, orientation: int) -> int:
    """Sign of leading*prod(x - root) on the root-free arc from the last
    label to the first, following the cycle orientation."""
    if orientation > 0:
        lo, hi = roots[-1], roots[0]
    else:
        lo, hi = roots[0], roots[-1]
    if lo < hi:
        sample = (lo + hi) / 2
    else:
        # arc wraps through infinity; any point beyond the largest root works
        sample = max(roots) + 1
    value = leading
    for r in roots:
        value = value * (sample - r)
    return 1 if value > 0 else -1


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical presentation of sqrt|P| under the anchor substitution."""

    homography: Homography
    k: Tuple[Scalar, ...]
    c: Scalar
    epsilon: int
    prefactor_sq: Scalar
    m: int
    leading: Scalar
    roots: Tuple

    @property
    def degree(self) -> int:
        return 2 * self.m

    @property
    def prefactor(self) -> float:
        return 1.0 / math.sqrt(float(self.prefactor_sq))

    def canonical_weight(self) -> Polynomial:
        """t(1-t)(1-k_2 t)...(1-k_{N-2} t) as a polynomial in t."""
        w = Polynomial([0, 1], "t") * Polynomial([1, -1], "t")
        for kj in self.k:
            w = w * Polynomial([1, -kj], "t")
        return w

    def identity_residual(self) -> Polynomial:
        """Weighted pullback of P minus c times the canonical weight.

        Identically zero for exact inputs; the zero test is the defining
        check of the whole construction.
        """
        p = Polynomial.from_roots(self.roots, leading=self.leading)
        lhs = r_operator(self.homography, self.degree, p)
        return lhs - self.c * self.canonical_weight()

    def to_json_dict(self) -> dict:
        return {
            "k": [scalar_str(kj) for kj in self.k],
            "C": scalar_str(self.c),
            "epsilon": self.epsilon,
            "prefactor_sq": scalar_str(self.prefactor_sq),
            "homography": self.homography.to_json_dict(),
        }


def canonical_form(leading, roots) -> CanonicalForm:
    """Canonicalize sqrt|leading * prod(x - root)| for an even root cycle.

    The labels are used exactly as given; only cyclic monotonicity is
    required.  epsilon comes from the substitution determinant: +1 for
    cyclically increasing labelings, -1 for decreasing ones.
    """
    cycle = _cycle(roots)
    xs = cycle.roots
    n = len(xs)
    if n % 2 or n < 4:
        raise DomainError("an even number of roots, at least four, is required")
    lead = _coerce(leading)
    if lead == 0:
        raise DomainError("leading coefficient must be nonzero")
    x1, xp, xn = xs[0], xs[-2], xs[-1]
    hom = canonical_matrix(xp, xn, x1)
    eps = 1 if hom.det > 0 else -1
    ks = tuple(1 / cross_ratio(xp, xn, x1, xs[j]) for j in range(1, n - 2))
    c = lead * (xn - x1) * (xn - xp) * (xp - x1) ** (n - 1)
    for r in xs[:-1]:
        c = c * (xn - r)
    pref = lead * (xp - x1) ** (n - 3)
    for r in xs[1 : n - 2]:
        pref = pref * (xn - r)
    return CanonicalForm(hom, ks, c, eps, abs(pref), n // 2, lead, xs)


@dataclass(frozen=True)
class PullbackForm:
    """Record of num/den * dx/sqrt|P| pulled back through x = psi(t).

    The pulled integrand is
    (num_t/den_t)(t) * D(t)**d_shift * det * |D(t)|**(m-2) / sqrt|core(t)|
    with D(t) the denominator of psi.
    """

    homography: Homography
    num: Polynomial
    den: Polynomial
    p: Polynomial
    m: int
    core: Polynomial
    num_t: Polynomial
    den_t: Polynomial
    d_shift: int

    @property
    def det(self) -> Scalar:
        return self.homography.det

    def value(self, t: float) -> float:
        """Evaluate the pulled-back integrand from the recorded pieces."""
        dpoly = float(self.homography.d) + float(self.homography.c) * t
        den_t = float(self.den_t(t))
        core = float(self.core(t))
        if dpoly == 0.0 or den_t == 0.0 or core == 0.0:
            raise DomainError("sample point hits a pole or a root")
        val = float(self.num_t(t)) / den_t
        val *= dpoly**self.d_shift * float(self.det) * abs(dpoly) ** (self.m - 2)
        return val / math.sqrt(abs(core))

    def source_value(self, t: float) -> float:
        """Chain-rule evaluation: the original integrand at psi(t) times
        dpsi/dt.  Must match value(t) wherever both are defined."""
        x = self.homography.apply(t)
        if is_inf(x):
            raise DomainError("sample point maps to infinity")
        xf = float(x)
        dpoly = float(self.homography.d) + float(self.homography.c) * t
        den = float(self.den(xf))
        pval = float(self.p(xf))
        if den == 0.0 or pval == 0.0:
            raise DomainError("sample point hits a pole or a root")
        dpsi = float(self.det) / dpoly**2
        return float(self.num(xf)) / den * dpsi / math.sqrt(abs(pval))


def pullback_form(
    hom: Homography,
    r_desc: Union[Polynomial, Tuple[Polynomial, Polynomial]],
    p: Polynomial,
    m: int,
) -> PullbackForm:
    """Pull num/den * dx/sqrt|P| back through x = psi(t).

    P must have degree exactly 2m.  Numerator and denominator are pulled
    back with their own minimal weights; the mismatch is kept as an
    explicit power of the substitution denominator.
    """
    if isinstance(r_desc, Polynomial):
        num, den = r_desc, Polynomial([1], p.var)
    else:
        num, den = r_desc
    if p.degree != 2 * m:
        raise DomainError("polynomial degree does not match the stated weight")
    if den.is_zero():
        raise DomainError("denominator polynomial is zero")
    core = r_operator(hom, 2 * m, p)
    num_t = r_operator(hom, num.degree, num) if not num.is_zero() else Polynomial([], "t")
    den_t = r_operator(hom, den.degree, den)
    return PullbackForm(
        hom, num, den, p, m, core, num_t, den_t, den.degree - num.degree
    )


@dataclass(frozen=True)
class EllipticParams:
    """Scalar parameters entering the quartic reduction formulas."""

    t: Optional[Scalar]
    k: Scalar
    h: Scalar
    h_p: Optional[Scalar]
    nu: Optional[float]
    q: float


@dataclass(frozen=True)
class EllipticTerm:
    fn: str  # "I0" | "P" (indefinite) or "F" | "Pi" (definite)
    coeff: Scalar
    h: Optional[Scalar] = None

    def to_json_dict(self, params: EllipticParams) -> dict:
        out = {"fn": self.fn, "coeff": scalar_str(self.coeff)}
        if self.h is not None:
            out["h"] = scalar_str(self.h)
        if self.fn in ("F", "Pi"):
            out["nu"] = params.nu
            out["q"] = params.q
        else:
            out["k"] = scalar_str(params.k)
        return out


@dataclass(frozen=True)
class EllipticCombination:
    """A prefactor times a combination of canonical elliptic integrals.

    Indefinite combinations (terms I0/P) are antiderivatives in the arc
    coordinate t and are evaluated with value_at(x); definite ones (terms
    F/Pi) carry the endpoint data and are evaluated with value().  The
    value is the signed integral along the labeling's arc orientation
    from the last root; for cyclically increasing labels that is the
    plain integral.
    """

    kind: str
    labels: Tuple
    element: Tuple[str, int]
    leading: Scalar
    epsilon: int
    prefactor_sq: Scalar
    scale: Scalar
    arc_sign: int
    params: EllipticParams
    t_map: Homography
    terms: Tuple[EllipticTerm, ...]
    definite: bool
    principal_value: bool = False
    pole: Optional[Scalar] = None
    u: Optional[ProjPoint] = None

    @property
    def prefactor(self) -> float:
        base = self.epsilon * float(self.scale) / math.sqrt(float(self.prefactor_sq))
        return 2.0 * base if self.definite else base

    def value(self) -> float:
        """Evaluate a definite combination."""
        if not self.definite:
            raise DomainError("indefinite combination; use value_at(x)")
        nu, q = self.params.nu, self.params.q
        t_u = float(self.params.t)
        total = 0.0
        for term in self.terms:
            if term.fn == "F":
                part = ellip_f(nu, q)
            else:
                h = float(term.h)
                part = ellip_pi(nu, h, q, principal_value=h * t_u > 1.0)
            total += float(term.coeff) * part
        return self.prefactor * total

    def value_at(self, x: ProjPoint) -> float:
        """Evaluate an indefinite combination at a point on the arc."""
        if self.definite:
            raise DomainError("definite combination; use value()")
        t = self.t_map.apply(x)
        if is_inf(t):
            raise DomainError("point is not on the root-free arc")
        tf = float(t)
        if not 0.0 <= tf <= 1.0:
            raise DomainError("point is not on the root-free arc")
        kf = float(self.params.k)
        total = 0.0
        for term in self.terms:
            if term.fn == "I0":
                part = canonical_i0(tf, kf)
            else:
                h = float(term.h)
                part = canonical_p(tf, h, kf, principal_value=h * tf > 1.0)
            total += float(term.coeff) * part
        return self.prefactor * total

    def to_json_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "labels": [scalar_str(v) for v in self.labels],
            "element": list(self.element),
            "epsilon": self.epsilon,
            "prefactor_sq": scalar_str(self.prefactor_sq),
            "scale": scalar_str(self.scale),
            "prefactor": self.prefactor,
            "arc_sign": self.arc_sign,
            "principal_value": self.principal_value,
            "terms": [term.to_json_dict(self.params) for term in self.terms],
        }
        if self.pole is not None:
            out["pole"] = scalar_str(self.pole)
        if self.u is not None:
            out["u"] = "inf" if is_inf(self.u) else scalar_str(self.u)
        return out


_KINDS = ("const", "x", "pole")


def _quartic_data(kind, leading, cycle: RootCycle, p):
    """Shared exact parameter extraction for the quartic reductions."""
    if kind not in _KINDS:
        raise DomainError(f"unknown integrand kind {kind!r}")
    xs = cycle.roots
    if len(xs) != 4:
        raise DomainError("exactly four roots are required")
    lead = _coerce(leading)
    if lead == 0:
        raise DomainError("leading coefficient must be nonzero")
    x1, x2, x3, x4 = xs
    if kind == "pole":
        if p is None:
            raise DomainError("kind 'pole' needs the pole location p")
        p = _coerce(p)
        if p in xs:
            raise DomainError("pole must be distinct from every root")
    elif p is not None:
        raise DomainError("p is only meaningful for kind 'pole'")
    hom = canonical_matrix(x3, x4, x1)
    eps = 1 if hom.det > 0 else -1
    k = 1 / cross_ratio(x3, x4, x1, x2)
    h = (x4 - x1) / (x3 - x1)
    h_p = 1 / cross_ratio(x3, x4, x1, p) if kind == "pole" else None
    pref = abs(lead * (x3 - x1) * (x4 - x2))
    sign = _arc_sign(lead, xs, cycle.orientation)
    return xs, lead, p, hom, eps, k, h, h_p, pref, sign


def _terms_and_scale(kind, xs, p, h, h_p, definite):
    x1, x2, x3, x4 = xs
    base, follow = ("F", "Pi") if definite else ("I0", "P")
    one = Fraction(1)
    if kind == "const":
        return (EllipticTerm(base, one),), one
    if kind == "x":
        return (EllipticTerm(base, x3), EllipticTerm(follow, x4 - x3, h)), one
    terms = (EllipticTerm(base, x4 - p), EllipticTerm(follow, -(x4 - x3), h_p))
    return terms, 1 / ((x3 - p) * (x4 - p))


def elliptic_reduce(kind: str, leading, roots, p=None) -> EllipticCombination:
    """Antiderivative of 1, x or 1/(x-p) over sqrt|quartic| as canonical
    integrals.

    The labels are used as given.  The result is valid on the root-free
    arc between the last and first labels, where the arc coordinate t
    runs through [0, 1]; terms whose simple pole falls inside the range
    evaluate as principal values.
    """
    cycle = _cycle(roots)
    xs, lead, p, hom, eps, k, h, h_p, pref, sign = _quartic_data(
        kind, leading, cycle, p
    )
    terms, scale = _terms_and_scale(kind, xs, p, h, h_p, definite=False)
    params = EllipticParams(None, k, h, h_p, None, math.sqrt(float(k)))
    return EllipticCombination(
        kind=kind,
        labels=xs,
        element=("tau", 4),
        leading=lead,
        epsilon=eps,
        prefactor_sq=pref,
        scale=scale,
        arc_sign=sign,
        params=params,
        t_map=hom.inverse(),
        terms=terms,
        definite=False,
        pole=p,
    )


def elliptic_definite(
    kind: str, leading, roots, u, p=None, canonicalize: bool = True
) -> EllipticCombination:
    """Integral of 1, x or 1/(x-p) over sqrt|quartic| along the arc from
    the last root to u.

    By default the labels are relabeled (rotations and reflections) so
    that u lies on the root-free arc and the labeling increases
    cyclically; the element used is recorded on the result.  With
    canonicalize=False the labels are taken as given and u must already
    lie on their arc.  u = INF integrates up to the point at infinity.
    A pole crossed by the arc flags the result as a principal value.
    """
    cycle = _cycle(roots)
    if canonicalize:
        cycle, element = x_canonical(cycle.roots, u)
    else:
        element = ("tau", len(cycle.roots))
        xs = cycle.roots
        if not is_inf(u) and _coerce(u) in xs:
            raise DomainError("u coincides with a root")
        start, end = (xs[-1], xs[0]) if cycle.orientation > 0 else (xs[0], xs[-1])
        if not in_arc(u, start, end):
            raise DomainError("u is not on the root-free arc of this labeling")
    xs, lead, p, hom, eps, k, h, h_p, pref, sign = _quartic_data(
        kind, leading, cycle, p
    )
    terms, scale = _terms_and_scale(kind, xs, p, h, h_p, definite=True)
    t_u = cross_ratio(xs[2], xs[3], xs[0], INF if is_inf(u) else _coerce(u))
    nu = math.asin(math.sqrt(float(t_u)))
    params = EllipticParams(t_u, k, h, h_p, nu, math.sqrt(float(k)))
    pv = any(term.h is not None and term.h * t_u > 1 for term in terms)
    return EllipticCombination(
        kind=kind,
        labels=xs,
        element=element,
        leading=lead,
        epsilon=eps,
        prefactor_sq=pref,
        scale=scale,
        arc_sign=sign,
        params=params,
        t_map=hom.inverse(),
        terms=terms,
        definite=True,
        principal_value=pv,
        pole=p,
        u=INF if is_inf(u) else _coerce(u),
    )


@dataclass(frozen=True)
class OrbitRecord:
    """One dihedral relabeling of a quartic reduction."""

    element: Tuple[str, int]
    labels: Tuple
    prefactor_sq: Scalar  # computed directly on the relabeled tuple
    combination: EllipticCombination

    def to_json_dict(self) -> dict:
        return {
            "element": list(self.element),
            "labels": [scalar_str(v) for v in self.labels],
            "prefactor_sq": scalar_str(self.prefactor_sq),
            "combination": self.combination.to_json_dict(),
        }


def d4_orbit(
    kind: str, leading, roots, u=None, p=None
) -> Tuple[OrbitRecord, ...]:
    """All eight dihedral relabelings of a quartic reduction.

    Each record carries the exact quantity |a4 (x3-x1)(x4-x2)| computed
    on the raw relabeled tuple, which the relabelings leave invariant.
    With u given, every variant is a definite combination for the same
    underlying integral, so the eight values agree.
    """
    cycle = _cycle(roots)
    if len(cycle.roots) != 4:
        raise DomainError("exactly four roots are required")
    lead = _coerce(leading)
    records = []
    for element in dihedral_elements(4):
        labels = apply_element(element, cycle.roots)
        x1, x2, x3, x4 = labels
        pref = abs(lead * (x3 - x1) * (x4 - x2))
        if u is None:
            comb = elliptic_reduce(kind, leading, labels, p)
        else:
            comb = elliptic_definite(kind, leading, labels, u, p)
        records.append(OrbitRecord(element, labels, pref, comb))
    return tuple(records)
