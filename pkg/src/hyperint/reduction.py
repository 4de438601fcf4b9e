"""Reduction of (x - p)**n / sqrt(Q(x)) antiderivatives to a fundamental basis.

For Q of degree M >= 3 with simple roots, every integral of
(x - p)**n dx / sqrt(Q) is an exact rational combination of the M basis
integrals with integrands (x - p)**-1, 1, x, ..., x**(M-2) over sqrt(Q),
plus an elementary term E(x) * sqrt(Q(x)) with E a Laurent polynomial.

Two independent routes are provided: a banded linear solve
(``solve_b_column`` / ``solve_u_column`` feeding ``reduce``) and a direct
step-by-step recurrence (``recurrence_oracle``).  They must agree
coefficient for coefficient; the verify layer and the tests enforce that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .errors import DomainError
from .ratpoly import LaurentPolynomial, Polynomial, Scalar, scalar_str

__all__ = [
    "BasisIntegral",
    "FundamentalBasis",
    "BandColumn",
    "ReductionResult",
    "matrix_a_entry",
    "matrix_t_entry",
    "solve_b_column",
    "solve_u_column",
    "binomial_rebase",
    "reduce",
    "reduce_root_pole",
    "recurrence_oracle",
    "reduction_residual",
]


@dataclass(frozen=True)
class BasisIntegral:
    """Label for a basis antiderivative: integrand (x - p)**n / sqrt(Q)."""

    n: int
    p: Scalar = Fraction(0)

    def label(self) -> str:
        if self.p == 0:
            return f"I{self.n}"
        return f"I{self.n}@{scalar_str(self.p)}"

    def __repr__(self):
        return self.label()


@dataclass(frozen=True)
class FundamentalBasis:
    """The M basis integrals for degree m weight and pole location p."""

    m: int
    p: Scalar = Fraction(0)

    def elements(self) -> Tuple[BasisIntegral, ...]:
        head = (BasisIntegral(-1, self.p),)
        return head + tuple(BasisIntegral(j) for j in range(self.m - 1))


@dataclass(frozen=True)
class BandColumn:
    """One column of an inverse band matrix, entries keyed by row index."""

    index: int
    entries: Dict[int, Scalar]
    m: int

    def entry(self, row: int) -> Scalar:
        return self.entries.get(row, Fraction(0))


@dataclass(frozen=True)
class ReductionResult:
    """Exact reduction of (x - p)**n / sqrt(Q) down to the basis.

    ``basic_coeffs`` maps basis integrals to coefficients.  ``elementary``
    is the Laurent polynomial E with the elementary part equal to
    E(x) * sqrt(Q(x)) literally (the conventional factor 2 is folded into
    E's coefficients).  ``column`` keeps the raw solved band column when the
    reduction came from a single linear solve.
    """

    q: Polynomial
    p: Scalar
    n: int
    basic_coeffs: Dict[BasisIntegral, Scalar]
    elementary: LaurentPolynomial
    column: Optional[BandColumn] = None
    route: str = "band"

    def basis(self) -> FundamentalBasis:
        return FundamentalBasis(self.q.degree, self.p)


def _degree_checked(q: Polynomial) -> int:
    m = q.degree
    if m < 3:
        raise DomainError(f"weight polynomial must have degree >= 3, got {m}")
    if q.leading == 0:
        raise DomainError("weight polynomial has vanishing leading coefficient")
    return m


def matrix_a_entry(q: Polynomial, l: int, n: int) -> Scalar:
    """Entry (l, n) of the band matrix mapping monomial columns, n >= 0.

    Columns n <= M-2 are identity columns.  Column n >= M-1 holds the
    x**l coefficients of d/dx(2 x**(n+1-M) sqrt(Q)) * sqrt(Q), which sit in
    the band n-M <= l <= n with value (l + n - M + 2) a[l+M-n].
    """
    m = _degree_checked(q)
    if n < 0:
        raise DomainError("column index must be non-negative")
    if n <= m - 2:
        return Fraction(1) if l == n else Fraction(0)
    if l > n or l < n - m:
        return Fraction(0)
    return (l + n - m + 2) * q.coeff(l + m - n)


def matrix_t_entry(q: Polynomial, p: Scalar, l: int, n: int) -> Scalar:
    """Entry (l, n) of the band matrix for negative exponents at center p.

    Rows and columns run over exponents M-2 down to the most negative one.
    Columns -1 <= n <= M-2 are identity columns; column n <= -2 holds the
    (x-p)**l coefficients of d/dx(2 (x-p)**(n+1) sqrt(Q)) * sqrt(Q):
    nonzero for n <= l <= n+M with value (l + n + 2) b[l-n], where b is Q
    re-expanded around p.
    """
    m = _degree_checked(q)
    if n > m - 2:
        raise DomainError(f"column index must be at most {m - 2}")
    if -1 <= n:
        return Fraction(1) if l == n else Fraction(0)
    b = q.shift(p)
    if l < n or l > n + m:
        return Fraction(0)
    return (l + n + 2) * b.coeff(l - n)


def solve_b_column(q: Polynomial, n: int) -> BandColumn:
    """Column n of the inverse of the non-negative-exponent band matrix.

    Back-substitution from the bottom: the matrix is upper triangular with
    diagonal (2i - M + 2) a_M on rows i >= M-1, which never vanishes.
    """
    m = _degree_checked(q)
    if n < 0:
        raise DomainError("column index must be non-negative")
    if n <= m - 2:
        return BandColumn(n, {n: Fraction(1)}, m)
    a_m = q.leading
    col: Dict[int, Scalar] = {n: 1 / ((2 * n - m + 2) * a_m)}
    for i in range(n - 1, m - 2, -1):
        acc = 0
        for l in range(i + 1, min(n, i + m) + 1):
            # band entry of row i, column l is (i + l - m + 2) a[i + m - l]
            acc += (i + l - m + 2) * q.coeff(i + m - l) * col.get(l, 0)
        if acc:
            col[i] = -acc / ((2 * i - m + 2) * a_m)
    for i in range(m - 2, -1, -1):
        acc = 0
        for l in range(m - 1, min(n, i + m) + 1):
            acc += (i + l - m + 2) * q.coeff(i + m - l) * col.get(l, 0)
        if acc:
            col[i] = -acc
    return BandColumn(n, col, m)


def solve_u_column(q: Polynomial, p: Scalar, n: int) -> BandColumn:
    """Column n (n <= -2) of the inverse band matrix at center p.

    Requires Q(p) != 0.  Forward substitution from the most negative row:
    diagonal (2i + 2) b_0 on rows i <= -2 never vanishes.
    """
    m = _degree_checked(q)
    if n > m - 2:
        raise DomainError(f"column index must be at most {m - 2}")
    if n >= -1:
        return BandColumn(n, {n: Fraction(1)}, m)
    b = q.shift(p)
    b0 = b.coeff(0)
    if b0 == 0:
        raise DomainError("center p is a root of the weight polynomial")
    col: Dict[int, Scalar] = {n: 1 / ((2 * n + 2) * b0)}
    for i in range(n + 1, -1):
        acc = 0
        for l in range(max(n, i - m), i):
            acc += (l + i + 2) * b.coeff(i - l) * col.get(l, 0)
        if acc:
            col[i] = -acc / ((2 * i + 2) * b0)
    for i in range(-1, m - 1):
        acc = 0
        for l in range(max(n, i - m), -1):
            acc += (l + i + 2) * b.coeff(i - l) * col.get(l, 0)
        if acc:
            col[i] = -acc
    return BandColumn(n, col, m)


def binomial_rebase(n: int, p: Scalar) -> Dict[int, Scalar]:
    """Coefficients expressing (x-p)**n on x**j, j = 0..n (n >= 0)."""
    if n < 0:
        raise DomainError("binomial rebase needs a non-negative exponent")
    out: Dict[int, Scalar] = {n: Fraction(1) if not isinstance(p, float) else 1.0}
    for k in range(1, n + 1):
        c = math.comb(n, k) * (-p) ** k
        if c != 0:
            out[n - k] = c
    return out


def _add(d: Dict, key, value):
    if value == 0:
        return
    cur = d.get(key, 0)
    cur = cur + value
    if cur == 0:
        d.pop(key, None)
    else:
        d[key] = cur


def _basic_from_exponents(shifted: Dict[int, Scalar], p: Scalar) -> Dict[BasisIntegral, Scalar]:
    """Map exponent -> coeff on (x-p)**l integrands to canonical basis labels.

    Exponent -1 stays at center p; exponents l >= 0 are re-expanded onto
    plain monomials via the binomial theorem when p != 0.
    """
    out: Dict[BasisIntegral, Scalar] = {}
    for l, v in shifted.items():
        if l == -1:
            _add(out, BasisIntegral(-1, p), v)
        elif p == 0:
            _add(out, BasisIntegral(l), v)
        else:
            for j, w in binomial_rebase(l, p).items():
                _add(out, BasisIntegral(j), v * w)
    return out


def reduce(q: Polynomial, p: Scalar, n: int) -> ReductionResult:
    """Reduce the antiderivative of (x-p)**n / sqrt(Q) to the basis.

    For n >= 0 the monomial is rebased onto powers of x and each power
    beyond M-2 is resolved through a solved band column.  For n <= -2 a
    single band column at center p does the whole job; this needs
    Q(p) != 0 (use ``reduce_root_pole`` when p is a simple root).
    """
    m = _degree_checked(q)
    if n >= 0:
        basic: Dict[BasisIntegral, Scalar] = {}
        elem: Dict[int, Scalar] = {}
        top_column = None
        for j, cj in binomial_rebase(n, p).items():
            if j <= m - 2:
                _add(basic, BasisIntegral(j), cj)
                continue
            col = solve_b_column(q, j)
            if j == n:
                top_column = col
            for l, v in col.entries.items():
                if l <= m - 2:
                    _add(basic, BasisIntegral(l), cj * v)
                else:
                    _add(elem, l + 1 - m, 2 * cj * v)
        return ReductionResult(
            q, p, n, basic, LaurentPolynomial(0, elem), top_column, "band"
        )
    if q(p) == 0:
        raise DomainError(
            "weight vanishes at p; a simple-root pole reduces via reduce_root_pole"
        )
    if n == -1:
        return ReductionResult(
            q, p, n, {BasisIntegral(-1, p): Fraction(1)}, LaurentPolynomial(p, {}), None, "band"
        )
    col = solve_u_column(q, p, n)
    shifted = {l: v for l, v in col.entries.items() if l >= -1}
    basic = _basic_from_exponents(shifted, p)
    elem = {l + 1: 2 * v for l, v in col.entries.items() if l <= -2}
    return ReductionResult(q, p, n, basic, LaurentPolynomial(p, elem), col, "band")


def reduce_root_pole(q: Polynomial, p: Scalar) -> ReductionResult:
    """Reduce (x-p)**-1 / sqrt(Q) when p is a simple root of Q.

    With b the coefficients of Q around p (so b_0 = 0, b_1 = Q'(p) != 0),
    the exponent -2 relation with no (x-p)**-2 term left gives

        (x-p)**-1 -> sum_{l=1}^{M-2} l b_{l+2} / b_1 * (x-p)**l
                     - (2 / b_1) (x-p)**-1 * sqrt(Q) elementary part.

    The basis here stays on the shifted monomials (x-p)**l, which together
    with I0 span the fundamental set for a root-pole.
    """
    m = _degree_checked(q)
    b = q.shift(p)
    if b.coeff(0) != 0:
        raise DomainError("p is not a root of the weight polynomial")
    b1 = b.coeff(1)
    if b1 == 0:
        raise DomainError("p must be a simple root of the weight polynomial")
    basic: Dict[BasisIntegral, Scalar] = {}
    for l in range(1, m - 1):
        _add(basic, BasisIntegral(l, p), l * b.coeff(l + 2) / b1)
    elem = LaurentPolynomial(p, {-1: -2 / b1 if isinstance(b1, float) else Fraction(-2, 1) / b1})
    return ReductionResult(q, p, -1, basic, elem, None, "root-pole")


def recurrence_oracle(q: Polynomial, p: Scalar, n: int) -> ReductionResult:
    """Same reduction computed by direct recurrence, no linear solve.

    Independent of ``reduce``: repeatedly eliminates the extreme exponent
    using the differentiated-product relation, then removes the exponent
    M-1 through the derivative-of-sqrt(Q) relation.  Used as the oracle the
    band route is checked against.
    """
    m = _degree_checked(q)
    if n >= 0:
        work: Dict[int, Scalar] = dict(binomial_rebase(n, p))
        elem: Dict[int, Scalar] = {}
        a = q.coeffs
        a_m = q.leading
        while work:
            j = max(work)
            if j <= m - 2:
                break
            c = work.pop(j)
            if j >= m:
                denom = (2 * j - m + 2) * a_m
                _add(elem, j - m + 1, 2 * c / denom)
                for i in range(m):
                    _add(work, j - m + i, -c * (2 * (j - m + 1) + i) * a[i] / denom)
            else:  # j == m - 1, eliminated via the sqrt(Q) derivative relation
                denom = m * a_m
                _add(elem, 0, 2 * c / denom)
                for i in range(m - 1):
                    _add(work, i, -c * (i + 1) * a[i + 1] / denom)
        basic = {BasisIntegral(j): v for j, v in sorted(work.items())}
        return ReductionResult(q, p, n, basic, LaurentPolynomial(0, elem), None, "recurrence")
    if q(p) == 0:
        raise DomainError(
            "weight vanishes at p; a simple-root pole reduces via reduce_root_pole"
        )
    if n == -1:
        return ReductionResult(
            q, p, n, {BasisIntegral(-1, p): Fraction(1)}, LaurentPolynomial(p, {}), None, "recurrence"
        )
    b = q.shift(p)
    work = {n: Fraction(1) if not isinstance(p, float) else 1.0}
    elem = {}
    b0 = b.coeff(0)
    while True:
        mlow = min(work)
        if mlow >= -1:
            break
        c = work.pop(mlow)
        denom = (2 * mlow + 2) * b0
        _add(elem, mlow + 1, 2 * c / denom)
        for j in range(1, m + 1):
            _add(work, mlow + j, -c * (2 * (mlow + 1) + j) * b.coeff(j) / denom)
    basic = _basic_from_exponents(work, p)
    return ReductionResult(q, p, n, basic, LaurentPolynomial(p, elem), None, "recurrence")


def reduction_residual(result: ReductionResult) -> LaurentPolynomial:
    """Exact residual of the reduction identity; zero means the result holds.

    Differentiating the claimed antiderivative and multiplying through by
    sqrt(Q) turns the claim into a polynomial identity:

        (x-p)**n == sum_l c_l (x-c_l-center)**l + E'(x) Q(x) + E(x) Q'(x)/2.

    Everything is expanded around the elementary part's center and
    subtracted; the returned Laurent polynomial is the difference.
    """
    center = result.elementary.center
    if result.n >= 0:
        target = LaurentPolynomial.from_polynomial(
            Polynomial([-result.p, 1]) ** result.n, 0
        )
    else:
        target = LaurentPolynomial(center, {result.n: Fraction(1)})
    acc = target
    for basis_el, v in result.basic_coeffs.items():
        if basis_el.p == center:
            acc = acc - LaurentPolynomial(center, {basis_el.n: v})
        else:
            # cross-center element: expand (x - q)**l around the center
            if basis_el.n < 0:
                raise DomainError("cannot expand a negative power across centers")
            shifted = Polynomial([center - basis_el.p, 1]) ** basis_el.n
            acc = acc - LaurentPolynomial.from_polynomial(shifted, center).scale(v)
    e = result.elementary
    if not e.is_zero():
        q_local = result.q.shift(center) if center != 0 else result.q
        acc = acc - e.derivative().mul_poly(q_local)
        acc = acc - e.mul_poly(q_local.derivative()).scale(Fraction(1, 2))
    return acc
