"""Exact scalar, polynomial and Laurent-polynomial layer.

Rational scalars are ``fractions.Fraction`` (always lowest terms, positive
denominator).  Polynomials are dense low-to-high coefficient vectors and work
over Fractions or floats; the exact and numeric paths share the same code,
only the scalar type differs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[Fraction, float]

__all__ = [
    "Scalar",
    "rational",
    "scalar_str",
    "as_float",
    "Polynomial",
    "LaurentPolynomial",
    "elementary_symmetric",
]


def rational(value) -> Fraction:
    """Parse a rational scalar from int, Fraction or ``p/q`` text."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def scalar_str(value: Scalar) -> str:
    """Canonical text form: ``p/q`` (or ``p``) for rationals, %.17g for floats."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def as_float(value: Scalar) -> float:
    return float(value)


def _norm_coeffs(coeffs: Iterable) -> tuple:
    out = []
    for c in coeffs:
        if isinstance(c, float):
            out.append(c)
        elif isinstance(c, (int, Fraction)):
            out.append(Fraction(c))
        elif isinstance(c, str):
            out.append(Fraction(c))
        else:
            raise TypeError(f"unsupported coefficient type {type(c).__name__}")
    # trailing zeros stripped so degree == len(coeffs) - 1
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial, coefficients low-to-high, trailing zeros stripped.

    ``var`` is a display tag only; arithmetic and equality ignore it.
    """

    coeffs: tuple = field(default=())
    var: str = "x"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _norm_coeffs(self.coeffs))

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, j: int) -> Scalar:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- evaluation ----------------------------------------------------

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return Polynomial(out, self.var)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs], self.var)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if self.is_zero() or other.is_zero():
                return Polynomial((), self.var)
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Polynomial(out, self.var)
        return Polynomial([c * other for c in self.coeffs], self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "Polynomial":
        return Polynomial(
            [j * c for j, c in enumerate(self.coeffs)][1:], self.var
        )

    # -- structure -----------------------------------------------------

    def shift(self, p) -> "Polynomial":
        """Re-expand around p: returns coefficients of ``self(u + p)`` in u.

        Repeated synthetic division by (x - p); degree and leading
        coefficient are preserved.
        """
        work = list(self.coeffs)
        out = []
        for _ in range(len(work)):
            rem = work[-1]
            for j in range(len(work) - 2, -1, -1):
                rem = work[j] + rem * p
                work[j] = rem
            out.append(work[0])
            work = work[1:]
        return Polynomial(out, "u" if self.var == "x" else self.var)

    @classmethod
    def from_roots(cls, roots: Sequence, leading=1, var: str = "x") -> "Polynomial":
        acc = cls([leading], var)
        for r in roots:
            acc = acc * cls([-r, 1], var)
        return acc

    def monomial_times(self, k: int) -> "Polynomial":
        """Multiply by x**k (k >= 0)."""
        if self.is_zero():
            return self
        return Polynomial((Fraction(0),) * k + self.coeffs, self.var)


@dataclass(frozen=True)
class LaurentPolynomial:
    """Finite Laurent polynomial in powers of (x - center).

    ``terms`` maps exponent to coefficient; zero coefficients are dropped so
    the zero element has an empty mapping.
    """

    center: Scalar = 0
    terms: Mapping[int, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for e, c in self.terms.items():
            if isinstance(c, (int, str)):
                c = Fraction(c)
            if c != 0:
                cleaned[int(e)] = c
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def from_polynomial(cls, poly: Polynomial, center=0) -> "LaurentPolynomial":
        """Wrap a plain polynomial whose variable is already (x - center)."""
        return cls(center, {j: c for j, c in enumerate(poly.coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: int) -> Scalar:
        return self.terms.get(e, Fraction(0))

    def min_exp(self) -> int:
        return min(self.terms) if self.terms else 0

    def max_exp(self) -> int:
        return max(self.terms) if self.terms else 0

    def _check_center(self, other: "LaurentPolynomial"):
        if self.center != other.center:
            raise ValueError("Laurent operands use different centers")

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check_center(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPolynomial(self.center, out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.center, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def scale(self, s) -> "LaurentPolynomial":
        return LaurentPolynomial(self.center, {e: c * s for e, c in self.terms.items()})

    def mul_poly(self, poly: Polynomial) -> "LaurentPolynomial":
        """Multiply by a polynomial given in the same (x - center) variable."""
        out: dict = {}
        for e, c in self.terms.items():
            for j, b in enumerate(poly.coeffs):
                key = e + j
                out[key] = out.get(key, Fraction(0)) + c * b
        return LaurentPolynomial(self.center, out)

    def derivative(self) -> "LaurentPolynomial":
        return LaurentPolynomial(
            self.center, {e - 1: e * c for e, c in self.terms.items() if e != 0}
        )

    def __call__(self, x):
        u = x - self.center
        acc = 0
        for e, c in self.terms.items():
            acc += c * u**e
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.center == other.center and self.terms == other.terms

    def __hash__(self):
        return hash((self.center, tuple(sorted(self.terms.items()))))


def elementary_symmetric(values: Sequence, k: int):
    """k-th elementary symmetric function of the given values (e_0 = 1)."""
    if k < 0 or k > len(values):
        return Fraction(0)
    row = [Fraction(1)] + [Fraction(0)] * k
    for v in values:
        for j in range(min(k, len(row) - 1), 0, -1):
            row[j] = row[j] + row[j - 1] * v
    return row[k]
