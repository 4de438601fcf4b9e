"""Shared test helpers: seeded rational generators and slow quadrature oracles."""

import math
import random
from fractions import Fraction

import pytest

from hyperint.ratpoly import Polynomial


def rand_fraction(rng: random.Random, span: int = 6, dmax: int = 4) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.randint(1, dmax)
    return Fraction(num, den)


def rand_weight(rng: random.Random, degree: int) -> Polynomial:
    """Random rational polynomial of exact degree with nonzero leading coeff."""
    coeffs = [rand_fraction(rng) for _ in range(degree)]
    lead = Fraction(0)
    while lead == 0:
        lead = rand_fraction(rng)
    return Polynomial(coeffs + [lead])


def rand_simple_roots(rng: random.Random, count: int, lo: int = -8, hi: int = 8):
    """Distinct rationals usable as simple roots, sorted increasing."""
    seen = set()
    while len(seen) < count:
        seen.add(Fraction(rng.randint(4 * lo, 4 * hi), rng.choice([1, 2, 4])))
    return tuple(sorted(seen))


def agm(a: float, b: float, tol: float = 1e-15) -> float:
    """Arithmetic-geometric mean, used as an independent oracle."""
    while abs(a - b) > tol * abs(a):
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


@pytest.fixture
def rng():
    return random.Random(20260814)
