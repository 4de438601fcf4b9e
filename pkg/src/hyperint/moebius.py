"""Projective line utilities: cross-ratios, homographies, dihedral relabeling.

Points live on the real projective line; the point at infinity is the
module-level singleton ``INF``.  Exact scalars (Fraction/int) and floats go
through the same code paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

from .errors import DomainError
from .ratpoly import Polynomial, Scalar

__all__ = [
    "INF",
    "ProjPoint",
    "is_inf",
    "cross_ratio",
    "Homography",
    "CanonicalSplit",
    "homography_canonical_split",
    "ReciprocalParts",
    "reciprocal_decompose",
    "r_operator",
    "tau",
    "eta",
    "dihedral_elements",
    "apply_element",
    "classify_cycle",
    "in_arc",
    "RootCycle",
    "x_canonical",
]


class _Infinity:
    """The point at infinity; compares equal only to itself."""

    __slots__ = ()

    def __repr__(self):
        return "inf"


INF = _Infinity()

ProjPoint = Union[Fraction, int, float, _Infinity]


def is_inf(v) -> bool:
    return isinstance(v, _Infinity)


def _exact(v):
    return Fraction(v) if isinstance(v, int) else v


def _ratio(num, den):
    if den == 0:
        if num == 0:
            raise DomainError("indeterminate 0/0 ratio")
        return INF
    return _exact(num) / _exact(den)


def cross_ratio(d1: ProjPoint, d2: ProjPoint, d3: ProjPoint, d4: ProjPoint):
    """Cross-ratio (d1, d2; d3, d4) = (d3-d1)(d4-d2) / ((d3-d2)(d4-d1)).

    Infinity may appear in any single slot; the corresponding difference
    quotient cancels.  A vanishing denominator yields INF.  Needs at least
    three distinct points.
    """
    pts = (d1, d2, d3, d4)
    if sum(1 for v in pts if is_inf(v)) > 1 or len(set(pts)) < 3:
        raise DomainError("cross ratio needs at least three distinct points")
    if is_inf(d1):
        num, den = d4 - d2, d3 - d2
    elif is_inf(d2):
        num, den = d3 - d1, d4 - d1
    elif is_inf(d3):
        num, den = d4 - d2, d4 - d1
    elif is_inf(d4):
        num, den = d3 - d1, d3 - d2
    else:
        num, den = (d3 - d1) * (d4 - d2), (d3 - d2) * (d4 - d1)
    return _ratio(num, den)


@dataclass(frozen=True)
class Homography:
    """Fractional-linear map t -> (a t + b) / (c t + d), det = ad - bc != 0."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __post_init__(self):
        for name in "abcd":
            v = getattr(self, name)
            object.__setattr__(self, name, _exact(v))
        if self.det == 0:
            raise DomainError("homography matrix is singular")

    @property
    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def apply(self, t: ProjPoint) -> ProjPoint:
        if is_inf(t):
            return _ratio(self.a, self.c)
        t = _exact(t)
        return _ratio(self.a * t + self.b, self.c * t + self.d)

    __call__ = apply

    def inverse(self) -> "Homography":
        return Homography(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "Homography") -> "Homography":
        """self after other, as 2x2 matrix product."""
        return Homography(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse_point(self, x: ProjPoint) -> ProjPoint:
        """Preimage of x, computed through the adjugate matrix."""
        return self.inverse().apply(x)

    def to_json_dict(self) -> dict:
        from .ratpoly import scalar_str

        return {k: scalar_str(getattr(self, k)) for k in "abcd"}


@dataclass(frozen=True)
class CanonicalSplit:
    """Pole-normal form of a homography: at_inf + (at_zero - at_inf)/(1 - t/pole)."""

    at_inf: Scalar
    at_zero: Scalar
    pole: Scalar  # preimage of infinity

    def __call__(self, t: ProjPoint) -> ProjPoint:
        if is_inf(t):
            return self.at_inf
        t = _exact(t)
        den = 1 - t / self.pole
        if den == 0:
            return INF
        return self.at_inf + (self.at_zero - self.at_inf) / den


def homography_canonical_split(h: Homography) -> CanonicalSplit:
    """Split h into constant plus simple pole; needs h(0) and h(inf) finite."""
    if h.c == 0:
        raise DomainError("map fixes infinity, no pole-normal form")
    if h.d == 0:
        raise DomainError("map sends 0 to infinity, no pole-normal form")
    return CanonicalSplit(
        at_inf=_exact(h.a) / h.c,
        at_zero=_exact(h.b) / h.d,
        pole=-_exact(h.d) / h.c,
    )


@dataclass(frozen=True)
class ReciprocalParts:
    """Partial-fraction shape of 1 / (h(t) - p) for a homography h.

    branch "generic":  scale * (offset + delta / (1 - t/pole_param))
    branch "at-zero":  scale * (1 - pole_param / t)        (p = h(0))
    branch "at-inf":   scale * (t / pole_param - 1)        (p = h(inf))
    """

    branch: str
    scale: Scalar
    pole_param: Scalar
    offset: Scalar = Fraction(0)
    delta: Scalar = Fraction(0)

    def __call__(self, t: ProjPoint):
        if self.branch == "generic":
            if is_inf(t):
                return self.scale * self.offset
            den = 1 - _exact(t) / self.pole_param
            if den == 0:
                return INF
            return self.scale * (self.offset + self.delta / den)
        if self.branch == "at-zero":
            if is_inf(t):
                return self.scale
            if t == 0:
                return INF
            return self.scale * (1 - self.pole_param / _exact(t))
        if is_inf(t):
            return INF
        return self.scale * (_exact(t) / self.pole_param - 1)


def reciprocal_decompose(h: Homography, p: Scalar) -> ReciprocalParts:
    """Decompose 1/(h(t) - p) into constant plus simple pole in t.

    The generic branch needs p distinct from both h(0) and h(inf); the two
    special positions get their own branch shapes.
    """
    if h.c == 0 or h.d == 0:
        raise DomainError("decomposition needs h(0) and h(inf) finite")
    p = _exact(p)
    phi_inf = _exact(h.a) / h.c
    phi_zero = _exact(h.b) / h.d
    pole_inf = -_exact(h.d) / h.c  # preimage of infinity
    if p == phi_zero:
        return ReciprocalParts("at-zero", 1 / (phi_inf - phi_zero), pole_inf)
    if p == phi_inf:
        return ReciprocalParts("at-inf", 1 / (phi_inf - phi_zero), pole_inf)
    pole_p = h.inverse_point(p)
    if is_inf(pole_p):
        raise DomainError("p has no finite preimage")
    return ReciprocalParts(
        "generic",
        1 / ((phi_zero - p) * (phi_inf - p)),
        pole_p,
        offset=phi_zero - p,
        delta=phi_inf - phi_zero,
    )


def r_operator(h: Homography, k: int, f: Polynomial) -> Polynomial:
    """Weight-k pullback action on polynomials of degree <= k.

    Substitutes x = h(t) and clears the denominator:
    sum_j c_j (a t + b)**j (c t + d)**(k - j).
    """
    if f.degree > k:
        raise DomainError(f"polynomial degree {f.degree} exceeds weight {k}")
    num = Polynomial([h.b, h.a], "t")
    den = Polynomial([h.d, h.c], "t")
    acc = Polynomial([], "t")
    for j, cj in enumerate(f.coeffs):
        if cj == 0:
            continue
        acc = acc + cj * (num**j) * (den ** (k - j))
    return acc


# -- dihedral relabeling of root tuples ---------------------------------


def tau(seq: Sequence, k: int) -> Tuple:
    """Cyclic left rotation by k: (y_{k+1}, ..., y_N, y_1, ..., y_k)."""
    n = len(seq)
    k %= n
    return tuple(seq[k:]) + tuple(seq[:k])


def eta(seq: Sequence, k: int) -> Tuple:
    """Reflection: (y_k, y_{k-1}, ..., y_1, y_N, y_{N-1}, ..., y_{k+1})."""
    n = len(seq)
    return tuple(seq[(k - i) % n] for i in range(1, n + 1))


def dihedral_elements(n: int) -> Tuple[Tuple[str, int], ...]:
    """All 2n relabelings; ("tau", n) is the identity."""
    return tuple(("tau", k) for k in range(1, n + 1)) + tuple(
        ("eta", k) for k in range(1, n + 1)
    )


def apply_element(element: Tuple[str, int], seq: Sequence) -> Tuple:
    kind, k = element
    if kind == "tau":
        return tau(seq, k)
    if kind == "eta":
        return eta(seq, k)
    raise DomainError(f"unknown relabeling kind {kind!r}")


def classify_cycle(seq: Sequence) -> str:
    """Classify a tuple as cyclically "increasing", "decreasing" or "none".

    A cyclic sequence of distinct reals is increasing when exactly one
    neighbor pair (cyclically) descends, decreasing when exactly one
    ascends.  Repeated values classify as "none".
    """
    n = len(seq)
    if n < 3:
        raise DomainError("cyclic monotonicity needs at least three values")
    if len(set(seq)) != n:
        return "none"
    descents = sum(1 for i in range(n) if seq[i] > seq[(i + 1) % n])
    if descents == 1:
        return "increasing"
    if descents == n - 1:
        return "decreasing"
    return "none"


def in_arc(x: ProjPoint, start, end) -> bool:
    """Is x inside the open arc from start to end, traversed increasingly?

    The arc wraps through infinity exactly when start > end.
    """
    if start == end:
        raise DomainError("degenerate arc")
    if is_inf(x):
        return start > end
    if start < end:
        return start < x < end
    return x > start or x < end


@dataclass(frozen=True)
class RootCycle:
    """A cyclically monotonous labeling of distinct real roots."""

    roots: Tuple
    orientation: int  # +1 cyclically increasing, -1 decreasing

    @classmethod
    def from_roots(cls, roots: Sequence) -> "RootCycle":
        kind = classify_cycle(roots)
        if kind == "none":
            raise DomainError("labeling is not cyclically monotonous")
        return cls(tuple(_exact(r) for r in roots), 1 if kind == "increasing" else -1)


def x_canonical(roots: Sequence, x: ProjPoint) -> Tuple[RootCycle, Tuple[str, int]]:
    """Relabel roots so x lies on the arc from the last label to the first.

    Returns the unique cyclically increasing labeling with that property
    together with the dihedral element carrying the input labeling onto it.
    x must not coincide with a root; x = INF selects the plain sorted
    labeling.
    """
    cycle = RootCycle.from_roots(roots)
    n = len(cycle.roots)
    ordered = tuple(sorted(cycle.roots))
    if not is_inf(x):
        x = _exact(x)
        if x in ordered:
            raise DomainError("x coincides with a root")
        start = 0
        for k in range(n - 1):
            if ordered[k] < x < ordered[k + 1]:
                start = k + 1
                break
        target = ordered[start:] + ordered[:start]
    else:
        target = ordered
    for element in dihedral_elements(n):
        if apply_element(element, cycle.roots) == target:
            return RootCycle(target, 1), element
    raise DomainError("no relabeling found; roots are not a monotone cycle")
