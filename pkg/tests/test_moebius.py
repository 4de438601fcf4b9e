"""Projective-line layer: cross-ratios, homographies, dihedral relabeling."""

import random
from fractions import Fraction

import pytest

from hyperint.errors import DomainError
from hyperint.moebius import (
    INF,
    Homography,
    RootCycle,
    apply_element,
    classify_cycle,
    cross_ratio,
    dihedral_elements,
    eta,
    homography_canonical_split,
    in_arc,
    is_inf,
    r_operator,
    reciprocal_decompose,
    tau,
    x_canonical,
)
from hyperint.ratpoly import Polynomial

from conftest import rand_fraction

F = Fraction


def rand_homography(rng):
    while True:
        vals = [rand_fraction(rng) for _ in range(4)]
        if vals[0] * vals[3] - vals[1] * vals[2] != 0:
            return Homography(*vals)


def test_cross_ratio_frozen_values():
    # the parameter values the quartic pipeline is pinned to
    assert cross_ratio(3, 4, 1, 6) == F(4, 9)
    assert cross_ratio(3, 4, 1, 2) == F(4, 3)
    assert cross_ratio(3, 4, 1, 5) == F(1, 3)
    assert cross_ratio(3, 4, 1, 1) == 1
    assert is_inf(cross_ratio(3, 4, 1, 3))
    assert cross_ratio(3, 4, 1, 4) == 0


def test_cross_ratio_infinity_slots():
    # each slot's INF variant is the limit of the finite formula
    big = F(10**12)
    pts = (F(2), F(5), F(-1))
    for slot in range(4):
        args_inf = list(pts)
        args_inf.insert(slot, INF)
        args_big = list(pts)
        args_big.insert(slot, big)
        exact = cross_ratio(*args_inf)
        approx = cross_ratio(*args_big)
        assert abs(float(approx) - float(exact)) < 1e-9


def test_cross_ratio_moebius_invariance(rng):
    for _ in range(25):
        h = rand_homography(rng)
        pts = []
        while len(pts) < 4:
            v = rand_fraction(rng)
            if v not in pts:
                pts.append(v)
        imgs = [h.apply(v) for v in pts]
        assert cross_ratio(*imgs) == cross_ratio(*pts)


def test_cross_ratio_needs_three_points():
    with pytest.raises(DomainError):
        cross_ratio(1, 1, 2, 2)
    with pytest.raises(DomainError):
        cross_ratio(INF, INF, 1, 2)


def test_homography_apply_inverse_round_trip(rng):
    for _ in range(25):
        h = rand_homography(rng)
        t = rand_fraction(rng)
        image = h.apply(t)
        assert h.inverse_point(image) == t
        # the pole goes to infinity and back
        if h.c != 0:
            pole = -h.d / h.c
            assert is_inf(h.apply(pole))
            assert h.inverse_point(INF) == pole


def test_homography_inverse_point_cross_ratio_oracle(rng):
    # preimage equals the cross-ratio (h(inf), h(0); h(1), x)
    for _ in range(25):
        h = rand_homography(rng)
        if h.c == 0 or h.d == 0 or h.c + h.d == 0:
            continue
        x = rand_fraction(rng)
        expected = cross_ratio(h.apply(INF), h.apply(0), h.apply(1), x)
        got = h.inverse_point(x)
        if is_inf(expected):
            assert is_inf(got)
        else:
            assert got == expected


def test_homography_compose_and_det(rng):
    for _ in range(10):
        g = rand_homography(rng)
        h = rand_homography(rng)
        t = rand_fraction(rng)
        lhs = g.apply(h.apply(t))
        rhs = g.compose(h).apply(t)
        if is_inf(lhs):
            assert is_inf(rhs)
        else:
            assert lhs == rhs
        assert g.compose(h).det == g.det * h.det


def test_homography_rejects_singular():
    with pytest.raises(DomainError):
        Homography(1, 2, 2, 4)


def test_canonical_split_reconstructs(rng):
    for _ in range(20):
        h = rand_homography(rng)
        if h.c == 0 or h.d == 0:
            continue
        split = homography_canonical_split(h)
        assert split(0) == h.apply(0)
        assert split(INF) == h.apply(INF)
        for _ in range(5):
            t = rand_fraction(rng)
            expect = h.apply(t)
            got = split(t)
            if is_inf(expect):
                assert is_inf(got)
            else:
                assert got == expect


def test_canonical_split_requires_finite_endpoints():
    with pytest.raises(DomainError):
        homography_canonical_split(Homography(1, 2, 0, 1))
    with pytest.raises(DomainError):
        homography_canonical_split(Homography(1, 2, 3, 0))


def test_reciprocal_decompose_all_branches(rng):
    for _ in range(20):
        h = rand_homography(rng)
        if h.c == 0 or h.d == 0:
            continue
        phi_zero = h.apply(0)
        phi_inf = h.apply(INF)
        generic_p = phi_zero + 1  # distinct from phi_zero; rarely phi_inf
        if generic_p == phi_inf:
            generic_p += 1
        for p, branch in (
            (generic_p, "generic"),
            (phi_zero, "at-zero"),
            (phi_inf, "at-inf"),
        ):
            parts = reciprocal_decompose(h, p)
            assert parts.branch == branch
            for _ in range(4):
                t = rand_fraction(rng)
                image = h.apply(t)
                if is_inf(image) or image == p or t == 0:
                    continue
                assert parts(t) == 1 / (image - p), (h, p, t)


def test_r_operator_linear_factor_rule(rng):
    for _ in range(15):
        h = rand_homography(rng)
        roots = [rand_fraction(rng) for _ in range(3)]
        f = Polynomial.from_roots(roots, 1)
        lhs = r_operator(h, 3, f)
        num = Polynomial([h.b, h.a])
        den = Polynomial([h.d, h.c])
        rhs = Polynomial([1])
        for r in roots:
            rhs = rhs * (num - r * den)
        assert lhs == rhs


def test_r_operator_multiplicative(rng):
    for _ in range(15):
        h = rand_homography(rng)
        f = Polynomial([rand_fraction(rng) for _ in range(3)])
        g = Polynomial([rand_fraction(rng) for _ in range(4)])
        k, l = 3, 4
        lhs = r_operator(h, k, f) * r_operator(h, l, g)
        rhs = r_operator(h, k + l, f * g)
        assert lhs == rhs


def test_r_operator_degree_bound():
    h = Homography(1, 2, 3, 5)
    with pytest.raises(DomainError):
        r_operator(h, 1, Polynomial([0, 0, 1]))


def test_tau_eta_position_forms():
    y = ("a", "b", "c", "d", "e")
    assert tau(y, 2) == ("c", "d", "e", "a", "b")
    assert tau(y, 5) == y
    assert eta(y, 2) == ("b", "a", "e", "d", "c")
    assert eta(y, 5) == ("e", "d", "c", "b", "a")


def test_eta_is_involution(rng):
    y = tuple(range(6))
    for k in range(1, 7):
        assert eta(eta(y, k), k) == y


def test_dihedral_closure_has_2n_elements():
    n = 5
    base = tuple(range(n))
    images = {apply_element(e, base) for e in dihedral_elements(n)}
    assert len(images) == 2 * n
    # closed under composition
    for e1 in dihedral_elements(n):
        for e2 in dihedral_elements(n):
            assert apply_element(e1, apply_element(e2, base)) in images


def test_classify_cycle():
    assert classify_cycle((1, 2, 3, 4)) == "increasing"
    assert classify_cycle((3, 4, 1, 2)) == "increasing"
    assert classify_cycle((4, 3, 2, 1)) == "decreasing"
    assert classify_cycle((2, 1, 4, 3)) == "decreasing"
    assert classify_cycle((1, 3, 2, 4)) == "none"
    assert classify_cycle((1, 1, 2, 3)) == "none"
    with pytest.raises(DomainError):
        classify_cycle((1, 2))


def test_rotations_preserve_reflections_reverse(rng):
    for _ in range(20):
        n = rng.randint(4, 7)
        vals = set()
        while len(vals) < n:
            vals.add(rand_fraction(rng))
        seq = tau(tuple(sorted(vals)), rng.randint(1, n))
        assert classify_cycle(seq) == "increasing"
        for k in range(1, n + 1):
            assert classify_cycle(tau(seq, k)) == "increasing"
            assert classify_cycle(eta(seq, k)) == "decreasing"


def test_orientation_matches_cycle_class(rng):
    # x -> (b, c; a, x) preserves orientation exactly when (a, b, c) is
    # cyclically increasing; its derivative sign is (a-b)(c-b)/(a-c)
    for _ in range(40):
        vals = set()
        while len(vals) < 3:
            vals.add(rand_fraction(rng))
        a, b, c = tuple(vals)
        sign = (a - b) * (c - b) * (a - c)  # same sign as the derivative
        cls = classify_cycle((a, b, c))
        assert (sign > 0) == (cls == "increasing")


def test_in_arc():
    assert in_arc(F(5, 2), 2, 3)
    assert not in_arc(F(7, 2), 2, 3)
    assert in_arc(5, 4, 1)  # wraps through infinity
    assert in_arc(-7, 4, 1)
    assert in_arc(INF, 4, 1)
    assert not in_arc(2, 4, 1)
    assert not in_arc(INF, 1, 4)


def test_x_canonical_frozen_cases():
    cycle, element = x_canonical((1, 2, 3, 4), 6)
    assert cycle.roots == (1, 2, 3, 4)
    assert element == ("tau", 4)

    cycle, element = x_canonical((1, 2, 3, 4), F(5, 2))
    assert cycle.roots == (3, 4, 1, 2)
    assert element == ("tau", 2)

    cycle, element = x_canonical((4, 3, 2, 1), 6)
    assert cycle.roots == (1, 2, 3, 4)
    assert element == ("eta", 4)

    cycle, element = x_canonical((1, 2, 3, 4), INF)
    assert cycle.roots == (1, 2, 3, 4)


def test_x_canonical_places_x_on_terminal_arc(rng):
    for _ in range(40):
        n = rng.randint(3, 7)
        vals = set()
        while len(vals) < n:
            vals.add(rand_fraction(rng, span=9))
        seq = tuple(sorted(vals))
        seq = tau(seq, rng.randint(1, n))
        if rng.random() < 0.5:
            seq = eta(seq, rng.randint(1, n))
        x = rand_fraction(rng, span=12)
        if x in vals:
            continue
        cycle, element = x_canonical(seq, x)
        assert cycle.orientation == 1
        assert classify_cycle(cycle.roots) == "increasing"
        assert apply_element(element, seq) == cycle.roots
        assert in_arc(x, cycle.roots[-1], cycle.roots[0])


def test_x_canonical_rejects_bad_input():
    with pytest.raises(DomainError):
        x_canonical((1, 3, 2, 4), 6)
    with pytest.raises(DomainError):
        x_canonical((1, 2, 3, 4), 3)


def test_root_cycle_from_roots():
    rc = RootCycle.from_roots((3, 4, 1, 2))
    assert rc.orientation == 1
    rc = RootCycle.from_roots((2, 1, 4, 3))
    assert rc.orientation == -1
    with pytest.raises(DomainError):
        RootCycle.from_roots((1, 4, 2, 3))
