"""Curves, group law, division polynomials, reduction and torsion."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cmtorsion.ellcurve import (
    INFINITY,
    Curve,
    Point,
    curve_from_j,
    curves_isomorphic,
    division_polys,
    exact_order_count,
    good_reduction_order,
    hesse_curve,
    hesse_point,
    kubert_curve,
    quadratic_twist,
    reduction_bound,
    torsion_subgroup,
)
from cmtorsion.errors import BadReductionError, NotOnCurveError, SingularCurveError
from cmtorsion.numfield import quadratic_field, rationals

Q = rationals()


def short_curve(a, b):
    try:
        return Curve(Q, 0, 0, 0, a, b)
    except SingularCurveError:
        return None


coeff = st.integers(-30, 30)


# -- worked examples ------------------------------------------------------------

def test_doubling_on_j_zero_curve():
    E = curve_from_j(0)
    P = E.point(0, 4)
    assert E.add(P, P) == E.point(0, -4)
    assert E.order(P) == 3


def test_three_division_polynomial():
    E = curve_from_j(0)
    assert [c.rational() for c in division_polys(E, 3)] == [0, 192, 0, 0, 3]


def test_exact_four_division_degree():
    E = curve_from_j(1728)
    assert len(division_polys(E, 4, exact_order=True)) - 1 == 6


def test_reduction_counts():
    assert good_reduction_order(curve_from_j(1728), 5) == [(1, 8, (2, 4))]
    # y^2 = x^3 + 16 over F_7: 16 = 2 is a cubic non-residue, so x^3 + 2 takes the
    # values {2, 3, 1} and the count is 1 + 1 + 2 * (#x with x^3 + 2 in {1, 2}) = 9
    assert good_reduction_order(curve_from_j(0), 7)[0][1] == 9
    with pytest.raises(BadReductionError):
        good_reduction_order(curve_from_j(0), 3)


def test_twist_of_j_zero():
    T = quadratic_twist(curve_from_j(0), 4)
    assert T.short_model() == (Q(0), Q(1024))


def test_hesse_j_zero():
    assert hesse_curve(0).j_invariant == 0


def test_singular_inputs():
    with pytest.raises(SingularCurveError):
        kubert_curve(0, 0)
    with pytest.raises(SingularCurveError):
        hesse_curve(-3)
    with pytest.raises(NotOnCurveError):
        curve_from_j(0).point(1, 1)


# -- torsion over Q ------------------------------------------------------------

@pytest.mark.parametrize(
    "ainv,expected",
    [
        ((0, 0, 0, -1, 0), (2, 2)),
        ((0, 0, 0, 0, 1), (1, 6)),
        ((0, -1, 1, 0, 0), (1, 5)),  # 11a3
        ((0, 0, 0, 0, 2), (1, 1)),
        ((1, 0, 0, -45, 81), (1, 10)),
        ((1, 0, 1, -19, 26), (2, 6)),
    ],
)
def test_torsion_over_q(ainv, expected):
    T = torsion_subgroup(Curve(Q, *ainv))
    assert T.invariants == expected
    assert len(T.generators) == (2 if expected[0] > 1 else 1)


def _kubert_parameters(N, t):
    t = Fraction(t)
    if N == 4:
        return t, Fraction(0)
    if N == 5:
        return t, t
    if N == 6:
        return t * t + t, t
    if N == 7:
        return t**3 - t**2, t**2 - t
    if N == 8:
        return (2 * t - 1) * (t - 1), (2 * t - 1) * (t - 1) / t
    if N == 9:
        return t**2 * (t - 1) * (t**2 - t + 1), t**2 * (t - 1)
    if N == 10:
        d = t**2 - 3 * t + 1
        return t**3 * (t - 1) * (2 * t - 1) / d**2, -t * (t - 1) * (2 * t - 1) / d
    if N == 12:
        m = (3 * t - 3 * t**2 - 1) / (t - 1)
        f = m / (1 - t)
        d = m + t
        c = f * (d - 1)
        return c * d, c
    raise ValueError(N)


@pytest.mark.parametrize("N", [4, 5, 6, 7, 8, 9, 10, 12])
def test_kubert_families_reach_mazur_groups(N):
    E = kubert_curve(*_kubert_parameters(N, 3))
    assert E.order(Point(Q(0), Q(0))) == N
    T = torsion_subgroup(E)
    # special members may carry extra 2-torsion (t = 3 gives Z/2 x Z/8 for N = 8)
    assert T.n % N == 0
    assert [E.order(P) for P in T.generators] == ([T.m, T.n] if T.m > 1 else [T.n])


@settings(max_examples=30)
@given(coeff, coeff)
def test_torsion_divides_reduction_gcd(a, b):
    E = short_curve(a, b)
    assume(E is not None)
    T = torsion_subgroup(E)
    bound = reduction_bound(E)
    assert bound.order_gcd % T.order == 0
    assert T.m <= 2  # Q has a real embedding
    for P in T.generators:
        assert E.contains(P)


@settings(max_examples=20)
@given(coeff, coeff, st.sampled_from([3, 5, 7, 9, 11, 13]))
def test_odd_division_polynomial_degree(a, b, N):
    E = short_curve(a, b)
    assume(E is not None)
    g = division_polys(E, N)
    assert len(g) - 1 == (N * N - 1) // 2
    assert g[-1].rational() == N


def test_exact_order_counts():
    assert [exact_order_count(N) for N in (2, 3, 4, 6)] == [3, 8, 12, 24]


# -- group law and models ------------------------------------------------------------

@settings(max_examples=30)
@given(coeff, coeff)
def test_twist_preserves_j(d, a):
    assume(d != 0)
    E = curve_from_j(a * 10 + 7) if a * 10 + 7 not in (0, 1728) else curve_from_j(5)
    T = quadratic_twist(E, d)
    assert T.j_invariant == E.j_invariant
    assert curves_isomorphic(E, T) == (_is_rational_square(d))


def _is_rational_square(d):
    if d <= 0:
        return False
    r = int(d**0.5 + 0.5)
    return r * r == d


def test_associativity_over_quadratic_field():
    K = quadratic_field(-3)
    E = Curve(K, 0, 0, 0, 0, 16)
    w = K.gen()
    pts = [E.point(0, 4), E.point(-4, K(0) + 4 * w) if E.contains(Point(K(-4), 4 * w)) else E.point(0, -4)]
    P, R = E.point(0, 4), pts[1]
    S = E.lift_x(K(2))
    S = S[0] if S else P
    assert E.add(E.add(P, R), S) == E.add(P, E.add(R, S))
    assert E.add(P, E.neg(P)) == INFINITY


def test_hesse_points_lie_on_model():
    for lam in (0, 1, 2, 5):
        E = hesse_curve(lam)
        for X, Y, Z in ((1, -1, 0), (1, 0, -1), (0, 1, -1)):
            P = hesse_point(X, Y, Z, lam)
            assert E.contains(P)
            assert E.mul(3, P) == INFINITY


def test_isomorphism_j1728_quartic_twist():
    K = quadratic_field(-1)
    E1 = Curve(K, 0, 0, 0, -1, 0)
    E2 = Curve(K, 0, 0, 0, 4, 0)  # -4 = (1+i)^4
    assert curves_isomorphic(E1, E2)
    assert not curves_isomorphic(E1, Curve(K, 0, 0, 0, 2, 0))


def test_json_shapes():
    T = torsion_subgroup(curve_from_j(1728))
    data = T.to_json()
    assert data["structure"] == "Z/2 x Z/2"
    assert len(data["generators"]) == 2


def test_twist_by_minus_one_fixes_x3_minus_x():
    E = curve_from_j(1728)
    assert quadratic_twist(E, -1).short_model() == E.short_model()


def test_small_torsion_examples():
    assert torsion_subgroup(curve_from_j(0)).structure() == "Z/3"
    K = quadratic_field(-1)
    i = K.gen()
    assert torsion_subgroup(kubert_curve(i, i, K)).structure() == "Z/10"
    assert torsion_subgroup(kubert_curve(Fraction(-1, 8), 0, K)).structure() == "Z/2 x Z/4"


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 8, 9])
def test_exact_order_factor_degrees_sum(N):
    from cmtorsion.arith import factor_poly_q
    from cmtorsion.arith.poly import UniPoly

    fN = UniPoly([c.rational() for c in division_polys(curve_from_j(-3375), N, exact_order=True)])
    assert sum(g.degree * e for g, e in factor_poly_q(fN)) == fN.degree
    assert 2 * fN.degree == exact_order_count(N) or N == 2
