"""Number field arithmetic, root finding along two routes, embeddings."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmtorsion.arith import dense
from cmtorsion.errors import DomainError
from cmtorsion.numfield import (
    NumberField,
    factor_over_nf,
    is_isomorphic,
    nf_poly_mul,
    nf_roots,
    nf_roots_trager,
    nf_sqrt,
    quadratic_field,
    rationals,
    real_embedding_count,
    roots_of_unity_order,
)

CUBIC = NumberField([-2, 0, 0, 1])  # Q(2^(1/3))
small = st.integers(-6, 6)
cubic_elements = st.lists(small, min_size=3, max_size=3).map(lambda c: CUBIC(c))


@given(cubic_elements, cubic_elements, cubic_elements)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * a.inverse() == CUBIC.one()
        assert (a * b) / a == b


@given(cubic_elements)
def test_norm_multiplicative_and_charpoly(a):
    b = a + CUBIC.gen()
    assert (a * b).norm() == a.norm() * b.norm()
    cp = a.charpoly()
    assert cp.degree == 3


@settings(max_examples=25)
@given(st.lists(cubic_elements, min_size=1, max_size=3), st.integers(1, 5))
def test_padic_roots_agree_with_trager(roots, c):
    g = [CUBIC.one()]
    for r in roots:
        g = dense.mul(g, [-r, CUBIC.one()])
    g = dense.mul(g, CUBIC.poly([c, 0, 1]))  # x^2 + c has no root in a real cubic
    padic = set(nf_roots(g, CUBIC))
    assert padic == set(roots)
    assert padic == set(nf_roots_trager(g, CUBIC))


@given(st.lists(cubic_elements, min_size=1, max_size=7), st.lists(cubic_elements, min_size=1, max_size=7))
def test_kronecker_product_matches_schoolbook(a, b):
    assert dense.trim(nf_poly_mul(a, b)) == dense.trim(dense.mul(a, b))


def test_gaussian_roots():
    K = quadratic_field(-1)
    roots = nf_roots([1, 0, 1], K)
    assert len(roots) == 2 and all(r * r == K(-1) for r in roots)
    assert nf_roots([2, 0, 1], K) == []


def test_factor_over_quadratic():
    K = quadratic_field(-3)
    facs = factor_over_nf([-1, 0, 0, 1], K)  # x^3 - 1 splits over Q(zeta_3)
    assert sorted(len(f) for f, _ in facs) == [2, 2, 2]


def test_zero_polynomial_roots():
    with pytest.raises(DomainError):
        nf_roots([0], CUBIC)


def test_sqrt():
    K = quadratic_field(3)
    s = nf_sqrt(K(12))
    assert s is not None and s * s == K(12)
    assert nf_sqrt(K(2)) is None


def test_embeddings_and_units():
    assert real_embedding_count(CUBIC) == 1
    assert real_embedding_count(NumberField([-1, -3, 0, 1])) == 3
    assert roots_of_unity_order(quadratic_field(-3)) == 6
    assert roots_of_unity_order(quadratic_field(-1)) == 4
    assert roots_of_unity_order(quadratic_field(5)) == 2


def test_isomorphism():
    assert is_isomorphic([-3, 0, 1], [-12, 0, 1])
    assert is_isomorphic([1, 1, 1], [3, 0, 1])
    assert not is_isomorphic([-2, 0, 1], [-3, 0, 1])


def test_rationals_and_parsing():
    Q = rationals()
    assert Q.degree == 1
    assert Q(Fraction(3, 4)).rational() == Fraction(3, 4)
    assert NumberField("1,0,1") == NumberField([1, 0, 1])


def test_reducible_defining_polynomial_rejected():
    with pytest.raises(DomainError):
        NumberField([-1, 0, 1])
