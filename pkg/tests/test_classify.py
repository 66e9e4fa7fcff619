"""Torsion classification in odd, prime and prime-squared degree."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmtorsion import classify as c
from cmtorsion.arith import euler_phi, is_prime
from cmtorsion.atlas import cm_j_invariant
from cmtorsion.errors import DomainError
from cmtorsion.quadorder import class_number

odd_degrees = st.integers(0, 40).map(lambda k: 2 * k + 1)


def labels(groups):
    return {t.label() for t in groups}


def test_olson_groups():
    assert labels(c.olson_groups()) == {"0", "Z/2", "Z/3", "Z/4", "Z/6", "Z/2 x Z/2"}


@pytest.mark.parametrize(
    "degree,new",
    [(1, 6), (3, 2), (5, 1), (7, 0), (9, 3), (11, 0), (13, 0)],
)
def test_new_group_counts(degree, new):
    assert c.new_group_counts([degree])[degree] == new


def test_degree_three_groups():
    assert labels(c.odd_degree_candidates(3).non_olson()) == {"Z/9", "Z/14"}
    assert labels(c.odd_degree_candidates(5).non_olson()) == {"Z/11"}


@given(odd_degrees)
def test_proven_within_candidates_and_olson_included(d):
    r = c.odd_degree_candidates(d)
    proven = {(t.m, t.N) for t in r.proven}
    assert proven <= {(t.m, t.N) for t in r.candidates}
    assert c.OLSON_SHAPES <= proven
    for t in r.non_olson():
        assert t.m == 1
        odd = c.odd_part(t.N)
        (ell,) = c.prime_divisors(odd)
        assert ell % 4 == 3
        assert t.N in (odd, 2 * odd)
        # real cyclotomy: some admissible discriminant makes (phi(ell^n)/2) h divide d
        assert any(d % ((euler_phi(odd) // 2) * class_number(delta)) == 0 for delta in t.cm)


@given(odd_degrees, st.sampled_from([3, 5, 7]))
def test_groups_persist_in_multiples(d, k):
    small = {(t.m, t.N) for t in c.odd_degree_candidates(d).proven}
    big = {(t.m, t.N) for t in c.odd_degree_candidates(d * k).proven}
    assert small <= big


def test_even_degree_rejected():
    with pytest.raises(DomainError):
        c.odd_degree_candidates(4)


def test_divisor_examples():
    assert [c.real_cyclotomy_divisor(-11, 11), c.real_cyclotomy_divisor(-7, 7), c.real_cyclotomy_divisor(-3, 9)] == [5, 3, 3]
    # ramified: (ell - 1) h_K; split with w = 6: 2 (ell - 1) / 6; inert with w = 4: 2 (ell^2 - 1) / 4
    assert [c.spy_divisor(-7, 7), c.spy_divisor(-3, 7), c.spy_divisor(-4, 3)] == [6, 2, 4]
    assert c.sqrt_spy_check(6, -3, 7)
    assert not c.sqrt_spy_check(1, -3, 7)
    with pytest.raises(DomainError):
        c.sqrt_spy_check(6, -7, 7)  # gcd(delta, N) != 1 under the coprime hypothesis
    assert not c.sqrt_spy_check(6, -7, 7, hypothesis="full-torsion")  # 36 > 12
    assert c.sqrt_spy_bound(6, -3) == 6


@given(st.sampled_from([-3, -4, -7, -8, -11, -19, -43, -67, -163, -15, -23]), st.sampled_from([3, 5, 7, 11, 13]))
def test_spy_divisor_is_positive_integer(delta, ell):
    v = c.spy_divisor(delta, ell)
    assert isinstance(v, int) and v > 0


def test_prime_degree_table():
    assert [r.index for r in c.prime_degree_table(2)] == [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]
    assert [r.index for r in c.prime_degree_table(3)] == [13, 14, 15, 16]
    assert [r.index for r in c.prime_degree_table(5)] == [17]
    assert c.prime_degree_table(7) == []
    for row in c.TABLE1:
        assert is_prime(row.degree)
        assert class_number(row.delta) >= 1
        assert class_number(row.delta) == 1  # every listed curve has a rational CM j-invariant
        assert cm_j_invariant(row.delta).denominator == 1


def test_prime_squared():
    assert labels(c.prime_squared_groups(3)) == {"Z/9", "Z/14", "Z/18", "Z/19", "Z/27"}
    assert labels(c.prime_squared_groups(5)) == {"Z/11"}
    assert c.prime_squared_groups(7) == []
    assert c.prime_squared_groups(11) == []
    assert len(c.prime_squared_groups(2)) == 14
    with pytest.raises(DomainError):
        c.prime_squared_groups(9)


def test_class_number_bound_limit():
    lim = c.class_number_bound_limit()
    assert lim == 77
    assert (lim - 1) / 2 <= lim**0.5 * __import__("math").log(lim)
    assert all(c.shifted_prime_solutions(p) == [] for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37))


def test_report_json():
    data = c.odd_degree_candidates(3).to_json()
    assert data["degree"] == 3
    assert set(data["new"]) == {"Z/9", "Z/14"}
