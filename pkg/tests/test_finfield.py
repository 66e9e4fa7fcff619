"""Finite field arithmetic against brute force."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmtorsion.finfield import FiniteField, residue_fields

FIELDS = [FiniteField(7), FiniteField(2, [1, 1, 1]), FiniteField(3, [1, 0, 1]), FiniteField(5, [1, 1, 0, 1])]


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.q}")
def test_group_laws(F):
    for a in F.elements():
        assert F.add(a, F.neg(a)) == F.from_int(0)
        if a != F.from_int(0):
            assert F.mul(a, F.inv(a)) == F.from_int(1)
            assert F.pow(a, F.order) == F.from_int(1)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.q}")
def test_squares_and_roots(F):
    squares = {F.mul(a, a) for a in F.elements()}
    for a in F.elements():
        assert F.is_square(a) == (a in squares)
        if a in squares:
            r = F.sqrt(a)
            assert F.mul(r, r) == a


@given(st.lists(st.integers(0, 6), min_size=1, max_size=5), st.lists(st.integers(0, 6), min_size=1, max_size=5))
def test_poly_division_identity_f7(a, b):
    F = FIELDS[0]
    a = F.ptrim([F.from_int(c) for c in a])
    b = F.ptrim([F.from_int(c) for c in b])
    if not b:
        return
    qt, r = F.pdivmod(a, b)
    assert F.padd(F.pmul(qt, b), r) == a
    assert len(r) < len(b)


@given(st.lists(st.integers(-1, 23), min_size=1, max_size=4, unique=True))
def test_roots_of_split_polynomial(rs):
    F = FiniteField(5, [2, 0, 1])  # F_25
    poly = [F.from_int(1)]
    for r in rs:
        poly = F.pmul(poly, [F.neg(r), F.from_int(1)])
    assert sorted(F.roots(poly)) == sorted(rs)


def test_vector_round_trip():
    F = FiniteField(3, [2, 2, 0, 1])
    for a in F.elements():
        assert F.from_vec(F.to_vec(a)) == a


def test_residue_fields_of_gaussian():
    assert residue_fields([1, 0, 1], 5) == [[2, 1], [3, 1]]
    assert residue_fields([1, 0, 1], 3) == [[1, 0, 1]]
    assert residue_fields([1, 0, 1], 3, cap=5) == []


def test_cap():
    with pytest.raises(ValueError):
        FiniteField(1009, [3, 0, 1])
