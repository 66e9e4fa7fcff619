"""Class polynomials, fibre degree sequences, the curve battery and the scan."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmtorsion import atlas as a
from cmtorsion.errors import DomainError, UnsupportedError
from cmtorsion.quadorder import class_number

KNOWN_J = {-3: 0, -4: 1728, -7: -3375, -8: 8000, -11: -32768, -12: 54000, -16: 287496,
           -19: -884736, -27: -12288000, -28: 16581375, -43: -884736000,
           -67: -147197952000, -163: -262537412640768000}


@pytest.mark.parametrize("delta", a.CLASS_NUMBER_ONE)
def test_rational_cm_j_invariants(delta):
    assert a.cm_j_invariant(delta) == KNOWN_J[delta]


def test_small_class_polynomials():
    assert [int(c) for c in a.hilbert_class_poly(-15).poly.coeffs] == [-121287375, 191025, 1]
    assert [int(c) for c in a.hilbert_class_poly(-12).poly.coeffs] == [-54000, 1]
    H = a.hilbert_class_poly(-23)
    assert H.degree == 3 and H.residual < a.RESIDUAL_TOLERANCE
    assert all(c.denominator == 1 for c in H.poly.coeffs)


@settings(max_examples=15)
@given(st.integers(3, 400).map(lambda n: -n).filter(lambda d: d % 4 in (0, 1)))
def test_class_polynomial_degree_is_class_number(delta):
    H = a.hilbert_class_poly(delta)
    assert H.degree == class_number(delta)
    assert H.poly.coeffs[-1] == 1


def test_non_rational_j_raises():
    with pytest.raises(DomainError):
        a.cm_j_invariant(-15)


@pytest.mark.parametrize("row", a.TABLE2_REQUIRED)
@pytest.mark.parametrize("delta", [-3, -4, -7, -12, -163])
def test_degree_sequences_match_reference(row, delta):
    got = a.degree_sequence(delta, *row).degrees
    assert sorted(got) == sorted(a.TABLE2[row][delta])


@pytest.mark.parametrize("delta", [-7, -8, -11, -19, -43])
def test_compositum_route_agrees(delta):
    assert a.degree_sequence_compositum(delta, 4).degrees == sorted(a.degree_sequence(delta, 2, 4).degrees)


@settings(max_examples=10)
@given(st.sampled_from(a.CLASS_NUMBER_ONE), st.sampled_from([(1, 4), (1, 5), (2, 4)]), st.integers(1, 10**6))
def test_seed_does_not_change_degrees(delta, row, seed):
    base = sorted(a.degree_sequence(delta, *row).degrees)
    assert sorted(a.degree_sequence(delta, *row, seed=seed).degrees) == base


@pytest.mark.parametrize("delta", [-3, -4, -11])
@pytest.mark.parametrize("row", [(1, 5), (1, 7)])
def test_degree_sum_is_fibre_size(delta, row):
    # X_1(N) -> X(1) has degree (N^2 - 1)/2 for prime N >= 5; over j = 0 and 1728
    # no point is fixed by Aut(E)/{+-1}, so every fibre point has index |Aut(E)|/2
    m, n = row
    shrink = {-3: 3, -4: 2}.get(delta, 1)
    assert sum(a.degree_sequence(delta, m, n).degrees) * shrink == (n * n - 1) // 2


def test_excluded_and_unsupported():
    with pytest.raises(DomainError):
        a.degree_sequence(-7, 1, 2)
    with pytest.raises(DomainError):
        a.degree_sequence(-7, 2, 5)
    with pytest.raises(UnsupportedError):
        a.degree_sequence(-7, 4, 4)
    with pytest.raises(UnsupportedError):
        a.degree_sequence_compositum(-3, 4)


def test_table1_rows_torsion():
    report = a.verify_table1(rows=[1, 8, 11, 12, 13, 17])
    assert all(r.passed for r in report.rows)
    assert all(c["pass"] for c in report.embedding_checks)


def test_table1_pair_nine_ten_is_isomorphic():
    # the two curves over Q(sqrt 3) with Z/2 x Z/6 differ by a twist by a square
    report = a.verify_table1(rows=[9, 10])
    assert all(r.passed for r in report.rows)
    assert report.isomorphism_checks == [{"rows": [9, 10], "isomorphic": True, "pass": False}]


def test_scan_small_values():
    assert a.sg_scan(1).count == 0
    assert a.sg_scan(4).count == 0
    r = a.sg_scan(20)
    assert [m.k for m in r.members] == [5, 11, 14, 20]
    assert r.paths_agree and r.complete


@settings(max_examples=10)
@given(st.integers(1, 300), st.integers(0, 300))
def test_scan_monotone(x, extra):
    assert a.sg_scan(x).count <= a.sg_scan(x + extra).count


def test_scan_members_have_prime_data():
    from cmtorsion.arith import is_prime

    for rec in a.sg_scan(2000).members:
        assert is_prime(rec.ell) and is_prime(rec.p) and rec.ell == 4 * rec.k + 3 and rec.p == 2 * rec.k + 1
        assert rec.h == class_number(-rec.ell) and is_prime(rec.h) and rec.h % 2 == 1


def test_scan_budget_reports_progress():
    r = a.sg_scan(10**7, budget_seconds=0.2)
    assert not r.complete and 0 < r.high_water < 10**7
    assert "953,967" in r.reference_text()


def test_scan_parallel_matches_serial():
    assert a.sg_scan(3000, jobs=2).count == a.sg_scan(3000).count
