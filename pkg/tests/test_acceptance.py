"""Acceptance criteria 1-9, one summary line each (see the terminal summary)."""

import time

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cmtorsion import atlas, classify, quadorder
from cmtorsion.arith import factor_poly_q, kronecker, primes_up_to
from cmtorsion.arith.poly import UniPoly
from cmtorsion.ellcurve import Curve, reduction_bound, torsion_subgroup
from cmtorsion.errors import SingularCurveError
from cmtorsion.numfield import NumberField, rationals


def test_criterion_1_class_numbers(acceptance):
    t0 = time.perf_counter()
    ones = [quadorder.class_number(d) for d in atlas.CLASS_NUMBER_ONE]
    named = {d: quadorder.class_number(d) for d in (-23, -47, -59, -83)}
    elapsed = time.perf_counter() - t0
    ok = ones == [1] * 13 and named == {-23: 3, -47: 5, -59: 3, -83: 3} and elapsed < 1
    acceptance.record(1, ok, f"h = 1 on all 13 discriminants, h(-23,-47,-59,-83) = {list(named.values())}, {elapsed:.3f}s")
    assert ok


def test_criterion_2_genus_identities(acceptance):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for delta in range(-4, -10**4 - 1, -1):
        if delta % 4 not in (0, 1):
            continue
        count += 1
        nu = quadorder.decompose(delta).nu
        ideals = quadorder.real_primitive_ideals(delta)
        if (
            quadorder.two_torsion_class_count(delta) != 2**nu
            or len(ideals) != 2 ** (nu + 1)
            or any(delta % I.a for I in ideals)
        ):
            bad.append(delta)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    acceptance.record(2, ok, f"{count} discriminants checked, {len(bad)} violations, {elapsed:.1f}s")
    assert ok, bad[:10]


def test_criterion_3_ray_class_degrees(acceptance):
    got = (quadorder.ray_class_degree(-7, 7, "Q"), quadorder.ray_class_degree(-11, 11, "Q"))
    ok = got == (42, 110)
    acceptance.record(3, ok, f"ray class degrees over Q: {got[0]}, {got[1]}")
    assert ok


@pytest.fixture(scope="module")
def table1_report():
    t0 = time.perf_counter()
    report = atlas.verify_table1(jobs=atlas.default_jobs())
    return report, time.perf_counter() - t0


def test_criterion_4_table1_torsion(acceptance, table1_report):
    report, elapsed = table1_report
    good = [r.row for r in report.rows if r.passed]
    ok = len(good) == 17 and all(c["pass"] for c in report.embedding_checks) and elapsed < 600
    acceptance.record(4, ok, f"torsion matches on {len(good)}/17 rows in {elapsed:.1f}s")
    assert ok, [r.message for r in report.rows if not r.passed]


@pytest.mark.xfail(
    strict=True,
    reason="rows 9 and 10 are isomorphic over Q(sqrt 3): the twist ratio is (1 + sqrt 3)^2",
)
def test_criterion_4_same_field_rows_non_isomorphic(acceptance, table1_report):
    report, _ = table1_report
    clashes = [c["rows"] for c in report.isomorphism_checks if not c["pass"]]
    ok = not clashes
    acceptance.record(
        4, ok, f"{len(report.isomorphism_checks)} same-field pairs, isomorphic pairs: {clashes or 'none'}"
    )
    assert ok


def test_criterion_5_classifier(acceptance):
    counts = classify.new_group_counts([3, 5, 7, 9, 11, 13])
    ps = {p: sorted(t.label() for t in classify.prime_squared_groups(p)) for p in (3, 5, 7)}
    ok = (
        [counts[d] for d in (3, 5, 7, 9, 11, 13)] == [2, 1, 0, 3, 0, 0]
        and ps[3] == sorted(["Z/9", "Z/14", "Z/18", "Z/19", "Z/27"])
        and ps[5] == ["Z/11"]
        and ps[7] == []
    )
    acceptance.record(5, ok, f"new-group counts {list(counts.values())}, degree p^2 groups {ps}")
    assert ok


STRETCH_CAP_SECONDS = 600.0


def test_criterion_6_degree_sequences(acceptance):
    t0 = time.perf_counter()
    mismatches = []
    for row in atlas.TABLE2_REQUIRED:
        for delta in atlas.TABLE2_DELTAS:
            got = sorted(atlas.degree_sequence(delta, *row).degrees)
            if got != sorted(atlas.TABLE2[row][delta]):
                mismatches.append((row, delta, got))
    required = time.perf_counter() - t0
    stretch = []
    for row in atlas.TABLE2_STRETCH:
        s0 = time.perf_counter()
        done = 0
        for delta in atlas.TABLE2_DELTAS:
            if time.perf_counter() - s0 > STRETCH_CAP_SECONDS:
                break
            got = sorted(atlas.degree_sequence(delta, *row).degrees)
            if got != sorted(atlas.TABLE2[row][delta]):
                mismatches.append((row, delta, got))
            done += 1
        stretch.append(f"{row}: {done}/13 computed" + ("" if done == 13 else " (skipped past cap)"))
    ok = not mismatches and required < 1800
    acceptance.record(
        6, ok, f"required rows 78/78 cells in {required:.1f}s, stretch {'; '.join(stretch)}, mismatches {mismatches or 'none'}"
    )
    assert ok


def test_criterion_7_class_polynomials(acceptance):
    small = atlas.hilbert_class_poly(-3).poly.coeffs == UniPoly([0, 1]).coeffs and atlas.hilbert_class_poly(
        -12
    ).poly.coeffs == UniPoly([-54000, 1]).coeffs
    worst = 0.0
    bad = []
    for n in range(3, 1001):
        delta = -n
        if delta % 4 not in (0, 1):
            continue
        H = atlas.hilbert_class_poly(delta)
        worst = max(worst, H.residual)
        if H.degree != quadorder.class_number(delta) or H.residual >= 1e-4:
            bad.append(delta)
    ok = small and not bad
    acceptance.record(7, ok, f"H_-3 = t, H_-12 = t - 54000: {small}; |delta| <= 1000 failures {len(bad)}, max residual {worst:.2e}")
    assert ok, bad[:10]


def test_criterion_8_sophie_germain_scan(acceptance):
    r20 = atlas.sg_scan(20)
    t0 = time.perf_counter()
    r4 = atlas.sg_scan(10**4)
    elapsed = time.perf_counter() - t0
    text = r4.reference_text()
    ok = (
        r20.count == 4
        and [m.k for m in r20.members] == [5, 11, 14, 20]
        and r4.paths_agree
        and r4.complete
        and elapsed < 60
        and "953,967" in text
        and "7.96903" in text
    )
    acceptance.record(
        8, ok, f"S(20) = {r20.count}, S(10^4) = {r4.count} (both paths agree, {elapsed:.1f}s); {text}"
    )
    assert ok


small_poly = st.lists(st.integers(-9, 9), min_size=2, max_size=5).filter(lambda c: c[-1] != 0)
curve_coeff = st.integers(-40, 40)
Q = rationals()
REAL_CUBIC = NumberField([-2, 0, 0, 1])


def _factorisation_round_trip():
    @settings(max_examples=1000, derandomize=True, database=None)
    @given(st.lists(small_poly, min_size=1, max_size=3))
    def check(parts):
        f = UniPoly([1])
        for c in parts:
            f = f * UniPoly(c)
        fac = factor_poly_q(f)
        assert fac.expand() == f
        x = sympy.Symbol("x")
        ref = sympy.factor_list(sympy.Poly([int(c) for c in reversed(f.int_coeffs())], x))
        assert sorted((g.degree, e) for g, e in fac) == sorted((sympy.degree(g, x), e) for g, e in ref[1])

    check()


def _torsion_divides_reduction_gcd():
    @settings(max_examples=60, derandomize=True, database=None)
    @given(curve_coeff, curve_coeff)
    def check(a, b):
        try:
            E = Curve(Q, 0, 0, 0, a, b)
        except SingularCurveError:
            return
        T = torsion_subgroup(E)
        assert reduction_bound(E).order_gcd % T.order == 0

    check()


def _real_field_shape():
    @settings(max_examples=40, derandomize=True, database=None)
    @given(curve_coeff, curve_coeff, st.sampled_from([Q, REAL_CUBIC]))
    def check(a, b, F):
        try:
            E = Curve(F, 0, 0, 0, a, F.gen() * b if F.degree > 1 else b)
        except SingularCurveError:
            return
        T = torsion_subgroup(E)
        assert T.m <= 2  # a real embedding forces E[m] to be non-full for m > 2

    check()


def _kronecker_euler():
    odd_primes = primes_up_to(2000)[1:]

    @settings(max_examples=500, derandomize=True, database=None)
    @given(st.integers(-10**9, 10**9), st.sampled_from(odd_primes))
    def check(a, p):
        e = pow(a % p, (p - 1) // 2, p)
        assert kronecker(a, p) == (0 if a % p == 0 else (1 if e == 1 else -1))

    check()


def test_criterion_9_property_suites(acceptance):
    outcomes = {}
    for name, fn in [
        ("factorisation round trip x1000", _factorisation_round_trip),
        ("torsion | gcd of reductions", _torsion_divides_reduction_gcd),
        ("real-field shape m <= 2", _real_field_shape),
        ("Kronecker = Euler", _kronecker_euler),
    ]:
        try:
            fn()
            outcomes[name] = True
        except AssertionError:
            outcomes[name] = False
    ok = all(outcomes.values())
    acceptance.record(9, ok, ", ".join(f"{k}: {'ok' if v else 'FAILED'}" for k, v in outcomes.items()))
    assert ok
