"""Integer and polynomial arithmetic: number theory, dense kernels, factorisation."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cmtorsion.arith import (
    UniPoly,
    cyclotomic_poly,
    divisors,
    euler_phi,
    factor_poly_q,
    factorint,
    is_prime,
    jacobi,
    kronecker,
    moebius,
    next_prime,
    parse_rational,
    primes_up_to,
)
from cmtorsion.arith import dense
from cmtorsion.arith.zx import fp_factor_squarefree, hensel_lift, mod_mul, zx_mul
from cmtorsion.errors import DomainError


def test_primes_and_factorint():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert factorint(360) == {2: 3, 3: 2, 5: 1}
    assert next_prime(13) == 17
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert euler_phi(36) == 12


@given(st.integers(min_value=2, max_value=10**12))
def test_factorint_matches_sympy(n):
    assert factorint(n) == sympy.factorint(n)


@given(st.integers(min_value=-500, max_value=500), st.integers(min_value=3, max_value=1999).filter(lambda p: sympy.isprime(p)))
def test_kronecker_agrees_with_euler_criterion(a, p):
    euler = pow(a % p, (p - 1) // 2, p)
    expected = 0 if a % p == 0 else (1 if euler == 1 else -1)
    assert kronecker(a, p) == expected


@given(st.integers(min_value=-10**6, max_value=10**6), st.integers(min_value=1, max_value=10**4).map(lambda n: 2 * n + 1))
def test_jacobi_matches_sympy(a, n):
    assert jacobi(a, n) == sympy.jacobi_symbol(a, n)


def test_kronecker_at_two():
    assert kronecker(-7, 2) == 1
    assert kronecker(-3, 2) == -1
    assert kronecker(-4, 2) == 0


def test_parse_rational():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(" 5 ") == 5
    with pytest.raises(ValueError):
        parse_rational("x")


def test_cyclotomic():
    assert cyclotomic_poly(12).coeffs == UniPoly([1, 0, -1, 0, 1]).coeffs


def test_dense_division_and_gcd():
    a = [Fraction(c) for c in (-1, 0, 0, 1)]  # x^3 - 1
    b = [Fraction(c) for c in (-1, 1)]
    q, r = dense.divmod_(a, b)
    assert q == [1, 1, 1] and r == []
    assert dense.gcd(a, [Fraction(-1), Fraction(0), Fraction(1)]) == [-1, 1]


def test_resultant_of_linear_factors():
    # Res(x - 2, x^2 + 1) = 5
    assert dense.resultant([Fraction(-2), Fraction(1)], [Fraction(1), Fraction(0), Fraction(1)]) == 5


def test_factor_doc_example():
    fac = factor_poly_q(UniPoly([0, 192, 0, 0, 3]))
    assert [g.pretty() for g, _ in fac] == ["x", "x + 4", "x^2 - 4*x + 16"]
    assert fac.expand() == UniPoly([0, 192, 0, 0, 3])


def test_factor_zero_raises():
    with pytest.raises(DomainError):
        factor_poly_q(UniPoly([]))


def test_swinnerton_dyer_is_irreducible():
    x = sympy.Symbol("x")
    sd = sympy.Poly(sympy.minimal_polynomial(sympy.sqrt(2) + sympy.sqrt(3) + sympy.sqrt(5), x), x)
    coeffs = [int(c) for c in reversed(sd.all_coeffs())]
    fac = factor_poly_q(UniPoly(coeffs))
    assert len(fac) == 1 and fac.factors[0][0].degree == 8


small_poly = st.lists(st.integers(min_value=-6, max_value=6), min_size=2, max_size=4).filter(lambda c: c[-1] != 0)


@settings(max_examples=1000)
@given(st.lists(small_poly, min_size=1, max_size=3), st.integers(min_value=1, max_value=3))
def test_factorisation_round_trip(parts, power):
    """Products of random factors factor back to the same polynomial, with
    the same irreducible degrees as an independent factoriser."""
    f = UniPoly([1])
    for c in parts:
        f = f * UniPoly(c)
    f = f * UniPoly(parts[0]) ** (power - 1)
    fac = factor_poly_q(f)
    assert fac.expand() == f
    x = sympy.Symbol("x")
    ref = sympy.factor_list(sympy.Poly([int(c) for c in reversed(f.int_coeffs())], x))
    expected = sorted((sympy.degree(g, x), e) for g, e in ref[1])
    got = sorted((g.degree, e) for g, e in fac)
    assert got == expected
    for g, _ in fac:
        assert g.is_monic()


@given(st.lists(st.integers(-10**12, 10**12), min_size=1, max_size=40), st.lists(st.integers(-10**12, 10**12), min_size=1, max_size=40))
def test_kronecker_product_matches_schoolbook(a, b):
    school = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            school[i + j] += x * y
    while school and school[-1] == 0:
        school.pop()
    assert zx_mul(a, b) == school


def test_hensel_lift_recovers_factorisation():
    f = [6, -5, 1]  # (x - 2)(x - 3)
    p = 7
    facs = fp_factor_squarefree(f, p)
    lifted = hensel_lift(f, facs, p, 5)
    m = p**5
    prod = [1]
    for g in lifted:
        prod = mod_mul(prod, g, m)
    assert [c % m for c in prod] == [c % m for c in f]
