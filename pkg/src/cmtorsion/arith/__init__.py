"""Exact arithmetic substrate: rationals, polynomials, factorisation."""

from .ntheory import (
    divisors,
    euler_phi,
    factorint,
    is_prime,
    is_square,
    jacobi,
    kronecker,
    moebius,
    next_prime,
    primes_up_to,
    valuation,
)
from .poly import (
    CyclotomicData,
    Factorization,
    UniPoly,
    bivariate_resultant,
    cyclotomic_data,
    cyclotomic_poly,
    factor_poly_q,
    is_irreducible,
    parse_rational,
    poly_gcd,
    resultant,
    squarefree_part,
)

__all__ = [
    "CyclotomicData",
    "Factorization",
    "UniPoly",
    "bivariate_resultant",
    "cyclotomic_data",
    "cyclotomic_poly",
    "divisors",
    "euler_phi",
    "factor_poly_q",
    "factorint",
    "is_irreducible",
    "is_prime",
    "is_square",
    "jacobi",
    "kronecker",
    "moebius",
    "next_prime",
    "parse_rational",
    "poly_gcd",
    "primes_up_to",
    "resultant",
    "squarefree_part",
    "valuation",
]
