"""Elementary number theory on Python integers."""

from __future__ import annotations

import math
import random
from functools import lru_cache

from ..errors import DomainError

# Deterministic Miller-Rabin: these bases are correct for n < 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Primality test.

    Deterministic below 3.3e24; above that the same bases give a strong
    probable-prime test.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    n += 1
    while not is_prime(n):
        n += 1
    return n


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


@lru_cache(maxsize=65536)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 53
    while p * p <= n and p < 10_000:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_rho(m)
        stack += [d, m // d]
    return tuple(sorted(out.items()))


def factorint(n: int) -> dict[int, int]:
    """Prime factorisation of |n| as {p: e}; factorint(1) == {}."""
    n = abs(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    return dict(_factor_cached(n))


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError("phi(n) needs n >= 1")
    out = n
    for p in factorint(n):
        out = out // p * (p - 1)
    return out


def moebius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise DomainError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), extending Jacobi to all nonzero n.

    >>> kronecker(-4, 5), kronecker(-7, 3), kronecker(-7, 7)
    (1, -1, 0)
    """
    if n == 0:
        raise DomainError("Kronecker symbol (a/0) is not defined here")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(a, n)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def crt(residues: list[int], moduli: list[int]) -> tuple[int, int]:
    """Chinese remaindering for pairwise coprime moduli; returns (x, M)."""
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
    return x % m, m
