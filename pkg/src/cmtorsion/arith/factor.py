"""Factorisation of integer polynomials: Cantor-Zassenhaus mod p, Hensel
lifting, and subset recombination with degree-pattern pruning."""

from __future__ import annotations

import itertools
import math

from .ntheory import next_prime
from .zx import (
    content,
    fp_ddf,
    fp_factor_squarefree,
    fp_is_squarefree,
    hensel_lift,
    mod_monic,
    mod_mul,
    mod_reduce,
    norm2_ceil,
    primitive,
    symmetric,
    zx_deriv,
    zx_divmod_exact,
)

# How many good primes to sample for degree-pattern intersection.
_PATTERN_PRIMES = 6
# Safety factor applied on top of the Mignotte bound.
_BOUND_MARGIN = 2


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _ddf_degrees(f: list[int], p: int) -> list[int]:
    degs = []
    for d, g in fp_ddf(mod_monic(mod_reduce(f, p), p), p):
        degs += [d] * ((len(g) - 1) // d)
    return degs


def mignotte_bound(f: list[int]) -> int:
    """Bound on |coefficients| of lc(f) * (any factor of f made to lc(f))."""
    n = len(f) - 1
    return abs(f[-1]) * (2**n) * norm2_ceil(f)


def choose_prime(f: list[int], start: int = 3, samples: int = _PATTERN_PRIMES):
    """Sample good primes; return (best prime, allowed factor degrees)."""
    n = len(f) - 1
    allowed = set(range(n + 1))
    best = None
    p = start - 1
    found = 0
    tries = 0
    while found < samples and tries < 400:
        p = next_prime(p)
        tries += 1
        if f[-1] % p == 0 or not fp_is_squarefree(f, p):
            continue
        degs = _ddf_degrees(f, p)
        found += 1
        allowed &= _subset_sums(degs)
        if best is None or len(degs) < best[1]:
            best = (p, len(degs))
        if allowed == {0, n}:
            break
    if best is None:
        raise ArithmeticError("no good prime found for factorisation")
    return best[0], allowed


def factor_squarefree_zx(f: list[int]) -> list[list[int]]:
    """Irreducible factors of a primitive squarefree integer polynomial."""
    f = primitive(f)
    n = len(f) - 1
    if n <= 0:
        return []
    if f[0] == 0:
        return [[0, 1]] + factor_squarefree_zx(f[1:])
    if n == 1:
        return [f]
    if n == 2:
        disc = f[1] * f[1] - 4 * f[0] * f[2]
        r = math.isqrt(disc) if disc >= 0 else -1
        if r * r != disc:
            return [f]
    p, allowed = choose_prime(f)
    if allowed <= {0, n}:
        return [f]
    modular = fp_factor_squarefree(f, p)
    if len(modular) == 1:
        return [f]
    bound = _BOUND_MARGIN * 2 * mignotte_bound(f)
    k = 1
    while p**k <= bound:
        k += 1
    lifted = hensel_lift(f, modular, p, k)
    return _recombine(f, lifted, p**k, allowed)


def _recombine(f, lifted, modulus, allowed):
    found: list[list[int]] = []
    rest = list(f)
    pool = list(range(len(lifted)))
    s = 1
    while 2 * s <= len(pool):
        hit = None
        for subset in itertools.combinations(pool, s):
            dsum = sum(len(lifted[i]) - 1 for i in subset)
            if dsum not in allowed:
                continue
            lc = rest[-1]
            # Cheap constant-term test before the full product.
            c0 = lc
            for i in subset:
                c0 = c0 * lifted[i][0] % modulus
            c0 = c0 - modulus if c0 > modulus // 2 else c0
            if c0 == 0 or (lc * rest[0]) % c0:
                continue
            g = [lc % modulus]
            for i in subset:
                g = mod_mul(g, lifted[i], modulus)
            g = primitive(symmetric(g, modulus))
            q = zx_divmod_exact(rest, g)
            if q is None:
                continue
            hit = subset
            found.append(g)
            rest = primitive(q)
            break
        if hit is None:
            s += 1
        else:
            pool = [i for i in pool if i not in hit]
            # Degrees still reachable by the cofactor.
            allowed = {a for a in allowed if a <= len(rest) - 1}
    if len(rest) > 1:
        found.append(rest)
    return found


def squarefree_decomposition_zx(f: list[int]) -> list[tuple[list[int], int]]:
    """Yun's algorithm over Z: primitive f = prod g_i^i with g_i primitive.

    w and y are never renormalised separately, so the relation z = y - w'
    keeps its exact scaling; every division is exact by Gauss's lemma.
    """
    out = []
    f = primitive(f)
    if len(f) <= 1:
        return out
    if _squarefree_mod_small_prime(f):
        return [(f, 1)]
    df = zx_deriv(f)
    c = _zx_gcd(f, df)
    w = zx_divmod_exact(f, c)
    y = zx_divmod_exact(df, c)
    z = _zx_sub_scaled(y, zx_deriv(w))
    i = 1
    while len(w) > 1:
        g = _zx_gcd(w, z)
        w = zx_divmod_exact(w, g)
        y = zx_divmod_exact(z, g) if z else []
        z = _zx_sub_scaled(y, zx_deriv(w))
        if len(g) > 1:
            out.append((g, i))
        i += 1
    return out


def _squarefree_mod_small_prime(f: list[int]) -> bool:
    """True if f is squarefree mod some small prime (hence over Q)."""
    p = 2
    for _ in range(8):
        p = next_prime(p)
        if f[-1] % p and fp_is_squarefree(f, p):
            return True
    return False


def _zx_sub_scaled(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    while out and out[-1] == 0:
        out.pop()
    return out


def _zx_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd over Z[x] via the primitive Euclidean algorithm."""
    a, b = primitive(a), primitive(b)
    if not b:
        return a
    if not a:
        return b
    while b:
        # Pseudo-remainder.
        r = list(a)
        db = len(b) - 1
        lb = b[-1]
        while len(r) - 1 >= db and r:
            c = r[-1]
            shift = len(r) - 1 - db
            r = [x * lb for x in r]
            for j in range(db + 1):
                r[shift + j] -= c * b[j]
            while r and r[-1] == 0:
                r.pop()
        a, b = b, primitive(r) if r else []
    return primitive(a)


def zx_gcd(a: list[int], b: list[int]) -> list[int]:
    return _zx_gcd(a, b)


def factor_zx(f: list[int]) -> tuple[int, list[tuple[list[int], int]]]:
    """Complete factorisation over Z: (content with sign, [(primitive irreducible, e)])."""
    c = content(f)
    if f[-1] < 0:
        c = -c
    out = []
    for g, e in squarefree_decomposition_zx(f):
        for h in factor_squarefree_zx(g):
            out.append((h, e))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return c, out
