"""Integer and modular polynomial kernels (ascending lists of ints).

These back the factorisation code and the finite-field point counts, so
they avoid Fractions entirely.  Long products use Kronecker substitution,
letting CPython's big-integer multiply do the work.
"""

from __future__ import annotations

import math
import random
from typing import Sequence

_KRONECKER_MIN = 24


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pack(a: Sequence[int], bits: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc << bits) + c
    return acc


def _unpack_signed(v: int, bits: int, n: int) -> list[int]:
    out = []
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    for _ in range(n):
        c = v & mask
        if c >= half:
            c -= 1 << bits
        out.append(c)
        v = (v - c) >> bits
    return out


def _unpack_unsigned(v: int, nbytes: int, n: int) -> list[int]:
    raw = v.to_bytes(nbytes * n + 1, "little")
    return [int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") for i in range(n)]


def zx_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if min(len(a), len(b)) < _KRONECKER_MIN:
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim(out)
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bits = (ma * mb * min(len(a), len(b))).bit_length() + 2
    return trim(_unpack_signed(_pack(a, bits) * _pack(b, bits), bits, n))


def zx_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def zx_sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return zx_add(a, [-c for c in b])


def zx_divmod_exact(a: Sequence[int], b: Sequence[int]) -> list[int] | None:
    """Quotient a/b over Z if b divides a exactly, else None."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return None if any(a) else []
    lb = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c, r = divmod(a[k + db], lb)
        if r:
            return None
        q[k] = c
        if c:
            for j in range(db):
                a[k + j] -= c * b[j]
        a[k + db] = 0
    if any(a[:db]):
        return None
    return q


def content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def primitive(a: Sequence[int]) -> list[int]:
    """Primitive part with positive leading coefficient."""
    g = content(a)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def zx_deriv(a: Sequence[int]) -> list[int]:
    return trim([a[i] * i for i in range(1, len(a))])


def norm2_ceil(a: Sequence[int]) -> int:
    return math.isqrt(sum(c * c for c in a)) + 1


# ---------------------------------------------------------------------------
# Arithmetic mod m (m a prime or a prime power); coefficients in [0, m).


def mod_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def mod_reduce(a: Sequence[int], m: int) -> list[int]:
    return mod_trim([c % m for c in a])


def mod_mul(a: Sequence[int], b: Sequence[int], m: int) -> list[int]:
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if min(len(a), len(b)) < _KRONECKER_MIN:
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return mod_trim([c % m for c in out])
    bits = ((m - 1) * (m - 1) * min(len(a), len(b))).bit_length()
    nbytes = bits // 8 + 1
    shift = nbytes * 8
    prod = _pack(a, shift) * _pack(b, shift)
    return mod_trim([c % m for c in _unpack_unsigned(prod, nbytes, n)])


def mod_add(a: Sequence[int], b: Sequence[int], m: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % m
    return mod_trim(out)


def mod_sub(a: Sequence[int], b: Sequence[int], m: int) -> list[int]:
    return mod_add(a, [(-c) % m for c in b], m)


def mod_scale(a: Sequence[int], c: int, m: int) -> list[int]:
    return mod_trim([x * c % m for x in a])


def mod_divmod(a: Sequence[int], b: Sequence[int], m: int) -> tuple[list[int], list[int]]:
    """Division by b whose leading coefficient is a unit mod m."""
    a = [c % m for c in a]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], mod_trim(a)
    inv = pow(b[-1], -1, m)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % m
        q[k] = c
        if c:
            for j in range(db):
                a[k + j] = (a[k + j] - c * b[j]) % m
        a[k + db] = 0
    return mod_trim(q), mod_trim(a[:db])


def mod_rem(a: Sequence[int], b: Sequence[int], m: int) -> list[int]:
    if len(a) < len(b):
        return mod_reduce(a, m)
    return mod_divmod(a, b, m)[1]


def mod_monic(a: Sequence[int], m: int) -> list[int]:
    inv = pow(a[-1], -1, m)
    return [c * inv % m for c in a]


def mod_powmod(a: Sequence[int], e: int, f: Sequence[int], m: int) -> list[int]:
    result = [1]
    base = mod_rem(a, f, m)
    while e:
        if e & 1:
            result = mod_rem(mod_mul(result, base, m), f, m)
        e >>= 1
        if e:
            base = mod_rem(mod_mul(base, base, m), f, m)
    return result


# ---------------------------------------------------------------------------
# Prime field F_p.


def fp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = mod_reduce(a, p), mod_reduce(b, p)
    while b:
        a, b = b, mod_rem(a, b, p)
    return mod_monic(a, p) if a else []


def fp_ext_gcd(a, b, p):
    """(g, s, t) with s*a + t*b = g monic, over F_p."""
    r0, r1 = mod_reduce(a, p), mod_reduce(b, p)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = mod_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, mod_sub(s0, mod_mul(q, s1, p), p)
        t0, t1 = t1, mod_sub(t0, mod_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return mod_scale(r0, inv, p), mod_scale(s0, inv, p), mod_scale(t0, inv, p)


def fp_is_squarefree(a: Sequence[int], p: int) -> bool:
    a = mod_reduce(a, p)
    d = mod_reduce(zx_deriv(a), p)
    if not d:
        return False
    return len(fp_gcd(a, d, p)) == 1


def fp_ddf(f: Sequence[int], p: int) -> list[tuple[int, list[int]]]:
    """Distinct-degree factorisation of a monic squarefree f over F_p."""
    f = list(f)
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = mod_powmod(h, p, f, p)
        g = fp_gcd(f, mod_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((d, g))
            f = mod_divmod(f, g, p)[0]
            h = mod_rem(h, f, p)
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def fp_edf(f: Sequence[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Split a product of distinct monic degree-d irreducibles (p odd)."""
    n = len(f) - 1
    if n == d:
        return [list(f)]
    e = (p**d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = mod_trim(a)
        if len(a) < 2:
            continue
        g = fp_gcd(f, mod_sub(mod_powmod(a, e, f, p), [1], p), p)
        if 1 < len(g) < len(f):
            h = mod_divmod(f, g, p)[0]
            return fp_edf(g, d, p, rng) + fp_edf(h, d, p, rng)


def fp_factor_squarefree(f: Sequence[int], p: int, seed: int = 0) -> list[list[int]]:
    """All monic irreducible factors of a squarefree polynomial mod an odd prime."""
    f = mod_monic(mod_reduce(f, p), p)
    rng = random.Random(seed * 1_000_003 + p)
    out = []
    for d, g in fp_ddf(f, p):
        out.extend(fp_edf(g, d, p, rng))
    return sorted(out, key=lambda g: (len(g), g))


def fp_roots(f: Sequence[int], p: int) -> list[int]:
    """Distinct roots in F_p (p odd)."""
    f = mod_reduce(f, p)
    if not f:
        raise ValueError("roots of the zero polynomial")
    if len(f) == 1:
        return []
    f = mod_monic(f, p)
    g = fp_gcd(f, mod_sub(mod_powmod([0, 1], p, f, p), [0, 1], p), p)
    if len(g) <= 1:
        return []
    rng = random.Random(p)
    return sorted((-h[0]) % p for h in fp_edf(g, 1, p, rng))


# ---------------------------------------------------------------------------
# Hensel lifting.


def _hensel_step(f, g, h, s, t, m):
    """One quadratic lift from modulus m to m*m (h monic, lc(g) = lc(f))."""
    m2 = m * m
    e = mod_sub(f, mod_mul(g, h, m2), m2)
    q, r = mod_divmod(mod_mul(s, e, m2), h, m2)
    g2 = mod_add(g, mod_add(mod_mul(t, e, m2), mod_mul(q, g, m2), m2), m2)
    h2 = mod_add(h, r, m2)
    b = mod_sub(mod_add(mod_mul(s, g2, m2), mod_mul(t, h2, m2), m2), [1], m2)
    c, d = mod_divmod(mod_mul(s, b, m2), h2, m2)
    s2 = mod_sub(s, d, m2)
    t2 = mod_sub(t, mod_add(mod_mul(t, b, m2), mod_mul(c, g2, m2), m2), m2)
    return g2, h2, s2, t2


def hensel_lift(f: Sequence[int], factors: list[list[int]], p: int, k: int) -> list[list[int]]:
    """Lift monic factors with f = lc(f) * prod(factors) mod p to mod p**k."""
    target = p**k
    lc = f[-1]
    if len(factors) == 1:
        return [mod_scale(f, pow(lc, -1, target), target)]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    g = [lc % p]
    for u in left:
        g = mod_mul(g, u, p)
    h = [1]
    for u in right:
        h = mod_mul(h, u, p)
    _, s, t = fp_ext_gcd(g, h, p)
    m = p
    while m < target:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m *= m
    g = mod_reduce(g, target)
    h = mod_reduce(h, target)
    g_monic = mod_scale(g, pow(lc, -1, target), target)
    # Recurse with integer representatives; the sub-targets are monic.
    return hensel_lift(g_monic, left, p, k) + hensel_lift(h, right, p, k)


def symmetric(a: Sequence[int], m: int) -> list[int]:
    half = m // 2
    return trim([c - m if c > half else c for c in (x % m for x in a)])
