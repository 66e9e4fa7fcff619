"""Small finite fields F_q (q = p^k, p odd) with Zech-logarithm arithmetic.

An element is stored as its discrete logarithm to a fixed generator, with
-1 standing for zero, so multiplication is an addition of logarithms and
addition is one table lookup.  Tables cost O(q) memory, which is why the
residue fields used for reduction are capped in size.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .arith.ntheory import factorint
from .arith.zx import fp_factor_squarefree, mod_mul, mod_rem

ZERO = -1
MAX_FIELD_SIZE = 10**6


class FiniteField:
    def __init__(self, p: int, modulus: Sequence[int] = (0, 1)):
        modulus = [c % p for c in modulus]
        if modulus[-1] != 1:
            inv = pow(modulus[-1], -1, p)
            modulus = [c * inv % p for c in modulus]
        self.p = p
        self.k = len(modulus) - 1
        self.q = p**self.k
        if self.q > MAX_FIELD_SIZE:
            raise ValueError(f"field of size {self.q} exceeds the table cap")
        self.modulus = modulus
        self.order = self.q - 1
        self._build()

    # tables ---------------------------------------------------------------
    def _code(self, vec: Sequence[int]) -> int:
        c = 0
        for x in reversed(vec):
            c = c * self.p + x
        return c

    def _vec(self, code: int) -> list[int]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def _build(self) -> None:
        p, k, q = self.p, self.k, self.q
        primes = list(factorint(q - 1)) if q > 2 else []
        mod = self.modulus
        if k == 1:
            # Primitive root of Z/p: the modulus is x - r so we use integers.
            g = 2 if p > 2 else 1
            while p > 2 and any(pow(g, (p - 1) // r, p) == 1 for r in primes):
                g += 1
            exp = [0] * (q - 1)
            v = 1
            for i in range(q - 1):
                exp[i] = v
                v = v * g % p
        else:
            rng = random.Random(q)
            while True:
                cand = [rng.randrange(p) for _ in range(k)]
                if not any(cand[1:]):
                    continue
                if all(_powmod_vec(cand, (q - 1) // r, mod, p) != [1] for r in primes):
                    break
            exp = [0] * (q - 1)
            v = [1]
            for i in range(q - 1):
                exp[i] = self._code(v + [0] * (k - len(v)))
                v = mod_rem(mod_mul(v, cand, p), mod, p)
        log = [ZERO] * q
        for i, c in enumerate(exp):
            log[c] = i
        self.exp = exp
        self.log = log
        # zech[d] = log(1 + g^d)
        zech = [ZERO] * (q - 1)
        for d, c in enumerate(exp):
            c0 = c % p
            c1 = c - c0 + (c0 + 1) % p
            zech[d] = log[c1] if c1 else ZERO
        self.zech = zech
        self.minus_one = (q - 1) // 2 if p > 2 else 0

    # conversions --------------------------------------------------------
    def from_int(self, n: int) -> int:
        n %= self.p
        return self.log[n] if n else ZERO

    def from_fraction(self, x: Fraction) -> int:
        if x.denominator % self.p == 0:
            raise ZeroDivisionError("denominator divisible by p")
        return self.div(self.from_int(x.numerator), self.from_int(x.denominator))

    def from_vec(self, vec: Sequence[int]) -> int:
        """Element given by coefficients on the power basis of F_p[t]/(modulus)."""
        vec = [c % self.p for c in vec]
        if len(vec) > self.k:
            vec = mod_rem(vec, self.modulus, self.p)
        vec = list(vec) + [0] * (self.k - len(vec))
        c = self._code(vec)
        return self.log[c] if c else ZERO

    def to_vec(self, a: int) -> list[int]:
        if a == ZERO:
            return [0] * self.k
        return self._vec(self.exp[a])

    def elements(self) -> range:
        return range(-1, self.q - 1)

    # arithmetic ---------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        z = self.zech[(b - a) % self.order]
        return ZERO if z == ZERO else (a + z) % self.order

    def neg(self, a: int) -> int:
        return ZERO if a == ZERO else (a + self.minus_one) % self.order

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == ZERO or b == ZERO:
            return ZERO
        return (a + b) % self.order

    def inv(self, a: int) -> int:
        if a == ZERO:
            raise ZeroDivisionError("inverse of zero in finite field")
        return (-a) % self.order

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == ZERO:
            return ZERO if e else 0
        return a * e % self.order

    def is_square(self, a: int) -> bool:
        # the multiplicative group has odd order in characteristic 2
        return a == ZERO or self.p == 2 or a % 2 == 0

    def sqrt(self, a: int) -> int:
        if a == ZERO:
            return ZERO
        if self.p == 2:
            return a * ((self.order + 1) // 2) % self.order
        if a % 2:
            raise ValueError("not a square")
        return a // 2

    def scalar(self, n: int) -> int:
        return self.from_int(n)

    # polynomials over F_q (lists of logs, ascending, trimmed) ------------
    def ptrim(self, a: list[int]) -> list[int]:
        while a and a[-1] == ZERO:
            a.pop()
        return a

    def padd(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = self.add(out[i], c)
        return self.ptrim(out)

    def psub(self, a, b):
        return self.padd(a, [self.neg(c) for c in b])

    def pmul(self, a, b):
        if not a or not b:
            return []
        out = [ZERO] * (len(a) + len(b) - 1)
        add, order, zech = self.add, self.order, self.zech
        for i, x in enumerate(a):
            if x == ZERO:
                continue
            for j, y in enumerate(b):
                if y == ZERO:
                    continue
                out[i + j] = add(out[i + j], (x + y) % order)
        return self.ptrim(out)

    def pdivmod(self, a, b):
        a = list(a)
        db = len(b) - 1
        if len(a) - 1 < db:
            return [], self.ptrim(a)
        inv = self.inv(b[-1])
        q = [ZERO] * (len(a) - db)
        for k in range(len(a) - 1 - db, -1, -1):
            c = self.mul(a[k + db], inv)
            q[k] = c
            if c != ZERO:
                nc = self.neg(c)
                for j in range(db):
                    if b[j] != ZERO:
                        a[k + j] = self.add(a[k + j], self.mul(nc, b[j]))
            a[k + db] = ZERO
        return self.ptrim(q), self.ptrim(a[:db])

    def prem(self, a, b):
        return self.pdivmod(a, b)[1]

    def pmonic(self, a):
        inv = self.inv(a[-1])
        return [self.mul(c, inv) for c in a]

    def pgcd(self, a, b):
        a, b = self.ptrim(list(a)), self.ptrim(list(b))
        while b:
            a, b = b, self.prem(a, b)
        return self.pmonic(a) if a else []

    def ppowmod(self, a, e, m):
        result = [0]
        base = self.prem(a, m)
        while e:
            if e & 1:
                result = self.prem(self.pmul(result, base), m)
            e >>= 1
            if e:
                base = self.prem(self.pmul(base, base), m)
        return result

    def pderiv(self, a):
        return self.ptrim([self.mul(self.from_int(i), a[i]) for i in range(1, len(a))])

    def peval(self, a, x):
        acc = ZERO
        for c in reversed(a):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def is_squarefree(self, a) -> bool:
        d = self.pderiv(a)
        return bool(d) and len(self.pgcd(a, d)) == 1

    def roots(self, a) -> list[int]:
        """Distinct roots in F_q of a nonzero polynomial."""
        a = self.ptrim(list(a))
        if len(a) <= 1:
            return []
        a = self.pmonic(a)
        xq = self.ppowmod([ZERO, 0], self.q, a)
        g = self.pgcd(a, self.psub(xq, [ZERO, 0]))
        return sorted(self._split_linear(g, random.Random(self.q)))

    def _split_linear(self, g, rng) -> list[int]:
        if len(g) <= 1:
            return []
        if len(g) == 2:
            return [self.neg(self.div(g[0], g[1]))]
        e = (self.q - 1) // 2
        while True:
            shift = rng.randrange(-1, self.q - 1)
            h = self.ppowmod([shift, 0], e, g)
            d = self.pgcd(g, self.psub(h, [0]))
            if 1 < len(d) < len(g):
                rest = self.pdivmod(g, d)[0]
                return self._split_linear(d, rng) + self._split_linear(self.pmonic(rest), rng)


def _powmod_vec(a, e, mod, p):
    result = [1]
    base = mod_rem(a, mod, p)
    while e:
        if e & 1:
            result = mod_rem(mod_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = mod_rem(mod_mul(base, base, p), mod, p)
    return result


def residue_fields(defining: Sequence[int], p: int, cap: int = MAX_FIELD_SIZE):
    """Residue fields F_p[t]/(h) for the irreducible factors h of the
    defining polynomial mod p with p^deg(h) <= cap (p must not divide its
    discriminant)."""
    out = []
    for h in fp_factor_squarefree(list(defining), p):
        if p ** (len(h) - 1) <= cap:
            out.append(h)
    return out
