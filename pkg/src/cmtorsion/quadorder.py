"""Imaginary quadratic discriminants: class numbers by reduced forms, genus
theory, real ideals, Cartan unit orders and ray class field degrees."""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass, field
from typing import Iterator

from .arith.ntheory import divisors, factorint, is_prime, kronecker
from .errors import DomainError

CACHE_ENV = "CM_TORSION_CACHE"


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def is_ambiguous(self) -> bool:
        return self.b == 0 or self.a == self.b or self.a == self.c


@dataclass(frozen=True)
class RealIdeal:
    """Primitive proper real ideal [a, sqrt(D)/2] (kind 1) or [a, (a+sqrt(D))/2] (kind 2)."""

    kind: int
    a: int
    delta: int

    @property
    def basis(self) -> tuple[str, str]:
        if self.kind == 1:
            return (str(self.a), f"sqrt({self.delta})/2")
        return (str(self.a), f"({self.a}+sqrt({self.delta}))/2")

    @property
    def index(self) -> int:
        return self.a

    def to_json(self) -> dict:
        return {"kind": self.kind, "a": self.a, "basis": list(self.basis)}


@dataclass(frozen=True)
class Discriminant:
    delta: int
    fundamental: int
    conductor: int
    odd_prime_count: int
    nu: int
    unit_count: int
    _h: list = field(default_factory=list, repr=False, compare=False)

    @property
    def class_number(self) -> int:
        if not self._h:
            self._h.append(class_number(self.delta))
        return self._h[0]

    def is_fundamental(self) -> bool:
        return self.conductor == 1

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "fundamental": self.fundamental,
            "conductor": self.conductor,
            "odd_prime_count": self.odd_prime_count,
            "nu": self.nu,
            "unit_count": self.unit_count,
            "class_number": self.class_number,
        }


def _check_delta(delta: int) -> None:
    if not isinstance(delta, int) or delta >= 0 or delta % 4 not in (0, 1):
        raise DomainError(f"{delta} is not an imaginary quadratic discriminant")


def genus_nu(delta: int, r: int) -> int:
    """nu with Pic O(delta)[2] of order 2^nu, from the residue of delta."""
    if delta % 4 == 1:
        return r - 1
    m16 = delta % 16
    if m16 == 4:
        return r - 1
    if m16 in (8, 12):
        return r
    if delta % 32 == 16:
        return r
    return r + 1  # delta = 0 mod 32


def decompose(delta: int) -> Discriminant:
    """Split delta = f^2 * delta_K and attach the genus data.

    >>> decompose(-28).fundamental, decompose(-28).conductor
    (-7, 2)
    """
    if isinstance(delta, Discriminant):
        return delta
    _check_delta(delta)
    fac = factorint(delta)
    square = 1
    core = -1
    for p, e in fac.items():
        square *= p ** (e // 2)
        if e % 2:
            core *= p
    if core % 4 == 1:
        fund, cond = core, square
    else:
        fund, cond = 4 * core, square // 2
    r = sum(1 for p in fac if p != 2)
    w = 6 if fund == -3 else 4 if fund == -4 else 2
    return Discriminant(delta, fund, cond, r, genus_nu(delta, r), w)


def _as_disc(d) -> Discriminant:
    return d if isinstance(d, Discriminant) else decompose(d)


# ---------------------------------------------------------------------------
# Reduced forms and class numbers


def reduced_forms(delta: int) -> Iterator[QuadForm]:
    """All reduced primitive forms of discriminant delta."""
    _check_delta(delta)
    n = -delta
    b = n % 2
    while 3 * b * b <= n:
        q = (b * b + n) // 4
        a = max(b, 1)
        while a * a <= q:
            if q % a == 0:
                c = q // a
                if math.gcd(math.gcd(a, b), c) == 1:
                    if b == 0 or a == b or a == c:
                        yield QuadForm(a, b, c)
                    else:
                        yield QuadForm(a, b, c)
                        yield QuadForm(a, -b, c)
            a += 1
        b += 2


_CACHE: dict[int, int] = {}
_CACHE_LOCK = threading.Lock()
_CACHE_LOADED: list[str] = []


def _load_cache() -> None:
    path = os.environ.get(CACHE_ENV)
    if not path or path in _CACHE_LOADED:
        return
    _CACHE_LOADED.append(path)
    if not os.path.exists(path):
        return
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if len(parts) == 2:
                _CACHE.setdefault(int(parts[0]), int(parts[1]))


def save_cache(path: str | None = None) -> str | None:
    """Write the memo table as lines ``delta h`` sorted by |delta|."""
    path = path or os.environ.get(CACHE_ENV)
    if not path:
        return None
    with _CACHE_LOCK:
        items = sorted(_CACHE.items(), key=lambda kv: -kv[0])
    with open(path, "w") as fh:
        for d, h in items:
            fh.write(f"{d} {h}\n")
    return path


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()
        _CACHE_LOADED.clear()


def count_reduced_forms(delta: int) -> int:
    """Class number by direct enumeration (no cache)."""
    return sum(1 for _ in reduced_forms(delta))


def class_number_from_conductor(delta: int) -> int:
    """h(f^2 delta_K) = h(delta_K) f / [O_K^x : O^x] * prod_{p | f} (1 - (delta_K/p)/p)."""
    d = decompose(delta)
    if d.conductor == 1:
        return class_number(delta)
    hK = class_number(d.fundamental)
    wK = {-3: 6, -4: 4}.get(d.fundamental, 2)
    num, den = hK * d.conductor * 2, wK
    for p in factorint(d.conductor):
        num *= p - kronecker(d.fundamental, p)
        den *= p
    if num % den:
        raise ArithmeticError(f"non-integral class number for {delta}")
    return num // den


def class_number(d) -> int:
    """h(delta), memoised: reduced forms for fundamental delta, the conductor
    formula otherwise.

    >>> class_number(-23), class_number(-47)
    (3, 5)
    """
    delta = d.delta if isinstance(d, Discriminant) else d
    _check_delta(delta)
    _load_cache()
    h = _CACHE.get(delta)
    if h is None:
        h = count_reduced_forms(delta) if decompose(delta).conductor == 1 else class_number_from_conductor(delta)
        with _CACHE_LOCK:
            _CACHE.setdefault(delta, h)
    return h


def class_number_analytic(delta: int) -> int:
    """h(delta) for a fundamental delta < -4 via the finite character sum
    h = sum_{a < |delta|/2} (delta/a) / (2 - (delta/2))."""
    _check_delta(delta)
    if decompose(delta).conductor != 1:
        raise DomainError("character-sum class number needs a fundamental discriminant")
    n = -delta
    if n <= 4:
        return 1
    s = sum(kronecker(delta, a) for a in range(1, (n - 1) // 2 + 1))
    den = 2 - kronecker(delta, 2)
    if s % den:
        raise ArithmeticError("character sum not divisible")
    return s // den


def two_torsion_class_count(d) -> int:
    """Number of ambiguous reduced primitive forms (= #Pic[2] = 2^nu).

    Enumerates only the three ambiguous shapes, through divisors of |delta|.
    """
    delta = _as_disc(d).delta
    n = -delta
    count = 0
    if n % 4 == 0:
        m = n // 4
        for a in divisors(m):
            c = m // a
            if a <= c and math.gcd(a, c) == 1:
                count += 1  # (a, 0, c)
    for a in divisors(n):
        # (a, a, c) with 4ac = a^2 + n
        if 3 * a * a <= n and (a * a + n) % (4 * a) == 0:
            c = (a * a + n) // (4 * a)
            if math.gcd(a, c) == 1:
                count += 1
    for u in divisors(n):
        # (a, b, a) with 0 < b < a: (2a - b)(2a + b) = n
        v = n // u
        if u >= v or (u + v) % 4 or (v - u) % 2:
            continue
        a = (u + v) // 4
        b = (v - u) // 2
        if 0 < b < a and math.gcd(a, b) == 1:
            count += 1
    return count


def real_primitive_ideals(d) -> list[RealIdeal]:
    """All primitive proper real ideals, by the two divisibility shapes."""
    delta = _as_disc(d).delta
    n = -delta
    out = []
    for a in divisors(n):
        if n % (4 * a) == 0 and math.gcd(a, n // (4 * a)) == 1:
            out.append(RealIdeal(1, a, delta))
        if (a * a + n) % (4 * a) == 0 and math.gcd(a, (a * a + n) // (4 * a)) == 1:
            out.append(RealIdeal(2, a, delta))
    return out


def special_prime_ideal(d, ell: int) -> RealIdeal:
    """The unique ideal of index ell (ell prime, ell | delta)."""
    delta = _as_disc(d).delta
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    if delta % ell:
        raise DomainError(f"{ell} does not divide {delta}")
    found = [
        b
        for b in range(0, 2 * ell)
        if (b - delta) % 2 == 0 and (b * b - delta) % (4 * ell) == 0
    ]
    if len(found) != 1 or found[0] not in (0, ell):
        raise ArithmeticError("index-ell ideal is not unique")
    return RealIdeal(1 if found[0] == 0 else 2, ell, delta)


# ---------------------------------------------------------------------------
# Unit groups and ray class degrees


def cartan_unit_order(d, N: int) -> int:
    """#(O/NO)^x = N^2 prod_{p | N} (1 - 1/p)(1 - (delta/p)/p)."""
    disc = _as_disc(d)
    if N < 1:
        raise DomainError("N must be positive")
    num, den = N * N, 1
    for p in factorint(N) if N > 1 else {}:
        chi = 0 if disc.conductor % p == 0 else kronecker(disc.delta, p)
        num *= (p - 1) * (p - chi)
        den *= p * p
    return num // den


def _units(fund: int) -> list[tuple[int, int]]:
    """Units of O_K as coordinates in the basis (1, omega)."""
    if fund == -4:  # omega = i
        return [(1, 0), (-1, 0), (0, 1), (0, -1)]
    if fund == -3:  # omega = (1 + sqrt(-3))/2, omega^2 = omega - 1
        return [(1, 0), (-1, 0), (0, 1), (0, -1), (-1, 1), (1, -1)]
    return [(1, 0), (-1, 0)]


def unit_index(deltaK: int, N: int) -> int:
    """[U : U_N] with U_N the units congruent to 1 mod N O_K."""
    units = _units(deltaK)
    trivial = sum(1 for x, y in units if (x - 1) % N == 0 and y % N == 0)
    return len(units) // trivial


def ray_class_degree(deltaK: int, N: int, over: str = "K") -> int:
    """Degree of the ray class field of conductor N O_K over K (or over Q).

    >>> ray_class_degree(-7, 7, "Q"), ray_class_degree(-11, 11, "Q")
    (42, 110)
    """
    disc = decompose(deltaK)
    if disc.conductor != 1:
        raise DomainError(f"{deltaK} is not a fundamental discriminant")
    if N < 1:
        raise DomainError("modulus N must be positive")
    if over not in ("K", "Q"):
        raise DomainError("over must be 'K' or 'Q'")
    units_mod = cartan_unit_order(disc, N)
    index = unit_index(disc.fundamental, N)
    deg = disc.class_number * units_mod // index
    return 2 * deg if over == "Q" else deg


def is_fundamental(delta: int) -> bool:
    try:
        return decompose(delta).conductor == 1
    except DomainError:
        return False


def discriminants_in_range(lo: int, hi: int) -> Iterator[int]:
    """Negative discriminants delta with lo <= delta <= hi (lo < hi < 0)."""
    for delta in range(hi, lo - 1, -1):
        if delta % 4 in (0, 1):
            yield delta


def odd_class_number_predicted(delta: int) -> bool:
    """h(delta) odd iff delta in {-4,-8,-16} or delta = -2^e l^(2a+1),
    e in {0, 2}, l = 3 mod 4 prime (or delta = -3)."""
    if delta in (-4, -8, -16):
        return True
    n = -delta
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    if e not in (0, 2):
        return False
    fac = factorint(n)
    if len(fac) != 1:
        return False
    (ell, k), = fac.items()
    return ell % 4 == 3 and k % 2 == 1
