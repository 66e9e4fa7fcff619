"""Exact univariate polynomials over Q, resultants and cyclotomic data."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from ..errors import DomainError
from . import dense
from .factor import factor_zx, zx_gcd
from .ntheory import divisors, euler_phi, moebius
from .zx import trim as _ztrim
from .zx import zx_divmod_exact, zx_mul

Number = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise DomainError("empty coefficient")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational coefficient {text!r}") from exc


class UniPoly:
    """Polynomial over Q stored as ascending Fractions, no trailing zeros.

    >>> UniPoly.parse("1,-3,0,1")
    UniPoly('x^3 - 3*x + 1')
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "UniPoly":
        """Ascending comma separated coefficients, e.g. ``1,-3,0,1``."""
        parts = [p for p in text.replace(" ", "").split(",")]
        if parts == [""]:
            raise DomainError("empty polynomial")
        return cls(parse_rational(p) for p in parts)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c: Number) -> "UniPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "UniPoly":
        out = cls([1])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    # basic data -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")

    def __add__(self, other) -> "UniPoly":
        return UniPoly(dense.add(self.coeffs, self._lift(other).coeffs))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        return UniPoly(dense.sub(self.coeffs, self._lift(other).coeffs))

    def __rsub__(self, other) -> "UniPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        return UniPoly(_qx_mul(self.coeffs, self._lift(other).coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise DomainError("negative polynomial power")
        out = UniPoly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = dense.divmod_(self.coeffs, other.coeffs)
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        return poly_gcd(self, other)

    def derivative(self) -> "UniPoly":
        return UniPoly(dense.deriv(self.coeffs))

    def __call__(self, x):
        return dense.evaluate(self.coeffs, x) if self.coeffs else 0 * x

    def compose(self, other: "UniPoly") -> "UniPoly":
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * other + c
        return out

    def scale_variable(self, c: Number) -> "UniPoly":
        """p(c*x)."""
        c = Fraction(c)
        return UniPoly([a * c**i for i, a in enumerate(self.coeffs)])

    # integer views ------------------------------------------------------
    def content_and_primitive(self) -> tuple[Fraction, list[int]]:
        """self = content * primitive integer polynomial with positive lc."""
        if self.is_zero():
            raise DomainError("content of the zero polynomial")
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise DomainError("polynomial has non-integral coefficients")
        return [int(c) for c in self.coeffs]

    # text -------------------------------------------------------------
    def to_text(self) -> str:
        """Inverse of :meth:`parse`."""
        if not self.coeffs:
            return "0"
        return ",".join(str(c) for c in self.coeffs)

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            if i == 0:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"UniPoly({self.pretty()!r})"

    def __str__(self) -> str:
        return self.pretty()


def _qx_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Product over Q routed through integer arithmetic."""
    if not a or not b:
        return []
    if len(a) < 8 or len(b) < 8:
        return dense.mul(a, b)
    da, ia = _clear(a)
    db, ib = _clear(b)
    prod = zx_mul(ia, ib)
    den = da * db
    return [Fraction(v, den) for v in prod]


def _clear(a: Sequence[Fraction]) -> tuple[int, list[int]]:
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return den, [int(c * den) for c in a]


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over Q."""
    if f.is_zero() and g.is_zero():
        return UniPoly()
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    _, fi = f.content_and_primitive()
    _, gi = g.content_and_primitive()
    return UniPoly(zx_gcd(fi, gi)).monic()


# ---------------------------------------------------------------------------
# Factorisation


@dataclass(frozen=True)
class Factorization:
    """f = content * prod(factor ** multiplicity) with monic irreducible factors."""

    content: Fraction
    factors: tuple[tuple[UniPoly, int], ...]

    def expand(self) -> UniPoly:
        out = UniPoly([self.content])
        for g, e in self.factors:
            out = out * g**e
        return out

    def degrees(self) -> list[int]:
        return sorted(g.degree for g, e in self.factors for _ in range(e))

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def factor_poly_q(f: UniPoly) -> Factorization:
    """Factor a nonzero polynomial over Q into monic irreducibles.

    >>> [g.pretty() for g, _ in factor_poly_q(UniPoly([0, 192, 0, 0, 3]))]
    ['x', 'x + 4', 'x^2 - 4*x + 16']
    """
    if not isinstance(f, UniPoly):
        f = UniPoly(f)
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    if f.degree == 0:
        return Factorization(f.lc, ())
    c, prim = f.content_and_primitive()
    _, parts = factor_zx(prim)
    factors = []
    for g, e in parts:
        c *= Fraction(g[-1]) ** e
        factors.append((UniPoly([Fraction(v, g[-1]) for v in g]), e))
    factors.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return Factorization(c, tuple(factors))


def is_irreducible(f: UniPoly) -> bool:
    fac = factor_poly_q(f)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


def squarefree_part(f: UniPoly) -> UniPoly:
    g = poly_gcd(f, f.derivative())
    return f.exact_div(g).monic()


# ---------------------------------------------------------------------------
# Resultants


def _res_q(f: Sequence[Fraction], g: Sequence[Fraction]) -> Fraction:
    return dense.resultant(list(f), list(g))


def resultant(f, g, eliminate: str = "x"):
    """Resultant of two polynomials.

    Univariate form: ``f`` and ``g`` are :class:`UniPoly`; the result is a
    constant :class:`UniPoly`.

    Bivariate form: ``f`` and ``g`` are sequences of :class:`UniPoly` giving
    the coefficients in x (ascending) as polynomials in a second variable t.
    ``eliminate="x"`` removes x and returns a :class:`UniPoly` in t;
    ``eliminate="t"`` removes t and returns a :class:`UniPoly` in x.

    >>> f = [UniPoly([-2]), UniPoly([]), UniPoly([1])]          # x^2 - 2
    >>> g = [UniPoly([0, 1]), UniPoly([]), UniPoly([-1])]       # t - x^2
    >>> resultant(f, g).pretty("t")
    't^2 - 4*t + 4'
    """
    if isinstance(f, UniPoly) and isinstance(g, UniPoly):
        if f.is_zero() or g.is_zero():
            raise DomainError("resultant of a zero polynomial")
        return UniPoly([_res_q(f.coeffs, g.coeffs)])
    F = [UniPoly._lift(c) if not isinstance(c, UniPoly) else c for c in f]
    G = [UniPoly._lift(c) if not isinstance(c, UniPoly) else c for c in g]
    if eliminate == "t":
        F, G = swap_variables(F), swap_variables(G)
    elif eliminate != "x":
        raise DomainError("eliminate must be 'x' or 't'")
    return bivariate_resultant(F, G)


def swap_variables(F: Sequence[UniPoly]) -> list[UniPoly]:
    """Coefficients-in-x of polynomials in t  <->  coefficients-in-t."""
    width = max((c.degree + 1 for c in F), default=0)
    return [UniPoly([F[i][j] for i in range(len(F))]) for j in range(width)]


def bivariate_resultant(F: Sequence[UniPoly], G: Sequence[UniPoly]) -> UniPoly:
    """Res_x(F, G) for F, G in Q[t][x], by evaluation and interpolation in t."""
    F = list(F)
    G = list(G)
    while F and F[-1].is_zero():
        F.pop()
    while G and G[-1].is_zero():
        G.pop()
    if not F or not G:
        raise DomainError("resultant of a zero polynomial")
    m, n = len(F) - 1, len(G) - 1
    df = max(c.degree for c in F)
    dg = max(c.degree for c in G)
    bound = n * max(df, 0) + m * max(dg, 0)
    xs, ys = [], []
    t = 0
    while len(xs) < bound + 1:
        fv = [c(Fraction(t)) for c in F]
        gv = [c(Fraction(t)) for c in G]
        if fv[-1] != 0 and gv[-1] != 0:
            xs.append(Fraction(t))
            ys.append(dense.resultant(fv, gv) if (m or n) else Fraction(1))
        t = -t if t > 0 else -t + 1
    return UniPoly(dense.interpolate(xs, ys))


# ---------------------------------------------------------------------------
# Cyclotomic polynomials


@dataclass(frozen=True)
class CyclotomicData:
    n: int
    phi_n: int
    poly: UniPoly


def cyclotomic_poly(n: int) -> UniPoly:
    """Phi_n by the Mobius product of the factors x^d - 1."""
    if n < 1:
        raise DomainError("cyclotomic polynomial needs n >= 1")
    num = [1]
    den = [1]
    for d in divisors(n):
        mu = moebius(n // d)
        if mu == 0:
            continue
        term = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = zx_mul(num, term)
        else:
            den = zx_mul(den, term)
    q = zx_divmod_exact(num, den)
    assert q is not None
    return UniPoly(_ztrim(q))


def cyclotomic_data(n: int) -> CyclotomicData:
    """phi(n) together with Phi_n.

    >>> cyclotomic_data(9).poly.pretty()
    'x^6 + x^3 + 1'
    """
    if n < 1:
        raise DomainError("cyclotomic data needs n >= 1")
    return CyclotomicData(n, euler_phi(n), cyclotomic_poly(n))
