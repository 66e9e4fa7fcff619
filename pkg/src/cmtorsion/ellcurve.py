"""Elliptic curves over number fields: long Weierstrass, Kubert-Tate and Hesse
models, the group law, division polynomials, reduction modulo primes and the
rational torsion subgroup."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import dense
from .arith.ntheory import divisors, factorint, moebius, next_prime
from .arith.zx import fp_factor_squarefree
from .errors import BadReductionError, DomainError, NotOnCurveError, ResourceError, SingularCurveError
from .finfield import ZERO, FiniteField
from .numfield import NfElement, NumberField, nf_poly_mul, nf_roots, nf_sqrt, rationals

# Residue fields larger than this are not used for point counting.
MAX_RESIDUE_FIELD = 10**6
# Reduction search for torsion bounds: prime bound and residue-field cap.
TORSION_PRIME_BOUND = 10**4
TORSION_FIELD_CAP = 20_000
MIN_GOOD_PRIMES = 3


# ---------------------------------------------------------------------------
# Points


class Point:
    """An affine point (x, y) or the point at infinity."""

    __slots__ = ("x", "y")

    def __init__(self, x: NfElement | None = None, y: NfElement | None = None):
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash(None) if self.is_infinity else hash((self.x, self.y))

    def __repr__(self) -> str:
        if self.is_infinity:
            return "Point(infinity)"
        return f"Point({self.x.pretty()}, {self.y.pretty()})"

    def to_json(self) -> dict | str:
        if self.is_infinity:
            return "infinity"
        return {"x": self.x.pretty(), "y": self.y.pretty()}


INFINITY = Point()


# ---------------------------------------------------------------------------
# Curves


class Curve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a number field."""

    def __init__(self, base: NumberField, a1=0, a2=0, a3=0, a4=0, a6=0):
        el = base.element
        self.base = base
        self.a1, self.a2, self.a3, self.a4, self.a6 = (el(a) for a in (a1, a2, a3, a4, a6))
        a1, a2, a3, a4, a6 = self.a_invariants
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        self.c4 = self.b2 * self.b2 - 24 * self.b4
        self.c6 = -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        self.discriminant = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if self.discriminant.is_zero():
            raise SingularCurveError("the Weierstrass equation is singular (discriminant 0)")
        self.j_invariant = self.c4 ** 3 / self.discriminant
        self._division = None

    @property
    def a_invariants(self) -> tuple[NfElement, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Curve)
            and self.base == other.base
            and self.a_invariants == other.a_invariants
        )

    def __hash__(self) -> int:
        return hash(self.a_invariants)

    def __repr__(self) -> str:
        return f"Curve({self.equation()!r})"

    def equation(self, var: str = "b") -> str:
        def term(c: NfElement, mono: str) -> str:
            if c.is_zero():
                return ""
            if c == 1:
                return f" + {mono}" if mono else " + 1"
            if c == -1:
                return f" - {mono}" if mono else " - 1"
            text = c.pretty(var)
            if c.is_rational() and not text.startswith("-"):
                return f" + {text}*{mono}" if mono else f" + {text}"
            if c.is_rational():
                return f" - {text[1:]}*{mono}" if mono else f" - {text[1:]}"
            return f" + ({text})*{mono}" if mono else f" + ({text})"

        lhs = "y^2" + term(self.a1, "x*y") + term(self.a3, "y")
        rhs = "x^3" + term(self.a2, "x^2") + term(self.a4, "x") + term(self.a6, "")
        return f"{lhs} = {rhs}"

    def to_json(self) -> dict:
        return {
            "field": self.base.defining_poly.pretty("b"),
            "a_invariants": [a.pretty() for a in self.a_invariants],
            "equation": self.equation(),
            "j_invariant": self.j_invariant.pretty(),
        }

    # polynomials in x --------------------------------------------------
    def two_division_poly(self) -> list[NfElement]:
        """B(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 = (2y + a1 x + a3)^2 on E."""
        return dense.trim([self.b6, 2 * self.b4, self.b2, self.base.element(4)])

    def short_model(self) -> tuple[NfElement, NfElement]:
        """(A, B) with E isomorphic to y^2 = x^3 + A x + B by completing the
        square and the cube; curves already in that form are returned as is."""
        a1, a2, a3, a4, a6 = self.a_invariants
        if a1.is_zero() and a2.is_zero() and a3.is_zero():
            return a4, a6
        b2, b4, b6 = self.b2, self.b4, self.b6
        A = b4 / 2 - b2 * b2 / 48
        B = b6 / 4 - b2 * b4 / 24 + b2 ** 3 / 864
        return A, B

    # points ------------------------------------------------------------
    def contains(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        a1, a2, a3, a4, a6 = self.a_invariants
        lhs = y * y + a1 * x * y + a3 * y
        rhs = ((x + a2) * x + a4) * x + a6
        return lhs == rhs

    def point(self, x, y) -> Point:
        P = Point(self.base.element(x), self.base.element(y))
        if not self.contains(P):
            raise NotOnCurveError(f"({P.x.pretty()}, {P.y.pretty()}) is not on {self.equation()}")
        return P

    def lift_x(self, x) -> list[Point]:
        """All F-rational points with the given x-coordinate."""
        x = self.base.element(x)
        a1, a2, a3, a4, a6 = self.a_invariants
        lin = a1 * x + a3
        disc = dense.evaluate(self.two_division_poly(), x)
        if disc.is_zero():
            return [Point(x, -lin / 2)]
        s = nf_sqrt(disc)
        if s is None:
            return []
        return [Point(x, (s - lin) / 2), Point(x, (-s - lin) / 2)]

    def _check(self, P: Point) -> None:
        if not self.contains(P):
            raise NotOnCurveError(f"{P!r} is not on {self.equation()}")

    def neg(self, P: Point) -> Point:
        self._check(P)
        if P.is_infinity:
            return P
        return Point(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: Point, Q: Point) -> Point:
        self._check(P)
        self._check(Q)
        return self._add(P, Q)

    def _add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, a6 = self.a_invariants
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if (y1 + y2 + a1 * x2 + a3).is_zero():
                return INFINITY
            den = 2 * y1 + a1 * x1 + a3
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
            nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / den
        else:
            dx = x2 - x1
            lam = (y2 - y1) / dx
            nu = (y1 * x2 - y2 * x1) / dx
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return Point(x3, y3)

    def mul(self, n: int, P: Point) -> Point:
        self._check(P)
        if n < 0:
            return self.mul(-n, self.neg(P))
        result = INFINITY
        base = P
        while n:
            if n & 1:
                result = self._add(result, base)
            n >>= 1
            if n:
                base = self._add(base, base)
        return result

    def order(self, P: Point, limit: int = 10_000) -> int:
        """Order of a torsion point (searched up to limit)."""
        self._check(P)
        Q = P
        for k in range(1, limit + 1):
            if Q.is_infinity:
                return k
            Q = self._add(Q, P)
        raise DomainError("point has no finite order below the search limit")

    # division polynomials ---------------------------------------------
    @property
    def division(self) -> "DivisionPolySet":
        if self._division is None:
            self._division = DivisionPolySet(self)
        return self._division


def _as_element(F: NumberField, v) -> NfElement:
    return F.element(v)


def kubert_curve(b, c, F: NumberField | None = None) -> Curve:
    """E(b, c): y^2 + (1 - c) xy - b y = x^3 - b x^2, carrying the point (0, 0)."""
    F = F or rationals()
    b, c = F.element(b), F.element(c)
    try:
        return Curve(F, 1 - c, -b, -b, 0, 0)
    except SingularCurveError:
        raise SingularCurveError(
            f"Kubert-Tate parameters b={b.pretty()}, c={c.pretty()} give a singular curve"
        ) from None


def hesse_coefficients(lam: NfElement) -> tuple[NfElement, NfElement, NfElement, NfElement]:
    """(c3, c2, c1, c0) with the Hesse cubic birational to V^2 = c3 Z^3 + c2 Z^2 + c1 Z + c0.

    With U = X + Y, V = X - Y the cubic becomes V^2 (3U - lam Z) = -(U^3 +
    lam U^2 Z + 4 Z^3); the tangent 3U - lam Z at the flex [1:-1:0] is sent
    to infinity.
    """
    c3 = -4 * (lam ** 3 + 27) / 27
    c2 = -lam * lam / 3
    c1 = -2 * lam / 9
    c0 = lam.field.element(Fraction(-1, 27))
    return c3, c2, c1, c0


def hesse_curve(lam, F: NumberField | None = None) -> Curve:
    """Weierstrass model of X^3 + Y^3 + Z^3 + lam XYZ = 0 (flex [1:-1:0] at infinity)."""
    F = F or rationals()
    lam = F.element(lam)
    c3, c2, c1, c0 = hesse_coefficients(lam)
    if c3.is_zero():
        raise SingularCurveError("the Hesse cubic is singular when lambda^3 = -27")
    return Curve(F, 0, c2, 0, c1 * c3, c0 * c3 * c3)


def hesse_point(X, Y, Z, lam, F: NumberField | None = None) -> Point:
    """Image on hesse_curve(lam) of a point [X:Y:Z] of the Hesse cubic."""
    F = F or rationals()
    X, Y, Z, lam = (F.element(v) for v in (X, Y, Z, lam))
    if not (X ** 3 + Y ** 3 + Z ** 3 + lam * X * Y * Z).is_zero():
        raise NotOnCurveError("point is not on the Hesse cubic")
    U, V = X + Y, X - Y
    L = 3 * U - lam * Z
    if L.is_zero():
        return INFINITY
    c3 = hesse_coefficients(lam)[0]
    return Point(c3 * (Z / L), c3 * (V / L))


def curve_from_j(j, F: NumberField | None = None) -> Curve:
    """Canonical model with the given j-invariant."""
    F = F or rationals()
    j = F.element(j)
    if j.is_zero():
        return Curve(F, 0, 0, 0, 0, 16)
    if j == 1728:
        return Curve(F, 0, 0, 0, -1, 0)
    k = j - 1728
    return Curve(F, 0, 0, 0, -3 * j * k, -2 * j * k * k)


def point_add(P: Point, Q: Point, E: Curve) -> Point:
    return E.add(P, Q)


def quadratic_twist(E: Curve, d) -> Curve:
    """Twist of the short model y^2 = x^3 + A x + B to y^2 = x^3 + A d^2 x + B d^3."""
    d = E.base.element(d)
    if d.is_zero():
        raise DomainError("twisting parameter must be nonzero")
    A, B = E.short_model()
    return Curve(E.base, 0, 0, 0, A * d * d, B * d ** 3)


def _is_power(a: NfElement, k: int) -> bool:
    F = a.field
    poly = [-a] + [F.zero()] * (k - 1) + [F.one()]
    return bool(nf_roots(poly, F))


def curves_isomorphic(E1: Curve, E2: Curve) -> bool:
    """Isomorphism over the common base field."""
    if E1.base != E2.base:
        raise DomainError("curves are defined over different fields")
    if E1.j_invariant != E2.j_invariant:
        return False
    A1, B1 = E1.short_model()
    A2, B2 = E2.short_model()
    if A1.is_zero():  # j = 0: B2 / B1 must be a sixth power
        return _is_power(B2 / B1, 6)
    if B1.is_zero():  # j = 1728: A2 / A1 must be a fourth power
        return _is_power(A2 / A1, 4)
    # E2 is the twist of E1 by d = (B2/B1) / (A2/A1).
    return _is_power((A1 * B2) / (A2 * B1), 2)


# ---------------------------------------------------------------------------
# Division polynomials


class DivisionPolySet:
    """Division polynomials of a curve in the x-only convention.

    g_N is psi_N for odd N and psi_N / psi_2 for even N, so every g_N is a
    polynomial in x; X_N = g_N (odd N) or g_N * B (even N) has as roots the
    x-coordinates of the nonzero N-torsion points, and the exact-order
    polynomial is f_N = prod_{d | N} X_d^mu(N/d).
    """

    def __init__(self, E: Curve):
        self.curve = E
        F = E.base
        el = F.element
        b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
        self._B = E.two_division_poly()
        self._B2 = nf_poly_mul(self._B, self._B)
        self._g: dict[int, list[NfElement]] = {
            0: [],
            1: [el(1)],
            2: [el(1)],
            3: dense.trim([b8, 3 * b6, 3 * b4, b2, el(3)]),
            4: dense.trim(
                [
                    b4 * b8 - b6 * b6,
                    b2 * b8 - b4 * b6,
                    10 * b8,
                    10 * b6,
                    5 * b4,
                    b2,
                    el(2),
                ]
            ),
        }
        self._exact: dict[int, list[NfElement]] = {}

    def psi(self, N: int) -> list[NfElement]:
        """g_N (see class docstring)."""
        if N < 0:
            raise DomainError("division polynomial index must be nonnegative")
        if N in self._g:
            return self._g[N]
        m = N // 2
        mul = nf_poly_mul
        if N % 2:
            g_m2, g_m, g_m1, g_mp1 = self.psi(m + 2), self.psi(m), self.psi(m - 1), self.psi(m + 1)
            left = mul(g_m2, mul(g_m, mul(g_m, g_m)))
            right = mul(g_m1, mul(g_mp1, mul(g_mp1, g_mp1)))
            if m % 2 == 0:
                left = mul(self._B2, left)
            else:
                right = mul(self._B2, right)
            out = dense.sub(left, right)
        else:
            g_m2, g_m1, g_mm2, g_mp1 = self.psi(m + 2), self.psi(m - 1), self.psi(m - 2), self.psi(m + 1)
            inner = dense.sub(mul(g_m2, mul(g_m1, g_m1)), mul(g_mm2, mul(g_mp1, g_mp1)))
            out = mul(inner, self.psi(m))
        self._g[N] = out
        return out

    def x_poly(self, N: int) -> list[NfElement]:
        """Polynomial whose roots are the x-coordinates of E[N] minus O."""
        if N == 1:
            return [self.curve.base.one()]
        g = self.psi(N)
        return nf_poly_mul(g, self._B) if N % 2 == 0 else g

    def exact(self, N: int) -> list[NfElement]:
        """f_N: roots are the x-coordinates of the points of exact order N."""
        if N < 1:
            raise DomainError("N must be positive")
        if N in self._exact:
            return self._exact[N]
        if N == 1:
            out = [self.curve.base.one()]
        else:
            num = [self.curve.base.one()]
            den = [self.curve.base.one()]
            for d in divisors(N):
                mu = moebius(N // d)
                if mu == 1:
                    num = nf_poly_mul(num, self.x_poly(d))
                elif mu == -1:
                    den = nf_poly_mul(den, self.x_poly(d))
            out = dense.exact_div(num, den) if len(den) > 1 else num
        self._exact[N] = out
        return out


def division_polys(E: Curve, N: int, exact_order: bool = False) -> list[NfElement]:
    if N < 1:
        raise DomainError("N must be at least 1")
    return E.division.exact(N) if exact_order else E.division.psi(N)


def exact_order_count(N: int) -> int:
    """Number of points of exact order N on E[N] (geometric)."""
    out = N * N
    for p in factorint(N) if N > 1 else {}:
        out = out * (p * p - 1) // (p * p)
    return out


# ---------------------------------------------------------------------------
# Reduction modulo primes


def _reduce_element(a: NfElement, Fq: FiniteField) -> int:
    if a.den % Fq.p == 0:
        raise BadReductionError("coefficient is not integral at p")
    return Fq.div(Fq.from_vec(a.num), Fq.from_int(a.den))


class ReducedCurve:
    """A curve over a residue field F_q (q odd), elements as Zech logarithms."""

    def __init__(self, Fq: FiniteField, ainv: Sequence[int]):
        self.F = Fq
        self.a1, self.a2, self.a3, self.a4, self.a6 = ainv
        K = Fq
        two = K.from_int(2)
        four = K.from_int(4)
        a1, a2, a3, a4, a6 = ainv
        self.b2 = K.add(K.mul(a1, a1), K.mul(four, a2))
        self.b4 = K.add(K.mul(two, a4), K.mul(a1, a3))
        self.b6 = K.add(K.mul(a3, a3), K.mul(four, a6))
        self._B = [self.b6, K.mul(two, self.b4), self.b2, four]

    def rhs_disc(self, x: int) -> int:
        return self.F.peval(self._B, x)

    def count(self) -> int:
        K = self.F
        total = 1
        c0, c1, c2, c3 = self._B
        add, mul = K.add, K.mul
        for x in K.elements():
            v = add(mul(add(mul(add(mul(c3, x), c2), x), c1), x), c0)
            if v == ZERO:
                total += 1
            elif v % 2 == 0:
                total += 2
        return total

    # group law on tuples (x, y); None is the identity
    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        K = self.F
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            s = K.add(K.add(y1, y2), K.add(K.mul(a1, x2), a3))
            if s == ZERO:
                return None
            den = K.add(K.add(K.mul(K.from_int(2), y1), K.mul(a1, x1)), a3)
            num = K.add(
                K.add(K.mul(K.from_int(3), K.mul(x1, x1)), K.mul(K.from_int(2), K.mul(a2, x1))),
                K.sub(a4, K.mul(a1, y1)),
            )
            lam = K.div(num, den)
            nnum = K.add(
                K.add(K.neg(K.mul(x1, K.mul(x1, x1))), K.mul(a4, x1)),
                K.sub(K.mul(K.from_int(2), a6), K.mul(a3, y1)),
            )
            nu = K.div(nnum, den)
        else:
            dx = K.sub(x2, x1)
            lam = K.div(K.sub(y2, y1), dx)
            nu = K.div(K.sub(K.mul(y1, x2), K.mul(y2, x1)), dx)
        x3 = K.sub(K.sub(K.add(K.mul(lam, lam), K.mul(a1, lam)), a2), K.add(x1, x2))
        y3 = K.sub(K.neg(K.mul(K.add(lam, a1), x3)), K.add(nu, a3))
        return (x3, y3)

    def mul(self, n: int, P):
        result = None
        base = P
        while n:
            if n & 1:
                result = self.add(result, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return result

    def random_point(self, rng: random.Random):
        K = self.F
        while True:
            x = rng.randrange(-1, K.q - 1)
            v = self.rhs_disc(x)
            if K.is_square(v):
                s = K.sqrt(v)
                if rng.random() < 0.5:
                    s = K.neg(s)
                y = K.div(K.sub(K.sub(s, K.mul(self.a1, x)), self.a3), K.from_int(2))
                return (x, y)

    def shape(self, order: int) -> tuple[int, int]:
        """(m, n) with E(F_q) = Z/m x Z/n, m | n."""
        m = 1
        rng = random.Random(order * 1_000_003 + self.F.q)
        for ell, v in factorint(order).items() if order > 1 else []:
            if v < 2 or (self.F.q - 1) % ell:
                continue
            size = ell**v
            cof = order // size
            group = {None}
            exponent = 1
            while len(group) < size:
                R = self.mul(cof, self.random_point(rng))
                if R in group:
                    continue
                k, Q = 1, R
                while Q is not None:
                    Q = self.mul(ell, Q)
                    k *= ell
                exponent = max(exponent, k)
                new = set(group)
                for s in group:
                    acc = s
                    for _ in range(k - 1):
                        acc = self.add(acc, R)
                        new.add(acc)
                group = new
            m *= size // exponent
        return m, order // m


def reduce_curve(E: Curve, Fq: FiniteField) -> ReducedCurve:
    ainv = [_reduce_element(a, Fq) for a in E.a_invariants]
    red = ReducedCurve(Fq, ainv)
    if _reduce_element(E.discriminant, Fq) == ZERO:
        raise BadReductionError("curve has bad reduction at this prime")
    return red


def _bad_prime(E: Curve, p: int) -> str | None:
    if p == 2:
        return "p = 2 is not supported for reduction"
    if E.base.discriminant() % p == 0:
        return f"{p} divides the discriminant of the defining polynomial"
    for a in E.a_invariants:
        if a.den % p == 0:
            return f"a Weierstrass coefficient is not integral at {p}"
    N = E.discriminant.norm()
    if N.numerator % p == 0 or N.denominator % p == 0:
        return f"{p} divides the norm of the curve discriminant"
    return None


def good_reduction_order(E: Curve, p: int, cap: int = MAX_RESIDUE_FIELD) -> list[tuple[int, int, tuple[int, int]]]:
    """(residue degree k, #E(F_{p^k}), shape) for each prime above p with p^k <= cap."""
    why = _bad_prime(E, p)
    if why:
        raise BadReductionError(why)
    out = []
    for h in fp_factor_squarefree(list(E.base._f), p):
        k = len(h) - 1
        if p**k > cap:
            continue
        Fq = FiniteField(p, h)
        red = reduce_curve(E, Fq)
        N = red.count()
        out.append((k, N, red.shape(N)))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# Torsion


@dataclass
class TorsionBound:
    """Componentwise bounds (a, b) on T[l^inf] = Z/l^a x Z/l^b from reductions."""

    bounds: dict[int, tuple[int, int]]
    orders: list[int]
    primes: list[int]

    @property
    def order_gcd(self) -> int:
        g = 0
        for n in self.orders:
            g = math.gcd(g, n)
        return g


def _ell_shape(m: int, n: int, ell: int) -> tuple[int, int]:
    a = b = 0
    while m % ell == 0:
        m //= ell
        a += 1
    while n % ell == 0:
        n //= ell
        b += 1
    return a, b


def reduction_bound(E: Curve, min_primes: int = MIN_GOOD_PRIMES) -> TorsionBound:
    """Bound the torsion by reductions at good primes below TORSION_PRIME_BOUND."""
    shapes: list[tuple[int, int, int]] = []  # (p, m, n)
    orders: list[int] = []
    primes: list[int] = []
    bounds: dict[int, tuple[int, int]] | None = None
    stable = 0
    p = 2
    while True:
        p = next_prime(p)
        if p > TORSION_PRIME_BOUND:
            break
        if _bad_prime(E, p):
            continue
        got = False
        for h in fp_factor_squarefree(list(E.base._f), p):
            if p ** (len(h) - 1) > TORSION_FIELD_CAP:
                continue
            red = reduce_curve(E, FiniteField(p, h))
            N = red.count()
            m, n = red.shape(N)
            shapes.append((p, m, n))
            orders.append(N)
            got = True
        if not got:
            continue
        primes.append(p)
        new = _combine_bounds(shapes)
        stable = stable + 1 if new == bounds else 0
        bounds = new
        if len(primes) >= min_primes + 3 and stable >= 3:
            break
        if len(primes) >= 12:
            break
    if len(primes) < min_primes:
        raise ResourceError(
            f"only {len(primes)} usable reduction primes below {TORSION_PRIME_BOUND} "
            f"(need {min_primes}); residue fields are capped at {TORSION_FIELD_CAP} elements"
        )
    return TorsionBound(bounds or {}, orders, primes)


def _combine_bounds(shapes) -> dict[int, tuple[int, int]]:
    ells: set[int] = set()
    for _, _, n in shapes:
        if n > 1:
            ells |= set(factorint(n))
    out = {}
    for ell in sorted(ells):
        a_max = b_max = None
        for p, m, n in shapes:
            if p == ell:
                continue
            a, b = _ell_shape(m, n, ell)
            a_max = a if a_max is None else min(a_max, a)
            b_max = b if b_max is None else min(b_max, b)
        if b_max:
            out[ell] = (a_max, b_max)
    return out


@dataclass
class TorsionGroup:
    """E(F)[tors] = Z/m x Z/n (m | n); generators ordered (order m, order n),
    or a single generator of order n when cyclic."""

    m: int
    n: int
    generators: list[Point] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.m * self.n

    @property
    def invariants(self) -> tuple[int, int]:
        return (self.m, self.n)

    def structure(self) -> str:
        if self.n == 1:
            return "0"
        if self.m == 1:
            return f"Z/{self.n}"
        return f"Z/{self.m} x Z/{self.n}"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "structure": self.structure(),
            "generators": [P.to_json() for P in self.generators],
        }


def rational_points_of_order(E: Curve, N: int) -> list[Point]:
    """F-rational points of exact order N."""
    if N == 1:
        return [INFINITY]
    pts = []
    for x in nf_roots(E.division.exact(N), E.base):
        pts.extend(E.lift_x(x))
    return pts


def _primary_part(E: Curve, ell: int, b_max: int):
    """(a, b, P, Q) for T[l^inf] = Z/l^a x Z/l^b with P of order l^b and Q of
    order l^a independent of P (Q is None when a = 0)."""
    levels: dict[int, list[Point]] = {}
    total = 1
    for k in range(1, b_max + 1):
        pts = rational_points_of_order(E, ell**k)
        if not pts:
            break
        levels[k] = pts
        total += len(pts)
    if not levels:
        return 0, 0, None, None
    b = max(levels)
    exp_total = round(math.log(total, ell))
    if ell**exp_total != total:
        raise ArithmeticError(f"{ell}-primary torsion has non-prime-power size {total}")
    a = exp_total - b
    P = levels[b][0]
    if a == 0:
        return 0, b, P, None
    span = set()
    acc = INFINITY
    for _ in range(ell**b):
        span.add(acc)
        acc = E._add(acc, P)
    for Q in levels[a]:
        if E.mul(ell ** (a - 1), Q) not in span:
            return a, b, P, Q
    raise ArithmeticError("no independent generator found")


def independent(E: Curve, P: Point, Q: Point, oP: int, oQ: int) -> bool:
    """No relation i P + j Q = O with 0 <= i < oP, 0 <= j < oQ except (0, 0)."""
    multiples_P = {}
    acc = INFINITY
    for i in range(oP):
        multiples_P[acc] = i
        acc = E._add(acc, P)
    negQ = E.neg(Q)
    acc = INFINITY
    for j in range(oQ):
        if j and acc in multiples_P:
            return False
        acc = E._add(acc, negQ)
    return True


def torsion_subgroup(E: Curve) -> TorsionGroup:
    """E(F)[tors] with verified generators."""
    bound = reduction_bound(E)
    m = n = 1
    gen_n, gen_m = INFINITY, INFINITY
    for ell, (a_max, b_max) in sorted(bound.bounds.items()):
        a, b, P, Q = _primary_part(E, ell, b_max)
        if b == 0:
            continue
        if a > a_max or b > b_max:
            raise ArithmeticError("torsion exceeds the reduction bound")
        n *= ell**b
        gen_n = E._add(gen_n, P)
        if a:
            m *= ell**a
            gen_m = E._add(gen_m, Q)
    gens = [gen_n] if m == 1 else [gen_m, gen_n]
    T = TorsionGroup(m, n, gens)
    _verify_torsion(E, T, bound)
    return T


def _verify_torsion(E: Curve, T: TorsionGroup, bound: TorsionBound) -> None:
    for P in T.generators:
        if not E.mul(T.n, P).is_infinity:
            raise ArithmeticError("generator is not killed by the exponent")
    if T.m > 1:
        if not E.mul(T.m, T.generators[0]).is_infinity:
            raise ArithmeticError("first generator is not killed by m")
        if not independent(E, T.generators[0], T.generators[1], T.m, T.n):
            raise ArithmeticError("generators are dependent")
    if bound.order_gcd % T.order and all(o % T.order for o in bound.orders):
        raise ArithmeticError("torsion order does not divide the reduction orders")
    if E.base.is_real() and T.m > 2:
        raise ArithmeticError("real base field with non-real torsion shape")
