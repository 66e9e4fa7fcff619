"""Number fields Q[x]/(f): exact element arithmetic, factorisation of
polynomials over the field (Trager's norm method), real embeddings and
roots of unity."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

from .arith import dense
from .arith.ntheory import euler_phi, factorint, next_prime
from .arith.poly import (
    UniPoly,
    cyclotomic_poly,
    factor_poly_q,
    parse_rational,
    poly_gcd,
)
from .arith.zx import (
    fp_factor_squarefree,
    hensel_lift,
    mod_add,
    mod_mul,
    mod_reduce,
    mod_rem,
    mod_scale,
    mod_sub,
    zx_mul,
)
from .errors import DomainError
from .finfield import FiniteField

Scalar = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial f."""

    def __init__(self, defining_poly: UniPoly | Sequence[Scalar] | str, check: bool = True):
        if isinstance(defining_poly, str):
            defining_poly = UniPoly.parse(defining_poly)
        elif not isinstance(defining_poly, UniPoly):
            defining_poly = UniPoly(defining_poly)
        f = defining_poly
        if f.degree < 1:
            raise DomainError("defining polynomial must have degree >= 1")
        if not f.is_monic() or not f.is_integral():
            raise DomainError("defining polynomial must be monic with integer coefficients")
        if check and f.degree > 1:
            fac = factor_poly_q(f)
            if len(fac.factors) != 1 or fac.factors[0][1] != 1:
                raise DomainError(f"defining polynomial {f.pretty()} is reducible")
        self.defining_poly = f
        self.degree = f.degree
        self._f = tuple(f.int_coeffs())
        self._real = None

    # equality is by defining polynomial (same presentation)
    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self._f == other._f

    def __hash__(self) -> int:
        return hash(self._f)

    def __repr__(self) -> str:
        return f"NumberField({self.defining_poly.pretty('b')!r})"

    # elements ---------------------------------------------------------
    def __call__(self, value) -> "NfElement":
        return self.element(value)

    def element(self, value) -> "NfElement":
        if isinstance(value, NfElement):
            if value.field != self:
                raise DomainError("element belongs to a different field")
            return value
        if isinstance(value, (int, Fraction)):
            return NfElement.from_rationals(self, [value])
        if isinstance(value, str):
            return NfElement.from_rationals(self, [parse_rational(p) for p in value.split(",")])
        if isinstance(value, UniPoly):
            return NfElement.from_rationals(self, value.coeffs)
        return NfElement.from_rationals(self, list(value))

    def zero(self) -> "NfElement":
        return NfElement(self, (0,) * self.degree, 1)

    def one(self) -> "NfElement":
        return NfElement(self, (1,) + (0,) * (self.degree - 1), 1)

    def gen(self) -> "NfElement":
        if self.degree == 1:
            return self.element(-self._f[0])
        return NfElement(self, (0, 1) + (0,) * (self.degree - 2), 1)

    def poly(self, coeffs: Iterable) -> list["NfElement"]:
        """A polynomial over this field as a trimmed coefficient list."""
        return dense.trim([self.element(c) for c in coeffs])

    # invariants ---------------------------------------------------------
    def real_embedding_count(self) -> int:
        if self._real is None:
            self._real = sturm_real_root_count(self.defining_poly)
        return self._real

    def is_real(self) -> bool:
        return self.real_embedding_count() > 0

    def discriminant(self) -> int:
        """Discriminant of the defining polynomial."""
        f = self.defining_poly
        n = f.degree
        r = dense.resultant(list(f.coeffs), list(f.derivative().coeffs))
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return int(sign * r)


def _reduce(vec: list[int], f: Sequence[int]) -> list[int]:
    """Reduce an integer vector modulo the monic polynomial f in place."""
    d = len(f) - 1
    for k in range(len(vec) - 1, d - 1, -1):
        c = vec[k]
        if c:
            base = k - d
            for j in range(d):
                vec[base + j] -= c * f[j]
        vec[k] = 0
    del vec[d:]
    return vec


class NfElement:
    """Element sum(num[i] * b^i) / den of a number field, kept normalised."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: NumberField, num: Sequence[int], den: int = 1):
        g = den
        for c in num:
            g = math.gcd(g, c)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den

    @classmethod
    def from_rationals(cls, field: NumberField, coeffs: Sequence[Scalar]) -> "NfElement":
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        vec = [int(c * den) for c in fr]
        d = field.degree
        if len(vec) > d:
            vec = _reduce(vec, field._f)
        vec += [0] * (d - len(vec))
        return cls(field, vec, den)

    # views --------------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Power-basis coordinates as Fractions."""
        return tuple(Fraction(c, self.den) for c in self.num)

    def to_poly(self) -> UniPoly:
        return UniPoly(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("element is not rational")
        return Fraction(self.num[0], self.den)

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def pretty(self, var: str = "b") -> str:
        return self.to_poly().pretty(var)

    def __repr__(self) -> str:
        return f"NfElement({self.pretty()!r})"

    __str__ = pretty

    # coercion -------------------------------------------------------------
    def _coerce(self, other) -> "NfElement":
        if isinstance(other, NfElement):
            if other.field is not self.field and other.field != self.field:
                raise DomainError("elements of different fields")
            return other
        if isinstance(other, int):
            return NfElement(self.field, (other,) + (0,) * (self.field.degree - 1), 1)
        if isinstance(other, Fraction):
            return NfElement(
                self.field, (other.numerator,) + (0,) * (self.field.degree - 1), other.denominator
            )
        return NotImplemented

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return NfElement(self.field, [a + b for a, b in zip(self.num, o.num)], self.den)
        return NfElement(
            self.field, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return NfElement(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return NfElement(self.field, [a * other for a in self.num], self.den)
        if isinstance(other, Fraction):
            return NfElement(
                self.field, [a * other.numerator for a in self.num], self.den * other.denominator
            )
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.num, o.num
        d = self.field.degree
        if d == 1:
            return NfElement(self.field, (a[0] * b[0],), self.den * o.den)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return NfElement(self.field, _reduce(prod, self.field._f), self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def inverse(self) -> "NfElement":
        return nf_inverse(self, self.field)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in number field")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, NfElement):
            return self.num == other.num and self.den == other.den and self.field == other.field
        if isinstance(other, (int, Fraction)):
            fr = Fraction(other)
            return (
                not any(self.num[1:])
                and self.num[0] == fr.numerator
                and self.den == fr.denominator
            )
        return NotImplemented

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        if not any(self.num[1:]):
            return hash(Fraction(self.num[0], self.den))
        return hash((self.num, self.den))

    # field-theoretic maps ---------------------------------------------------
    def norm(self) -> Fraction:
        """N_{F/Q}; for monic f this is Res(f, a)."""
        if self.field.degree == 1:
            return Fraction(self.num[0], self.den)
        num = dense.resultant(
            [Fraction(c) for c in self.field._f], dense.trim([Fraction(c) for c in self.num])
        ) if any(self.num) else Fraction(0)
        return num / Fraction(self.den) ** self.field.degree

    def charpoly(self) -> UniPoly:
        """Characteristic polynomial over Q (degree [F:Q])."""
        return _charpoly(self)

    def minpoly(self) -> UniPoly:
        cp = self.charpoly()
        fac = factor_poly_q(cp)
        return fac.factors[0][0]


def nf_inverse(alpha: NfElement, F: NumberField | None = None) -> NfElement:
    """Inverse by the extended Euclidean algorithm in Q[x]/(f).

    >>> F = NumberField("1,-3,0,1")
    >>> nf_inverse(F.gen(), F).pretty()
    '-b^2 + 3'
    """
    F = F or alpha.field
    if alpha.is_zero():
        raise ZeroDivisionError("inverse of zero in a number field")
    if F.degree == 1:
        return F.element(1 / alpha.rational())
    a = [Fraction(c) for c in dense.trim(list(alpha.num))]
    f = [Fraction(c) for c in F._f]
    g, s, _ = dense.ext_gcd(a, f)
    if len(g) != 1:
        raise ZeroDivisionError("element is not invertible")
    return NfElement.from_rationals(F, [c * alpha.den for c in s])


def _charpoly(alpha: NfElement) -> UniPoly:
    F = alpha.field
    d = F.degree
    # Res_y(f(y), x - a(y)) by interpolation at d+1 integer points.
    xs, ys = [], []
    fpoly = [Fraction(c) for c in F._f]
    a = alpha.coeffs
    for t in range(d + 1):
        val = dense.trim([Fraction(t) - a[0]] + [-c for c in a[1:]])
        xs.append(Fraction(t))
        ys.append(dense.resultant(fpoly, val) if val else Fraction(0))
    return UniPoly(dense.interpolate(xs, ys))


# ---------------------------------------------------------------------------
# Polynomials over a number field


def poly_over(F: NumberField, g) -> list[NfElement]:
    """Coerce a UniPoly / list / string of coefficients to a polynomial over F."""
    if isinstance(g, UniPoly):
        return F.poly(g.coeffs)
    if isinstance(g, str):
        return F.poly(parse_rational(c) for c in g.split(","))
    return F.poly(g)


def _norm_poly(h: Sequence[NfElement], F: NumberField, s: int) -> UniPoly:
    """Norm_{F/Q} of h(x - s*theta) as a polynomial in x."""
    n = len(h) - 1
    total = n * F.degree
    theta = F.gen()
    xs, ys = [], []
    for t in range(total + 1):
        x0 = F.element(t) - theta * s
        v = dense.evaluate(h, x0)
        xs.append(Fraction(t))
        ys.append(v.norm())
    return UniPoly(dense.interpolate(xs, ys))


def _shift_sequence():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


_MAX_SHIFTS = 40


def factor_over_nf(g, F: NumberField) -> list[tuple[list[NfElement], int]]:
    """Irreducible factorisation over F by Trager's norm method.

    Returns monic factors (coefficient lists over F) with multiplicities; the
    product of factor**multiplicity equals g divided by its leading coefficient.
    """
    g = poly_over(F, g)
    if not g:
        raise DomainError("cannot factor the zero polynomial")
    g = dense.monic(g)
    if len(g) == 1:
        return []
    out = []
    for h, e in dense.squarefree_decomposition(g):
        for fac in _factor_squarefree_nf(h, F):
            out.append((fac, e))
    out.sort(key=lambda t: (len(t[0]), [c.coeffs for c in t[0]]))
    return out


def _factor_squarefree_nf(h: list[NfElement], F: NumberField) -> list[list[NfElement]]:
    if len(h) == 2:
        return [h]
    if F.degree == 1:
        q = UniPoly([c.rational() for c in h])
        return [poly_over(F, fac) for fac, _ in factor_poly_q(q)]
    theta = F.gen()
    for count, s in enumerate(_shift_sequence()):
        if count >= _MAX_SHIFTS:
            break
        N = _norm_poly(h, F, s)
        if poly_gcd(N, N.derivative()).degree > 0:
            continue
        factors = [fac for fac, _ in factor_poly_q(N)]
        if len(factors) == 1:
            return [h]
        out = []
        shift = [theta * s, F.one()]  # x + s*theta
        for Ni in factors:
            Ni_shift = dense.compose(poly_over(F, Ni), shift)
            out.append(dense.gcd(h, Ni_shift))
        return out
    raise DomainError("Trager shift search exhausted without a squarefree norm")


def nf_roots_trager(g, F: NumberField) -> list[NfElement]:
    """Distinct roots of g in F read off the linear factors of a Trager factorisation."""
    return [-fac[0] for fac, _ in factor_over_nf(g, F) if len(fac) == 2]


def nf_roots(g, F: NumberField) -> list[NfElement]:
    """Distinct roots of g in F (p-adic lifting with exact verification)."""
    g = poly_over(F, g)
    if not g:
        raise DomainError("the zero polynomial has every element as a root")
    return padic_roots(g, F)


def has_root(g, F: NumberField) -> bool:
    return bool(nf_roots(g, F))


def is_square_in(a: NfElement) -> bool:
    if a.is_zero():
        return True
    return has_root([-a, a.field.zero(), a.field.one()], a.field)


def nf_sqrt(a: NfElement) -> NfElement | None:
    if a.is_zero():
        return a
    roots = nf_roots([-a, a.field.zero(), a.field.one()], a.field)
    return roots[0] if roots else None


# ---------------------------------------------------------------------------
# Field-level invariants


def monic_integral(f: UniPoly) -> UniPoly:
    """A monic integer polynomial defining the same field as f."""
    f = f.monic()
    n = f.degree
    den = 1
    for c in f.coeffs:
        den = _lcm(den, c.denominator)
    # D^n f(x/D) is monic with integer coefficients.
    return UniPoly([c * den ** (n - i) for i, c in enumerate(f.coeffs)])


def is_isomorphic(f: UniPoly, g: UniPoly) -> bool:
    """True iff Q[x]/(f) and Q[x]/(g) are isomorphic fields."""
    f = f if isinstance(f, UniPoly) else UniPoly(f)
    g = g if isinstance(g, UniPoly) else UniPoly(g)
    for p in (f, g):
        if p.degree < 1:
            raise DomainError("constant polynomial does not define a field")
        fac = factor_poly_q(p)
        if len(fac.factors) != 1 or fac.factors[0][1] != 1:
            raise DomainError(f"{p.pretty()} is reducible over Q")
    if f.degree != g.degree:
        return False
    f, g = monic_integral(f), monic_integral(g)
    if f == g:
        return True
    F = NumberField(g, check=False)
    return any(len(fac) == 2 for fac, _ in factor_over_nf(f, F))


def sturm_real_root_count(f: UniPoly) -> int:
    """Number of distinct real roots of f, by a Sturm sequence."""
    f = f if isinstance(f, UniPoly) else UniPoly(f)
    if f.degree < 1:
        return 0
    seq = [list(f.coeffs), dense.deriv(list(f.coeffs))]
    while seq[-1]:
        r = dense.rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(signs: list[int]) -> int:
        s = [x for x in signs if x != 0]
        return sum(1 for a, b in zip(s, s[1:]) if a != b)

    at_pos = [1 if p[-1] > 0 else -1 for p in seq]
    at_neg = [(1 if p[-1] > 0 else -1) * (-1 if (len(p) - 1) % 2 else 1) for p in seq]
    return changes(at_neg) - changes(at_pos)


def real_embedding_count(F: NumberField) -> int:
    return F.real_embedding_count()


def roots_of_unity_order(F: NumberField) -> int:
    """Order of the group of roots of unity in F."""
    d = F.degree
    best = 2
    # phi(n) <= d forces n <= some small bound; phi(n) >= sqrt(n/2).
    for n in range(3, 2 * d * d + 3):
        if d % euler_phi(n) == 0 and n > best:
            if has_root(cyclotomic_poly(n), F):
                best = n
    return best


@lru_cache(maxsize=None)
def quadratic_field(D: int) -> NumberField:
    """Q(sqrt(D)) presented by x^2 - D."""
    return NumberField(UniPoly([-D, 0, 1]))


# ---------------------------------------------------------------------------
# Roots by p-adic lifting
#
# A root of a monic g in O_F[x] is an algebraic integer, so its coordinates on
# the power basis have denominators dividing s (s^2 | disc f) and are bounded
# through the complex embeddings.  Roots modulo a prime of F are lifted with
# Newton's iteration, reconstructed by CRT over the primes above p, and every
# candidate is verified exactly.

_RESIDUE_CAP = 200_000
_PRIME_TRIALS = 6
_PRIME_SEARCH = 300


def _square_part(n: int) -> int:
    s = 1
    for p, e in factorint(abs(n)).items():
        s *= p ** (e // 2)
    return s


@lru_cache(maxsize=64)
def _lattice_data(F: NumberField):
    """(s, complex roots of f, |V^-1| entries, working digits) for coordinate bounds."""
    d = F.degree
    s = _square_part(F.discriminant())
    size = max(len(str(abs(c))) for c in F._f)
    dps = 40 + 2 * d * size
    while True:
        with mpmath.workdps(dps):
            try:
                roots = mpmath.polyroots(
                    [mpmath.mpf(c) for c in reversed(F._f)], maxsteps=400, extraprec=4 * dps
                )
                V = mpmath.matrix([[r**k for k in range(d)] for r in roots])
                W = V**-1
            except (ZeroDivisionError, mpmath.libmp.NoConvergence):
                if dps > 5000:
                    raise
                dps *= 2
                continue
            wabs = [[abs(W[k, j]) for j in range(d)] for k in range(d)]
        return s, list(roots), wabs, dps


def _coordinate_bound(F: NumberField, G: list[list[int]]) -> int:
    """Bound on |s * coordinate| for any root of the monic integral G."""
    s, roots, wabs, dps = _lattice_data(F)
    d = F.degree
    with mpmath.workdps(dps):
        radii = []
        for r in roots:
            powers = [r**k for k in range(d)]
            big = max(
                (abs(mpmath.fsum(c * pk for c, pk in zip(vec, powers))) for vec in G[:-1]),
                default=mpmath.mpf(0),
            )
            radii.append(1 + big)
        coord = max(mpmath.fsum(wabs[k][j] * radii[j] for j in range(d)) for k in range(d))
        return int(mpmath.ceil(coord * s * mpmath.mpf("1.01"))) + 1


@lru_cache(maxsize=256)
def _residue_field(p: int, h: tuple[int, ...]) -> FiniteField:
    return FiniteField(p, h)


def _integral_scaling(g: list[NfElement]) -> tuple[int, list[list[int]]]:
    """c and integer coordinate vectors of G(X) = c^n g(X/c) (monic, integral)."""
    n = len(g) - 1
    c = 1
    for a in g:
        c = _lcm(c, a.den)
    G = []
    for i, a in enumerate(g):
        scaled = a * c ** (n - i)
        if scaled.den != 1:
            raise ArithmeticError("scaling failed to clear denominators")
        G.append(list(scaled.num))
    return c, G


def _choose_prime(F: NumberField, G: list[list[int]]):
    """Pick a prime whose residue fields make Gbar squarefree, minimising the
    number of residue-root combinations.  Returns None if G has no root."""
    disc = F.discriminant()
    best = None
    usable = 0
    p = 2
    for _ in range(_PRIME_SEARCH):
        p = next_prime(p)
        if disc % p == 0:
            continue
        factors = fp_factor_squarefree(list(F._f), p)
        if any(p ** (len(h) - 1) > _RESIDUE_CAP for h in factors):
            continue
        fields, root_lists = [], []
        ok = True
        for h in factors:
            Fq = _residue_field(p, tuple(h))
            Gq = Fq.ptrim([Fq.from_vec(v) for v in G])
            if not Fq.is_squarefree(Gq):
                ok = False
                break
            fields.append(Fq)
            root_lists.append(Fq.roots(Gq))
        if not ok:
            continue
        if any(not r for r in root_lists):
            return "none"
        usable += 1
        score = 1
        for r in root_lists:
            score *= len(r)
        key = (score, len(factors), p)
        if best is None or key < best[0]:
            best = (key, p, factors, fields, root_lists)
        if usable >= _PRIME_TRIALS or (len(factors) == 1 and usable >= 2):
            break
    return best


def _ring_inverse(a, H, m, Fq: FiniteField, K_steps: int):
    """Inverse of a in (Z/m)[t]/(H) from its residue inverse by Newton."""
    u = Fq.to_vec(Fq.inv(Fq.from_vec(a)))
    for _ in range(K_steps):
        au = mod_rem(mod_mul(a, u, m), H, m)
        u = mod_rem(mod_mul(u, mod_sub([2], au, m), m), H, m)
    return u


def _ring_eval(coeffs, x, H, m):
    acc: list[int] = []
    for c in reversed(coeffs):
        acc = mod_add(mod_rem(mod_mul(acc, x, m), H, m), c, m)
    return acc


def _lift_root(G, root_vec, H, m, Fq: FiniteField, steps: int):
    Gr = [mod_rem(v, H, m) for v in G]
    dG = [mod_scale(Gr[i], i, m) for i in range(1, len(Gr))]
    beta = list(root_vec)
    u = _ring_inverse(_ring_eval(dG, beta, H, m) or [0], H, m, Fq, steps)
    for _ in range(2 * steps + 4):
        val = _ring_eval(Gr, beta, H, m)
        if not val:
            return beta
        beta = mod_sub(beta, mod_rem(mod_mul(val, u, m), H, m), m)
        dv = _ring_eval(dG, beta, H, m)
        u = mod_rem(mod_mul(u, mod_sub([2], mod_rem(mod_mul(dv, u, m), H, m), m), m), H, m)
    if _ring_eval(Gr, beta, H, m):
        raise ArithmeticError("Newton lifting did not converge")
    return beta


def padic_roots(g: list[NfElement], F: NumberField) -> list[NfElement]:
    """Distinct roots in F of a nonzero polynomial over F."""
    g = dense.monic(g)
    if len(g) == 1:
        return []
    if F.degree == 1:
        q = UniPoly([c.rational() for c in g])
        return sorted(
            (F.element(-fac.coeffs[0] / fac.coeffs[1]) for fac, _ in factor_poly_q(q) if fac.degree == 1),
            key=lambda a: a.rational(),
        )
    c, G = _integral_scaling(g)
    choice = _choose_prime(F, G)
    if choice == "none":
        return []
    if choice is None:
        # Gbar is never squarefree: g has repeated factors.
        sq = dense.squarefree_part(g)
        if len(sq) == len(g):
            return nf_roots_trager(g, F)
        return padic_roots(sq, F)
    _, p, factors, fields, root_lists = choice
    bound = _coordinate_bound(F, G)
    s = _lattice_data(F)[0]
    K = 1
    while p**K <= 2 * bound:
        K += 1
    m = p**K
    steps = max(1, K.bit_length() + 1)
    f = list(F._f)
    lifted = hensel_lift(f, [list(h) for h in factors], p, K) if len(factors) > 1 else [mod_reduce(f, m)]
    idempotents = []
    if len(lifted) > 1:
        for H, Fq in zip(lifted, fields):
            cof = [1]
            for H2 in lifted:
                if H2 is not H:
                    cof = mod_mul(cof, H2, m)
            inv = _ring_inverse(mod_rem(cof, H, m), H, m, Fq, steps)
            idempotents.append(mod_rem(mod_mul(cof, inv, m), f, m))
    per_field = []
    for H, Fq, roots in zip(lifted, fields, root_lists):
        per_field.append([_lift_root(G, Fq.to_vec(r), H, m, Fq, steps) for r in roots])
    d = F.degree
    found = []
    for combo in itertools.product(*per_field):
        if len(combo) == 1:
            beta = combo[0]
        else:
            beta = []
            for e, b in zip(idempotents, combo):
                beta = mod_add(beta, mod_mul(e, b, m), m)
            beta = mod_rem(beta, f, m)
        vec = [(s * x) % m for x in beta] + [0] * (d - len(beta))
        vec = [x - m if x > m // 2 else x for x in vec]
        if max(abs(x) for x in vec) > bound:
            continue
        cand = NfElement(F, vec, s)
        if dense.evaluate([NfElement(F, v + [0] * (d - len(v)), 1) for v in G], cand).is_zero():
            found.append(cand / c)
    found.sort(key=lambda a: (a.num, a.den))
    return found


# ---------------------------------------------------------------------------
# Fast products of polynomials over F


def nf_poly_mul(a: Sequence[NfElement], b: Sequence[NfElement]) -> list[NfElement]:
    """Product of polynomials over F via one Kronecker-packed integer product."""
    if not a or not b:
        return []
    F = a[0].field
    d = F.degree
    if d == 1 or min(len(a), len(b)) < 4:
        return dense.mul(list(a), list(b))
    width = 2 * d - 1
    da = 1
    for c in a:
        da = _lcm(da, c.den)
    db = 1
    for c in b:
        db = _lcm(db, c.den)
    flat_a = [0] * (len(a) * width)
    for i, c in enumerate(a):
        k = da // c.den
        for j, x in enumerate(c.num):
            flat_a[i * width + j] = x * k
    flat_b = [0] * (len(b) * width)
    for i, c in enumerate(b):
        k = db // c.den
        for j, x in enumerate(c.num):
            flat_b[i * width + j] = x * k
    prod = zx_mul(flat_a, flat_b)
    prod += [0] * ((len(a) + len(b) - 1) * width - len(prod))
    den = da * db
    out = []
    for i in range(len(a) + len(b) - 1):
        vec = prod[i * width:(i + 1) * width]
        out.append(NfElement(F, _reduce(vec, F._f), den))
    return dense.trim(out)


def rationals() -> NumberField:
    """Q presented as the degree-one field Q[x]/(x)."""
    return _RATIONALS


_RATIONALS = NumberField(UniPoly([0, 1]), check=False)
