"""Degree constraints on CM torsion: real cyclotomy and SPY divisors, and the
classification of torsion groups in odd, prime and prime-squared degree."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith.ntheory import euler_phi, factorint, is_prime, kronecker, primes_up_to
from .errors import DomainError
from .quadorder import Discriminant, class_number, decompose

# ---------------------------------------------------------------------------
# Torsion classes


@dataclass(frozen=True)
class TorsionClass:
    """Z/N (m = 1) or Z/m x Z/N, with the CM discriminants it is tied to.

    ``cm`` is a tuple of explicit discriminants or a symbolic family string.
    """

    m: int
    N: int
    cm: tuple = field(default=(), compare=False)

    @property
    def shape(self) -> str:
        return "cyclic" if self.m == 1 else "product"

    @property
    def order(self) -> int:
        return self.m * self.N

    def label(self) -> str:
        if self.N == 1:
            return "0"
        if self.m == 1:
            return f"Z/{self.N}"
        return f"Z/{self.m} x Z/{self.N}"

    def is_olson(self) -> bool:
        return (self.m, self.N) in OLSON_SHAPES

    def to_json(self) -> dict:
        return {"group": self.label(), "m": self.m, "N": self.N, "cm": list(self.cm)}

    def __str__(self) -> str:
        return self.label()


OLSON_SHAPES = {(1, 1), (1, 2), (1, 3), (1, 4), (1, 6), (2, 2)}
_OLSON_CM = {(1, 4): (-4, -16), (2, 2): (-4,)}


def olson_groups() -> list[TorsionClass]:
    return [TorsionClass(m, n, _OLSON_CM.get((m, n), ("any",))) for m, n in sorted(OLSON_SHAPES, key=lambda s: (s[0] * s[1], s))]


@dataclass
class DegreeReport:
    degree: int
    proven: list[TorsionClass]
    candidates: list[TorsionClass]
    notes: list[str] = field(default_factory=list)

    def non_olson(self) -> list[TorsionClass]:
        return [t for t in self.proven if not t.is_olson()]

    def new_groups(self) -> list[TorsionClass]:
        """Proven groups that do not already occur in a proper divisor degree."""
        older = set()
        for d in range(1, self.degree):
            if self.degree % d == 0:
                older |= {(t.m, t.N) for t in odd_degree_candidates(d).proven}
        return [t for t in self.proven if (t.m, t.N) not in older]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "proven": [t.to_json() for t in self.proven],
            "candidates": [t.to_json() for t in self.candidates],
            "non_olson": [t.label() for t in self.non_olson()],
            "new": [t.label() for t in self.new_groups()],
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# Divisibility obligations


def _disc(d) -> Discriminant:
    return d if isinstance(d, Discriminant) else decompose(d)


def real_cyclotomy_divisor(d, N: int) -> int:
    """(phi(N)/2) * h(delta) / 2^nu: must divide [F:Q] when an O(delta)-CM curve
    over a real field F has an F-rational point of order N >= 3.

    >>> real_cyclotomy_divisor(-11, 11), real_cyclotomy_divisor(-7, 7)
    (5, 3)
    """
    disc = _disc(d)
    if N < 3:
        raise DomainError("real cyclotomy needs N >= 3")
    h = class_number(disc.delta)
    return (euler_phi(N) // 2) * (h >> disc.nu)


def spy_divisor(d, ell: int) -> int:
    """Divisor of [FK:Q] forced by an F-rational point of odd prime order ell."""
    disc = _disc(d)
    if ell == 2 or not is_prime(ell):
        raise DomainError("ell must be an odd prime")
    hK = class_number(disc.fundamental)
    w = disc.unit_count
    chi = kronecker(disc.delta, ell)
    if chi == -1:
        value = Fraction(2 * (ell * ell - 1), w) * hK
    elif chi == 1:
        value = Fraction(2 * (ell - 1), w) * hK
    elif disc.fundamental % ell == 0:
        value = Fraction(ell - 1) * hK
    elif kronecker(disc.fundamental, ell) == 1:
        value = Fraction(2 * (ell - 1) ** 2, w) * hK
    else:
        value = Fraction(2 * (ell * ell - 1), w) * hK
    if value.denominator != 1:
        raise ArithmeticError("SPY divisor is not integral")
    return int(value)


SQRT_SPY_HYPOTHESES = ("coprime", "full-torsion")


def sqrt_spy_bound(degree: int, d) -> int:
    """Largest phi(N) allowed: floor(sqrt(degree * w(K) / h(K)))."""
    disc = _disc(d)
    if degree < 1:
        raise DomainError("degree must be positive")
    return math.isqrt(degree * disc.unit_count // class_number(disc.fundamental))


def sqrt_spy_check(degree: int, d, N: int, hypothesis: str = "coprime") -> bool:
    """phi(N)^2 <= degree * w(K) / h(K).

    The bound needs gcd(delta, N) = 1 (hypothesis "coprime") or full
    N-torsion over FK certified by the caller (hypothesis "full-torsion").
    """
    disc = _disc(d)
    if N < 3:
        raise DomainError("N must be at least 3")
    if hypothesis not in SQRT_SPY_HYPOTHESES:
        raise DomainError(f"hypothesis must be one of {SQRT_SPY_HYPOTHESES}")
    if hypothesis == "coprime" and math.gcd(disc.delta, N) != 1:
        raise DomainError("gcd(delta, N) != 1: certify full torsion instead")
    hK = class_number(disc.fundamental)
    return euler_phi(N) ** 2 * hK <= degree * disc.unit_count


# ---------------------------------------------------------------------------
# Odd degree


def _family(ell: int, degree: int) -> list[int]:
    """Discriminants -2^e ell^(2a+1), e in {0, 2}, with ell^(a-1) <= degree."""
    out = []
    a = 0
    while ell ** max(a - 1, 0) <= degree:
        core = ell ** (2 * a + 1)
        out.extend([-core, -4 * core])
        a += 1
    return out


def _minimal_degree(ell: int, n: int, two: bool, delta: int) -> int | None:
    """Minimal odd degree of Z/ell^n (two=False) or Z/2 ell^n (two=True) torsion
    on an O(delta)-CM curve; None when that combination never occurs in odd degree."""
    h = class_number(delta)
    if n > 1 and delta % 4 == 0:
        return None
    if not two and (ell % 8 != 3 or delta % 8 != 5):
        return None
    base = ell ** (n - 1) * (ell - 1) * h // 2
    if two and delta % 8 == 5:
        base *= 3
    return base


def _odd_ells(degree: int) -> list[int]:
    return [ell for ell in primes_up_to(2 * degree + 1) if ell % 4 == 3 and degree % ((ell - 1) // 2) == 0]


def odd_degree_candidates(degree: int) -> DegreeReport:
    """Torsion groups of CM elliptic curves over fields of odd degree.

    ``proven`` holds the Olson groups and every Z/ell^n, Z/2ell^n whose
    minimal odd degree divides ``degree`` for some admissible discriminant;
    ``candidates`` adds groups that only pass the real cyclotomy filter.
    """
    if degree < 1 or degree % 2 == 0:
        raise DomainError("degree must be a positive odd integer")
    proven = olson_groups()
    cands: list[TorsionClass] = []
    for ell in _odd_ells(degree):
        deltas = _family(ell, degree)
        n = 1
        while euler_phi(ell**n) // 2 <= degree:
            for two in (False, True):
                N = (2 if two else 1) * ell**n
                if (1, N) in OLSON_SHAPES:
                    continue
                ok = []
                loose = []
                for delta in deltas:
                    md = _minimal_degree(ell, n, two, delta)
                    if md is not None and degree % md == 0:
                        ok.append(delta)
                    rc = (euler_phi(ell**n) // 2) * class_number(delta)
                    if degree % rc == 0 and (two or ell % 8 == 3):
                        loose.append(delta)
                if ok:
                    proven.append(TorsionClass(1, N, tuple(ok)))
                elif loose:
                    cands.append(TorsionClass(1, N, tuple(loose)))
            n += 1
    proven.sort(key=lambda t: (t.m * t.N, t.m))
    candidates = sorted(proven + cands, key=lambda t: (t.m * t.N, t.m))
    notes = []
    if cands:
        notes.append("candidates beyond proven: " + ", ".join(t.label() for t in cands))
    return DegreeReport(degree, proven, candidates, notes)


# ---------------------------------------------------------------------------
# Prime degree: the explicit field / curve list


@dataclass(frozen=True)
class Table1Row:
    """A field Q[b]/(f), a curve on it and its torsion subgroup.

    ``model`` is "kubert" (params = (b, c)) or "hesse" (params = (lambda,)),
    each parameter a power-basis coefficient vector (strings of rationals).
    """

    index: int
    field: tuple[int, ...]
    model: str
    params: tuple[tuple[str, ...], ...]
    delta: int
    m: int
    n: int
    label: str

    @property
    def degree(self) -> int:
        return len(self.field) - 1

    @property
    def torsion(self) -> TorsionClass:
        return TorsionClass(self.m, self.n, (self.delta,))

    def to_json(self) -> dict:
        return {
            "row": self.index,
            "field": _poly_text(self.field),
            "curve": self.label,
            "delta": self.delta,
            "torsion": self.torsion.label(),
        }


def _poly_text(f) -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mono = "" if i == 0 else "b" if i == 1 else f"b^{i}"
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else "+"
            terms.append(f"{coef} {mono}")
        else:
            terms.append(f"{'-' if c < 0 else '+'} {abs(c)}{'*' + mono if mono else ''}")
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


_QI = (1, 0, 1)
_Q2 = (-2, 0, 1)
_Q3 = (-3, 0, 1)
_QM3 = (3, 0, 1)
_QM7 = (7, 0, 1)

TABLE1: tuple[Table1Row, ...] = (
    Table1Row(1, _QM3, "hesse", (("0",),), -3, 3, 3, "E_0 (Hesse, lambda = 0)"),
    Table1Row(2, _QI, "kubert", (("-1/8",), ("0",)), -4, 2, 4, "E(-1/8, 0)"),
    Table1Row(3, _Q2, "kubert", (("1", "3/4"), ("0",)), -4, 2, 4, "E(1 + (3/4)sqrt2, 0)"),
    Table1Row(4, _Q2, "kubert", (("-1/32",), ("0",)), -16, 2, 4, "E(-1/32, 0)"),
    Table1Row(5, _Q2, "kubert", (("1/8", "1/8"), ("0",)), -8, 2, 4, "E((1 + sqrt2)/8, 0)"),
    Table1Row(6, _QM7, "kubert", (("-31/512", "3/512"), ("0",)), -7, 2, 4, "E((-31 + 3sqrt-7)/512, 0)"),
    Table1Row(7, _QM7, "kubert", (("-1/32", "3/32"), ("0",)), -7, 2, 4, "E((-1 + 3sqrt-7)/32, 0)"),
    Table1Row(8, _QM3, "kubert", (("-2/9",), ("-1/3",)), -3, 2, 6, "E(-2/9, -1/3)"),
    Table1Row(9, _Q3, "kubert", (("1/9", "-1/9"), ("-2/3", "1/3")), -12, 2, 6, "E((1 - sqrt3)/9, (-2 + sqrt3)/3)"),
    Table1Row(10, _Q3, "kubert", (("4/9",), ("1/3",)), -12, 2, 6, "E(4/9, 1/3)"),
    Table1Row(11, _QM3, "kubert", (("-1/2", "1/2"), ("-1",)), -3, 1, 7, "E((-1 + sqrt-3)/2, -1)"),
    Table1Row(12, _QI, "kubert", (("0", "1"), ("0", "1")), -4, 1, 10, "E(i, i)"),
    Table1Row(13, (-1, -9, -15, 1), "kubert", (("1/4", "5/2", "1/4"), ("0", "1")), -3, 1, 9, "E(b^2/4 + 5b/2 + 1/4, b)"),
    Table1Row(14, (-1, -33, 105, 1), "kubert", (("1/76", "25/19", "-17/76"), ("0", "1")), -27, 1, 9, "E(-17b^2/76 + 25b/19 + 1/76, b)"),
    Table1Row(15, (1, 3, -4, 1), "kubert", (("1", "4", "-2"), ("0", "1")), -7, 1, 14, "E(-2b^2 + 4b + 1, b)"),
    Table1Row(16, (1, 3, -186, 1), "kubert", (("-1/27", "10/27", "2/27"), ("0", "1")), -28, 1, 14, "E(2b^2/27 + 10b/27 - 1/27, b)"),
    Table1Row(
        17,
        (-1, -7, 42, 6, -9, 1),
        "kubert",
        (("-1/16", "1/4", "5/8", "1/4", "-1/16"), ("0", "1")),
        -11,
        1,
        11,
        "E(-b^4/16 + b^3/4 + 5b^2/8 + b/4 - 1/16, b)",
    ),
)


def prime_degree_table(p: int) -> list[Table1Row]:
    """Fields of prime degree p carrying a CM curve with non-Olson torsion."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return [row for row in TABLE1 if row.degree == p and not row.torsion.is_olson()]


# ---------------------------------------------------------------------------
# Prime squared degree

_DEGREE_FOUR = (
    [TorsionClass(1, m, ("see degree-4 list",)) for m in (5, 7, 8, 10, 12, 13, 21)]
    + [TorsionClass(2, m, ("see degree-4 list",)) for m in (4, 6, 8, 10)]
    + [TorsionClass(3, 3, ("see degree-4 list",)), TorsionClass(3, 6, ("see degree-4 list",))]
    + [TorsionClass(4, 4, ("see degree-4 list",))]
)


def class_number_bound_limit() -> int:
    """Largest ell with (ell - 1)/2 <= sqrt(ell) log(ell)."""
    ell = 3
    while (ell - 1) / 2 <= math.sqrt(ell) * math.log(ell):
        ell += 1
    return ell - 1


def shifted_prime_solutions(p: int) -> list[int]:
    """Primes ell = 2p + 1 within the class-number bound with h(-ell) = p."""
    limit = class_number_bound_limit()
    ell = 2 * p + 1
    if ell > limit or not is_prime(ell) or ell % 4 != 3:
        return []
    return [ell] if class_number(-ell) == p else []


def prime_squared_groups(p: int) -> list[TorsionClass]:
    """Non-Olson torsion groups of CM curves over fields of degree p^2."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p == 2:
        return list(_DEGREE_FOUR)
    groups = odd_degree_candidates(p * p).non_olson()
    if p >= 7:
        if shifted_prime_solutions(p):
            raise ArithmeticError("shifted prime with matching class number inside the bound")
        if groups:
            raise ArithmeticError(f"degree {p * p} admits non-Olson torsion")
    return groups


def new_group_counts(degrees) -> dict[int, int]:
    """Number of proven groups new in each odd degree (absent from every
    proper divisor degree; degree 1 counts the Olson groups)."""
    return {d: len(odd_degree_candidates(d).new_groups()) for d in degrees}


def odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n)) if n > 1 else []
