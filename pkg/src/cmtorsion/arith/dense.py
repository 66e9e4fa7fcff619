"""Dense univariate polynomial kernels over an arbitrary exact field.

Polynomials are Python lists of field elements in ascending order with no
trailing zeros (the zero polynomial is ``[]``).  Elements only need ``+ - * /``
and comparison with 0, so the same code runs over ``Fraction`` and over
number field elements.
"""

from __future__ import annotations

from typing import Any, Sequence

Coeffs = list


def trim(a: Sequence) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: Sequence) -> int:
    return len(a) - 1


def add(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return trim(out)


def neg(a: Sequence) -> list:
    return [-c for c in a]


def sub(a: Sequence, b: Sequence) -> list:
    return add(a, neg(b))


def scale(a: Sequence, c: Any) -> list:
    if c == 0:
        return []
    return [x * c for x in a]


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    zero = a[0] - a[0]
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def divmod_(a: Sequence, b: Sequence) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    inv = 1 / b[-1]
    zero = b[-1] - b[-1]
    q = [zero] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv
        q[k] = c
        if c != 0:
            for j in range(db):
                a[k + j] = a[k + j] - c * b[j]
        a[k + db] = zero
    return trim(q), trim(a[:db])


def rem(a: Sequence, b: Sequence) -> list:
    return divmod_(a, b)[1]


def exact_div(a: Sequence, b: Sequence) -> list:
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(a: Sequence) -> list:
    if not a:
        return []
    inv = 1 / a[-1]
    return [c * inv for c in a]


def gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd (``[]`` if both are zero)."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def ext_gcd(a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = trim(a), trim(b)
    one = (r0 or r1)[-1]
    one = one / one
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    lc = r0[-1]
    inv = 1 / lc
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def deriv(a: Sequence) -> list:
    return trim([a[i] * i for i in range(1, len(a))])


def evaluate(a: Sequence, x: Any) -> Any:
    acc = None
    for c in reversed(a):
        acc = c if acc is None else acc * x + c
    if acc is None:
        return x - x
    return acc


def compose(a: Sequence, b: Sequence) -> list:
    """a(b(x))."""
    out: list = []
    for c in reversed(a):
        out = add(mul(out, b), [c])
    return out


def powmod(a: Sequence, e: int, m: Sequence) -> list:
    result = rem([m[-1] / m[-1]], m)
    base = rem(a, m)
    while e:
        if e & 1:
            result = rem(mul(result, base), m)
        e >>= 1
        if e:
            base = rem(mul(base, base), m)
    return result


def resultant(a: Sequence, b: Sequence) -> Any:
    """Resultant of two nonzero polynomials by the Euclidean recursion."""
    a, b = trim(a), trim(b)
    if not a or not b:
        raise ValueError("resultant of a zero polynomial")
    sign = 1
    acc = None
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            val = b[0] ** da if da else b[0] / b[0]
            break
        if da == 0:
            val = a[0] ** db
            break
        r = rem(a, b)
        if not r:
            return a[0] - a[0]
        if (da * db) % 2:
            sign = -sign
        factor = b[-1] ** (da - (len(r) - 1))
        acc = factor if acc is None else acc * factor
        a, b = b, r
    out = val if acc is None else acc * val
    return out if sign == 1 else -out


def squarefree_part(a: Sequence) -> list:
    """a / gcd(a, a') made monic (characteristic zero)."""
    g = gcd(a, deriv(a))
    return monic(exact_div(a, g)) if len(g) > 1 else monic(a)


def squarefree_decomposition(a: Sequence) -> list[tuple[list, int]]:
    """Yun's algorithm in characteristic zero: a = lc * prod f_i^i."""
    a = monic(a)
    out = []
    if len(a) <= 1:
        return out
    da = deriv(a)
    c = gcd(a, da)
    w = exact_div(a, c)
    y = exact_div(da, c)
    z = sub(y, deriv(w))
    i = 1
    while len(w) > 1:
        g = gcd(w, z)
        w = exact_div(w, g)
        y = exact_div(z, g)
        z = sub(y, deriv(w))
        if len(g) > 1:
            out.append((g, i))
        i += 1
    return out


def interpolate(xs: Sequence, ys: Sequence) -> list:
    """Newton interpolation through the points (xs[i], ys[i])."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: list = []
    for i in range(n - 1, -1, -1):
        out = add(mul(out, [-xs[i], xs[i] - xs[i] + 1]), [coef[i]])
    return out
