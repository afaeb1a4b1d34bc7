"""Exact rationals.

``Rat`` is :class:`gmpy2.mpq`: always in lowest terms with a positive
denominator, and exact under every arithmetic operation.
"""

from fractions import Fraction
from numbers import Integral

import gmpy2

Rat = type(gmpy2.mpq())


def rat(x, den=None):
    """Coerce ``x`` (int, str ``"p/q"``, Fraction, Rat, exact float) to Rat."""
    if den is not None:
        return gmpy2.mpq(rat(x)) / rat(den)
    if isinstance(x, Rat):
        return x
    if isinstance(x, Integral):
        return gmpy2.mpq(x)
    if isinstance(x, Fraction):
        return gmpy2.mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        text = x.strip().replace(" ", "")
        if not text:
            raise ValueError("empty rational literal")
        if "." in text or "e" in text.lower():
            return gmpy2.mpq(Fraction(text))
        return gmpy2.mpq(text)
    if isinstance(x, float):
        return gmpy2.mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def is_rat(x):
    return isinstance(x, (Rat, Integral))


def rat_str(q):
    """Serialize as ``"p/q"`` (or ``"p"`` for integers)."""
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def cbrt_exact(q):
    """Exact rational cube root of ``q``, or None if ``q`` is not a cube."""
    q = rat(q)
    sign = -1 if q < 0 else 1
    n, d = abs(q.numerator), q.denominator
    rn, ok_n = gmpy2.iroot(gmpy2.mpz(n), 3)
    rd, ok_d = gmpy2.iroot(gmpy2.mpz(d), 3)
    if ok_n and ok_d:
        return gmpy2.mpq(sign * int(rn), int(rd))
    return None


def isqrt_exact(q):
    """Exact rational square root of ``q >= 0``, or None."""
    q = rat(q)
    if q < 0:
        return None
    rn, ok_n = gmpy2.iroot(gmpy2.mpz(q.numerator), 2)
    rd, ok_d = gmpy2.iroot(gmpy2.mpz(q.denominator), 2)
    if ok_n and ok_d:
        return gmpy2.mpq(int(rn), int(rd))
    return None


def squarefree_split(n):
    """Write a positive integer as ``k**2 * m`` with ``m`` squarefree; return (k, m).

    Trial division only, which is fine for the radicands used here.
    """
    n = int(n)
    if n <= 0:
        raise ValueError("expected a positive integer")
    k, m = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1 if p == 2 else 2
    return k, m * n
