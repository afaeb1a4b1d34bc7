"""Arbitrary-precision floats.

BigFloat values are mpmath ``mpf`` numbers created from a per-precision
context, so each value records its precision (``x.context.prec``) and
contexts at different precisions never share mutable state.
"""

from functools import lru_cache

import mpmath
from mpmath import libmp

from .rat import Rat

DEFAULT_PREC = 256


@lru_cache(maxsize=None)
def context(prec=DEFAULT_PREC):
    if prec < 2:
        raise ValueError("precision must be at least 2 bits")
    ctx = mpmath.MPContext()
    ctx.prec = int(prec)
    return ctx


def to_bigfloat(x, ctx=None):
    """Correctly rounded conversion of an exact or float scalar into ``ctx``."""
    ctx = ctx or context()
    if isinstance(x, Rat):
        v = libmp.from_rational(int(x.numerator), int(x.denominator), ctx.prec, libmp.round_nearest)
        return ctx.make_mpf(v)
    if isinstance(x, int):
        return ctx.mpf(x)
    if hasattr(x, "to_bigfloat"):
        return x.to_bigfloat(ctx)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        v = libmp.from_rational(int(x.numerator), int(x.denominator), ctx.prec, libmp.round_nearest)
        return ctx.make_mpf(v)
    if isinstance(x, (mpmath.mpf, float)) or hasattr(x, "_mpf_"):
        return ctx.mpf(x)
    raise TypeError(f"cannot convert {type(x).__name__} to BigFloat")


def precision_of(x):
    ctx = getattr(x, "context", None)
    return getattr(ctx, "prec", None)


def decimal_str(x, digits=None):
    """Decimal string with enough digits to round-trip at the value's precision."""
    ctx = getattr(x, "context", None) or context()
    if digits is None:
        digits = max(17, int(ctx.prec * 0.30103) + 2)
    return ctx.nstr(x, digits, min_fixed=-5, max_fixed=25)
