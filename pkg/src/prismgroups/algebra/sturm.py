"""Sturm sequences, real-root counting, isolation and refinement.

Univariate polynomials are handled as dense lists of rationals, lowest
degree first.  Functions also accept a univariate MPoly.
"""

from dataclasses import dataclass, field

from .bigfloat import context, to_bigfloat
from .mpoly import MPoly
from .rat import Rat, rat


class RootRefinementError(ArithmeticError):
    def __init__(self, message, enclosure):
        super().__init__(message)
        self.enclosure = enclosure


# -- dense helpers -------------------------------------------------------------

def dense(p):
    if isinstance(p, MPoly):
        c = p.to_univariate()
    else:
        c = [rat(x) for x in p]
    while c and not c[-1]:
        c.pop()
    return c


def horner(c, x):
    acc = x * 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def derivative(c):
    return [c[i] * i for i in range(1, len(c))]


def poly_rem(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] -= q * b[i]
        a.pop()
        while a and not a[-1]:
            a.pop()
    return a


def poly_gcd(a, b):
    while b:
        a, b = b, poly_rem(a, b)
    return [x / a[-1] for x in a] if a else a


def taylor_shift(c, a):
    """Coefficients of p(x + a)."""
    c = list(c)
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def _sign(x):
    return (x > 0) - (x < 0)


# -- Sturm chains ---------------------------------------------------------------

class SturmChain:
    """The chain p, p', -rem(p, p'), ... of a nonzero univariate polynomial."""

    def __init__(self, p):
        c = dense(p)
        if not c:
            raise ValueError("Sturm chain of the zero polynomial")
        self.p = c
        chain = [c]
        d = derivative(c)
        if d:
            chain.append(d)
            while True:
                r = poly_rem(chain[-2], chain[-1])
                if not r:
                    break
                chain.append([-x for x in r])
        self.chain = chain

    def variations(self, x):
        signs = [_sign(horner(q, x)) for q in self.chain]
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, lo, hi):
        """Distinct roots in (lo, hi]."""
        return self.variations(lo) - self.variations(hi)


@dataclass(frozen=True)
class RootCount:
    count: int
    lo: Rat
    hi: Rat
    shifts: tuple = field(default_factory=tuple)


def _root_free_gap(c, x0):
    """Return k such that p has no root in 0 < |x - x0| <= 2**-k."""
    q = taylor_shift(c, x0)
    while q and not q[0]:
        q.pop(0)
    q0 = abs(q[0])
    rest = max((abs(x) for x in q[1:]), default=rat(0))
    if not rest:
        return 0
    rho = q0 / (q0 + rest)
    k = 0
    while rat(1, 2 ** k) >= rho:
        k += 1
    return k


def count_roots(p, lo, hi, chain=None):
    """Count distinct real roots in the open interval (lo, hi).

    A root sitting on an endpoint is excluded by moving that endpoint
    inward by 2**-k, where k is chosen so that a Cauchy-type lower bound
    certifies that the gap contains no other root.
    """
    lo, hi = rat(lo), rat(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    chain = chain or SturmChain(p)
    c = chain.p
    shifts = []
    if not horner(c, lo):
        k = _root_free_gap(c, lo)
        while rat(1, 2 ** k) >= (hi - lo) / 2:
            k += 1
        lo = lo + rat(1, 2 ** k)
        shifts.append(("lo", k))
    if not horner(c, hi):
        k = _root_free_gap(c, hi)
        while rat(1, 2 ** k) >= (hi - lo) / 2:
            k += 1
        hi = hi - rat(1, 2 ** k)
        shifts.append(("hi", k))
    n = chain.count(lo, hi)
    return RootCount(n, lo, hi, tuple(shifts))


def sturm_count(p, lo, hi):
    return count_roots(p, lo, hi).count


def cauchy_bound(c):
    lead = abs(c[-1])
    return 1 + max((abs(x) / lead for x in c[:-1]), default=rat(0))


def isolate_positive_roots(p):
    """Disjoint rational intervals, each holding exactly one positive root.

    Intervals are open unless degenerate (lo == hi), which marks an exact
    rational root found on a bisection point.
    """
    chain = SturmChain(p)
    c = chain.p
    if len(c) < 2:
        return []
    out = []
    stack = [(rat(0), rat(cauchy_bound(c)))]
    while stack:
        a, b = stack.pop()
        n = count_roots(None, a, b, chain=chain).count
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if not horner(c, m):
            out.append((m, m))
        stack.append((m, b))
        stack.append((a, m))
    out.sort()
    return out


# -- refinement -----------------------------------------------------------------

@dataclass(frozen=True)
class RefinedRoot:
    value: object
    residual: object
    enclosure: tuple
    prec: int


def _mpf_to_rat(x):
    man, exp = x.man_exp
    man, exp = int(man), int(exp)
    if exp >= 0:
        return rat(man * 2 ** exp)
    return rat(man, 2 ** (-exp))


def refine_root(p, interval, prec=256):
    """Refine an isolated simple root to ``prec`` bits with a certified enclosure."""
    c = dense(p)
    lo, hi = rat(interval[0]), rat(interval[1])
    ctx = context(prec)
    if lo == hi:
        if horner(c, lo):
            raise RootRefinementError("degenerate interval is not a root", (lo, hi))
        x = to_bigfloat(lo, ctx)
        return RefinedRoot(x, ctx.mpf(0), (lo, hi), prec)
    flo, fhi = horner(c, lo), horner(c, hi)
    for e, v in ((lo, flo), (hi, fhi)):
        if not v:
            return RefinedRoot(to_bigfloat(e, ctx), ctx.mpf(0), (e, e), prec)
    if _sign(flo) == _sign(fhi):
        raise RootRefinementError("no sign change on the interval", (lo, hi))
    slo = _sign(flo)
    # rational bisection to a modest width, then Newton
    target = rat(1, 2 ** 24)
    while hi - lo > target * max(1, abs(lo)):
        m = (lo + hi) / 2
        v = horner(c, m)
        if not v:
            return RefinedRoot(to_bigfloat(m, ctx), ctx.mpf(0), (m, m), prec)
        if _sign(v) == slo:
            lo = m
        else:
            hi = m
    wctx = context(prec + 32)
    dc = derivative(c)
    wc = [to_bigfloat(a, wctx) for a in c]
    wd = [to_bigfloat(a, wctx) for a in dc]
    x = to_bigfloat((lo + hi) / 2, wctx)
    wlo, whi = to_bigfloat(lo, wctx), to_bigfloat(hi, wctx)
    ok = False
    for _ in range(4 * prec.bit_length() + 20):
        fx = horner(wc, x)
        dx = horner(wd, x)
        if not dx:
            break
        nx = x - fx / dx
        if nx < wlo or nx > whi:
            break
        if abs(nx - x) <= abs(nx) * wctx.ldexp(1, -(prec + 8)) or nx == x:
            x = nx
            ok = True
            break
        x = nx
    if ok:
        xr = _mpf_to_rat(ctx.mpf(x))
        delta = rat(1, 2 ** (prec - 4)) * max(rat(1), abs(xr))
        a, b = max(lo, xr - delta), min(hi, xr + delta)
        fa, fb = horner(c, a), horner(c, b)
        if _sign(fa) != _sign(fb) or not fa or not fb:
            lo, hi = a, b
        else:
            ok = False
    if not ok:
        width = rat(1, 2 ** (prec - 2)) * max(1, abs(lo))
        while hi - lo > width:
            m = (lo + hi) / 2
            v = horner(c, m)
            if not v:
                lo = hi = m
                break
            if _sign(v) == slo:
                lo = m
            else:
                hi = m
    if ok:
        val = ctx.mpf(x)
    else:
        val = to_bigfloat((lo + hi) / 2, ctx)
    xv = _mpf_to_rat(val)
    if not lo <= xv <= hi:
        raise RootRefinementError("refined value left its enclosure", (lo, hi))
    res = abs(horner([to_bigfloat(a, wctx) for a in c], to_bigfloat(xv, wctx)))
    return RefinedRoot(val, ctx.mpf(res), (lo, hi), prec)
