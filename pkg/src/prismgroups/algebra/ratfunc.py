"""Rational functions ``num/den``.

The denominator is always a rational polynomial.  The numerator is either
a rational polynomial or an element of Q(sqrt m)[vars], stored as a
QuadExt whose coordinates are MPolys.  Division by an irrational
numerator multiplies through by the conjugate, so denominators never
pick up radicals.
"""

from .mpoly import MPoly
from .quadext import QuadExt
from .rat import Rat, rat


def _num_gcd_parts(num):
    if isinstance(num, QuadExt):
        return [num.a, num.b]
    return [num]


def _simplify_num(num):
    if isinstance(num, QuadExt) and not num.b:
        return num.a
    return num


def _lift_num(x, vars):
    if isinstance(x, MPoly):
        return x if x.vars == vars else x.with_vars(vars)
    if isinstance(x, QuadExt):
        a, b = x.a, x.b
        if not isinstance(a, MPoly):
            a = MPoly.const(a, vars)
        if not isinstance(b, MPoly):
            b = MPoly.const(b, vars)
        return _simplify_num(QuadExt(x.m, a, b))
    return MPoly.const(rat(x), vars)


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            vars = num.a.vars if isinstance(num, QuadExt) else num.vars
            den = MPoly.const(1, vars)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        num = _simplify_num(num)
        if reduce:
            num, den = self._reduce(num, den)
        else:
            lc = den.leading_coefficient()
            if lc != 1:
                num, den = num * (1 / lc), den / lc
        self.num = num
        self.den = den

    @staticmethod
    def _reduce(num, den):
        parts = _num_gcd_parts(num)
        if all(not p for p in parts):
            return parts[0] * 0, MPoly.const(1, den.vars)
        if not den.is_constant():
            g = den
            for p in parts:
                if g.is_constant():
                    break
                g = g.gcd(p)
            if not g.is_constant():
                den = den.exact_div(g)
                if isinstance(num, QuadExt):
                    num = QuadExt(num.m, num.a.exact_div(g), num.b.exact_div(g))
                else:
                    num = num.exact_div(g)
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num * (1 / lc), den / lc
        return num, den

    @classmethod
    def from_scalar(cls, x, vars):
        return cls(_lift_num(x, tuple(vars)), MPoly.const(1, vars), reduce=False)

    @property
    def vars(self):
        return self.den.vars

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (MPoly, QuadExt, int, Rat)):
            return RatFunc(_lift_num(other, self.vars), MPoly.const(1, self.vars), reduce=False)
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if o.den.is_constant():
            return RatFunc(self.num + o.num * self.den, self.den, reduce=False)
        if self.den.is_constant():
            return RatFunc(self.num * o.den + o.num, o.den, reduce=False)
        g = self.den.gcd(o.den)
        da = self.den.exact_div(g)
        db = o.den.exact_div(g)
        return RatFunc(self.num * db + o.num * da, da * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rat)):
            return RatFunc(self.num * rat(other), self.den, reduce=False)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den.is_constant() and o.den.is_constant():
            return RatFunc(self.num * o.num, self.den * o.den, reduce=False)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero rational function")
        if isinstance(self.num, QuadExt):
            c = self.num.conjugate()
            return RatFunc(c * self.den, self.num.norm())
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Rat)):
            return RatFunc(self.num * (1 / rat(other)), self.den, reduce=False)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        num = self.num ** n if n else self.num * 0 + 1
        return RatFunc(num, self.den ** n, reduce=False)

    # -- predicates ---------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        # equal values can have different representations before reduction
        return hash(self.vars)

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.den.is_constant():
            raise ValueError("rational function is not a polynomial")
        return self.num * (1 / self.den.constant_value())

    def is_rational(self):
        return not isinstance(self.num, QuadExt)

    # -- calculus and evaluation --------------------------------------------
    def diff(self, var):
        n, d = self.num, self.den
        dn = QuadExt(n.m, n.a.diff(var), n.b.diff(var)) if isinstance(n, QuadExt) else n.diff(var)
        return RatFunc(dn * d - n * d.diff(var), d * d)

    def evaluate(self, point):
        n = self.num
        if isinstance(n, QuadExt):
            a, b = n.a.evaluate(point), n.b.evaluate(point)
            if isinstance(a, Rat) and isinstance(b, Rat):
                nv = _simplify_num(QuadExt(n.m, a, b))
            else:
                ctx = getattr(a, "context", None) or getattr(b, "context", None)
                nv = a + b * (ctx.sqrt(n.m) if ctx is not None else QuadExt(n.m, 0, 1))
        else:
            nv = n.evaluate(point)
        dv = self.den.evaluate(point)
        if not dv:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return nv / dv

    __call__ = evaluate

    def subs(self, mapping):
        """Substitute rationals or rational-coefficient polynomials for variables."""
        n = self.num
        if isinstance(n, QuadExt):
            nn = QuadExt(n.m, n.a.subs(mapping), n.b.subs(mapping))
        else:
            nn = n.subs(mapping)
        dd = self.den.subs(mapping)
        return RatFunc(nn, dd)

    def __repr__(self):
        return f"RatFunc(({self.num}) / ({self.den}))"

