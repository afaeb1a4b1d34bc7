"""Quadratic extensions ``a + b*sqrt(m)``.

The coordinates ``a`` and ``b`` may live in any commutative ring that the
rest of the package uses as a base: rationals for numbers such as the
entries of the order-3 rotation, or polynomials when a symbolic matrix
carries ``sqrt(3)`` entries.  Division by a QuadExt needs a base ring with
division; over polynomial bases that job belongs to :class:`RatFunc`.
"""

from .rat import rat, squarefree_split


class FieldMismatchError(ValueError):
    pass


def _is_zero(x):
    return not x


class QuadExt:
    __slots__ = ("m", "a", "b")

    def __init__(self, m, a, b=0):
        m = int(m)
        if m <= 1:
            raise ValueError("radicand must be an integer > 1")
        k, sf = squarefree_split(m)
        if k != 1:
            raise ValueError(f"radicand {m} is not squarefree")
        if isinstance(a, int):
            a = rat(a)
        if isinstance(b, int):
            b = rat(b)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def sqrt(cls, m):
        """``sqrt(m)`` for a positive rational or integer ``m``; may return a Rat."""
        q = rat(m)
        if q < 0:
            raise ValueError("negative radicand")
        if q == 0:
            return rat(0)
        # sqrt(n/d) = sqrt(n*d)/d
        n = int(q.numerator * q.denominator)
        k, sf = squarefree_split(n)
        coef = rat(k, q.denominator)
        if sf == 1:
            return coef
        return cls(sf, 0, coef)

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.m != self.m:
                raise FieldMismatchError(
                    f"cannot mix Q(sqrt({self.m})) with Q(sqrt({other.m}))")
            return other
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            try:
                return QuadExt(self.m, self.a + other, self.b)
            except TypeError:
                return NotImplemented
        return QuadExt(self.m, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(self.m, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            try:
                return QuadExt(self.m, self.a - other, self.b)
            except TypeError:
                return NotImplemented
        return QuadExt(self.m, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return QuadExt(self.m, other - self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            try:
                return QuadExt(self.m, self.a * other, self.b * other)
            except TypeError:
                return NotImplemented
        a = self.a * o.a + self.b * o.b * self.m
        b = self.a * o.b + self.b * o.a
        return QuadExt(self.m, a, b)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            if isinstance(n, int):
                return (1 / self) ** (-n)
            return NotImplemented
        result = QuadExt(self.m, self.a * 0 + 1, self.b * 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return QuadExt(self.m, self.a, -self.b)

    def norm(self):
        """``a**2 - m*b**2``, an element of the base ring."""
        return self.a * self.a - self.m * self.b * self.b

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            try:
                inv = 1 / other if not isinstance(other, int) else rat(1, other)
            except TypeError:
                return NotImplemented
            return QuadExt(self.m, self.a * inv, self.b * inv)
        n = o.norm()
        if _is_zero(n):
            raise ZeroDivisionError("division by zero in quadratic extension")
        num = self * o.conjugate()
        return QuadExt(self.m, num.a / n, num.b / n)

    def __rtruediv__(self, other):
        n = self.norm()
        if _is_zero(n):
            raise ZeroDivisionError("division by zero in quadratic extension")
        c = self.conjugate()
        return QuadExt(self.m, other * c.a / n, other * c.b / n)

    # -- predicates ---------------------------------------------------------
    def __bool__(self):
        return not (_is_zero(self.a) and _is_zero(self.b))

    def is_rational(self):
        return _is_zero(self.b)

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, QuadExt) else None
        if o is not None:
            return self.a == o.a and self.b == o.b
        if isinstance(other, QuadExt):
            return False
        try:
            return _is_zero(self.b) and self.a == other
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if _is_zero(self.b):
            return hash(self.a)
        return hash((self.m, self.a, self.b))

    def sign(self):
        """Exact sign of ``a + b*sqrt(m)``; rational coordinates only."""
        a, b, m = rat(self.a), rat(self.b), self.m
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a**2 with m*b**2
        d = a * a - m * b * b
        return sa if d > 0 else (-sa if d < 0 else 0)

    def _cmp(self, other):
        return (self - other).sign() if isinstance(other, QuadExt) else (self - rat(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def to_bigfloat(self, ctx):
        from .bigfloat import to_bigfloat
        return to_bigfloat(self.a, ctx) + to_bigfloat(self.b, ctx) * ctx.sqrt(self.m)

    def __float__(self):
        return float(self.a) + float(self.b) * self.m ** 0.5

    def __repr__(self):
        return f"QuadExt({self.m}, {self.a!r}, {self.b!r})"

    def __str__(self):
        if _is_zero(self.b):
            return str(self.a)
        return f"({self.a}) + ({self.b})*sqrt({self.m})"


SQRT3 = QuadExt(3, 0, 1)


def as_rational(x):
    """Return ``x`` as a Rat if it is a rational-valued QuadExt or Rat, else raise."""
    if isinstance(x, QuadExt):
        if not x.is_rational():
            raise ValueError(f"{x} is irrational")
        return rat(x.a)
    return rat(x)
