"""Points, lines, flags and their invariants."""

import math

import gmpy2

from ..algebra.rat import Rat, rat
from .matrix import cross, dot, is_zero_vec, proportional


class DegenerateError(ValueError):
    pass


def _exact(coords):
    return all(isinstance(x, (int, Rat)) for x in coords)


def canonical(v):
    """Canonical representative of a rational projective vector.

    Denominators are cleared, the integer content is divided out and the
    first nonzero coordinate is made positive.  Non-rational vectors are
    returned unchanged.
    """
    v = tuple(v)
    if is_zero_vec(v):
        raise DegenerateError("zero vector does not represent a projective point")
    if not _exact(v):
        return v
    q = [rat(x) for x in v]
    l = 1
    for x in q:
        l = gmpy2.lcm(l, x.denominator)
    ints = [int(x * l) for x in q]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(rat(x) for x in ints)


class HVec:
    """Homogeneous 3-vector; equality is projective."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if len(coords) != 3:
            raise ValueError("homogeneous vectors have three coordinates")
        if is_zero_vec(coords):
            raise DegenerateError("zero vector does not represent a projective point")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("HVec is immutable")

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return 3

    def canonical(self):
        return HVec(canonical(self.coords))

    def __eq__(self, other):
        o = other.coords if isinstance(other, HVec) else tuple(other)
        return proportional(self.coords, o)

    def __hash__(self):
        c = canonical(self.coords)
        return hash(c) if _exact(c) else hash(len(c))

    def affine(self):
        x, y, z = self.coords
        if not z:
            raise DegenerateError("point at infinity has no affine coordinates")
        return (x / z, y / z)

    def __repr__(self):
        return "HVec(" + ", ".join(str(x) for x in self.coords) + ")"


def join(p, q):
    """Line through two points (or point common to two lines)."""
    v = cross(tuple(p), tuple(q))
    if is_zero_vec(v):
        raise DegenerateError("cross product of proportional vectors")
    return v


class Flag:
    __slots__ = ("point", "line")

    def __init__(self, point, line, check=True):
        point, line = tuple(point), tuple(line)
        if check and dot(point, line):
            raise DegenerateError("flag point does not lie on its line")
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "line", line)

    def __setattr__(self, name, value):
        raise AttributeError("Flag is immutable")

    def act(self, M):
        from .matrix import act_line
        return Flag(M @ self.point, act_line(M, self.line), check=False)

    def __eq__(self, other):
        return proportional(self.point, other.point) and proportional(self.line, other.line)

    def __repr__(self):
        return f"Flag({self.point}, {self.line})"


class FlagTriple:
    __slots__ = ("flags",)

    def __init__(self, f1, f2, f3, check=True):
        flags = (f1, f2, f3)
        if check:
            for i in range(3):
                for j in range(3):
                    if i != j and not dot(flags[i].point, flags[j].line):
                        raise DegenerateError(f"flag {i + 1} point lies on flag {j + 1} line")
        object.__setattr__(self, "flags", flags)

    def __setattr__(self, name, value):
        raise AttributeError("FlagTriple is immutable")

    def __iter__(self):
        return iter(self.flags)

    def permuted(self, order):
        return FlagTriple(*(self.flags[i] for i in order), check=False)


def triple_product(T):
    """Scale-invariant ratio of the six cross dot products of a flag triple."""
    (p1, l1), (p2, l2), (p3, l3) = ((f.point, f.line) for f in T)
    num = dot(p1, l2) * dot(p2, l3) * dot(p3, l1)
    den = dot(p2, l1) * dot(p3, l2) * dot(p1, l3)
    if not num or not den:
        raise DegenerateError("flag triple is not transverse")
    return num / den


def canonical_invariant(chi):
    """Representative of ``{chi, 1/chi}`` lying in [-1, 0)."""
    return 1 / chi if chi < -1 else chi


def prism_invariant(chi):
    """``|log(-chi)|`` of a negative triple; accepts exact or BigFloat input."""
    if not chi < 0:
        raise ValueError("not a negative triple")
    ctx = getattr(chi, "context", None)
    if ctx is not None:
        return abs(ctx.log(-chi))
    if isinstance(chi, (int, Rat)):
        from ..algebra.bigfloat import context, to_bigfloat
        c = context()
        return abs(c.log(to_bigfloat(-rat(chi), c)))
    return abs(math.log(-float(chi)))


def flat_distance(a, b, c, tol=1e-9):
    """``sqrt(log(a)^2 + log(b)^2 + log(c)^2)`` for positive a, b, c with product 1."""
    vals = (a, b, c)
    if any(not x > 0 for x in vals):
        raise ValueError("flat coordinates must be positive")
    ctx = next((getattr(x, "context", None) for x in vals if getattr(x, "context", None)), None)
    if ctx is None:
        from ..algebra.bigfloat import context, to_bigfloat
        ctx = context()
        vals = tuple(to_bigfloat(x, ctx) if isinstance(x, (int, Rat)) else ctx.mpf(x) for x in vals)
    if abs(vals[0] * vals[1] * vals[2] - 1) > tol:
        raise ValueError("flat coordinates must have product 1")
    return ctx.sqrt(sum(ctx.log(x) ** 2 for x in vals))


def orthogonal_pair_invariants(r, x, y):
    """Triple invariants t1, t2 of two orthogonal flag pairs in normal form."""
    q = x * x + y * y
    d1 = (r * x + 1) * (q - r * x)
    d2 = (r - x) * (r * x + 1) * (q * q + q)
    if not d1 or not d2:
        raise DegenerateError("degenerate orthogonal pair configuration")
    t1 = (r - x) * (r * q + x) / d1
    t2 = (q + 1) * (q - r * x) * (r * q + x) / d2
    return t1, t2


def orthogonal_pair_flags(r, x, y):
    """The two normalized orthogonal pairs, as lists of flags."""
    q = x * x + y * y
    a = [Flag((r, 0, 1), (-1, 0, r)), Flag((-1, 0, r), (r, 0, 1))]
    b = [Flag((x, y, 1), (-x, -y, q)), Flag((-x, -y, q), (x, y, 1))]
    return a, b
