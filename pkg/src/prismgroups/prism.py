"""The normalized prism configuration and the element g^2.

Scalars are generic: rationals and Q(sqrt m) numbers give exact answers,
MPoly or RatFunc entries give symbolic ones, and BigFloats give numerics.
"""

from dataclasses import dataclass

from .algebra.bigfloat import to_bigfloat
from .algebra.mpoly import MPoly, parse
from .algebra.quadext import SQRT3, QuadExt
from .algebra.rat import Rat, rat
from .algebra.ratfunc import RatFunc
from .fixtures import load as load_fixture
from .projgeom.matrix import Mat3, cross, dot, is_zero_vec, proportional
from .projgeom.projective import Flag, FlagTriple, DegenerateError, triple_product

GENERIC, NONGENERIC = "generic", "nongeneric"


class NeutralError(ValueError):
    pass


def _exact_number(x):
    return isinstance(x, (int, Rat)) or (isinstance(x, QuadExt) and isinstance(x.a, Rat))


def _is_numeric(x):
    return _exact_number(x) or hasattr(x, "context") or isinstance(x, float)


@dataclass(frozen=True)
class PrismParams:
    r: object
    s: object
    t: object = None
    kind: str = GENERIC

    def __post_init__(self):
        for name in ("r", "s", "t"):
            v = getattr(self, name)
            if isinstance(v, (int, str)):
                object.__setattr__(self, name, rat(v))
        if self.kind not in (GENERIC, NONGENERIC):
            raise ValueError(f"unknown prism kind {self.kind!r}")
        if self.kind == GENERIC and self.t is None:
            raise ValueError("generic parameters need t")
        if self.kind == NONGENERIC:
            object.__setattr__(self, "t", None)
        if _is_numeric(self.r) and not self.r > 0:
            raise ValueError("r must be positive")
        if _is_numeric(self.s) and not self.s > 0:
            raise ValueError("s must be positive")
        t = self.t
        if t is not None and _is_numeric(t) and -1 <= t <= 0:
            raise ValueError("t must satisfy t > 0 or t < -1")

    @classmethod
    def nongeneric(cls, r, s):
        return cls(r, s, None, NONGENERIC)

    @property
    def generic(self):
        return self.kind == GENERIC


# -- the configuration -----------------------------------------------------------

A1 = (rat(1), rat(0), rat(1))
A2 = (rat(-1, 2), SQRT3 / 2, rat(1))
A3 = (rat(-1, 2), -SQRT3 / 2, rat(1))
ORIGIN = (rat(0), rat(0), rat(1))

# rotation by 2pi/3
M3 = Mat3(((rat(-1, 2), -SQRT3 / 2, rat(0)),
           (SQRT3 / 2, rat(-1, 2), rat(0)),
           (rat(0), rat(0), rat(1))))


def _comb(u, x, v, y):
    return tuple(x * p - y * q for p, q in zip(u, v))


@dataclass(frozen=True)
class PrismScene:
    params: PrismParams
    a: tuple
    b: tuple
    L: tuple
    S: Mat3
    SSt: Mat3        # M2^-1 = S S^t
    detS: object
    M2: Mat3
    g2: Mat3

    @property
    def M3(self):
        return numeric_m3(_ctx_of(*self.S.entries()))

    @property
    def M2_inv(self):
        return self.SSt

    def flags(self):
        """The flags (b_k, L_{k+1})."""
        b, L = self.b, self.L
        return FlagTriple(Flag(b[0], L[1], check=False), Flag(b[1], L[2], check=False),
                          Flag(b[2], L[0], check=False), check=False)


def _ctx_of(*xs):
    return next((x.context for x in xs if hasattr(x, "context")), None)


def _frame(p):
    ctx = _ctx_of(p.r, p.s, p.t)
    a, b = frame_points(p.t if p.generic else None, ctx)
    if p.generic:
        L = tuple(cross(a[k - 2], a[k - 1]) for k in range(3))  # L_k = a_{k-1} x a_{k+1}
        third = a[0]
    else:
        origin = tuple(_lift(x, ctx) for x in ORIGIN)
        # L_{k+1} is the line through the origin and b_k
        L = tuple(cross(b[k - 1], origin) for k in range(3))
        third = origin
    two = rat(2) if ctx is None else ctx.mpf(2)
    S = Mat3.from_columns(tuple(two * p.r * x for x in b[0]),
                          tuple(two * p.s * x for x in b[1]), third)
    return a, b, L, S


def g2_numerator(S):
    """``(N, D)`` with ``g^2 = N / D``; D = det(S)^2 and N is division-free."""
    SSt = S @ S.T
    m3 = numeric_m3(_ctx_of(*S.entries()))
    N = SSt @ m3 @ SSt.adj() @ m3
    d = S.det()
    return SSt, N, d * d


def build_scene(p):
    a, b, L, S = _frame(p)
    SSt, N, D = g2_numerator(S)
    detS = S.det()
    if not detS:
        raise DegenerateError("S is singular")
    M2 = SSt.adj() / D
    return PrismScene(p, a, b, L, S, SSt, detS, M2, N / D)


# -- eigenvalues -------------------------------------------------------------------

def lam(p):
    """The eigenvalue of g^2 belonging to b1."""
    r2, s2 = p.r * p.r, p.s * p.s
    if p.generic:
        return -(r2 * p.t) / (s2 * (p.t + 1))
    return -r2 / s2


@dataclass(frozen=True)
class EigenReport:
    lam: object
    classification: str
    trace: object


def classify(lmb):
    if lmb == -1:
        return "neutral"
    return "attracting" if abs(lmb) > 1 else "repelling"


def charpoly_matches(g2, lmb):
    """charpoly(g2) == (x - 1)(x - lmb)(x - 1/lmb), cross-multiplied."""
    _, c2, c1, c0 = g2.charpoly()
    s = lmb * lmb + lmb + 1          # lmb * (1 + lmb + 1/lmb)
    return c2 * lmb == -s and c1 * lmb == s and c0 == -1


def lambda_of(p, scene=None, check=True):
    scene = scene or build_scene(p)
    lmb = lam(p)
    if check and not charpoly_matches(scene.g2, lmb):
        raise ArithmeticError("characteristic polynomial of g^2 is not (x-1)(x-l)(x-1/l)")
    return EigenReport(lmb, classify(lmb), 1 + lmb + 1 / lmb)


def pappus_mu(t):
    """``sqrt((1+t)/t)``; r = mu*s is the locus where g^2 is parabolic."""
    if isinstance(t, (int, str)):
        t = rat(t)
    q = (t + 1) / t
    if not q > 0:
        raise ValueError("need t/(1+t) > 0")
    if isinstance(q, Rat):
        return QuadExt.sqrt(q)
    ctx = getattr(q, "context", None)
    return ctx.sqrt(q) if ctx is not None else q ** 0.5


# -- eigenvectors and the partner prism --------------------------------------------

def eigenvector(M, mu):
    """A nonzero kernel vector of ``M - mu I``, read off the adjugate.

    ``mu`` must be a simple eigenvalue, so the adjugate has rank one.
    For BigFloat input the column of largest norm is used.
    """
    one = mu * 0 + 1
    A = M - Mat3.identity(one) * mu
    adj = A.adj()
    cols = [adj.col(j) for j in range(3)]
    if hasattr(mu, "context") or isinstance(mu, float):
        return max(cols, key=lambda c: sum(abs(x) ** 2 for x in c))
    for c in cols:
        if not is_zero_vec(c):
            return c
    raise ArithmeticError("eigenvalue is not simple")


@dataclass(frozen=True)
class PartnerReport:
    flags: FlagTriple
    tau_prime: object
    swap_verified: bool
    lam: object


def partner(p, scene=None):
    scene = scene or build_scene(p)
    lmb = lam(p)
    if lmb == -1:
        raise NeutralError("partner undefined on Pappus locus")
    mu = 1 / lmb
    g2 = scene.g2
    point = eigenvector(g2, mu)
    m3 = scene.M3
    ginvT = (scene.SSt.adj() @ m3 @ scene.SSt @ m3) / (scene.detS * scene.detS)
    line = eigenvector(ginvT, mu)
    pts = [point, m3 @ point, m3 @ (m3 @ point)]
    lines = [line, m3 @ line, m3 @ (m3 @ line)]
    # f'_k = (b'_k, L'_{k+1})
    flags = [Flag(pts[k], lines[k], check=False) for k in range(3)]
    T = FlagTriple(*flags, check=False)
    tau = _demote(triple_product(T))
    swap = _swap_ok(scene, flags[0], flags[1])
    return PartnerReport(T, tau, swap, lmb)


def _swap_ok(scene, f1, f2):
    """Delta o M2 carries point b'_1 to line L'_3 and line L'_2 to point b'_2."""
    new_line = scene.M2 @ f1.point
    new_point = scene.SSt @ f1.line
    if hasattr(new_line[0], "context"):
        return _near(new_line, f2.line) and _near(new_point, f2.point)
    return proportional(new_line, f2.line) and proportional(new_point, f2.point)


def _near(u, v, tol=None):
    ctx = u[0].context
    tol = tol or ctx.ldexp(1, -ctx.prec // 2)
    w = cross(u, v)
    scale = ctx.sqrt(dot(u, u) * dot(v, v))
    return all(abs(x) <= tol * scale for x in w)


def first_invariant(p, scene=None):
    """Triple invariant of the flags (b_k, L_{k+1})."""
    scene = scene or build_scene(p)
    return _demote(triple_product(scene.flags()))


def _demote(x):
    if isinstance(x, QuadExt) and x.is_rational():
        return x.a
    return x


# -- closed forms ------------------------------------------------------------------

def fixtures(name):
    return load_fixture(name)


def tau_prime_closed(p):
    """The partner invariant from the closed-form polynomials A and B."""
    if p.generic:
        fx = fixtures("monster")
        vals = (p.r, p.s, p.t)
        A = fx["A"].evaluate(vals)
        B = fx["B"].evaluate(vals)
        t = p.t
        return -((t + 1) * A) ** 3 / (t * B) ** 3
    fx = fixtures("monster")
    vals = (p.r, p.s)
    return -(fx["NG_num"].evaluate(vals) / fx["NG_den"].evaluate(vals)) ** 3


def monster_squares():
    """The polynomials A and B rewritten in (r^2, s^2, t); both are even in r and s."""
    fx = fixtures("monster")
    return tuple(fx[k].deflate("r", 2).deflate("s", 2) for k in ("A", "B"))


def tau_root_squares(r2, s2, t):
    """``(1+t) A / (t B)`` from squared parameters, so that tau' = -(result)^3."""
    A, B = monster_squares()
    vals = (r2, s2, t)
    return (t + 1) * A.evaluate(vals) / (t * B.evaluate(vals))


# -- scenes from squared parameters ------------------------------------------------

def _lift(x, ctx):
    if ctx is None:
        return x
    return x.to_bigfloat(ctx) if isinstance(x, QuadExt) else ctx.mpf(x) if isinstance(x, int) else \
        to_bigfloat(x, ctx)


def frame_points(t, ctx=None):
    """Vertices a_k and the points b_k, as BigFloats when ``ctx`` is given."""
    a = tuple(tuple(_lift(x, ctx) for x in v) for v in (A1, A2, A3))
    if t is None:
        return a, a
    b = tuple(_comb(a[k], t + 1, a[k - 1], t) for k in range(3))
    return a, b


def numeric_m3(ctx=None):
    return M3 if ctx is None else M3.map(lambda x: _lift(x, ctx))


def sst_from_squares(r2, s2, t=None):
    """``S S^t`` (the inverse of M2), which only involves r^2 and s^2."""
    ctx = _ctx_of(r2, s2, t)
    a, b = frame_points(t, ctx)
    third = a[0] if t is not None else tuple(_lift(x, ctx) for x in ORIGIN)

    def outer(u, k):
        return [[k * x * y for y in u] for x in u]

    four = 4 if ctx is None else ctx.mpf(4)
    parts = (outer(b[0], four * r2), outer(b[1], four * s2), outer(third, 1))
    return Mat3(tuple(tuple(sum(P[i][j] for P in parts) for j in range(3)) for i in range(3)))


def g2_from_sst(SSt):
    m3 = numeric_m3(_ctx_of(*SSt.entries()))
    return (SSt @ m3 @ SSt.adj() @ m3) / SSt.det()


# -- involutions ------------------------------------------------------------------

def iota1(p, r0, s0):
    return PrismParams(r0 * r0 / p.r, s0 * s0 / p.s, p.t, p.kind)


def iota2(p, r0=1, s0=1):
    if not p.generic:
        raise ValueError("the duality involution needs a generic triple")
    return PrismParams(s0 * s0 / p.s, r0 * r0 / p.r, -1 - p.t)


# -- symbolic identities ------------------------------------------------------------

def symbolic_params(kind=GENERIC):
    if kind == GENERIC:
        r, s, t = MPoly.gens(("r", "s", "t"))
        return PrismParams(r, s, t)
    r, s = MPoly.gens(("r", "s"))
    return PrismParams(r, s, None, NONGENERIC)


def _lambda_parts(p):
    """(P, Q) with lambda = -P/Q, as polynomials."""
    if p.generic:
        return p.r * p.r * p.t, p.s * p.s * (p.t + 1)
    return p.r * p.r, p.s * p.s


def symbolic_checks(kind=GENERIC):
    """Exact polynomial identities behind the g^2 calculation.

    With g^2 = N/D and D = det(S)^2, every check is a division-free
    identity in Q(sqrt 3)[r, s, t].
    """
    p = symbolic_params(kind)
    a, b, L, S = _frame(p)
    SSt, N, D = g2_numerator(S)
    adj = SSt.adj()
    ginvT = adj @ M3 @ SSt @ M3           # D * (g^-2)^t
    P, Q = _lambda_parts(p)
    e = P * Q - P * P - Q * Q
    out = {}
    detS = S.det()
    if p.generic:
        out["det_S"] = detS == SQRT3 * 6 * p.r * p.s * p.t * (p.t + 1)
    out["det_g2"] = N.det() == D * D * D
    out["trace"] = N.trace() * (P * Q) == D * e
    out["second_invariant"] = N.second_invariant() * (P * Q) == D * D * e
    out["fixes_b1"] = is_zero_vec(cross(N @ b[0], b[0]))
    out["fixes_L2"] = is_zero_vec(cross(ginvT @ L[1], L[1]))
    out["M3_cubed"] = (M3 @ M3 @ M3) == Mat3.identity(rat(1))
    # M3^t M2 intertwines g^2 with (g^-2)^t, so the polarity sends the
    # 1/lambda eigenpoint of g^2 to the 1/lambda eigenline of (g^-2)^t
    out["polarity_intertwines"] = M3.T @ adj @ N == ginvT @ M3.T @ adj
    return out


def swap_identities(kind=GENERIC):
    """Division-free identities implying that Delta o M2 swaps f'_1 and f'_2.

    With W = M3^t M2, the first identity W g^2 = (g^-2)^t W sends the
    1/lambda eigenpoint b'_1 of g^2 to the 1/lambda eigenline of (g^-2)^t,
    so M2 b'_1 is proportional to M3 L'_2, the line of f'_2.  The second says
    h = M3^-1 (S S^t) M3^-1 M2 commutes with g^2, so h fixes b'_1, which
    turns into (S S^t) L'_2 ~ M3 b'_1, the point of f'_2.  Both use only
    that 1/lambda is a simple eigenvalue.
    """
    p = symbolic_params(kind)
    S = _frame(p)[3]
    SSt, N, D = g2_numerator(S)
    adj = SSt.adj()
    ginvT = adj @ M3 @ SSt @ M3
    M3i = M3 @ M3
    h = M3i @ SSt @ M3i @ adj
    return {"intertwining": M3.T @ adj @ N == ginvT @ M3.T @ adj,
            "commuting": h @ N == N @ h}


# -- the elliptic side ----------------------------------------------------------------

def _rational_part(x):
    if isinstance(x, QuadExt):
        if x.b:
            raise ArithmeticError("expected a rational quantity")
        return x.a
    return x


def trace_derivative(p):
    """d/du trace(g^2(u)) at u = 0, where M3(u) = T M3 T^-1 and T = diag(1+u, 1, 1).

    Returned as ``(num, den)``.  To first order M3(u) = M3 + uK and
    (M3(u)^-1)^t = M3 - uK with K = E M3 - M3 E, E = diag(1, 0, 0).
    """
    a, b, L, S = _frame(p)
    SSt = S @ S.T
    adj = SSt.adj()
    one, zero = rat(1), rat(0)
    E = Mat3.diag(one, zero, zero)
    K = E @ M3 - M3 @ E
    num = (SSt @ M3 @ adj @ K).trace() - (SSt @ K @ adj @ M3).trace()
    d = S.det()
    return _rational_part(num), _rational_part(d * d)


def elliptic_derivative_symbolic(kind=GENERIC):
    """The derivative restricted to the parabolic locus, as a RatFunc.

    Generic: in (s, t) after substituting r^2 = s^2 (1+t)/t.
    Non-generic: in s after substituting r = s.
    """
    p = symbolic_params(kind)
    num, den = trace_derivative(p)
    if kind == GENERIC:
        vars = ("s", "t")
        s, t = MPoly.gens(p.r.vars)[1:]
        qn, kn = num.deflate("r", 2).substitute("r", s * s * (t + 1), t)
        qd, kd = den.deflate("r", 2).substitute("r", s * s * (t + 1), t)
        tt = MPoly.gen("t", p.r.vars)
        num, den = qn * tt ** kd, qd * tt ** kn
    else:
        vars = ("s",)
        s = MPoly.gen("s", p.r.vars)
        num, den = num.subs({"r": s}), den.subs({"r": s})
    return RatFunc(num.with_vars(vars), den.with_vars(vars))


def elliptic_variation_formula():
    """The closed form of the generic derivative, in (s, t)."""
    V = ("s", "t")
    num = parse("(2t+1)(16 s^4 (3t^2+3t+1)^2 + 8 s^2 t (2t^3+3t^2+3t+1) + t^2)", V)
    den = parse("8 s^2 t^3 (t+1)^2", V)
    return RatFunc(num, den)


def _on_locus(p):
    if p.generic:
        return p.r * p.r * p.t == p.s * p.s * (p.t + 1)
    return p.r == p.s


def elliptic_derivative(p):
    """d(trace g^2)/du at u = 0 for a point on the parabolic locus."""
    if not _on_locus(p):
        raise ValueError("parameters are not on the parabolic locus")
    num, den = trace_derivative(p)
    return num / den


# -- translations along the flat ------------------------------------------------------

ORTHOGONAL, MEDIAL = "orthogonal", "medial"


@dataclass(frozen=True)
class Translation:
    J: Mat3
    eigenvalues: tuple      # on a1, b1, b2
    distance: object


def translation_J(p, d, mode=ORTHOGONAL, prec=256):
    """J = (I1^-1)^t I0 comparing the polarities at (r, s, t) and the moved point.

    Eigenvalues are reported on a1, b1, b2 and normalized so the a1
    eigenvalue is 1.
    """
    numeric = _is_numeric(d)
    if numeric and not d > 0:
        raise ValueError("d must be positive")
    if mode == ORTHOGONAL:
        q = PrismParams(p.r * d, p.s * d, p.t, p.kind)
    elif mode == MEDIAL:
        q = PrismParams(p.r * d, p.s / d, p.t, p.kind)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    a, b, L, S0 = _frame(p)
    S1 = _frame(q)[3]
    I1inv = S1 @ S1.T
    I0 = duality_m2(S0)
    J = I1inv.T @ I0
    vecs = (a[0], b[0], b[1])
    ev = []
    for v in vecs:
        w = J @ v
        if not is_zero_vec(cross(w, v)):
            raise ArithmeticError("expected eigenvector is not an eigenvector of J")
        k = next(i for i in range(3) if v[i])
        ev.append(_demote(w[k] / v[k]))
    base = ev[0]
    ev = tuple(_demote(e / base) for e in ev)
    if not (numeric and all(_is_numeric(e) for e in ev)):
        return Translation(J, ev, None)
    from .algebra.bigfloat import context
    from .projgeom.projective import flat_distance
    ctx = context(prec)
    vals = [to_bigfloat(e, ctx) if not hasattr(e, "context") else e for e in ev]
    scale = ctx.cbrt(vals[0] * vals[1] * vals[2])
    dist = flat_distance(*(v / scale for v in vals)) / 2
    return Translation(J, ev, dist)


def duality_m2(S):
    SSt = S @ S.T
    return SSt.adj() / SSt.det()
