"""Shearing dynamics on the Pappus locus.

One step of the map phi_d shears a Pappus point, re-describes the sheared
group by its second triple of flags, and un-shears the new description
back onto the Pappus locus.

Points are stored through their squares (r^2, s^2, t).  Everything the
prism machinery needs (M2, g^2, both invariants) depends on r and s only
through their squares, and a single step from a rational point usually
lands on rational squares whose square roots live in different quadratic
fields.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .algebra.bigfloat import context, decimal_str, to_bigfloat
from .algebra.quadext import SQRT3, QuadExt
from .algebra.rat import Rat, isqrt_exact, rat, rat_str
from .algebra.sturm import horner, isolate_positive_roots, refine_root
from .prism import M3, NeutralError, g2_from_sst, monster_squares, sst_from_squares, tau_root_squares
from .projgeom.matrix import Mat3

# eigen-branch conventions: which eigenvalue of g^2 the new (b1, L2) carries
SWAP, PRESERVE = "swap", "preserve"
# invariant matching: feed tau' as computed, or its representative in [-1, 0)
RAW, CANONICAL = "raw", "canonical"
# un-shear: (r*d, s/d) or the inverse shear (r/d, s*d)
PROSE, INVERSE = "prose", "inverse"

MAX_PREC = 4096


class DynamicsError(ArithmeticError):
    pass


def _is_exact(x):
    return isinstance(x, (int, Rat))


def _ctx_of(*xs):
    for x in xs:
        if hasattr(x, "context"):
            return x.context
    return None


def _bits(x):
    return int(x.numerator).bit_length() + int(x.denominator).bit_length()


def _sqrt(x, prec=256):
    """Exact square root of a rational square, else a BigFloat."""
    if _is_exact(x):
        root = isqrt_exact(x)
        if root is not None:
            return root
        x = to_bigfloat(x, context(prec))
    return x.context.sqrt(x)


def _num(x, prec):
    """A decimal string for any scalar the module produces."""
    if x is None:
        return None
    if isinstance(x, bool):
        return x
    if not hasattr(x, "context"):
        x = to_bigfloat(x, context(prec))
    return decimal_str(x)


@dataclass(frozen=True)
class DynPoint:
    """A prism parameter triple held as (r^2, s^2, t)."""
    r2: object
    s2: object
    t: object

    def __post_init__(self):
        for name in ("r2", "s2", "t"):
            v = getattr(self, name)
            if isinstance(v, (int, str)):
                object.__setattr__(self, name, rat(v))
        if not (self.r2 > 0 and self.s2 > 0):
            raise ValueError("r and s must be positive")
        if -1 <= self.t <= 0:
            raise ValueError("t must satisfy t > 0 or t < -1")

    @classmethod
    def from_rst(cls, r, s, t):
        r, s = (rat(x) if isinstance(x, (int, str)) else x for x in (r, s))
        return cls(r * r, s * s, t)

    @property
    def exact(self):
        return all(_is_exact(x) for x in (self.r2, self.s2, self.t))

    @property
    def r(self):
        return _sqrt(self.r2)

    @property
    def s(self):
        return _sqrt(self.s2)

    def numeric(self, prec):
        ctx = context(prec)
        return DynPoint(*(to_bigfloat(x, ctx) for x in (self.r2, self.s2, self.t)))

    def pappus_residual(self):
        """Relative defect in r^2 t = s^2 (1 + t)."""
        lhs, rhs = self.r2 * self.t, self.s2 * (self.t + 1)
        return abs(lhs - rhs) / abs(rhs)

    def t_from_rs(self):
        """On the Pappus locus t = s^2 / (r^2 - s^2)."""
        return self.s2 / (self.r2 - self.s2)

    def lam(self):
        """Eigenvalue of g^2 on b1."""
        return -(self.r2 * self.t) / (self.s2 * (self.t + 1))

    def first_invariant(self):
        q = self.t / (self.t + 1)
        return -q * q * q

    def partner_invariant(self):
        y = tau_root_squares(self.r2, self.s2, self.t)
        return -y * y * y

    def record(self, prec):
        out = {"r": _num(_sqrt(self.r2, prec), prec), "s": _num(_sqrt(self.s2, prec), prec),
               "t": _num(self.t, prec)}
        if self.exact:
            out["exact"] = {"r2": rat_str(self.r2), "s2": rat_str(self.s2), "t": rat_str(self.t)}
        return out


@dataclass(frozen=True)
class DynConfig:
    d: object = rat(1, 2)
    prec: int = 256
    max_steps: int = 300
    branch: str = SWAP
    matching: str = RAW
    unshear: str = PROSE
    exact_bits: int = 2048     # leave exact arithmetic once numbers get this large
    max_prec: int = MAX_PREC

    def __post_init__(self):
        if isinstance(self.d, (int, str)):
            object.__setattr__(self, "d", rat(self.d))
        if not self.d > 0:
            raise ValueError("shear parameter must be positive")
        if self.branch not in (SWAP, PRESERVE):
            raise ValueError(f"unknown eigen-branch convention {self.branch!r}")
        if self.matching not in (RAW, CANONICAL):
            raise ValueError(f"unknown matching convention {self.matching!r}")
        if self.unshear not in (PROSE, INVERSE):
            raise ValueError(f"unknown un-shear convention {self.unshear!r}")
        if not 16 <= self.prec <= self.max_prec:
            raise ValueError("precision out of range")


@dataclass
class DynStepTrace:
    input: DynPoint
    sheared: DynPoint = None
    lam: object = None
    chi: object = None
    tau_raw: object = None
    tau_canonical: object = None
    chi_target: object = None
    omega: object = None
    t_new: object = None
    lam_star: object = None
    ratio: object = None
    s_root: object = None
    root_method: str = None
    root_residual: object = None
    described: DynPoint = None
    output: DynPoint = None
    input_residual: object = None
    output_residual: object = None
    eigen_conserved: bool = None
    invariants_exchanged: bool = None
    prec: int = None
    exact: bool = None
    flags: list = field(default_factory=list)
    error: str = None

    def record(self, step=None):
        prec = self.prec or 256
        out = {"step": step}
        for k, v in self.__dict__.items():
            if isinstance(v, DynPoint):
                out[k] = v.record(prec)
            elif k in ("root_method", "error", "flags", "prec", "exact"):
                out[k] = v
            else:
                out[k] = _num(v, prec)
                if _is_exact(v) and not isinstance(v, bool):
                    out.setdefault("exact_values", {})[k] = rat_str(v)
        return out


def canonical(x):
    """Representative of a triple invariant in [-1, 0)."""
    return x if -1 <= x < 0 else 1 / x


def shear(p, d):
    """(r d, s / d, t)."""
    d2 = d * d
    return DynPoint(p.r2 * d2, p.s2 / d2, p.t)


def unshear(p, d, convention=PROSE):
    return shear(p, d) if convention == PROSE else shear(p, 1 / d)


# -- the s-equation -------------------------------------------------------------------

def s_equation(K, t_new, x_src):
    """Coefficients in S = s^2 of (1+t') A - x t' B at r^2 = K S, lowest first.

    Setting tau'(k s, s, t') equal to chi = -x^3 amounts, after a real cube
    root, to this polynomial vanishing.  Roots at S = 0 are divided out.
    """
    A, B = monster_squares()
    zero = K * 0
    coeffs = {}
    for P, w in ((A, t_new + 1), (B, -x_src * t_new)):
        for (i, j, l), c in P.items():
            term = w * c * K ** i * t_new ** l
            coeffs[i + j] = coeffs.get(i + j, zero) + term
    c = [coeffs.get(n, zero) for n in range(max(coeffs) + 1)]
    while c and not c[-1]:
        c.pop()
    while c and not c[0]:
        c.pop(0)
    return c


def _exact_positive_root(c, prec):
    """The unique positive root of a rational polynomial, exact when rational."""
    iv = isolate_positive_roots(c)
    if len(iv) != 1:
        raise DynamicsError(f"s-equation has {len(iv)} positive roots; expected one")
    lo, hi = iv[0]
    if lo == hi:
        return lo, "sturm+exact"
    # a rational root p/q has q dividing the leading coefficient of the integer form
    den = 1
    for a in c:
        den = den * int(a.denominator) // _gcd(den, int(a.denominator))
    lead = abs(int(c[-1] * den))
    need = max(prec, 2 * lead.bit_length() + hi.numerator.bit_length() + 64)
    root = refine_root(c, (lo, hi), prec=need)
    man, exp = root.value.man_exp
    approx = Fraction(int(man)) * Fraction(2) ** int(exp)
    cand = rat(approx.limit_denominator(lead))
    if lo < cand < hi and not horner(c, cand):
        return cand, "sturm+exact"
    return refine_root(c, (lo, hi), prec=prec).value, "sturm"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _sign(x):
    return (x > 0) - (x < 0)


def _descartes(c):
    signs = [_sign(a) for a in c if _sign(a)]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _float_positive_root(c, ctx):
    """Unique positive root of a BigFloat polynomial.

    Uniqueness comes from Descartes' rule when exactly one sign change is
    present among coefficients whose sign is reliable; otherwise sign
    changes are counted on a dyadic mesh of (0, Cauchy bound].
    """
    tol = ctx.ldexp(1, -ctx.prec // 2)
    scale = max(abs(a) for a in c)
    reliable = all(a == 0 or abs(a) > tol * scale for a in c)
    bound = 1 + max(abs(a) for a in c[:-1]) / abs(c[-1])
    if reliable and _descartes(c) == 1:
        lo, hi, method = ctx.mpf(0), bound, "descartes"
    else:
        n = 1 << 12
        xs = [bound * k / n for k in range(1, n + 1)]
        vals = [horner(c, x) for x in xs]
        brackets = [(xs[k], xs[k + 1]) for k in range(n - 1) if _sign(vals[k]) * _sign(vals[k + 1]) < 0]
        if _sign(c[0]) * _sign(vals[0]) < 0:
            brackets.insert(0, (ctx.mpf(0), xs[0]))
        if len(brackets) != 1:
            raise DynamicsError(f"s-equation shows {len(brackets)} positive sign changes; expected one")
        (lo, hi), method = brackets[0], "mesh"
    slo = _sign(c[0]) if lo == 0 else _sign(horner(c, lo))
    for _ in range(ctx.prec + 64 + int(ctx.log(bound + 2, 2))):
        m = (lo + hi) / 2
        v = horner(c, m)
        if not v:
            return m, method
        if _sign(v) == slo:
            lo = m
        else:
            hi = m
        if hi - lo <= ctx.ldexp(hi, -ctx.prec - 2):
            break
    return (lo + hi) / 2, method


def _root_residual(c, x):
    size = sum(abs(a) * abs(x) ** i for i, a in enumerate(c))
    return abs(horner(c, x)) / size


# -- one step -------------------------------------------------------------------------

def _within(x, prec):
    """x <= 2^(-prec/4), the Pappus-relation tolerance."""
    if _is_exact(x):
        return x <= rat(1, 2 ** (prec // 4))
    return x <= x.context.ldexp(1, -(prec // 4))


def _close(u, v, prec):
    if _is_exact(u) and _is_exact(v):
        return u == v
    ctx = context(prec)
    u, v = to_bigfloat(u, ctx), to_bigfloat(v, ctx)
    return abs(u - v) <= ctx.ldexp(1, -prec // 2) * max(1, abs(u), abs(v))


def _charpoly(p):
    _, c2, c1, c0 = g2_from_sst(sst_from_squares(p.r2, p.s2, p.t)).charpoly()
    return tuple(x.a if isinstance(x, QuadExt) and x.is_rational() else x for x in (c2, c1, c0))


def second_description(p, cfg=DynConfig(), trace=None):
    """Re-describe the group of ``p`` by its second triple of flags."""
    trace = trace or DynStepTrace(p)
    prec = cfg.prec
    lam = p.lam()
    if lam == -1:
        raise NeutralError("second description undefined on Pappus locus")
    chi = p.first_invariant()
    y = tau_root_squares(p.r2, p.s2, p.t)      # tau' = -y^3
    tau = -y * y * y
    target = tau if cfg.matching == RAW else canonical(tau)
    omega = y if target == tau else 1 / y      # real cube root of -target
    if omega == 1:
        raise NeutralError("partner invariant is -1")
    t_new = omega / (1 - omega)
    lam_star = lam if cfg.branch == PRESERVE else 1 / lam
    K = -lam_star * (t_new + 1) / t_new
    if not K > 0:
        raise DynamicsError("eigen-branch gives no real ratio r/s")
    x_src = p.t / (p.t + 1)                    # chi = -x_src^3
    c = s_equation(K, t_new, x_src)
    if all(_is_exact(a) for a in c):
        S, method = _exact_positive_root(c, prec)
    else:
        S, method = _float_positive_root(c, _ctx_of(*c))
    resid = 0 if (_is_exact(S) and method.endswith("exact")) else _root_residual(c, S)
    new = DynPoint(K * S, S, t_new)
    trace.lam, trace.chi, trace.tau_raw, trace.tau_canonical = lam, chi, tau, canonical(tau)
    trace.chi_target, trace.omega, trace.t_new, trace.lam_star = target, omega, t_new, lam_star
    trace.ratio = _sqrt(K, prec)
    trace.s_root = _sqrt(S, prec)
    trace.root_method, trace.root_residual = method, resid
    trace.described = new
    trace.eigen_conserved = all(_close(u, v, prec) for u, v in zip(_charpoly(p), _charpoly(new)))
    trace.invariants_exchanged = (_close(canonical(new.first_invariant()), canonical(tau), prec)
                                  and _close(canonical(new.partner_invariant()), canonical(chi), prec))
    return new, trace


def phi_step(p, cfg=DynConfig()):
    """One application of phi_d; Pappus-relation failures are flagged, not raised."""
    trace = DynStepTrace(p, prec=cfg.prec, exact=p.exact)
    trace.input_residual = p.pappus_residual()
    if not _within(trace.input_residual, cfg.prec):
        trace.flags.append("input off Pappus locus")
    if cfg.d == 1:
        trace.sheared = trace.described = trace.output = p
        trace.output_residual = trace.input_residual
        return p, trace
    sheared = shear(p, cfg.d)
    trace.sheared = sheared
    new, trace = second_description(sheared, cfg, trace)
    out = unshear(new, cfg.d, cfg.unshear)
    trace.output = out
    trace.output_residual = out.pappus_residual()
    if not _within(trace.output_residual, cfg.prec):
        trace.flags.append("output off Pappus locus")
    if not trace.eigen_conserved:
        trace.flags.append("eigenvalues not conserved")
    if not trace.invariants_exchanged:
        trace.flags.append("invariants not exchanged")
    return out, trace


# -- orbits -----------------------------------------------------------------------------

@dataclass
class Orbit:
    points: list
    traces: list
    config: DynConfig
    error: DynStepTrace = None

    def rows(self):
        """CSV rows (step, r, s, t, residual) as strings."""
        out = []
        for k, p in enumerate(self.points):
            prec = self.traces[k - 1].prec if k else self.config.prec
            out.append((str(k), _num(_sqrt(p.r2, prec), prec), _num(_sqrt(p.s2, prec), prec), _num(p.t, prec),
                        _num(p.pappus_residual(), prec)))
        return out

    def max_residual(self):
        return max((p.pappus_residual() for p in self.points[1:]), key=float, default=0)


def _too_big(p, bits):
    return any(_bits(x) > bits for x in (p.r2, p.s2, p.t))


def iterate(p0, cfg=DynConfig(), n=None):
    """Apply phi_step n times (default cfg.max_steps), raising precision as needed.

    A step whose output misses the Pappus relation by more than 2^(-prec/4)
    is recomputed at doubled precision, up to cfg.max_prec.  A failing step
    ends the orbit early and its trace is attached as ``error``.
    """
    n = cfg.max_steps if n is None else n
    if n < 0:
        raise ValueError("step count must be non-negative")
    pts, traces = [p0], []
    orbit = Orbit(pts, traces, cfg)
    p, prec = p0, cfg.prec
    for _ in range(n):
        if p.exact and _too_big(p, cfg.exact_bits):
            p = p.numeric(prec)
        while True:
            c = replace(cfg, prec=prec)
            q = p if p.exact else p.numeric(prec)
            try:
                out, tr = phi_step(q, c)
            except (ArithmeticError, ValueError) as exc:
                tr = DynStepTrace(q, prec=prec, exact=q.exact, error=f"{type(exc).__name__}: {exc}")
                orbit.error = tr
                return orbit
            if out.exact or _within(tr.output_residual, prec) or prec >= cfg.max_prec:
                break
            prec = min(2 * prec, cfg.max_prec)
        traces.append(tr)
        pts.append(out)
        p = out
    return orbit


# -- the conjugacy spot check -------------------------------------------------------------

EXAMPLE_CONJUGATOR = Mat3(((rat(29893, 65426), SQRT3 * rat(20451, 65426), rat(0)),
                           (-SQRT3 * rat(20451, 65426), rat(29893, 65426), rat(0)),
                           (rat(0), rat(0), rat(-1))))


@dataclass(frozen=True)
class ConjugacyReport:
    polarity: bool         # C^t (S S^t)_p C is proportional to (S S^t)_q
    rotation: str          # "fixed", "inverted" or "neither": C M3 C^-1 against M3
    passed: bool


def conjugacy_check(C, p, q):
    """Does C^t conjugate the prism group of ``p`` onto that of ``q``?

    The group is generated by M3 and the polarity Delta o M2; conjugating
    the polarity by h = C^t replaces M2^-1 = S S^t by C^t S S^t C.
    """
    if not (p.exact and q.exact):
        raise ValueError("conjugacy check needs exact points")
    lhs = C.T @ sst_from_squares(p.r2, p.s2, p.t) @ C
    pol = lhs.proportional_to(sst_from_squares(q.r2, q.s2, q.t))
    h = C.T
    conj = h @ M3 @ h.inv()
    rot = "fixed" if conj == M3 else "inverted" if conj == M3.inv() else "neither"
    return ConjugacyReport(pol, rot, pol and rot != "neither")
