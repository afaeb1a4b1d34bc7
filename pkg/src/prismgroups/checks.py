"""Verification suites shared by the CLI and the test-suite.

Each check returns a :class:`Check`; a suite is a list of them.  Random
samples come from ``random.Random(seed)`` so every run is reproducible
from (suite, fast, seed).
"""

import random
import time
from dataclasses import dataclass, field

from . import blv, prism
from .algebra.bigfloat import context, decimal_str
from .algebra.mpoly import parse
from .algebra.rat import rat, rat_str
from .algebra.ratfunc import RatFunc
from .projgeom.boxes import apply_word, is_affine_convex, unit_square_box
from .projgeom.matrix import Mat3
from .projgeom.projective import prism_invariant

SUITES = ("core", "monster", "blv")


@dataclass
class Check:
    name: str
    suite: str
    passed: bool
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "suite": self.suite, "status": "PASS" if self.passed else "FAIL",
                "seconds": round(self.seconds, 3), "detail": self.detail}


def _timed(suite, name, fn):
    t0 = time.perf_counter()
    passed, detail = fn()
    return Check(name, suite, bool(passed), time.perf_counter() - t0, detail)


def _rand_rat(rng, lo_num=1, hi_num=40, den=40):
    return rat(rng.randint(lo_num, hi_num), rng.randint(1, den))


# -- core: the prism calculation ------------------------------------------------------

def eigen_law():
    out = {}
    for kind in (prism.GENERIC, prism.NONGENERIC):
        sc = prism.symbolic_checks(kind)
        out[kind] = {k: sc[k] for k in ("det_g2", "trace", "second_invariant")}
    return all(all(v.values()) for v in out.values()), out


def det_s():
    sc = prism.symbolic_checks(prism.GENERIC)
    return sc["det_S"], {}


def first_invariant_samples(n=20, seed=0):
    rng = random.Random(seed)
    bad = []
    for _ in range(n):
        p = prism.PrismParams(_rand_rat(rng), _rand_rat(rng), _rand_rat(rng))
        t = p.t
        if prism.first_invariant(p) != -t ** 3 / (t + 1) ** 3:
            bad.append(rat_str(t))
    return not bad, {"samples": n, "failures": bad}


def unit_prism_invariants():
    p = prism.PrismParams(1, 1, 1)
    chi = prism.first_invariant(p)
    tau = prism.partner(p).tau_prime
    ctx = context(256)
    inv1, inv2 = prism_invariant(chi), prism_invariant(tau)
    want1, want2 = 3 * ctx.log(2), 3 * ctx.log(ctx.mpf(9825) / 5602)
    tol = ctx.mpf(10) ** -12
    ok = (chi == rat(-1, 8) and tau == -rat(9825, 5602) ** 3
          and abs(inv1 - want1) < tol and abs(inv2 - want2) < tol)
    return ok, {"first": rat_str(chi), "partner": rat_str(tau),
                "first_log": decimal_str(inv1, 20), "partner_log": decimal_str(inv2, 20)}


def partner_swap():
    out = {kind: prism.swap_identities(kind) for kind in (prism.GENERIC, prism.NONGENERIC)}
    return all(all(v.values()) for v in out.values()), out


def elliptic():
    gen = prism.elliptic_derivative_symbolic(prism.GENERIC)
    ng = prism.elliptic_derivative_symbolic(prism.NONGENERIC)
    ng_want = RatFunc(parse("2 + 18 s^2", ("s",)))
    formula = prism.elliptic_variation_formula()
    # t -> infinity: numerator and denominator both have degree 5 in t
    num, den = formula.num, formula.den
    lead_n = num.coeffs_in("t")[num.degree("t")]
    lead_d = den.coeffs_in("t")[den.degree("t")]
    limit = RatFunc(lead_n.with_vars(("s",)), lead_d.with_vars(("s",)))
    lim_ok = num.degree("t") == den.degree("t") and limit == RatFunc(parse("4 + 36 s^2", ("s",)))
    return gen == formula and ng == ng_want and lim_ok, {
        "generic": gen == formula, "nongeneric": ng == ng_want, "limit": lim_ok}


def random_convex_box(rng):
    """A random convex marked box: the unit-square box moved by a random projective map."""
    while True:
        c, d = (rat(rng.randint(1, 99), 100) for _ in range(2))
        M = Mat3([[rat(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)] for _ in range(3)])
        if not M.det():
            continue
        Y = unit_square_box(c, d).apply(M)
        if is_affine_convex(Y):
            return Y


def box_relations(n=100, seed=0):
    rng = random.Random(seed)
    fails = {"ii": 0, "tit": 0, "bib": 0, "tibi": 0}
    for _ in range(n):
        Y = random_convex_box(rng)
        fails["ii"] += apply_word(Y, "ii") != Y
        fails["tit"] += apply_word(Y, "tit") != apply_word(Y, "b")
        fails["bib"] += apply_word(Y, "bib") != apply_word(Y, "t")
        fails["tibi"] += apply_word(Y, "tibi") != Y
    return not any(fails.values()), {"boxes": n, "failures": fails}


def translations():
    from .algebra.mpoly import MPoly
    r, s, t, d = (RatFunc(g) for g in MPoly.gens(("r", "s", "t", "d")))
    p = prism.PrismParams(r, s, t)
    o = prism.translation_J(p, d, prism.ORTHOGONAL)
    m = prism.translation_J(p, d, prism.MEDIAL)
    one = d * 0 + 1
    ok_o = tuple(o.eigenvalues) == (one, d * d, d * d)
    ok_m = tuple(m.eigenvalues) == (one, d * d, one / (d * d))
    return ok_o and ok_m, {"orthogonal": ok_o, "medial": ok_m}


def core_suite(fast=False, seed=0):
    n_box = 20 if fast else 100
    return [
        _timed("core", "eigenvalue_law", eigen_law),
        _timed("core", "det_S", det_s),
        _timed("core", "first_invariant", lambda: first_invariant_samples(20, seed)),
        _timed("core", "unit_prism_invariants", unit_prism_invariants),
        _timed("core", "partner_swap", partner_swap),
        _timed("core", "elliptic_derivative", elliptic),
        _timed("core", "box_relations", lambda: box_relations(n_box, seed)),
        _timed("core", "translations", translations),
    ]


# -- monster: the closed form of the partner invariant ----------------------------------

def monster_positive(n=1000, seed=0):
    rng = random.Random(seed)
    fx = prism.fixtures("monster")
    A, B = fx["A"], fx["B"]
    bad = 0
    for _ in range(n):
        v = (_rand_rat(rng), _rand_rat(rng), _rand_rat(rng))
        bad += not (A.evaluate(v) > 0 and B.evaluate(v) > 0)
    return not bad, {"samples": n, "failures": bad}


def monster_equivalence(n=200, seed=0):
    rng = random.Random(seed)
    bad, done = [], 0
    while done < n:
        p = prism.PrismParams(_rand_rat(rng), _rand_rat(rng), _rand_rat(rng))
        if prism.lam(p) == -1:
            continue
        done += 1
        if prism.partner(p).tau_prime != prism.tau_prime_closed(p):
            bad.append([rat_str(x) for x in (p.r, p.s, p.t)])
    return not bad, {"samples": n, "failures": bad[:5]}


def monster_suite(fast=False, seed=0):
    return [
        _timed("monster", "A_B_positive", lambda: monster_positive(100 if fast else 1000, seed)),
        _timed("monster", "tau_prime_closed_form", lambda: monster_equivalence(20 if fast else 200, seed)),
    ]


# -- blv: generators and the duality polynomial --------------------------------------------

def generators_symbolic():
    G = blv.symbolic_generators()
    C = blv.closed_form_generators()
    chk = blv.generator_checks(G)
    same = G.r1 == C.r1 and G.r2 == C.r2
    one = rat(1)
    P = blv.generators(one, one, rat(1, 3), rat(-2, 5))
    parab = blv.is_parabolic(P.r1 @ P.r2)
    return same and all(chk.values()) and parab, dict(chk, equals_closed_form=same, parabolic_at_1_1=parab)


def generators_sampled(n=10, seed=0):
    rng = random.Random(seed)
    C = blv.closed_form_generators()
    bad = 0
    for _ in range(n):
        a, b = _rand_rat(rng, 1, 30, 30), _rand_rat(rng, 1, 30, 30)
        c, d = (rat(rng.randint(-29, 29), 30) for _ in range(2))
        G = blv.generators(a, b, c, d)
        pt = (a, b, c, d)
        ok = (G.r1 == blv.evaluate_matrix(C.r1, pt) and G.r2 == blv.evaluate_matrix(C.r2, pt)
              and all(blv.generator_checks(G).values()))
        bad += not ok
    one = rat(1)
    P = blv.generators(one, one, rat(1, 3), rat(-2, 5))
    parab = blv.is_parabolic(P.r1 @ P.r2)
    return not bad and parab, {"samples": n, "failures": bad, "parabolic_at_1_1": parab}


def duality_uniqueness(n=500, seed=0):
    rng = random.Random(seed)
    bad = []
    for _ in range(n):
        b = rat(rng.randint(1, 999), 1000)
        c, d = (rat(rng.randint(-999, 999), 1000) for _ in range(2))
        k = blv.segment_root_count(b, c, d)
        if k != 1:
            bad.append([rat_str(x) for x in (b, c, d)] + [k])
    return not bad, {"samples": n, "failures": bad[:5]}


def blv_suite(fast=False, seed=0):
    checks = [
        _timed("blv", "generators", (lambda: generators_sampled(5, seed)) if fast else generators_symbolic),
    ]
    t0 = time.perf_counter()
    rep = blv.certificate_suite(fast=fast, seed=seed)
    dt = (time.perf_counter() - t0) / max(1, len(rep.certificates))
    for c in rep.certificates:
        checks.append(Check(c.name, "blv", c.passed, dt, {"method": c.method, **c.detail}))
    checks.append(_timed("blv", "duality_uniqueness", lambda: duality_uniqueness(50 if fast else 500, seed)))
    return checks


def run(suites, fast=False, seed=0):
    table = {"core": core_suite, "monster": monster_suite, "blv": blv_suite}
    out = []
    for s in suites:
        out += table[s](fast=fast, seed=seed)
    return out
