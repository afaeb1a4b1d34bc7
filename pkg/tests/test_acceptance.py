"""The twelve acceptance criteria, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py``; the lines appear in the
"acceptance criteria" section of the terminal summary.  Criterion 10 is
reported as FAIL: its reference ratio is off by a factor 16 from the value
consistent with the reference s (see the xfail test below).
"""

import random
import time

import pytest
from conftest import record

from prismgroups import blv, checks, dynamics, prism
from prismgroups.algebra import MPoly, RatFunc, context, rat, to_bigfloat
from prismgroups.projgeom import DegenerateError, Flag, FlagTriple, cross, orthogonal_pair_invariants
from prismgroups.projgeom import triple_product

CTX = context(256)


def test_criterion_01_eigenvalue_law():
    ok, detail = checks.eigen_law()
    record(1, "eigenvalue law of g^2, generic and non-generic (symbolic)", ok,
           ", ".join(f"{k}: {all(v.values())}" for k, v in detail.items()))
    assert ok


def test_criterion_02_det_s():
    ok, _ = checks.det_s()
    record(2, "det S = 6 sqrt3 r s t (1+t) over Q(sqrt3)", ok)
    assert ok


def test_criterion_03_triple_invariants():
    r, s, t = (RatFunc(g) for g in MPoly.gens(("r", "s", "t")))
    symbolic = prism.first_invariant(prism.PrismParams(r, s, t)) == -t ** 3 / (t + 1) ** 3
    sampled, _ = checks.first_invariant_samples(20)
    unit, detail = checks.unit_prism_invariants()
    ok = symbolic and sampled and unit
    record(3, "first invariant -t^3/(t+1)^3; (1,1,1) logs 3 log 2, 3 log(9825/5602)", ok,
           f"logs {detail['first_log']}, {detail['partner_log']}")
    assert ok


def test_criterion_04_partner_swap():
    ok, detail = checks.partner_swap()
    record(4, "elliptic polarity swaps the partner flags (symbolic)", ok)
    assert ok


def test_criterion_05_monster():
    pos, d1 = checks.monster_positive(1000)
    eq, d2 = checks.monster_equivalence(200)
    ok = pos and eq
    record(5, "partner invariant equals the A/B closed form; A, B > 0", ok,
           f"{d2['samples']} exact equalities, {d1['samples']} positivity samples")
    assert ok


def test_criterion_06_elliptic_derivative():
    ok, detail = checks.elliptic()
    record(6, "elliptic derivative: generic form, 2+18s^2, limit 4+36s^2", ok)
    assert ok


def test_criterion_07_generators():
    ok, detail = checks.generators_symbolic()
    record(7, "r1, r2 from boxes equal the closed forms; order 3; parabolic at (1,1)", ok)
    assert ok


def test_criterion_08_certificates():
    t0 = time.perf_counter()
    full = blv.certificate_suite(fast=False)
    t_full = time.perf_counter() - t0
    t0 = time.perf_counter()
    fast = blv.certificate_suite(fast=True)
    t_fast = time.perf_counter() - t0
    ok = full.passed and fast.passed and t_full <= 15 * 60 and t_fast <= 30
    failed = [c.name for c in full.certificates if not c.passed]
    record(8, "duality polynomial certificate chain (exact and --fast)", ok,
           f"{len(full.certificates)} certificates, full {t_full:.1f}s, fast {t_fast:.1f}s"
           + (f", failed {failed}" if failed else ""))
    assert ok


def test_criterion_09_duality_uniqueness():
    ok, detail = checks.duality_uniqueness(500)
    record(9, "one root of psi on each foliating segment (500 samples)", ok,
           f"failures {detail['failures']}" if not ok else "")
    assert ok


# -- criterion 10 ------------------------------------------------------------------

REFERENCE_RATIO = CTX.sqrt(CTX.mpf(394351201) / 768509149) / 8
REFERENCE_S = 27305 * CTX.sqrt(768509149) / 4296643304


@pytest.fixture(scope="module")
def example_step():
    p0 = dynamics.DynPoint.from_rst(rat(2), rat(1), rat(1, 3))
    t0 = time.perf_counter()
    out, tr = dynamics.phi_step(p0, dynamics.DynConfig(d=rat(1, 2)))
    return out, tr, time.perf_counter() - t0


def _example_subchecks(tr):
    c2, c1, c0 = dynamics._charpoly(tr.sheared)
    eig = all(x ** 3 + c2 * x * x + c1 * x + c0 == 0 for x in (rat(1), rat(-16), rat(-1, 16)))
    s = tr.s_root if hasattr(tr.s_root, "context") else to_bigfloat(tr.s_root, CTX)
    t_new = rat(-3074036596, 2679685395)
    return {
        "chi": tr.chi == rat(-1, 64),
        "eigenvalues": eig,
        "t_prime": abs(to_bigfloat(tr.t_new - t_new, CTX)) < 1e-30,
        "ratio": abs(tr.ratio - REFERENCE_RATIO) < 1e-30,
        "s": abs(s - REFERENCE_S) < 1e-25,
        "eigen_conserved": tr.eigen_conserved is True,
        "invariants_exchanged": tr.invariants_exchanged is True,
    }


def test_criterion_10_dynamics_example(example_step):
    out, tr, secs = example_step
    sub = _example_subchecks(tr)
    failed = [k for k, v in sub.items() if not v]
    detail = f"{secs:.2f}s"
    if failed:
        detail += (f"; failed {failed}: r/s = {CTX.nstr(tr.ratio, 12)} vs reference "
                   f"{CTX.nstr(REFERENCE_RATIO, 12)} (factor {CTX.nstr(tr.ratio / REFERENCE_RATIO, 6)})")
    record(10, "worked example of the shearing map from (2, 1, 1/3), d = 1/2", not failed, detail)
    # everything except the reference ratio is reproduced
    assert failed == ["ratio"] or not failed
    assert abs(tr.ratio - 16 * REFERENCE_RATIO) < 1e-30


@pytest.mark.xfail(strict=True, reason="reference ratio is 1/16 of the ratio consistent with the reference s")
def test_criterion_10_reference_ratio(example_step):
    _, tr, _ = example_step
    assert abs(tr.ratio - REFERENCE_RATIO) < 1e-30


# -- criterion 11 ------------------------------------------------------------------

def test_criterion_11_orbit():
    p0 = dynamics.DynPoint.from_rst(rat(2), rat(1), rat(1, 3))
    t0 = time.perf_counter()
    orbit = dynamics.iterate(p0, dynamics.DynConfig(d=rat(1, 2)), 300)
    secs = time.perf_counter() - t0
    rs = [float(x) ** 0.5 for p in orbit.points for x in (p.r2, p.s2)]
    resid = float(orbit.max_residual())
    bounded = all(0 < x < 10 for x in rs)
    ok = (orbit.error is None and len(orbit.points) == 301 and resid < 1e-20 and bounded
          and secs <= 300)
    record(11, "300-step orbit: Pappus residual < 1e-20, (r, s) bounded", ok,
           f"max residual {resid:.2e}, r and s in [{min(rs):.2e}, {max(rs):.3f}], {secs:.1f}s")
    assert ok


# -- criterion 12 ------------------------------------------------------------------

def _random_flag(rng):
    while True:
        p = tuple(rat(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3))
        o = tuple(rat(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3))
        line = cross(p, o)
        if any(p) and any(line):
            return Flag(p, line)


def _triple_properties(n=200, seed=0):
    rng = random.Random(seed)
    done = 0
    while done < n:
        try:
            T = FlagTriple(*(_random_flag(rng) for _ in range(3)))
        except DegenerateError:
            continue
        chi = triple_product(T)
        if not chi < 0:
            continue
        done += 1
        scaled = []
        for f in T:
            u, v = rat(rng.randint(1, 9), -rng.randint(1, 9)), rat(rng.randint(1, 9), rng.randint(1, 9))
            scaled.append(Flag(tuple(u * x for x in f.point), tuple(v * x for x in f.line)))
        if (triple_product(FlagTriple(*scaled)) != chi
                or triple_product(T.permuted((1, 2, 0))) != chi
                or triple_product(T.permuted((1, 0, 2))) != 1 / chi):
            return False
    return True


def _orthogonal_same_sign(n=1000, seed=0):
    rng = random.Random(seed)
    done = 0
    while done < n:
        r, x, y = (rat(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(3))
        try:
            t1, t2 = orthogonal_pair_invariants(r, x, y)
        except DegenerateError:
            continue
        done += 1
        if t1 / t2 < 0:
            return False
    return True


def test_criterion_12_properties():
    boxes, _ = checks.box_relations(100)
    triples = _triple_properties()
    ortho = _orthogonal_same_sign(1000)
    lemma, _ = checks.translations()
    ok = boxes and triples and ortho and lemma
    record(12, "box relations, triple product invariance, orthogonal pairs, translation eigen-structure",
           ok, f"boxes {boxes}, triples {triples}, orthogonal {ortho}, translations {lemma}")
    assert ok
