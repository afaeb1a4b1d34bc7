import random

import pytest

from prismgroups import blv
from prismgroups.algebra import MPoly, rat, sturm_count
from prismgroups.projgeom import Mat3, Y0


def points(n, seed=0):
    rng = random.Random(seed)
    for _ in range(n):
        a, b = (rat(rng.randint(1, 20), rng.randint(1, 20)) for _ in range(2))
        c, d = (rat(rng.randint(-19, 19), 20) for _ in range(2))
        yield a, b, c, d


def test_morph_identity_at_one():
    one = rat(1)
    assert blv.morph_matrix(blv.MorphParams(one, one)) == Mat3.identity(one)
    with pytest.raises(ValueError):
        blv.MorphParams(rat(-1), one)


def test_generators_match_closed_form():
    C = blv.closed_form_generators()
    for pt in points(5):
        G = blv.generators(*pt)
        assert G.r1 == blv.evaluate_matrix(C.r1, pt)
        assert G.r2 == blv.evaluate_matrix(C.r2, pt)
        assert all(blv.generator_checks(G).values())
        assert all(blv.orbit_checks(*pt, G=G).values())


def test_symbolic_generators():
    G = blv.symbolic_generators()
    C = blv.closed_form_generators()
    assert G.r1 == C.r1 and G.r2 == C.r2
    assert all(blv.generator_checks(G).values())


def test_parabolic_at_unit_morph():
    one = rat(1)
    for c, d in ((rat(1, 3), rat(-2, 5)), (rat(0), rat(1, 2)), (rat(-3, 4), rat(3, 4))):
        G = blv.generators(one, one, c, d)
        assert blv.is_parabolic(G.r1 @ G.r2)
    G = blv.generators(rat(2), rat(1, 2), rat(1, 3), rat(-2, 5))
    assert not blv.is_parabolic(G.r1 @ G.r2)


def test_trace_identity():
    ok, ratios = blv.trace_identity(blv.psi_poly())
    assert ok and ratios == ["1/4"]


def test_trace_identity_detects_corruption():
    p = blv.psi_poly()
    bad = p + MPoly.gen("a", p.vars) * MPoly.gen("c", p.vars)
    ok, _ = blv.trace_identity(bad)
    assert not ok


def test_psi_from_generators_proportional():
    # the fixture is the trace numerator up to a constant
    assert blv.psi_from_generators().proportional_to(blv.psi_poly())


def test_psi_vanishes_at_a_equals_one_when_d_zero():
    for b, c in ((rat(1, 2), rat(1, 3)), (rat(3, 7), rat(-1, 5))):
        assert blv.psi(rat(1), b, c, rat(0)) == 0


def test_certificates_exact():
    rep = blv.certificate_suite()
    assert rep.passed, [c.name for c in rep.certificates if not c.passed]
    names = {c.name for c in rep.certificates}
    assert {"trace_identity", "res_psi", "res_grad_r", "sturm_g", "f_nonnegative",
            "boundary_restrictions", "psi_at_d=0", "r_at_a=1/2", "r_at_a=3/2",
            "r_at_b=0", "r_at_b=1"} <= names


def test_certificates_fast():
    assert blv.certificate_suite(fast=True).passed


def test_sturm_g_has_no_roots():
    assert sturm_count(blv.fixtures("blv")["g"], 0, 2) == 0


def test_f_grid():
    ok, _ = blv.f_grid_check(21)
    assert ok
    assert blv.f_cd(rat(0), rat(0)) == 0


def test_good_region():
    lo, hi = blv.good_region_bounds(rat(1, 2))
    assert lo == rat(5, 7) and hi == rat(7, 5)
    assert blv.good_region_bounds(rat(2)) is None
    assert blv.good_region(rat(1), rat(1, 2))
    assert not blv.good_region(rat(2), rat(1, 2))
    assert blv.good_region_bounds(rat(1)) == (1, 1)


def test_duality_curve_point():
    b, c, d = rat(1, 2), rat(1, 3), rat(-1, 4)
    a = blv.duality_curve_point(b, c, d)
    lo, hi = blv.good_region_bounds(b)
    assert float(lo) < float(a) < float(hi)
    ctx = a.context
    val = blv.psi_poly().evaluate((a, ctx.mpf(1) / 2, ctx.mpf(1) / 3, ctx.mpf(-1) / 4))
    assert abs(val) < ctx.mpf(10) ** -60


def test_duality_curve_at_d_zero_is_a_one():
    assert blv.duality_curve_point(rat(1, 3), rat(1, 2), rat(0)) == 1


def test_segment_uniqueness_sample():
    rng = random.Random(9)
    for _ in range(50):
        b = rat(rng.randint(1, 99), 100)
        c, d = (rat(rng.randint(-99, 99), 100) for _ in range(2))
        assert blv.segment_root_count(b, c, d) == 1


def test_segment_validation():
    with pytest.raises(ValueError):
        blv.segment_root_count(rat(3, 2), rat(0), rat(0))


def test_orbit_words():
    one = rat(1)
    out = blv.orbit(rat(0), rat(0), one, one, 3)
    words = [w for w, _ in out]
    assert words[0] == ""
    assert len(words) == 1 + 3 + 8 + 22
    assert all("ii" not in w for w in words)
    assert out[0][1] == Y0(0, 0)
    assert blv.orbit(rat(0), rat(0), one, one, 3) == out
