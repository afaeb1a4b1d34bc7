from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from prismgroups.algebra import (MPoly, QuadExt, ResultantError, RootRefinementError, context,
                                 count_roots, isolate_positive_roots, parse, rat, rat_str,
                                 refine_root, resultant, sturm_count)
from prismgroups.algebra.mpoly import read_fixtures, write_fixture
from prismgroups.algebra.rat import cbrt_exact, isqrt_exact, squarefree_split

X = ("x",)
small = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(rat)


def P(text, vars=X):
    return parse(text, vars)


# -- rationals and the quadratic field --------------------------------------------

def test_rat_lowest_terms():
    q = rat(6, -4)
    assert (q.numerator, q.denominator) == (-3, 2)
    assert rat("10/4") == rat(5, 2)
    assert rat("0.125") == rat(1, 8)
    assert rat_str(rat(-3, 2)) == "-3/2"
    assert rat_str(rat(4)) == "4"


def test_exact_roots():
    assert cbrt_exact(rat(-27, 8)) == rat(-3, 2)
    assert cbrt_exact(rat(2)) is None
    assert isqrt_exact(rat(9, 16)) == rat(3, 4)
    assert isqrt_exact(rat(-1)) is None
    assert squarefree_split(72) == (6, 2)


def test_quadext_basics():
    s3 = QuadExt.sqrt(3)
    assert s3 * s3 == 3
    assert QuadExt.sqrt(12) == 2 * s3
    assert QuadExt.sqrt(rat(9, 4)) == rat(3, 2)
    assert not QuadExt(3, 0, 0)
    assert (1 + s3) / (1 + s3) == 1
    assert s3 > 1 and -s3 < 0


def test_quadext_field_mismatch():
    with pytest.raises(ValueError):
        QuadExt.sqrt(2) + QuadExt.sqrt(3)
    with pytest.raises(ValueError):
        QuadExt(12, 1, 1)


@given(small, small)
def test_quadext_norm(a, b):
    z = QuadExt(5, a, b)
    assert z * z.conjugate() == a * a - 5 * b * b


@given(small, small, small, small)
def test_quadext_field_ops(a, b, c, d):
    u, v = QuadExt(3, a, b), QuadExt(3, c, d)
    assert (u + v) - v == u
    if v:
        assert (u / v) * v == u


def test_bigfloat_context_records_precision():
    ctx = context(100)
    x = ctx.mpf(1) / 3
    assert x.context.prec == 100
    assert context(256).sqrt(2) ** 2 - 2 < context(256).mpf(2) ** -250


# -- polynomials -------------------------------------------------------------------

def test_mpoly_canonical_zero():
    p = P("3*x*y^2 - y + 7", ("x", "y"))
    z = p + (-p)
    assert z.is_zero() and len(z) == 0 and z.to_dict() == {}


@given(st.lists(small, min_size=1, max_size=5), st.lists(small, min_size=1, max_size=5))
def test_mpoly_ring_laws(a, b):
    p = MPoly.from_univariate(a, "x")
    q = MPoly.from_univariate(b, "x")
    assert p * q == q * p
    assert (p + q) * (p - q) == p * p - q * q


def test_mpoly_parse_and_evaluate():
    p = P("(a + 2*b)^2 - a*b", ("a", "b"))
    assert p.evaluate((rat(1), rat(3))) == 46
    assert p.diff("a") == P("2*a + 3*b", ("a", "b"))
    assert p.degree("b") == 2


def test_substitute_examples():
    vars = ("a", "b")
    a2 = P("a^2", vars)
    q, k = a2.substitute("a", P("1 + b", vars), P("b", vars))
    assert (q, k) == (P("(1 + b)^2", vars), 2)
    q, k = P("a + 1", vars).substitute("a", P("0", vars), P("1", vars))
    assert (q, k) == (P("1", vars), 1)


@given(small, small)
def test_substitute_commutes_with_evaluate(b0, shift):
    vars = ("a", "b")
    p = P("a^3*b - 2*a*b^2 + 5*a - b + 1", vars)
    num, den = P("1 + 2*b - b^2", vars), P("1 + b^2", vars)
    q, k = p.substitute("a", num, den)
    pt = (rat(0), b0)
    dv = den.evaluate(pt)
    assert q.evaluate(pt) == dv ** k * p.evaluate((num.evaluate(pt) / dv, b0))


def test_fixture_round_trip():
    vars = ("a", "b")
    p = P("3/2*a^2*b - b + 4", vars)
    text = write_fixture("demo", p, comment="a test polynomial")
    back = read_fixtures(text)["demo"]
    assert back == p


def test_proportional_and_gcd():
    p = P("(x - 1)*(x + 2)")
    q = P("(x - 1)*(x - 3)")
    assert p.gcd(q).proportional_to(P("x - 1"))
    assert (P("4*x - 4")).proportional_to(P("x - 1")) == 4


# -- resultants ------------------------------------------------------------------

def test_resultant_linear():
    vars = ("a", "b", "c", "d", "x")
    r = resultant(P("a*x + b", vars), P("c*x + d", vars), "x")
    assert r == P("a*d - b*c", vars)


def test_resultant_shared_root():
    assert resultant(P("x^2 - 1"), P("x - 1"), "x").is_zero()


def test_resultant_needs_variable():
    vars = ("x", "y")
    with pytest.raises(ResultantError, match="not univariate in elimination variable"):
        resultant(P("y + 1", vars), P("x - 1", vars), "x")


def test_resultant_against_sympy():
    vars = ("x", "y")
    p, q = P("x^3*y - 2*x + y^2", vars), P("x^2 - x*y + 3", vars)
    x, y = sympy.symbols("x y")
    want = sympy.resultant(x ** 3 * y - 2 * x + y ** 2, x ** 2 - x * y + 3, x)
    got = resultant(p, q, "x")
    assert sympy.expand(sympy.sympify(str(got)) - want) == 0


@settings(max_examples=60)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3),
       st.lists(st.integers(-3, 3), min_size=1, max_size=3),
       st.lists(st.integers(-3, 3), min_size=1, max_size=2))
def test_resultant_vanishes_iff_common_factor(r1, r2, common):
    # build p, q with prescribed roots; a shared root is optional
    def from_roots(roots):
        out = P("1")
        for z in roots:
            out = out * P(f"x - ({z})")
        return out
    share = common[0] in r1 or common[0] in r2
    p = from_roots(r1 + common[:1]) if share else from_roots(r1)
    q = from_roots(r2 + common[:1]) if share else from_roots(r2)
    res = resultant(p, q, "x")
    assert res.is_zero() == (not p.gcd(q).is_constant())


# -- Sturm counting and root isolation --------------------------------------------

def test_sturm_examples():
    p = P("x^2 - 2")
    assert sturm_count(p, 0, 2) == 1
    assert sturm_count(p, -2, 2) == 2


def test_sturm_endpoint_shift_recorded():
    p = P("(x - 1)*(x - 2)*(x - 3)")
    rc = count_roots(p, 1, 3)
    assert rc.count == 1
    assert {s[0] for s in rc.shifts} == {"lo", "hi"}


def test_sturm_rejects_zero_polynomial():
    with pytest.raises(ValueError):
        sturm_count(P("0"), 0, 1)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=1, max_size=6),
       st.fractions(min_value=-5, max_value=0, max_denominator=7),
       st.fractions(min_value=0, max_value=5, max_denominator=7))
def test_sturm_matches_known_roots(roots, lo, hi):
    lo, hi = rat(lo), rat(hi) + 1
    p = P("1")
    for z in roots:
        p = p * MPoly.from_univariate([-rat(z), 1], "x")
    want = len({Fraction(z) for z in roots if lo < rat(z) < hi})
    assert sturm_count(p, lo, hi) == want


def test_isolate_positive_roots():
    iv = isolate_positive_roots(P("x^2 - 2"))
    assert len(iv) == 1
    lo, hi = iv[0]
    assert lo ** 2 < 2 < hi ** 2
    iv = isolate_positive_roots(P("(x - 1)*(x - 3)"))
    assert len(iv) == 2
    assert iv[0][1] <= iv[1][0]
    assert isolate_positive_roots(P("x^2 + 1")) == []


def test_refine_sqrt2():
    rr = refine_root(P("x^2 - 2"), (1, 2), prec=64)
    ctx = context(64)
    assert abs(rr.value - ctx.sqrt(2)) < ctx.mpf(2) ** -60


def test_refine_plastic_number():
    # oracle: plain float bisection
    lo, hi = 1.0, 2.0
    for _ in range(60):
        m = (lo + hi) / 2
        lo, hi = (m, hi) if m ** 3 - m - 1 < 0 else (lo, m)
    rr = refine_root(P("x^3 - x - 1"), (1, 2), prec=128)
    assert abs(float(rr.value) - lo) < 1e-12
    assert abs(float(rr.value) - 1.3247179572447) < 1e-12


def test_refine_without_sign_change():
    with pytest.raises(RootRefinementError) as exc:
        refine_root(P("x^2 + 1"), (0, 1))
    assert exc.value.enclosure == (0, 1)
