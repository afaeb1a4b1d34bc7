import random

import pytest

from prismgroups import prism
from prismgroups.algebra import QuadExt, RatFunc, context, parse, rat
from prismgroups.projgeom import duality_conjugate, prism_invariant

SQRT3 = QuadExt.sqrt(3)


def samples(n, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p = prism.PrismParams(*(rat(rng.randint(1, 30), rng.randint(1, 12)) for _ in range(3)))
        if prism.lam(p) != -1:
            out.append(p)
    return out


def test_params_validation():
    with pytest.raises(ValueError):
        prism.PrismParams(rat(-1), rat(1), rat(1))
    with pytest.raises(ValueError):
        prism.PrismParams(rat(1), rat(1), rat(-1, 2))
    with pytest.raises(ValueError):
        prism.PrismParams(rat(1), rat(1))
    assert prism.PrismParams.nongeneric(rat(1), rat(2)).t is None


def test_eigenvalue_law_numeric():
    for p in samples(10):
        ev = prism.lambda_of(p)
        assert ev.lam == -(p.r ** 2 / p.s ** 2) * p.t / (1 + p.t)
        g2 = prism.build_scene(p).g2
        assert g2.det() == 1 and g2.trace() == ev.trace == 1 + ev.lam + 1 / ev.lam


def test_classification():
    assert prism.classify(rat(-1)) == "neutral"
    assert prism.classify(rat(-16)) == "attracting"
    assert prism.classify(rat(-1, 16)) == "repelling"


def test_det_s():
    for p in samples(5, 1):
        scene = prism.build_scene(p)
        assert scene.detS == 6 * SQRT3 * p.r * p.s * p.t * (1 + p.t)


def test_first_invariant():
    one = rat(1)
    assert prism.first_invariant(prism.PrismParams(one, one, one)) == rat(-1, 8)
    for p in samples(5, 2):
        assert prism.first_invariant(p) == -p.t ** 3 / (p.t + 1) ** 3
    assert prism.first_invariant(prism.PrismParams.nongeneric(rat(2), rat(3))) == -1


def test_unit_prism_partner():
    one = rat(1)
    rep = prism.partner(prism.PrismParams(one, one, one))
    assert rep.tau_prime == -rat(9825, 5602) ** 3
    assert rep.swap_verified
    ctx = context(256)
    inv = prism_invariant(rep.tau_prime)
    assert abs(inv - 3 * ctx.log(ctx.mpf(9825) / 5602)) < 1e-12


def test_partner_on_locus_is_undefined():
    p = prism.PrismParams(rat(2), rat(1), rat(1, 3))
    assert prism.lam(p) == -1
    with pytest.raises(prism.NeutralError):
        prism.partner(p)


def test_partner_swap_and_closed_form():
    for p in samples(8, 3):
        rep = prism.partner(p)
        assert rep.swap_verified
        assert rep.tau_prime == prism.tau_prime_closed(p)
        assert rep.tau_prime == -prism.tau_root_squares(p.r ** 2, p.s ** 2, p.t) ** 3


def test_partner_nongeneric_closed_form():
    for r, s in ((rat(1), rat(2)), (rat(3, 2), rat(1, 3)), (rat(5), rat(2))):
        p = prism.PrismParams.nongeneric(r, s)
        rep = prism.partner(p)
        assert rep.swap_verified
        assert rep.tau_prime == prism.tau_prime_closed(p)


def test_partner_numeric_matches_exact():
    p = samples(1, 4)[0]
    ctx = context(200)
    q = prism.PrismParams(*(ctx.mpf(x.numerator) / x.denominator for x in (p.r, p.s, p.t)))
    rep = prism.partner(q)
    assert rep.swap_verified
    assert abs(rep.tau_prime - ctx.mpf(prism.partner(p).tau_prime.numerator)
               / prism.partner(p).tau_prime.denominator) < ctx.mpf(2) ** -150 * abs(rep.tau_prime)


def test_monster_polynomials_positive():
    A, B = prism.fixtures("monster")["A"], prism.fixtures("monster")["B"]
    rng = random.Random(5)
    for _ in range(50):
        v = tuple(rat(rng.randint(1, 40), rng.randint(1, 40)) for _ in range(3))
        assert A.evaluate(v) > 0 and B.evaluate(v) > 0


def test_symbolic_eigen_law():
    for kind in (prism.GENERIC, prism.NONGENERIC):
        sc = prism.symbolic_checks(kind)
        assert sc["det_g2"] and sc["trace"] and sc["second_invariant"]
    assert prism.symbolic_checks(prism.GENERIC)["det_S"]


def test_swap_identities():
    for kind in (prism.GENERIC, prism.NONGENERIC):
        assert all(prism.swap_identities(kind).values())


def test_elliptic_derivative():
    formula = prism.elliptic_variation_formula()
    assert prism.elliptic_derivative_symbolic(prism.GENERIC) == formula
    assert prism.elliptic_derivative_symbolic(prism.NONGENERIC) == RatFunc(parse("2 + 18 s^2", ("s",)))
    # (2, 1, 1/3) lies on the parabolic locus
    p = prism.PrismParams(rat(2), rat(1), rat(1, 3))
    assert prism.elliptic_derivative(p) == formula.evaluate((rat(1), rat(1, 3)))
    with pytest.raises(ValueError):
        prism.elliptic_derivative(prism.PrismParams(rat(1), rat(1), rat(1)))


def test_translations_numeric():
    p = prism.PrismParams(rat(2), rat(3), rat(1, 2))
    d = rat(3)
    o = prism.translation_J(p, d, prism.ORTHOGONAL)
    m = prism.translation_J(p, d, prism.MEDIAL)
    assert o.eigenvalues == (1, 9, 9)
    assert m.eigenvalues == (1, 9, rat(1, 9))
    with pytest.raises(ValueError):
        prism.translation_J(p, rat(-1))


def test_duality_matrix():
    S = prism.build_scene(samples(1, 6)[0]).S
    assert prism.duality_m2(S) == duality_conjugate(S)
