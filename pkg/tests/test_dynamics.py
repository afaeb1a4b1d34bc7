import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prismgroups import dynamics as dyn
from prismgroups.algebra import context, rat
from prismgroups.algebra.sturm import horner
from prismgroups.prism import NeutralError

HALF = rat(1, 2)
P0 = dyn.DynPoint.from_rst(rat(2), rat(1), rat(1, 3))
T_NEW = rat(-3074036596, 2679685395)
R2_NEW = rat(294013674329943025, 4615285920452009104)
S2_NEW = rat(572972005868615725, 18461143681808036416)
CTX = context(256)


@pytest.fixture(scope="module")
def step():
    return dyn.phi_step(P0, dyn.DynConfig(d=HALF))


def test_start_point_on_locus():
    assert P0.pappus_residual() == 0
    assert P0.t_from_rs() == rat(1, 3)
    assert P0.lam() == -1


def test_point_validation():
    with pytest.raises(ValueError):
        dyn.DynPoint(rat(-1), rat(1), rat(1))
    with pytest.raises(ValueError):
        dyn.DynPoint(rat(1), rat(1), rat(-1, 2))
    with pytest.raises(ValueError):
        dyn.DynConfig(d=rat(0))
    with pytest.raises(ValueError):
        dyn.DynConfig(branch="sideways")


def test_example_intermediates(step):
    out, tr = step
    assert tr.sheared == dyn.DynPoint(rat(1), rat(4), rat(1, 3))
    assert tr.chi == rat(-1, 64)
    assert tr.lam == rat(-1, 16)
    assert tr.t_new == T_NEW
    assert tr.root_method == "sturm+exact"
    assert tr.described.r2 == R2_NEW and tr.described.s2 == S2_NEW
    assert tr.eigen_conserved is True and tr.invariants_exchanged is True
    assert not tr.flags


def test_example_closed_forms(step):
    _, tr = step
    s_closed = 27305 * CTX.sqrt(768509149) / 4296643304
    assert abs(CTX.sqrt(CTX.mpf(S2_NEW.numerator) / S2_NEW.denominator) - s_closed) < 1e-25
    ratio = CTX.mpf(tr.ratio) if not hasattr(tr.ratio, "context") else tr.ratio
    assert abs(ratio - 2 * CTX.sqrt(CTX.mpf(394351201) / 768509149)) < 1e-30


def test_example_eigenvalues(step):
    out, tr = step
    # charpoly of g^2 at the sheared point: roots 1, -16, -1/16
    c2, c1, c0 = dyn._charpoly(tr.sheared)
    for x in (rat(1), rat(-16), rat(-1, 16)):
        assert x ** 3 + c2 * x * x + c1 * x + c0 == 0
    assert dyn._charpoly(tr.described) == (c2, c1, c0)


def test_example_output_on_locus(step):
    out, tr = step
    assert out.pappus_residual() == 0
    assert out.t == T_NEW
    assert abs(float(out.r) - 0.1261985786) < 1e-10
    assert abs(float(out.s) - 0.3523444186) < 1e-10


def test_example_conjugator(step):
    _, tr = step
    rep = dyn.conjugacy_check(dyn.EXAMPLE_CONJUGATOR, tr.sheared, tr.described)
    assert rep.polarity and rep.rotation == "fixed" and rep.passed


def test_s_equation_root(step):
    _, tr = step
    c = dyn.s_equation(-tr.lam_star * (T_NEW + 1) / T_NEW, T_NEW, tr.sheared.t / (tr.sheared.t + 1))
    assert horner(c, S2_NEW) == 0


def test_preserve_branch_differs(step):
    out, tr = dyn.phi_step(P0, dyn.DynConfig(d=HALF, branch=dyn.PRESERVE))
    assert tr.t_new == T_NEW
    # this branch gives r/s = sqrt(394351201/768509149)/8 but a different s
    assert abs(tr.ratio - CTX.sqrt(CTX.mpf(394351201) / 768509149) / 8) < 1e-30
    assert abs(float(tr.s_root) - 0.17617221) > 0.5
    assert "output off Pappus locus" in tr.flags


def test_canonical_matching_changes_t():
    _, tr = dyn.phi_step(P0, dyn.DynConfig(d=HALF, matching=dyn.CANONICAL))
    assert tr.t_new != T_NEW


def test_shear_involution():
    p = dyn.DynPoint(rat(3), rat(5, 7), rat(2))
    d = rat(3, 5)
    assert dyn.unshear(dyn.shear(p, d), d, dyn.INVERSE) == p
    assert dyn.unshear(p, d, dyn.PROSE) == dyn.shear(p, d)


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=rat(1, 20), max_value=20, max_denominator=20),
       st.fractions(min_value=rat(1, 20), max_value=20, max_denominator=20))
def test_d_one_is_identity(s, t):
    s, t = rat(s), rat(t)
    p = dyn.DynPoint(s * s * (t + 1) / t, s * s, t)
    out, tr = dyn.phi_step(p, dyn.DynConfig(d=rat(1)))
    assert out == p and tr.output_residual == 0


def test_second_description_rejects_locus():
    with pytest.raises(NeutralError):
        dyn.second_description(P0)


def test_canonical_representative():
    assert dyn.canonical(rat(-4)) == rat(-1, 4)
    assert dyn.canonical(rat(-1, 4)) == rat(-1, 4)


def test_iterate_deterministic_and_float_switch():
    cfg = dyn.DynConfig(d=HALF, exact_bits=256)
    a = dyn.iterate(P0, cfg, 8)
    b = dyn.iterate(P0, cfg, 8)
    assert a.error is None and len(a.points) == 9
    assert a.rows() == b.rows()
    assert a.traces[0].exact and not a.traces[-1].exact
    assert all(tr.eigen_conserved and tr.invariants_exchanged for tr in a.traces)
    assert float(a.max_residual()) < 1e-40


def test_float_start_matches_exact():
    cfg = dyn.DynConfig(d=HALF, prec=200)
    out_f, tr = dyn.phi_step(P0.numeric(200), cfg)
    assert tr.root_method in ("descartes", "mesh")
    assert abs(out_f.s2 - CTX.mpf(S2_NEW.numerator * 4) / S2_NEW.denominator) < 1e-50


def test_trace_record(step):
    _, tr = step
    rec = tr.record(1)
    assert rec["step"] == 1
    assert rec["t_new"].startswith("-1.147163246")
    assert rec["exact_values"]["t_new"] == "-3074036596/2679685395"
    assert rec["ratio"].startswith("1.4326729")
    assert rec["described"]["exact"]["s2"] == "572972005868615725/18461143681808036416"


def test_iterate_rejects_negative_steps():
    with pytest.raises(ValueError):
        dyn.iterate(P0, dyn.DynConfig(), -1)


def test_conjugacy_needs_exact():
    with pytest.raises(ValueError):
        dyn.conjugacy_check(dyn.EXAMPLE_CONJUGATOR, P0.numeric(64), P0)
