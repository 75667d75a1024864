import pytest
from hypothesis import given, strategies as st

from bnquot.chern import dual
from bnquot.kunneth import decompose
from bnquot.porteous import CodimensionError
from bnquot.scenarios import (Existence, ScenarioError, brill_noether_class, build_kernel_bundle,
                              determinantal_dims, euler_characteristic, existence_status,
                              expected_codimension, h0_threshold, make_scenario, scenario_ring,
                              stratum_report, twisted_kernel_bundle)


def test_make_scenario_examples():
    assert make_scenario(1, 4, 0).a == 2
    assert make_scenario(2, 7, 1).a == 4
    with pytest.raises(ScenarioError, match="mod 2"):
        make_scenario(1, 4, 1)
    with pytest.raises(ScenarioError, match="genus-0 lab"):
        make_scenario(0, 3, 1)
    with pytest.raises(ScenarioError, match="too small"):
        make_scenario(2, 6, 0, N=4)


def test_expected_codimension_examples():
    assert expected_codimension(make_scenario(1, 4, 0)) == 1
    assert expected_codimension(make_scenario(3, 8, 2)) == 3
    for g in range(1, 5):
        assert expected_codimension(make_scenario(g, 3 * g + 1, g - 1)) == g


def test_determinantal_dims_examples():
    dims = determinantal_dims(make_scenario(2, 10, 0))
    assert (dims.source_rank, dims.target_rank, dims.fiber_h0_dim) == (18, 16, 18)
    assert dims.large_d_ok
    assert determinantal_dims(make_scenario(1, 4, 0)).source_rank == 8
    assert determinantal_dims(make_scenario(1, 0, 0)).source_rank == 0


def test_euler_and_threshold_examples():
    assert euler_characteristic(0, 3) == 5
    assert euler_characteristic(1, 7) == 7
    assert euler_characteristic(2, 2) == 0
    assert h0_threshold(make_scenario(1, 4, 0)) == 5
    assert h0_threshold(make_scenario(2, 1, 1)) == 0
    assert h0_threshold(make_scenario(3, 8, 0)) == 5


def test_existence_examples():
    e = existence_status(make_scenario(2, 7, 3))
    assert e.status is Existence.EMPTY and e.rule.startswith("existence-1")
    assert existence_status(make_scenario(1, 4, 0)).status is Existence.NONEMPTY
    assert existence_status(make_scenario(3, 12, 2)).status is Existence.NONEMPTY
    e = existence_status(make_scenario(2, 4, 0))
    assert e.status is Existence.UNKNOWN and e.rule is None


def test_kernel_bundle_examples():
    sc = make_scenario(1, 4, 0)
    r = scenario_ring(1, sc.truncation)
    t1, s11, s12 = r.gens("t1", "s1_1", "s1_2")
    k = build_kernel_bundle(sc)
    assert k.c(1) == t1 + s11 * r.delta(1) + s12 * r.delta(2) + r.eta().scale(4)
    assert decompose(k.c(1)).eta_part == r.scalar(4)
    assert dual(k).c(1) == -k.c(1)
    assert k.c(3).is_zero()


def test_twisted_kernel_bundle():
    sc = make_scenario(2, 7, 1)
    r = scenario_ring(2, sc.truncation)
    t1, t2, u1 = r.gens("t1", "t2", "u1")
    k = build_kernel_bundle(sc)
    tw = twisted_kernel_bundle(sc)
    from bnquot.scenarios import alpha
    eta = r.eta()
    assert tw.c(1) == t1 + alpha(r, 1) + eta.scale(sc.d + 2 * sc.a)
    assert tw.c(2) == t2 + alpha(r, 2) + u1 * eta + (eta * t1).scale(sc.a)
    assert tw.rank == k.rank == 2


@pytest.mark.parametrize("d,coef", [(4, -6), (6, -9), (8, -12)])
def test_genus1_class(d, coef):
    rep = brill_noether_class(make_scenario(1, d, 0))
    r = scenario_ring(1, rep.scenario.truncation)
    t1, u1 = r.gens("t1", "u1")
    cls = rep.fundamental.minus_chern
    assert cls.coeff(t1) == coef and cls.coeff(u1) == 1
    assert rep.pushforward_rank == 2 * d + 0 + 0
    ids = [e["id"] for e in rep.discrepancies]
    assert "genus1-s0-class" in ids and "pushforward-c1" in ids


def test_genus1_s_minus1_reports_structural_diff():
    rep = brill_noether_class(make_scenario(1, 5, -1))
    assert rep.codim_expected == 2
    assert "genus1-s-1-class" in [e["id"] for e in rep.discrepancies]


def test_codimension_zero_has_no_class():
    with pytest.raises(CodimensionError):
        brill_noether_class(make_scenario(2, 7, 3))
    rep = stratum_report(make_scenario(2, 7, 3))
    assert rep.fundamental is None and rep.to_json()["class"] is None


def test_report_json_field_order():
    js = stratum_report(make_scenario(1, 4, 0)).to_json()
    assert list(js) == ["params", "codim", "ranks", "existence", "class"]
    assert list(js["class"]) == ["codim", "porteous", "minus_chern", "agree", "difference",
                                 "discrepancies"]


def test_class_is_base_only_and_homogeneous():
    for g, d, s in [(1, 4, 0), (1, 5, -1), (2, 7, 1), (2, 8, 0), (3, 10, 2)]:
        rep = brill_noether_class(make_scenario(g, d, s))
        for z in (rep.fundamental.porteous, rep.fundamental.minus_chern):
            assert z.is_fiber_free()
            assert z.is_homogeneous(2 * (2 * g - s - 1))


# -- properties ----------------------------------------------------------------

@st.composite
def scenarios(draw, gmax=6):
    g = draw(st.integers(1, gmax))
    d = draw(st.integers(0, 30))
    s = draw(st.integers(-6, g + 2).filter(lambda s: (s - d) % 2 == 0))
    return make_scenario(g, d, s)


@given(scenarios())
def test_rank_statements_coincide(sc):
    assert sc.d + 2 * sc.a == 2 * sc.d + sc.s
    assert determinantal_dims(sc).source_rank == sc.d + 2 * sc.a + 2 * (1 - sc.g)


@given(scenarios())
def test_codimension_is_determinantal_product(sc):
    assert expected_codimension(sc) == 2 * sc.g - sc.s - 1


@given(scenarios())
def test_existence_monotone_in_degree(sc):
    before = existence_status(sc).status
    later = existence_status(make_scenario(sc.g, sc.d + 2, sc.s)).status
    if before is Existence.NONEMPTY and sc.d > 2 * (2 * sc.g - 1):
        assert later is Existence.NONEMPTY
    if before is Existence.EMPTY:
        assert later is Existence.EMPTY


@given(scenarios())
def test_closure_parameter_order(sc):
    lower = make_scenario(sc.g, sc.d, sc.s - 2)
    assert lower.s < sc.s and (lower.s - sc.s) % 2 == 0
    assert lower.codim == sc.codim + 2
