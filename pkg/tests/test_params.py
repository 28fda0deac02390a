"""Property tests of the parameter geometry."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homoflow.errors import DomainError
from homoflow.params import (
    CaseLabel,
    FlowParams,
    bar_c3,
    classify_case,
    hyp_map,
    in_j,
    tau_values,
)

_NU = st.floats(min_value=0.1, max_value=10.0, allow_nan=False)


@st.composite
def admissible(draw):
    """(nu, c1, c2) with c1, c2 >= -nu^2."""
    nu = draw(_NU)
    lo = -nu * nu
    c1 = draw(st.floats(min_value=lo, max_value=50.0))
    c2 = draw(st.floats(min_value=lo, max_value=50.0))
    return nu, c1, c2


@settings(deadline=None)
@given(admissible(), st.floats(min_value=-100, max_value=100))
def test_tau_pair_sums(tup, c3):
    nu, c1, c2 = tup
    t = tau_values(FlowParams(nu, c1, c2, c3))
    scale = 1.0 + abs(t.tau1) + abs(t.tau2)
    assert abs(t.tau1 + t.tau2 - 4.0 * nu) <= 1e-12 * scale
    assert abs(t.tau1p + t.tau2p + 4.0 * nu) <= 1e-12 * scale
    assert t.tau1 <= t.tau2
    assert t.tau1p <= t.tau2p
    assert t.members("minus1") == (t.tau1, t.tau2)
    assert t.members("plus1") == (t.tau1p, t.tau2p)


@settings(deadline=None)
@given(admissible())
def test_critical_c3_formula_and_sign(tup):
    nu, c1, c2 = tup
    s1 = math.sqrt(nu * nu + c1)
    s2 = math.sqrt(nu * nu + c2)
    expect = -0.5 * (s1 + s2) * (s1 + s2 + 2.0 * nu)
    got = bar_c3(c1, c2, nu)
    assert abs(got - expect) <= 1e-12 * (1.0 + abs(expect))
    assert got <= 0.0


@settings(deadline=None)
@given(admissible(), st.floats(min_value=0.0, max_value=100.0))
def test_admissibility_threshold(tup, above):
    nu, c1, c2 = tup
    crit = bar_c3(c1, c2, nu)
    assert in_j(FlowParams(nu, c1, c2, crit))
    assert in_j(FlowParams(nu, c1, c2, crit + above))
    assert not in_j(FlowParams(nu, c1, c2, crit - 1.0 - above))


@settings(deadline=None)
@given(admissible(), st.floats(min_value=0.01, max_value=100.0))
def test_case_taxonomy_consistency(tup, above):
    nu, c1, c2 = tup
    nu2 = nu * nu
    crit = bar_c3(c1, c2, nu)
    label = classify_case(FlowParams(nu, c1, c2, crit + above))
    if c1 == -nu2 and c2 == -nu2:
        assert label == CaseLabel.CASE4
    elif c1 == -nu2:
        assert label == CaseLabel.CASE2
    elif c2 == -nu2:
        assert label == CaseLabel.CASE3
    else:
        assert label == CaseLabel.CASE1
    assert classify_case(FlowParams(nu, c1, c2, crit)) == CaseLabel.CASE5
    assert (
        classify_case(FlowParams(nu, c1, c2, crit - 1.0 - above))
        == CaseLabel.CASE6
    )


@settings(deadline=None)
@given(admissible(), st.floats(min_value=-50, max_value=50))
def test_hypergeometric_map_invariants(tup, c3):
    nu, c1, c2 = tup
    p = FlowParams(nu, c1, c2, c3)
    t = tau_values(p)
    hm = hyp_map(p)
    # the endpoint constants reappear as the affine part of the map
    assert abs(hm.a - 0.5 * t.tau1) <= 1e-12 * (1.0 + abs(hm.a))
    assert abs(hm.b - 0.5 * t.tau2p) <= 1e-12 * (1.0 + abs(hm.b))
    assert abs(hm.C - hm.a / nu) <= 1e-12 * (1.0 + abs(hm.C))
    # A, B are the two roots of the indicial quadratic
    s = hm.A + hm.B
    prod = hm.A * hm.B
    assert abs(s.imag) <= 1e-10 * (1.0 + abs(s))
    assert abs(prod.imag) <= 1e-9 * (1.0 + abs(prod))
    want_s = (hm.a - hm.b - nu) / nu
    want_p = hm.lam / (2.0 * nu * nu)
    assert abs(s.real - want_s) <= 1e-9 * (1.0 + abs(want_s))
    assert abs(prod.real - want_p) <= 1e-8 * (1.0 + abs(want_p))
    # conjugate-pair flag matches the discriminant sign
    disc = (hm.a - hm.b - nu) ** 2 - 2.0 * hm.lam
    assert hm.complex_pair == (disc < 0.0)
    if hm.complex_pair:
        assert abs(hm.A - hm.B.conjugate()) <= 1e-12 * (1.0 + abs(hm.A))


@settings(deadline=None)
@given(
    _NU,
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=-1, max_value=1),
)
def test_quadratic_evaluation(nu, c1, c2, c3, y):
    p = FlowParams(nu, c1, c2, c3)
    direct = c1 * (1.0 - y) + c2 * (1.0 + y) + c3 * (1.0 - y * y)
    assert abs(p.p(y) - direct) <= 1e-12 * (1.0 + abs(direct))
    h = 1e-6
    fd = (p.p(y + h) - p.p(y - h)) / (2.0 * h)
    assert abs(p.p_prime(y) - fd) <= 1e-6 * (1.0 + abs(fd))


def test_invalid_parameters_raise():
    with pytest.raises(DomainError):
        FlowParams(0.0, 0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        FlowParams(-1.0, 0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        bar_c3(-2.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        tau_values(FlowParams(1.0, 0.0, -2.0, 0.0))
    with pytest.raises(DomainError):
        hyp_map(FlowParams(1.0, -2.0, 0.0, 0.0))
