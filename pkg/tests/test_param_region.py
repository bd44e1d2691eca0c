import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mlradii import InvalidParameters, RegionPoint, WiStatus, in_Wa, in_Wb, in_Wi, transform, wi_check
from mlradii.param_region import Op, c_steps_bound


def pt(omega, beta):
    return RegionPoint.from_params(omega, beta)


def same(p, q, tol=1e-12):
    return abs(p.x - q.x) <= tol and abs(p.beta - q.beta) <= tol


def test_transform_examples():
    assert same(transform(Op.A, pt(1.5, 1)), RegionPoint(1 / 3, 1))
    assert same(transform(Op.C, RegionPoint(1 / 3, 0.7)), RegionPoint(1 / 3, 0.7))
    assert same(transform(Op.B, pt(1.5, 1)), RegionPoint(1 / 3, 2.5))
    assert same(transform("C", RegionPoint(0.3, 2.5)), RegionPoint(0.3, 1.5))


@pytest.mark.parametrize("x, beta", [(0, 1), (1, 1), (0.5, 0), (float("nan"), 1), (0.5, float("inf"))])
def test_region_point_validation(x, beta):
    with pytest.raises(InvalidParameters):
        RegionPoint(x, beta)


def test_in_Wa_examples():
    assert in_Wa(pt(1.5, 1))
    assert not in_Wa(pt(1.5, 1.2))
    assert not in_Wa(pt(3, 1))


def test_in_Wa_closed_endpoints():
    assert in_Wa(pt(1.5, 0.5))
    assert in_Wa(pt(1.5, 1.5))
    assert in_Wa(pt(1.5, 2))
    assert not in_Wa(pt(1.5, 2.001))


def test_in_Wi_examples():
    v = in_Wi(pt(3, 1))
    assert v.status is WiStatus.MEMBER
    assert same(v.witness.replay(), pt(3, 1))
    v = in_Wi(pt(3, 1.5))
    assert v.is_member
    assert same(v.witness.replay(), pt(3, 1.5))
    assert in_Wi(pt(1.2, 1)).status is WiStatus.NON_MEMBER
    assert in_Wi(pt(2, 2)).status is WiStatus.NON_MEMBER


def test_witness_starts_in_Wa_and_first_step_lands_in_Wb():
    for omega, beta in [(3, 1), (3, 1.5), (6, 3.7), (5, 0.6)]:
        v = wi_check(omega, beta)
        assert v.is_member, (omega, beta)
        w = v.witness
        assert in_Wa(w.origin)
        assert w.ops[0] in (Op.A, Op.B)
        assert in_Wb(transform(w.ops[0], w.origin))


def test_wi_check_small_omega():
    assert wi_check(1.0, 1.0).status is WiStatus.NON_MEMBER
    assert wi_check(0.5, 1.0).status is WiStatus.NON_MEMBER
    with pytest.raises(InvalidParameters):
        wi_check(-1, 1)


def test_unknown_when_depth_bound_stops_search():
    # needs inverse-C steps before any inverse A/B can land in W_b
    p = RegionPoint(1 / 3, 0.3)
    assert c_steps_bound(p) > 1
    assert in_Wi(p, max_c_depth=1).status is WiStatus.UNKNOWN
    assert in_Wi(p).status is not WiStatus.UNKNOWN


def test_exhausted_search_is_non_member():
    v = wi_check(3, 7.9)
    assert v.status is WiStatus.NON_MEMBER
    assert "exhausted" in v.reason


def test_max_c_depth_validated():
    with pytest.raises(InvalidParameters):
        in_Wi(pt(3, 1), max_c_depth=0)


def test_verdict_serializes():
    d = wi_check(3, 1).to_dict()
    assert d["status"] == "Member"
    assert d["witness"]["ops"] == ["A"]
    assert d["witness"]["origin"] == {"omega": 1.5, "beta": 1.0}


points = st.builds(RegionPoint, st.floats(min_value=0.01, max_value=0.99), st.floats(min_value=0.05, max_value=8.0))


@settings(max_examples=200)
@given(st.floats(min_value=0.01, max_value=0.99), st.floats(min_value=0.01, max_value=1.0))
def test_C_idempotent_on_unit_interval(x, beta):
    p = RegionPoint(x, beta)
    assert transform(Op.C, p) == p


@settings(max_examples=200)
@given(st.floats(min_value=0.5, max_value=0.99), st.floats(min_value=0.05, max_value=8.0))
def test_never_member_for_large_x(x, beta):
    assert in_Wi(RegionPoint(x, beta)).status is not WiStatus.MEMBER


@settings(max_examples=200)
@given(points)
def test_member_witness_replays(p):
    v = in_Wi(p)
    if v.is_member:
        assert same(v.witness.replay(), p)
    else:
        assert v.witness is None


@settings(max_examples=100, deadline=None)
@given(points, st.sampled_from(list(Op)))
def test_closure_hypothesis(p, op):
    assume(in_Wi(p).is_member)
    assert in_Wi(transform(op, p)).is_member


def member_points(n, seed=1):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p = RegionPoint(rng.uniform(0.05, 0.5), rng.uniform(0.1, 5.0))
        if in_Wi(p).is_member:
            out.append(p)
    return out


def test_closure_on_fifty_members():
    for p in member_points(50):
        for op in Op:
            q = transform(op, p)
            v = in_Wi(q)
            assert v.is_member, (p, op)
            assert same(v.witness.replay(), q)
