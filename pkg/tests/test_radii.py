import math

import numpy as np
import pytest

from mlradii import (
    ConvergenceFailure,
    InvalidParameters,
    MLParams,
    Normalization,
    ParamsNotAdmitted,
    ProblemKind,
    ProblemSpec,
    RadiusResult,
    TailNotConverged,
    radius_alpha_convex,
    radius_convex,
    radius_parabolic_starlike,
    radius_starlike,
    radius_strong_starlike,
    radius_uniform_convex,
    solve,
)
from mlradii import radii
from mlradii.errors import PrecisionLoss
from mlradii.radii import _bisect, _starlike_forms, strong_psi_direct, strong_psi_truncated
from mlradii.zero_finder import first_zero, targets_for

from conftest import COS, P311, P3_15_2, SIN

G, F, H = Normalization.G, Normalization.F, Normalization.H
OK = dict(assume_real_zeros=True)

# closed-form oracles (mpmath bisection, scripts/compute_oracles.py)
R_TAN_1 = 0.86033358901937976248  # r tan r = 1
R_TAN_HALF = 0.65327118709440310111  # r tan r = 1/2
R_TAN_2_3 = 0.73600519303645810107  # r tan r = 2/3
R_ALPHA_HALF = 1.0143789190552171118  # r cot r + 1 - r tan r = 0
R_TAN_2R = 1.1655611852072113068  # tan r = 2r
R_STRONG_HALF = 1.3783675704981299441  # exact psi with lambda_n = n pi, rho = 1/2
R_STAR_03 = 1.3525223386535315679  # r cot r = 0.3
# sine case, f and h normalizations
R_F_STAR = 2.0287578381104342236
R_F_CONVEX = 1.1699314697651445152
R_H_STAR = 4.1158583656945228373
R_H_CONVEX = 1.8596340619067792286


def test_ucv_examples():
    assert abs(radius_uniform_convex(SIN, G, 0, 0, **OK).radius - R_TAN_1) <= 1e-10
    assert abs(radius_uniform_convex(SIN, G, 1, 0, **OK).radius - R_TAN_HALF) <= 1e-10
    assert abs(radius_uniform_convex(SIN, G, 0, 0.5, **OK).radius - R_TAN_HALF) <= 1e-10
    assert abs(radius_uniform_convex(SIN, G, 0.5, 0, **OK).radius - R_TAN_2_3) <= 1e-10


def test_alpha_convex_examples():
    assert abs(radius_alpha_convex(SIN, G, 0, 0, **OK).radius - math.pi / 2) <= 1e-10
    assert abs(radius_alpha_convex(SIN, G, 1, 0, **OK).radius - R_TAN_1) <= 1e-10
    res = radius_alpha_convex(SIN, G, 0.5, 0, **OK)
    assert abs(res.radius - R_ALPHA_HALF) <= 1e-10
    assert res.verified == "passed" and res.checks["ordering"]


def test_parabolic_examples():
    assert abs(radius_parabolic_starlike(SIN, G, 0, 0, **OK).radius - math.pi / 2) <= 1e-10
    assert abs(radius_parabolic_starlike(SIN, G, 1, 0, **OK).radius - R_TAN_2R) <= 1e-10
    assert abs(radius_parabolic_starlike(COS, G, 0, 0, **OK).radius - R_TAN_1) <= 1e-10


def test_starlike_convex_wrappers():
    assert abs(radius_starlike(SIN, G, 0, **OK).radius - math.pi / 2) <= 1e-10
    assert abs(radius_convex(SIN, G, 0, **OK).radius - R_TAN_1) <= 1e-10
    assert abs(radius_starlike(SIN, G, 0.3, **OK).radius - R_STAR_03) <= 1e-10
    for rho in (0, 0.3, 0.7):
        a = radius_starlike(SIN, G, rho, **OK)
        b = radius_parabolic_starlike(SIN, G, 0, rho, **OK)
        assert a.radius == b.radius
        assert a.problem.kind is ProblemKind.STARLIKE
    assert radius_convex(SIN, G, 0.2, **OK).radius == radius_uniform_convex(SIN, G, 0, 0.2, **OK).radius


def test_f_and_h_sine_oracles():
    assert abs(radius_starlike(SIN, F, 0, **OK).radius - R_F_STAR) <= 1e-10
    assert abs(radius_convex(SIN, F, 0, **OK).radius - R_F_CONVEX) <= 1e-10
    assert abs(radius_starlike(SIN, H, 0, **OK).radius - R_H_STAR) <= 1e-10
    assert abs(radius_convex(SIN, H, 0, **OK).radius - R_H_CONVEX) <= 1e-10


def test_strong_examples():
    res = radius_strong_starlike(SIN, G, 1.0, **OK)
    assert abs(res.radius - math.pi / 2) <= 1e-8
    res = radius_strong_starlike(SIN, G, 0.5, **OK)
    assert 1.3 < res.radius < 1.45
    assert abs(res.radius - R_STRONG_HALF) <= 1e-9
    assert res.zeros_used >= 2
    assert res.checks["last_doubling_gap"] < 1e-10
    assert res.checks["direct_series_gap"] < 1e-9


def test_strong_small_rho():
    a = radius_strong_starlike(SIN, G, 1e-3, **OK).radius
    b = radius_strong_starlike(SIN, G, 0.1, **OK).radius
    assert 0 < a < b


def test_strong_truncated_sum_approaches_exact():
    # tail-free sum with lambda_n = n pi converges to the exact root from above
    zeros = math.pi * np.arange(1, 20001)
    E = lambda r: strong_psi_truncated(SIN, G, 0.5, r, zeros)  # noqa: E731
    root, _, _ = _bisect(E, 0.0, math.pi, 1e-12, increasing=True)
    assert 0 < root - R_STRONG_HALF < 1e-4


@pytest.mark.parametrize("norm", [F, G, H])
def test_strong_direct_form_agrees(norm):
    res = radius_strong_starlike(P311, norm, 0.5)
    assert abs(strong_psi_direct(P311, norm, 0.5, res.radius)) <= 1e-8


@pytest.mark.parametrize("kind", ["ucv", "sp"])
def test_problem_spec_rho_range(kind):
    with pytest.raises(InvalidParameters):
        ProblemSpec(kind, rho=1.0)
    with pytest.raises(InvalidParameters):
        ProblemSpec(kind, rho=-0.1)
    with pytest.raises(InvalidParameters):
        ProblemSpec(kind, eta=-1)


def test_problem_spec_strong_range():
    with pytest.raises(InvalidParameters):
        ProblemSpec("strong", rho=0.0)
    assert ProblemSpec("strong", rho=1.0).rho == 1.0
    with pytest.raises(InvalidParameters):
        ProblemSpec("alphaconvex", alpha=-0.5)
    with pytest.raises(InvalidParameters):
        ProblemSpec("ucv", eta=float("nan"))


def test_admission():
    with pytest.raises(ParamsNotAdmitted):
        radius_starlike(SIN, G, 0)  # omega = 2 is outside W_i
    with pytest.raises(ParamsNotAdmitted):
        radius_convex(MLParams(1.5, 1, 1), G, 0)
    assert radius_starlike(P311, G, 0).radius > 0


CASES = [(SIN, OK), (COS, OK), (P311, {}), (P3_15_2, {})]


@pytest.mark.parametrize("params, kw", CASES)
@pytest.mark.parametrize("norm", [F, G, H])
def test_result_invariants(params, kw, norm):
    for problem in [ProblemSpec("ucv", eta=0.5), ProblemSpec("alphaconvex", alpha=0.5),
                    ProblemSpec("sp", eta=0.5, rho=0.2), ProblemSpec("strong", rho=0.5)]:
        res = solve(problem, params, norm, **kw)
        lo, hi = res.bracket
        assert lo < res.radius < hi
        assert abs(res.residual) <= 1e-10
        fn_t, d_t = targets_for(norm)
        limit = first_zero(params, fn_t if problem.kind in (ProblemKind.PARABOLIC, ProblemKind.STRONG) else d_t)
        assert res.radius < limit


def test_dual_form_agreement_twenty_points():
    rng = np.random.default_rng(7)
    for i in range(20):
        params, kw = CASES[i % len(CASES)]
        norm = [F, G, H][i % 3]
        eta, rho = rng.uniform(0, 3), rng.uniform(0, 0.95)
        res = radius_parabolic_starlike(params, norm, eta, rho, **kw)
        assert res.checks["dual_form_gap"] <= 1e-9
        lam_form, ratio_form = _starlike_forms(params, norm, eta, rho)
        assert abs(ratio_form(res.radius)) <= 1e-8
        assert abs(lam_form(res.radius)) <= 1e-8


@pytest.mark.parametrize("params, kw", [(SIN, OK), (COS, OK)])
def test_strong_rho_one_equals_starlike(params, kw):
    a = radius_strong_starlike(params, G, 1.0, **kw).radius
    b = radius_starlike(params, G, 0, **kw).radius
    assert abs(a - b) <= 1e-8


@pytest.mark.parametrize("norm", [F, G, H])
def test_strong_rho_one_equals_starlike_all_norms(norm):
    a = radius_strong_starlike(P311, norm, 1.0).radius
    b = radius_starlike(P311, norm, 0).radius
    assert abs(a - b) <= 1e-8


@pytest.mark.parametrize("params, kw", [(SIN, OK), (P311, {})])
@pytest.mark.parametrize("norm", [F, G, H])
def test_monotonicity(params, kw, norm):
    def dec(vals):
        return all(b < a for a, b in zip(vals, vals[1:]))

    assert dec([radius_uniform_convex(params, norm, 0.5, rho, **kw).radius for rho in (0, 0.3, 0.6)])
    assert dec([radius_uniform_convex(params, norm, eta, 0.2, **kw).radius for eta in (0, 0.5, 1)])
    assert dec([radius_parabolic_starlike(params, norm, 0.5, rho, **kw).radius for rho in (0, 0.3, 0.6)])
    assert dec([radius_parabolic_starlike(params, norm, eta, 0.2, **kw).radius for eta in (0, 0.5, 1)])
    assert dec([radius_alpha_convex(params, norm, a, 0.2, **kw).radius for a in (0, 0.5, 1)])


@pytest.mark.parametrize("params, kw", [(SIN, OK), (P311, {})])
@pytest.mark.parametrize("norm", [F, G, H])
def test_ordering_chain(params, kw, norm):
    for alpha in (0.25, 0.5, 0.75):
        res = radius_alpha_convex(params, norm, alpha, 0.1, **kw)
        assert res.checks["convex_radius"] < res.radius < res.checks["starlike_radius"]
        assert res.verified == "passed"


def test_bisect_sign_contract():
    with pytest.raises(ConvergenceFailure):
        _bisect(lambda r: 1.0, 0.0, 1.0, 1e-10)
    root, it, res = _bisect(lambda r: 0.5 - r, 0.0, 1.0, 1e-12)
    assert abs(root - 0.5) <= 1e-12 and it <= 60


def test_strong_tail_not_converged(monkeypatch):
    monkeypatch.setattr(radii, "MAX_STRONG_ZEROS", 1)
    with pytest.raises(TailNotConverged):
        radius_strong_starlike(SIN, G, 0.5, **OK)


def test_strong_precision_loss_becomes_tail_error(monkeypatch):
    real = radii.zeros_of

    def limited(params, target, n):
        if n > 1:
            raise PrecisionLoss("no more zeros")
        return real(params, target, n)

    monkeypatch.setattr(radii, "zeros_of", limited)
    with pytest.raises(TailNotConverged):
        radius_strong_starlike(SIN, G, 0.5, **OK)


def test_result_json_round_trip():
    res = radius_strong_starlike(P311, G, 0.5)
    back = RadiusResult.from_dict(__import__("json").loads(res.to_json()))
    assert back == res
    d = res.to_dict()
    for key in ("problem", "norm", "params", "radius", "bracket", "residual", "iterations", "zeros_used",
                "verified"):
        assert key in d


def test_solve_dispatch():
    for kind, expected in [("star", math.pi / 2), ("convex", R_TAN_1), ("sp", math.pi / 2), ("ucv", R_TAN_1),
                           ("alphaconvex", math.pi / 2)]:
        assert abs(solve(ProblemSpec(kind), SIN, "g", **OK).radius - expected) <= 1e-10
