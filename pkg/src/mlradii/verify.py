"""Independent checks of computed radii.

The complex ratios zu'/u and 1 + zu''/u' are rebuilt on circles |z| = r(1 -/+ delta)
from zero-sum expansions (tabulated zeros plus power-sum tail), so nothing
here reuses the real-axis equations that produced the radius.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientZeroTable, InvalidParameters, PrecisionLoss
from .ml_core import MLParams, Normalization, ratio_convex, ratio_starlike
from .radii import ProblemKind, ProblemSpec, RadiusResult
from .zero_finder import ZeroTable, ZeroTarget, targets_for, zeros_of
from .zero_sums import LogDerivativeExpansion

DEFAULT_DELTA = 1e-3
DEFAULT_GRID = 720
TABLE_ZEROS = 4


def conic_membership(w, eta: float, rho: float) -> bool:
    """u > eta * sqrt((u - 1)^2 + v^2) + rho for w = (u, v) or a complex w."""
    u, v = (w.real, w.imag) if isinstance(w, complex) else (float(w[0]), float(w[1]))
    return u > eta * math.hypot(u - 1, v) + rho


@dataclass(frozen=True)
class VerificationReport:
    problem: ProblemSpec
    radius: float
    inner_pass: bool
    outer_fail: bool
    worst_margin_inner: float
    worst_margin_outer: float
    violation_angle_outer: float | None
    violation_at_axis: bool | None  # None where the extremum is not on the real axis
    samples: int
    delta: float
    uncertainty: float

    @property
    def passed(self):
        if self.problem.kind is ProblemKind.STRONG:
            return self.inner_pass
        return self.inner_pass and self.outer_fail and bool(self.violation_at_axis)

    def to_dict(self):
        return {
            "problem": self.problem.to_dict(),
            "radius": self.radius,
            "inner_pass": self.inner_pass,
            "outer_fail": self.outer_fail,
            "worst_margin_inner": self.worst_margin_inner,
            "worst_margin_outer": self.worst_margin_outer,
            "violation_angle_outer": self.violation_angle_outer,
            "violation_at_axis": self.violation_at_axis,
            "samples": self.samples,
            "delta": self.delta,
            "uncertainty": self.uncertainty,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def _table(params, target, want=TABLE_ZEROS):
    for n in range(want, 0, -1):
        try:
            return zeros_of(params, target, n)
        except PrecisionLoss:
            continue
    raise InsufficientZeroTable(f"no zeros of {target.value} could be resolved")


class ComplexRatios:
    """zu'/u and 1 + zu''/u' at complex z from zero-sum expansions."""

    def __init__(self, params: MLParams, norm, need_convex=True, n_zeros=TABLE_ZEROS):
        self.params = params
        self.norm = Normalization.parse(norm)
        ft, dt = targets_for(self.norm)
        self.fn = LogDerivativeExpansion.build(_table(params, ft, n_zeros))
        self.dv = LogDerivativeExpansion.build(_table(params, dt, n_zeros)) if need_convex else None

    def _w(self, z):
        return z if self.norm is Normalization.H else z * z

    def starlike(self, z):
        w = self._w(z)
        if self.norm is Normalization.H:
            return 1 + self.fn(w)
        c = 2.0 / self.params.beta if self.norm is Normalization.F else 2.0
        return 1 + c * self.fn(w)

    def convex(self, z):
        w = self._w(z)
        if self.norm is Normalization.H:
            return 1 + self.dv(w)
        out = 1 + 2 * self.dv(w)
        if self.norm is Normalization.F:
            out += (1 / self.params.beta - 1) * 2 * self.fn(w)
        return out

    def uncertainty(self, abs_z, which):
        """Bound on the error of the starlike or convex value for |z| = abs_z."""
        aw = abs_z if self.norm is Normalization.H else abs_z * abs_z

        def err(e):
            return max(e.remainder_bound(aw), e.calibration_residual(aw))

        b = self.params.beta
        if which == "starlike":
            c = 1.0 if self.norm is Normalization.H else (2.0 / b if self.norm is Normalization.F else 2.0)
            return c * err(self.fn)
        if self.norm is Normalization.H:
            return err(self.dv)
        u = 2 * err(self.dv)
        if self.norm is Normalization.F:
            u += abs(1 / b - 1) * 2 * err(self.fn)
        return u


def _margin_fn(problem: ProblemSpec, cr: ComplexRatios):
    k, eta, rho, a = problem.kind, problem.eta, problem.rho, problem.alpha
    if k in (ProblemKind.STARLIKE, ProblemKind.PARABOLIC):
        def m(z):
            p = cr.starlike(z)
            return p.real - eta * abs(p - 1) - rho
        return m, lambda r: (1 + eta) * cr.uncertainty(r, "starlike")
    if k in (ProblemKind.CONVEX, ProblemKind.UCV):
        def m(z):
            q = cr.convex(z)
            return q.real - eta * abs(q - 1) - rho
        return m, lambda r: (1 + eta) * cr.uncertainty(r, "convex")
    if k is ProblemKind.ALPHA_CONVEX:
        def m(z):
            J = (1 - a) * cr.starlike(z)
            if a:
                J += a * cr.convex(z)
            return J.real - rho
        return m, lambda r: abs(1 - a) * cr.uncertainty(r, "starlike") + (
            a * cr.uncertainty(r, "convex") if a else 0.0)

    half = math.pi * rho / 2

    def m(z):
        return half - abs(cmath.phase(cr.starlike(z)))

    def u(r):
        # |d arg p| <= |dp| / |p|, and |p| >= Re p >= the real-axis value at |z| = r
        p_min = max(1e-300, cr.starlike(complex(r)).real)
        return cr.uncertainty(r, "starlike") / p_min

    return m, u


def verify_radius_geometric(params: MLParams, norm, problem: ProblemSpec, radius: float,
                            delta: float = DEFAULT_DELTA, grid: int = DEFAULT_GRID) -> VerificationReport:
    """Sample the defining condition on |z| = radius (1 -/+ delta) at ``grid`` angles.

    The condition is Re w > eta |w - 1| + rho with w = zu'/u (starlike,
    parabolic), w = 1 + zu''/u' (convex, UCV), Re J(alpha) > rho (alpha-convex),
    or |arg zu'/u| < pi rho / 2 (strong).  The report also says whether the
    worst outer violation sits within one grid step of angle 0.
    """
    if not (delta > 0 and delta < 1):
        raise InvalidParameters(f"delta must lie in (0, 1), got {delta}")
    if int(grid) != grid or grid < 4:
        raise InvalidParameters(f"grid must be an integer >= 4, got {grid}")
    norm = Normalization.parse(norm)
    need_convex = problem.kind in (ProblemKind.CONVEX, ProblemKind.UCV) or (
        problem.kind is ProblemKind.ALPHA_CONVEX and problem.alpha > 0)
    cr = ComplexRatios(params, norm, need_convex)
    margin, uncert = _margin_fn(problem, cr)

    theta = 2 * np.pi * np.arange(grid) / grid
    r_in, r_out = radius * (1 - delta), radius * (1 + delta)
    m_in = np.array([margin(r_in * cmath.exp(1j * t)) for t in theta])
    m_out = np.array([margin(r_out * cmath.exp(1j * t)) for t in theta])
    u = max(uncert(r_in), uncert(r_out))
    worst_in, worst_out = float(m_in.min()), float(m_out.min())
    scale = min(abs(worst_in), abs(worst_out))
    if u > 0.1 * scale:
        raise InsufficientZeroTable(
            f"expansion uncertainty {u:.3g} exceeds 10% of the smallest observed margin {scale:.3g}"
        )

    inner_pass = worst_in >= 0
    outer_fail = worst_out < 0
    angle = None
    at_axis = None
    if outer_fail:
        wrapped = np.angle(np.exp(1j * theta))
        tie = m_out <= worst_out + 1e-12 * max(1.0, abs(worst_out))
        idx = np.flatnonzero(tie)
        best = idx[np.argmin(np.abs(wrapped[idx]))]
        angle = float(wrapped[best])
    if problem.kind is not ProblemKind.STRONG:
        at_axis = bool(outer_fail and abs(angle) <= 2 * np.pi / grid * (1 + 1e-9))
    return VerificationReport(problem, float(radius), bool(inner_pass), bool(outer_fail), worst_in, worst_out,
                              angle, at_axis, int(grid), float(delta), float(u))


def verify_result(result: RadiusResult, delta: float = DEFAULT_DELTA, grid: int = DEFAULT_GRID):
    """Run the geometric check and return (updated result, report)."""
    rep = verify_radius_geometric(result.params, result.norm, result.problem, result.radius, delta, grid)
    ok = rep.passed and result.verified != "failed"
    return result.with_verdict(ok, geometric=rep.passed), rep


def crosscheck_zero_sum(params: MLParams, norm, r: float, tables, which: str = "starlike",
                        tail: bool = False) -> float:
    """|series ratio - zero-sum ratio| at real r.

    ``tables`` holds the function-zero table (and the derivative-zero table
    for ``which="convex"``).  With ``tail=False`` the zero sums are truncated
    at the table length; ``tail=True`` adds the power-sum tail.
    """
    norm = Normalization.parse(norm)
    ft, dt = targets_for(norm)
    by_target = {t.target: t for t in tables}
    w = r if norm is Normalization.H else r * r

    def L(target):
        if target not in by_target:
            raise InvalidParameters(f"crosscheck needs a {target.value} table")
        e = LogDerivativeExpansion.build(by_target[target])
        return (e(complex(w)) if tail else e.zero_part(w)).real

    b = params.beta
    if which == "starlike":
        c = 1.0 if norm is Normalization.H else (2.0 / b if norm is Normalization.F else 2.0)
        return abs(ratio_starlike(params, norm, r) - (1 + c * L(ft)))
    if which != "convex":
        raise InvalidParameters(f"which must be 'starlike' or 'convex', got {which!r}")
    if norm is Normalization.H:
        zs = 1 + L(dt)
    else:
        zs = 1 + 2 * L(dt)
        if norm is Normalization.F:
            zs += (1 / b - 1) * 2 * L(ft)
    return abs(ratio_convex(params, norm, r) - zs)


def lemma_inequality_check(a: float, b: float, lam: float, z: complex) -> bool:
    """The bounds for a > b > r >= |z|, lam in [0, 1], taken at r = |z|:

    |z/(b-z) - lam z/(a-z)| <= r/(b-r) - lam r/(a-r), its real-part version,
    Re(z/(b-z)) <= |z/(b-z)| <= r/(b-r), and |z|/(theta-|z|) >= Re(z/(theta-z))
    for theta = b > |z|.
    """
    z = complex(z)
    r = abs(z)
    if not (a > b > r):
        raise InvalidParameters(f"need a > b > |z|, got a={a}, b={b}, |z|={r}")
    if not 0 <= lam <= 1:
        raise InvalidParameters(f"lambda must lie in [0, 1], got {lam}")
    slack = 1e-12 * (1 + r / (b - r))
    lhs = z / (b - z) - lam * z / (a - z)
    rhs = r / (b - r) - lam * r / (a - r)
    uc1 = abs(lhs) <= rhs + slack
    uc2 = lhs.real <= rhs + slack
    t = z / (b - z)
    uc3 = t.real <= abs(t) + slack and abs(t) <= r / (b - r) + slack
    return uc1 and uc2 and uc3 and theta_bound_check(b, z)


def theta_bound_check(theta: float, z: complex) -> bool:
    """|z|/(theta - |z|) >= Re(z/(theta - z)) for theta > |z|."""
    z = complex(z)
    r = abs(z)
    if not theta > r:
        raise InvalidParameters(f"need theta > |z|, got theta={theta}, |z|={r}")
    return r / (theta - r) + 1e-12 * (1 + r / (theta - r)) >= (z / (theta - z)).real


def disk_in_sector_check(c: complex, R_c: float, rho: float) -> bool:
    """Sufficient condition R_c <= Re c sin(pi rho/2) - Im c cos(pi rho/2)
    for the disk |w - c| <= R_c to lie in |arg w| <= pi rho / 2."""
    c = complex(c)
    if not 0 < rho <= 1:
        raise InvalidParameters(f"rho must satisfy 0 < rho <= 1, got {rho}")
    if R_c < 0 or c.imag < 0:
        raise InvalidParameters("need R_c >= 0 and Im c >= 0")
    if abs(cmath.phase(c)) > math.pi * rho / 2 + 1e-15:
        raise InvalidParameters("c must lie in the sector |arg c| <= pi rho / 2")
    half = math.pi * rho / 2
    return R_c <= c.real * math.sin(half) - c.imag * math.cos(half)
