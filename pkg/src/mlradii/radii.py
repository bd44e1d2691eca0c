"""Radii of uniform convexity, alpha-convexity, parabolic starlikeness and
strong starlikeness for the normalized Mittag-Leffler functions f, g, h.

Every radius is the unique root of an equation that is monotone on a bracket
(0, first zero); the root is found by plain bisection.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, field, replace

from .errors import (
    ConvergenceFailure,
    InvalidParameters,
    ParamsNotAdmitted,
    PrecisionLoss,
    TailNotConverged,
)
from .ml_core import (
    MLParams,
    Normalization,
    eval_J,
    eval_phi,
    eval_phi_derivative,
    ratio_convex,
    ratio_starlike,
)
from .param_region import WiStatus, wi_check
from .zero_finder import first_zero, targets_for, zeros_of
from .zero_sums import LogDerivativeExpansion, log_derivative_direct

DEFAULT_TOL = 1e-10
MAX_STRONG_ZEROS = 2**16
DUAL_FORM_TOL = 1e-9


class ProblemKind(enum.Enum):
    UCV = "ucv"
    ALPHA_CONVEX = "alphaconvex"
    PARABOLIC = "sp"
    STRONG = "strong"
    STARLIKE = "star"
    CONVEX = "convex"


def _real(name, v):
    try:
        v = float(v)
    except (TypeError, ValueError):
        raise InvalidParameters(f"{name} must be a real number, got {v!r}") from None
    if not math.isfinite(v):
        raise InvalidParameters(f"{name} must be finite, got {v}")
    return v


@dataclass(frozen=True)
class ProblemSpec:
    kind: ProblemKind
    eta: float = 0.0
    rho: float = 0.0
    alpha: float = 0.0

    def __post_init__(self):
        kind = ProblemKind(self.kind)
        eta, rho, alpha = _real("eta", self.eta), _real("rho", self.rho), _real("alpha", self.alpha)
        if eta < 0:
            raise InvalidParameters(f"eta must be >= 0, got {eta}")
        if alpha < 0:
            raise InvalidParameters(f"alpha must be >= 0, got {alpha}")
        if kind is ProblemKind.STRONG:
            if not 0 < rho <= 1:
                raise InvalidParameters(f"rho must satisfy 0 < rho <= 1 for strong starlikeness, got {rho}")
        elif not 0 <= rho < 1:
            raise InvalidParameters(f"rho must satisfy 0 <= rho < 1, got {rho}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "alpha", alpha)

    def to_dict(self):
        return {"kind": self.kind.value, "eta": self.eta, "rho": self.rho, "alpha": self.alpha}

    @classmethod
    def from_dict(cls, d):
        return cls(ProblemKind(d["kind"]), d["eta"], d["rho"], d["alpha"])


@dataclass(frozen=True)
class RadiusResult:
    problem: ProblemSpec
    norm: Normalization
    params: MLParams
    radius: float
    bracket: tuple
    residual: float
    iterations: int
    zeros_used: int = 0
    verified: str = "unverified"  # unverified | passed | failed
    checks: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "problem": self.problem.to_dict(),
            "norm": self.norm.value,
            "params": self.params.as_dict(),
            "radius": self.radius,
            "bracket": list(self.bracket),
            "residual": self.residual,
            "iterations": self.iterations,
            "zeros_used": self.zeros_used,
            "verified": self.verified,
            "checks": dict(self.checks),
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        return cls(
            ProblemSpec.from_dict(d["problem"]),
            Normalization(d["norm"]),
            MLParams(**d["params"]),
            d["radius"],
            tuple(d["bracket"]),
            d["residual"],
            d["iterations"],
            d["zeros_used"],
            d["verified"],
            dict(d.get("checks", {})),
        )

    def with_verdict(self, passed: bool, **checks):
        merged = {**self.checks, **checks}
        return replace(self, verified="passed" if passed else "failed", checks=merged)


# ---------------------------------------------------------------------------
# helpers


def admit(params: MLParams, assume_real_zeros: bool = False):
    """Refuse parameters outside W_i unless real zeros are asserted by the caller."""
    if assume_real_zeros:
        return
    verdict = wi_check(params.omega, params.beta)
    if verdict.status is not WiStatus.MEMBER:
        raise ParamsNotAdmitted(
            f"(1/omega, beta) = ({1 / params.omega:.6g}, {params.beta:.6g}) is not known to lie in W_i "
            f"({verdict.status.value}: {verdict.reason}); pass assume_real_zeros to override"
        )


def _bisect(E, lo, hi, tol, increasing=False):
    """Root of E on (lo, hi) with E(lo+) > 0 > E(hi-) (reversed if increasing).

    Checks the sign contract at lo + eps and hi - eps, eps = 1e-6 (hi - lo).
    Stops when the bracket is below 2 tol and |E(mid)| <= tol, or when the
    bracket cannot shrink further.
    """
    sgn = -1.0 if increasing else 1.0
    F = lambda r: sgn * E(r)  # noqa: E731
    eps = 1e-6 * (hi - lo)
    a, b = lo + eps, hi - eps
    fa, fb = F(a), F(b)
    if not (fa > 0 and fb < 0):
        raise ConvergenceFailure(
            f"bracket sign contract violated: E({a:.12g}) = {sgn * fa:.3g}, E({b:.12g}) = {sgn * fb:.3g}"
        )
    it = 0
    while True:
        m = 0.5 * (a + b)
        fm = F(m)
        it += 1
        if (b - a <= 2 * tol and abs(fm) <= tol) or m <= a or m >= b or fm == 0:
            return m, it, sgn * fm
        if fm > 0:
            a = m
        else:
            b = m
        if it > 400:
            raise ConvergenceFailure("bisection did not terminate")


def _function_zero(params, norm):
    return first_zero(params, targets_for(norm)[0])


def _derivative_zero(params, norm):
    return first_zero(params, targets_for(norm)[1])


def _spec(kind, **kw):
    return ProblemSpec(ProblemKind(kind), **kw)


def _norm(norm):
    return Normalization.parse(norm)


# ---------------------------------------------------------------------------
# solvers


def radius_uniform_convex(params: MLParams, norm, eta: float, rho: float, *, assume_real_zeros=False,
                          tol=DEFAULT_TOL) -> RadiusResult:
    """Root of 1 - rho + (1 + eta)(r u''/u') on (0, first zero of u')."""
    norm = _norm(norm)
    problem = _spec(ProblemKind.UCV, eta=eta, rho=rho)
    admit(params, assume_real_zeros)
    hi = _derivative_zero(params, norm)

    def E(r):
        return 1 - problem.rho + (1 + problem.eta) * (ratio_convex(params, norm, r) - 1)

    root, it, res = _bisect(E, 0.0, hi, tol)
    return RadiusResult(problem, norm, params, root, (0.0, hi), res, it)


def radius_convex(params: MLParams, norm, rho: float, **kw) -> RadiusResult:
    res = radius_uniform_convex(params, norm, 0.0, rho, **kw)
    return replace(res, problem=_spec(ProblemKind.CONVEX, rho=rho))


def _starlike_forms(params, norm, eta, rho):
    """lambda-form and ratio-form equations for parabolic starlikeness."""
    b = params.beta

    if norm is Normalization.H:
        def lam_form(r):
            p0 = eval_phi(params, -r).value
            p1 = eval_phi_derivative(params, -r, 1).value
            # (1+eta) sqrt(r) lambda'(sqrt r) - 2(rho-1) lambda(sqrt r), lambda'(s) = -2 s phi'(-s^2)
            return (1 + eta) * (-2 * r * p1) - 2 * (rho - 1) * p0
    else:
        c = b if norm is Normalization.F else 1.0

        def lam_form(r):
            x = -r * r
            p0 = eval_phi(params, x).value
            p1 = eval_phi_derivative(params, x, 1).value
            return (1 + eta) * (-2 * r * r * p1) - c * (rho - 1) * p0

    def ratio_form(r):
        return (1 + eta) * ratio_starlike(params, norm, r) - (eta + rho)

    return lam_form, ratio_form


def radius_parabolic_starlike(params: MLParams, norm, eta: float, rho: float, *, assume_real_zeros=False,
                              tol=DEFAULT_TOL) -> RadiusResult:
    """Root of (1 + eta) r lambda'(r) - c (rho - 1) lambda(r) on (0, first function zero).

    The equivalent form (1 + eta) zu'/u - (eta + rho) = 0 is solved too; the two
    roots must agree within 1e-9.
    """
    norm = _norm(norm)
    problem = _spec(ProblemKind.PARABOLIC, eta=eta, rho=rho)
    admit(params, assume_real_zeros)
    hi = _function_zero(params, norm)
    lam_form, ratio_form = _starlike_forms(params, norm, problem.eta, problem.rho)
    root, it, res = _bisect(lam_form, 0.0, hi, tol)
    root2, _, _ = _bisect(ratio_form, 0.0, hi, tol)
    gap = abs(root - root2)
    if gap > DUAL_FORM_TOL:
        raise ConvergenceFailure(f"lambda-form root {root!r} and ratio-form root {root2!r} differ by {gap:.3g}")
    return RadiusResult(problem, norm, params, root, (0.0, hi), res, it, checks={"dual_form_gap": gap})


def radius_starlike(params: MLParams, norm, rho: float, **kw) -> RadiusResult:
    res = radius_parabolic_starlike(params, norm, 0.0, rho, **kw)
    return replace(res, problem=_spec(ProblemKind.STARLIKE, rho=rho))


def radius_alpha_convex(params: MLParams, norm, alpha: float, rho: float, *, assume_real_zeros=False,
                        tol=DEFAULT_TOL) -> RadiusResult:
    """Root of J(alpha, u)(r) = rho.

    For 0 < alpha < 1 the convex and starlike radii of order rho are also
    computed and r_convex < r_alpha < r_starlike is recorded in ``verified``.
    """
    norm = _norm(norm)
    problem = _spec(ProblemKind.ALPHA_CONVEX, alpha=alpha, rho=rho)
    admit(params, assume_real_zeros)
    a = problem.alpha
    hi = _function_zero(params, norm) if a == 0 else _derivative_zero(params, norm)

    def E(r):
        return eval_J(params, norm, a, r) - problem.rho

    root, it, res = _bisect(E, 0.0, hi, tol)
    result = RadiusResult(problem, norm, params, root, (0.0, hi), res, it)
    if 0 < a < 1:
        kw = dict(assume_real_zeros=True, tol=tol)
        rc = radius_convex(params, norm, problem.rho, **kw).radius
        rs = radius_starlike(params, norm, problem.rho, **kw).radius
        ok = rc < root < rs
        result = result.with_verdict(ok, ordering=ok, convex_radius=rc, starlike_radius=rs)
    return result


# ---------------------------------------------------------------------------
# strong starlikeness


def _strong_scale(params, norm):
    return 2.0 / params.beta if norm is Normalization.F else (1.0 if norm is Normalization.H else 2.0)


def _to_w(norm, r):
    return r if norm is Normalization.H else r * r


def strong_psi(params: MLParams, norm, rho: float, r: float, expansion: LogDerivativeExpansion):
    """psi(r) from tabulated zeros plus the power-sum tail.

    With w = r^2 (r for h), s = sin(pi rho / 2), mu_n the zeros in w and
    A = sum w/(mu_n - w), C = sum w/(mu_n + w):
        psi = (c/2) [(1 + s) A + (1 - s) C] - s,   c = 2/beta, 2, 1 for f, g, h.
    Each summand equals c w (mu_n + s w) / (mu_n^2 - w^2).
    """
    norm = _norm(norm)
    s = math.sin(math.pi * rho / 2)
    c = _strong_scale(params, norm)
    w = _to_w(norm, r)
    A = -expansion(complex(w)).real
    C = expansion(complex(-w)).real
    return 0.5 * c * ((1 + s) * A + (1 - s) * C) - s


def strong_psi_truncated(params: MLParams, norm, rho: float, r: float, zeros):
    """psi(r) summed over the given zeros only, with no tail."""
    norm = _norm(norm)
    s = math.sin(math.pi * rho / 2)
    c = _strong_scale(params, norm)
    w = _to_w(norm, r)
    acc = 0.0
    for z in zeros:
        mu = _to_w(norm, z)
        acc += w * (mu + s * w) / ((mu - w) * (mu + w))
    return c * acc - s


def strong_psi_direct(params: MLParams, norm, rho: float, r: float):
    """psi(r) from the series alone: A = -L(w), C = L(-w), L = w P'/P."""
    norm = _norm(norm)
    target = targets_for(norm)[0]
    s = math.sin(math.pi * rho / 2)
    c = _strong_scale(params, norm)
    w = _to_w(norm, r)
    A = -log_derivative_direct(params, target, w)
    C = log_derivative_direct(params, target, -w)
    return 0.5 * c * ((1 + s) * A + (1 - s) * C) - s


def radius_strong_starlike(params: MLParams, norm, rho: float, *, assume_real_zeros=False,
                           tol=DEFAULT_TOL) -> RadiusResult:
    """Unique root of the increasing function psi on (0, first function zero).

    psi uses N tabulated zeros plus the power-sum tail; N doubles from 1 until
    the roots for N and 2N agree within tol.  The series-only form of psi is
    solved as an independent check and its distance is stored in ``checks``.
    """
    norm = _norm(norm)
    problem = _spec(ProblemKind.STRONG, rho=rho)
    admit(params, assume_real_zeros)
    target = targets_for(norm)[0]
    hi = first_zero(params, target)

    def solve(n):
        table = zeros_of(params, target, n)
        exp = LogDerivativeExpansion.build(table)
        return _bisect(lambda r: strong_psi(params, norm, problem.rho, r, exp), 0.0, hi, tol, increasing=True)

    n = 1
    prev = solve(n)
    history = [[n, prev[0]]]
    while True:
        if 2 * n > MAX_STRONG_ZEROS:
            raise TailNotConverged(f"strong-starlike root not stable at {n} zeros")
        try:
            cur = solve(2 * n)
        except PrecisionLoss as exc:
            raise TailNotConverged(
                f"strong-starlike root not stable after {n} zeros and no further zeros resolvable: {exc}"
            ) from exc
        n *= 2
        history.append([n, cur[0]])
        if abs(cur[0] - prev[0]) < tol:
            break
        prev = cur
    root, it, res = cur
    direct, _, _ = _bisect(lambda r: strong_psi_direct(params, norm, problem.rho, r), 0.0, hi, tol,
                           increasing=True)
    checks = {
        "last_doubling_gap": abs(cur[0] - prev[0]),
        "direct_series_gap": abs(root - direct),
        "doubling_history": history,
    }
    return RadiusResult(problem, norm, params, root, (0.0, hi), res, it, zeros_used=n, checks=checks)


def solve(problem: ProblemSpec, params: MLParams, norm, **kw) -> RadiusResult:
    """Dispatch a ProblemSpec to its solver."""
    k = problem.kind
    if k is ProblemKind.UCV:
        return radius_uniform_convex(params, norm, problem.eta, problem.rho, **kw)
    if k is ProblemKind.CONVEX:
        return radius_convex(params, norm, problem.rho, **kw)
    if k is ProblemKind.ALPHA_CONVEX:
        return radius_alpha_convex(params, norm, problem.alpha, problem.rho, **kw)
    if k is ProblemKind.PARABOLIC:
        return radius_parabolic_starlike(params, norm, problem.eta, problem.rho, **kw)
    if k is ProblemKind.STARLIKE:
        return radius_starlike(params, norm, problem.rho, **kw)
    return radius_strong_starlike(params, norm, problem.rho, **kw)
