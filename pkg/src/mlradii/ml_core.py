"""Three-parameter Mittag-Leffler series on the real line.

phi(omega, beta, gamma; x) = sum_k (gamma)_k x**k / (k! Gamma(omega k + beta))

Consecutive-term ratios are formed once per parameter set in 40-digit decimal
arithmetic, then terms are accumulated in numpy's extended precision (80-bit
on x86-64) with Neumaier compensation.  The alternating sums met on the
negative axis therefore keep about three digits more than float64 would.
"""

from __future__ import annotations

import decimal
import enum
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, InvalidParameters, NonConvergence

LD = np.longdouble
EPS_LD = float(np.finfo(LD).eps)
MAX_TERMS = 10_000
DEFAULT_TOL_REL = 1e-19
DEFAULT_TOL_ABS = 1e-300


@dataclass(frozen=True)
class MLParams:
    omega: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("omega", "beta", "gamma"):
            raw = getattr(self, name)
            try:
                v = float(raw)
            except (TypeError, ValueError):
                raise InvalidParameters(f"{name} must be a real number, got {raw!r}") from None
            if not math.isfinite(v):
                raise InvalidParameters(f"{name} must be finite, got {v}")
            if v <= 0:
                raise InvalidParameters(f"{name} must be > 0, got {v}")
            object.__setattr__(self, name, v)

    def as_dict(self):
        return asdict(self)


class Normalization(enum.Enum):
    """f = (z^b G(b) phi(-z^2))^(1/b), g = z G(b) phi(-z^2), h = z G(b) phi(-z)."""

    F = "f"
    G = "g"
    H = "h"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParameters(f"normalization must be one of f, g, h; got {value!r}") from None


@dataclass(frozen=True)
class EvalResult:
    value: float
    est_error: float
    terms_used: int

    def __float__(self):
        return self.value


# ---------------------------------------------------------------------------
# log-gamma in 40-digit decimal arithmetic

_PREC = 40
_CTX = decimal.Context(prec=_PREC, Emax=10**8, Emin=-10**8)
_PI = decimal.Decimal("3.14159265358979323846264338327950288419716939937511")
_HALF_LOG_2PI = (2 * _PI).ln(_CTX) / 2
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66),
    Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510), Fraction(43867, 798),
    Fraction(-174611, 330), Fraction(854513, 138), Fraction(-236364091, 2730),
]
_STIRLING = [
    decimal.Decimal(b.numerator) / decimal.Decimal(b.denominator * (2 * m) * (2 * m - 1))
    for m, b in enumerate(_BERNOULLI, start=1)
]
_SHIFT = 24


def _lgamma_dec(x):
    """log Gamma(x) for Decimal x > 0.

    Shifts x above 24 with a running product and applies the Stirling series;
    the absolute error is around 1e-35, so cancellation near x = 1, 2 is harmless.
    """
    with decimal.localcontext(_CTX):
        prod = decimal.Decimal(1)
        while x < _SHIFT:
            prod *= x
            x += 1
        inv = 1 / x
        inv2 = inv * inv
        series = decimal.Decimal(0)
        p = inv
        for c in _STIRLING:
            series += c * p
            p *= inv2
        return (x - decimal.Decimal("0.5")) * x.ln() - x + _HALF_LOG_2PI + series - prod.ln()


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0, correctly rounded in practice."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    if math.isinf(x):
        return math.inf
    if x == 1.0 or x == 2.0:
        return 0.0
    return float(_lgamma_dec(decimal.Decimal(x)))


def pochhammer(gamma: float, k: int) -> float:
    """Rising factorial (gamma)_k = Gamma(gamma + k) / Gamma(gamma)."""
    gamma = float(gamma)
    if not gamma > 0 or not math.isfinite(gamma):
        raise InvalidParameters(f"pochhammer requires gamma > 0, got {gamma}")
    if int(k) != k or k < 0:
        raise InvalidParameters(f"pochhammer requires an integer k >= 0, got {k}")
    k = int(k)
    if k <= 32:
        p = 1.0
        for i in range(k):
            p *= gamma + i
        return p
    g = decimal.Decimal(gamma)
    with decimal.localcontext(_CTX):
        return float((_lgamma_dec(g + k) - _lgamma_dec(g)).exp())


# ---------------------------------------------------------------------------
# series evaluation
#
# The order-m derivative is sum_k c_k x**k with
#   c_k = (gamma)_{k+m} / (k! Gamma(omega (k+m) + beta)).
# Terms are generated as c_0 * u_k, u_0 = 1, u_{k+1} = u_k * x * c_{k+1}/c_k.
# The ratios come from the decimal log-gamma, so each carries a single
# extended-precision rounding and u_k has relative error below (k+1) eps_ld.


@lru_cache(maxsize=512)
def _ratios(omega, beta, gamma, order, n):
    D = decimal.Decimal
    om, be, ga = D(omega), D(beta), D(gamma)
    with decimal.localcontext(_CTX):
        lg = [_lgamma_dec(om * (k + order) + be) for k in range(n + 1)]
        log_c0 = _lgamma_dec(ga + order) - _lgamma_dec(ga) - lg[0]
        rat = [
            ((ga + k + order) / (k + 1) * (lg[k] - lg[k + 1]).exp())
            for k in range(n)
        ]
    with decimal.localcontext(_CTX):
        c0 = log_c0.exp()
    with np.errstate(all="ignore"):
        out = np.array([LD(str(v)) for v in rat], dtype=LD)
        c0_ld = LD(str(c0))
    out.setflags(write=False)
    return c0, c0_ld, out


def _neumaier(terms):
    s = LD(0)
    c = LD(0)
    for t in terms:
        u = s + t
        if abs(s) >= abs(t):
            c += (s - u) + t
        else:
            c += (t - u) + s
        s = u
    return s + c


def _evaluate(params, x, order, tol_rel, tol_abs):
    x = float(x)
    if not math.isfinite(x):
        raise InvalidParameters(f"x must be finite, got {x}")
    om, be, ga = params.omega, params.beta, params.gamma
    n = 64
    while True:
        c0, c0_ld, rat = _ratios(om, be, ga, order, n)
        if x == 0.0:
            stop, u = 1, np.ones(1, dtype=LD)
            break
        u = np.empty(n, dtype=LD)
        u[0] = 1
        with np.errstate(over="ignore", invalid="ignore"):
            u[1:] = np.cumprod(rat[:-1] * LD(x))
        if not np.all(np.isfinite(u)):
            raise NonConvergence(f"series terms overflow at x={x}")
        mag = np.abs(u)
        partial = np.cumsum(u)
        # tolerances are relative to the true scale c0 * u
        scale = abs(c0_ld) if c0_ld != 0 else LD(1)
        small = mag * scale <= tol_rel * np.abs(partial) * scale + tol_abs
        run = np.flatnonzero(small[:-2] & small[1:-1] & small[2:])
        if run.size:
            stop = int(run[0]) + 3
            break
        if n >= MAX_TERMS:
            raise NonConvergence(f"series did not converge within {MAX_TERMS} terms at x={x}")
        n = min(2 * n, MAX_TERMS)

    used = np.abs(u[:stop])
    total = _neumaier(u[:stop])
    k = np.arange(stop, dtype=LD)
    tail = 2 * used[-1] if stop > 1 else LD(0)
    rounding = LD(EPS_LD) * (np.sum(used * (k + 2)) + 2 * abs(total))
    if c0_ld != 0 and np.isfinite(c0_ld):
        value = float(c0_ld * total)
        err_ld = abs(c0_ld) * (tail + rounding + 2 * LD(EPS_LD) * abs(total))
    else:
        with decimal.localcontext(_CTX):
            value = float(c0 * decimal.Decimal(str(total)))
            err_ld = float(c0 * decimal.Decimal(str(tail + rounding)))
    err = float(err_ld) * (1 + 1e-15) + 2.0**-53 * abs(value)
    return EvalResult(value, err, stop)


def eval_phi(params: MLParams, x: float, *, tol_rel=DEFAULT_TOL_REL, tol_abs=DEFAULT_TOL_ABS) -> EvalResult:
    """Sum the series at real x.

    Stops once three consecutive terms fall below ``tol_rel*|partial| + tol_abs``;
    ``est_error`` bounds tail, term rounding and summation error.
    Raises NonConvergence when more than 10,000 terms would be needed.
    """
    return _evaluate(params, x, 0, tol_rel, tol_abs)


def eval_phi_derivative(params: MLParams, x: float, order: int, *, tol_rel=DEFAULT_TOL_REL,
                        tol_abs=DEFAULT_TOL_ABS) -> EvalResult:
    """First or second x-derivative via the term-wise differentiated series."""
    if order not in (1, 2):
        raise InvalidParameters(f"derivative order must be 1 or 2, got {order}")
    return _evaluate(params, x, order, tol_rel, tol_abs)


# ---------------------------------------------------------------------------
# ratios zu'/u, 1 + zu''/u' and J(alpha, u) at z = r > 0


def _quot(num, enum_, den, eden):
    q = num / den
    return q, (enum_ + abs(q) * eden) / abs(den)


def _check_r(r):
    r = float(r)
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"r must be a finite positive number, got {r}")
    return r


def _check_below(params, r, targets):
    from .zero_finder import domain_limit

    for t in targets:
        lim = domain_limit(params, t)
        if r >= lim:
            raise DomainError(f"r={r} is at or beyond the first zero {lim:.15g} of {t.value}")


def _phis(params, x, orders):
    out = []
    for m in orders:
        res = eval_phi(params, x) if m == 0 else eval_phi_derivative(params, x, m)
        out.append((res.value, res.est_error))
    return out


def ratio_starlike_with_error(params: MLParams, norm: Normalization, r: float):
    """Return ``(zu'/u at z=r, propagated error)``."""
    from .zero_finder import ZeroTarget

    norm = Normalization.parse(norm)
    r = _check_r(r)
    if norm is Normalization.H:
        _check_below(params, r, [ZeroTarget.H_FUNCTION])
        (p0, e0), (p1, e1) = _phis(params, -r, (0, 1))
        if p0 <= 0:
            raise DomainError(f"phi(-r) <= 0 at r={r}")
        t, et = _quot(-r * p1, r * e1, p0, e0)
        return 1.0 + t, et
    _check_below(params, r, [ZeroTarget.LAMBDA])
    (p0, e0), (p1, e1) = _phis(params, -r * r, (0, 1))
    if p0 <= 0:
        raise DomainError(f"phi(-r^2) <= 0 at r={r}")
    r2 = r * r
    t, et = _quot(-2 * r2 * p1, 2 * r2 * e1, p0, e0)
    if norm is Normalization.F:
        return 1.0 + t / params.beta, et / params.beta
    return 1.0 + t, et


def ratio_convex_with_error(params: MLParams, norm: Normalization, r: float):
    """Return ``(1 + zu''/u' at z=r, propagated error)``."""
    from .zero_finder import ZeroTarget

    norm = Normalization.parse(norm)
    r = _check_r(r)
    if norm is Normalization.H:
        _check_below(params, r, [ZeroTarget.H_PRIME])
        (p0, e0), (p1, e1), (p2, e2) = _phis(params, -r, (0, 1, 2))
        den, eden = p0 - r * p1, e0 + r * e1
        num, enum_ = -2 * r * p1 + r * r * p2, 2 * r * e1 + r * r * e2
        if den <= 0:
            raise DomainError(f"h'(r) <= 0 at r={r}")
        q, eq = _quot(num, enum_, den, eden)
        return 1.0 + q, eq
    r2 = r * r
    r4 = r2 * r2
    (p0, e0), (p1, e1), (p2, e2) = _phis(params, -r2, (0, 1, 2))
    if norm is Normalization.G:
        _check_below(params, r, [ZeroTarget.G_PRIME])
        den, eden = p0 - 2 * r2 * p1, e0 + 2 * r2 * e1
        num, enum_ = -6 * r2 * p1 + 4 * r4 * p2, 6 * r2 * e1 + 4 * r4 * e2
        if den <= 0:
            raise DomainError(f"g'(r) <= 0 at r={r}")
        q, eq = _quot(num, enum_, den, eden)
        return 1.0 + q, eq
    # F: 1 + rQ'/Q + (1/beta - 1) r lambda'/lambda with Q = beta*lambda + r*lambda'
    _check_below(params, r, [ZeroTarget.PSI_PRIME, ZeroTarget.LAMBDA])
    b = params.beta
    den, eden = b * p0 - 2 * r2 * p1, b * e0 + 2 * r2 * e1
    num, enum_ = -2 * (b + 2) * r2 * p1 + 4 * r4 * p2, 2 * (b + 2) * r2 * e1 + 4 * r4 * e2
    if den <= 0 or p0 <= 0:
        raise DomainError(f"Psi'(r) or lambda(r) not positive at r={r}")
    q, eq = _quot(num, enum_, den, eden)
    t, et = _quot(-2 * r2 * p1, 2 * r2 * e1, p0, e0)
    c = 1.0 / b - 1.0
    return 1.0 + q + c * t, eq + abs(c) * et


def ratio_starlike(params: MLParams, norm: Normalization, r: float) -> float:
    """zu'/u at z = r for u in {f, g, h}."""
    return ratio_starlike_with_error(params, norm, r)[0]


def ratio_convex(params: MLParams, norm: Normalization, r: float) -> float:
    """1 + zu''/u' at z = r for u in {f, g, h}."""
    return ratio_convex_with_error(params, norm, r)[0]


def eval_J(params: MLParams, norm: Normalization, alpha: float, r: float) -> float:
    """(1 - alpha) zu'/u + alpha (1 + zu''/u') at z = r."""
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise InvalidParameters(f"alpha must be finite, got {alpha}")
    star = ratio_starlike(params, norm, r)
    if alpha == 0.0:
        return star
    return (1.0 - alpha) * star + alpha * ratio_convex(params, norm, r)
