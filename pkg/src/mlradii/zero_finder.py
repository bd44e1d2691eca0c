"""Positive real zeros of lambda(r) = phi(-r^2), of the derivatives of the
normalized functions, and of phi(-r) itself."""

from __future__ import annotations

import enum
import json
import math
import threading
from dataclasses import dataclass, field

from .errors import InvalidBracket, NonConvergence, PrecisionLoss, ZeroRealityViolation
from .ml_core import MLParams, Normalization, eval_phi, eval_phi_derivative, log_gamma

DEFAULT_ZERO_TOL = 1e-12
MAX_ZERO_TOL = 1e-11
MAX_WINDOW_STEPS = 10_000


class ZeroTarget(enum.Enum):
    LAMBDA = "LambdaZeros"
    PSI_PRIME = "PsiPrimeZeros"
    G_PRIME = "GPrimeZeros"
    H_PRIME = "HPrimeZeros"
    H_FUNCTION = "HFunctionZeros"

    @property
    def squared_argument(self):
        """True when the target is a function of -r^2 rather than -r."""
        return self in (ZeroTarget.LAMBDA, ZeroTarget.PSI_PRIME, ZeroTarget.G_PRIME)

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for t in cls:
            if value in (t.value, t.name, t.name.lower()):
                return t
        raise ValueError(f"unknown zero target {value!r}")


def targets_for(norm):
    """(function target, derivative target) of a normalization."""
    norm = Normalization.parse(norm)
    return {
        Normalization.F: (ZeroTarget.LAMBDA, ZeroTarget.PSI_PRIME),
        Normalization.G: (ZeroTarget.LAMBDA, ZeroTarget.G_PRIME),
        Normalization.H: (ZeroTarget.H_FUNCTION, ZeroTarget.H_PRIME),
    }[norm]


def target_function(params: MLParams, target: ZeroTarget):
    """Return ``f(r) -> (value, error bound)`` whose positive zeros are the target's.

    Psi' = Gamma(beta) z^(beta-1) (beta lambda + z lambda'), so its zeros are
    those of beta phi(-r^2) - 2 r^2 phi'(-r^2); the z^(beta-1) factor is dropped.
    g' = phi(-r^2) - 2 r^2 phi'(-r^2) and h' = phi(-r) - r phi'(-r), up to Gamma(beta).
    """
    target = ZeroTarget.parse(target)
    b = params.beta

    def lam(r):
        e = eval_phi(params, -r * r)
        return e.value, e.est_error

    def psi(r):
        x = -r * r
        e0, e1 = eval_phi(params, x), eval_phi_derivative(params, x, 1)
        return b * e0.value + 2 * x * e1.value, b * e0.est_error + 2 * r * r * e1.est_error

    def gp(r):
        x = -r * r
        e0, e1 = eval_phi(params, x), eval_phi_derivative(params, x, 1)
        return e0.value + 2 * x * e1.value, e0.est_error + 2 * r * r * e1.est_error

    def hp(r):
        e0, e1 = eval_phi(params, -r), eval_phi_derivative(params, -r, 1)
        return e0.value - r * e1.value, e0.est_error + r * e1.est_error

    def hf(r):
        e = eval_phi(params, -r)
        return e.value, e.est_error

    return {
        ZeroTarget.LAMBDA: lam,
        ZeroTarget.PSI_PRIME: psi,
        ZeroTarget.G_PRIME: gp,
        ZeroTarget.H_PRIME: hp,
        ZeroTarget.H_FUNCTION: hf,
    }[target]


@dataclass(frozen=True)
class ZeroTable:
    params: MLParams
    target: ZeroTarget
    zeros: tuple
    per_zero_tol: float

    def __post_init__(self):
        z = tuple(float(v) for v in self.zeros)
        if any(not v > 0 for v in z) or any(b <= a for a, b in zip(z, z[1:])):
            raise ValueError("zeros must be positive and strictly increasing")
        object.__setattr__(self, "zeros", z)
        object.__setattr__(self, "target", ZeroTarget.parse(self.target))

    def __len__(self):
        return len(self.zeros)

    def __getitem__(self, i):
        return self.zeros[i]

    def to_dict(self):
        return {
            "omega": self.params.omega,
            "beta": self.params.beta,
            "gamma": self.params.gamma,
            "target": self.target.value,
            "zeros": list(self.zeros),
            "tol": self.per_zero_tol,
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        return cls(MLParams(d["omega"], d["beta"], d["gamma"]), d["target"], d["zeros"], d["tol"])

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))


# ---------------------------------------------------------------------------
# scanning and refinement


def _as_pair(f):
    """Accept plain callables as well as ones returning (value, error)."""

    def g(x):
        v = f(x)
        if isinstance(v, tuple):
            return float(v[0]), float(v[1])
        return float(v), 0.0

    return g


def _sign(v, err):
    if abs(v) <= err:
        return 0
    return 1 if v > 0 else -1


@dataclass
class _ScanResult:
    brackets: list = field(default_factory=list)
    tangencies: list = field(default_factory=list)  # (location, |f|, error)
    stopped_at: float | None = None  # first unresolvable point, if any


def _min_abs(f, a, c, sign, iters=60):
    """Golden-section search for the minimum of |f| on [a, c].

    Returns ``("split", x)`` as soon as f takes the sign opposite to ``sign``
    at some x, otherwise ``("min", (x, |f(x)|, error))``.
    """
    g = (math.sqrt(5) - 1) / 2
    x1, x2 = c - g * (c - a), a + g * (c - a)
    f1, e1 = f(x1)
    f2, e2 = f(x2)
    for _ in range(iters):
        if f1 * sign < 0:
            return "split", x1
        if f2 * sign < 0:
            return "split", x2
        if abs(f1) < abs(f2):
            c, x2, f2, e2 = x2, x1, f1, e1
            x1 = c - g * (c - a)
            f1, e1 = f(x1)
        else:
            a, x1, f1, e1 = x1, x2, f2, e2
            x2 = a + g * (c - a)
            f2, e2 = f(x2)
    x, v, e = (x1, f1, e1) if abs(f1) < abs(f2) else (x2, f2, e2)
    return "min", (x, abs(v), e)


def _scan(f, lo, hi, step):
    out = _ScanResult()
    n = max(1, int(math.ceil((hi - lo) / step)))
    prev = []  # last three (x, value) samples with resolved sign
    for i in range(n + 1):
        x = lo + (hi - lo) * i / n
        v, e = f(x)
        if not (math.isfinite(v) and math.isfinite(e)):
            out.stopped_at = x
            break
        peak = max([abs(v)] + [abs(p[1]) for p in prev])
        if e > 1e-3 * peak:
            # the error band swallows the function's own scale: signs are noise
            out.stopped_at = x
            break
        if _sign(v, e) == 0:
            continue
        if prev and v * prev[-1][1] < 0:
            out.brackets.append((prev[-1][0], x))
        elif len(prev) >= 2 and v * prev[-1][1] > 0 and prev[-2][1] * prev[-1][1] > 0:
            xa, va = prev[-2]
            _, vm = prev[-1]
            if abs(vm) < abs(va) and abs(vm) < abs(v):
                kind, info = _min_abs(f, xa, x, 1 if v > 0 else -1)
                if kind == "split":
                    out.brackets.extend([(xa, info), (info, x)])
                elif info[1] <= 100 * info[2] + 1e-12 * max(abs(va), abs(v)):
                    out.tangencies.append(info)
        prev.append((x, v))
        prev = prev[-3:]
    out.brackets = _dedupe(out.brackets)
    return out


def _dedupe(brackets):
    res = []
    for a, b in sorted(brackets):
        if res and a < res[-1][1]:
            continue
        res.append((a, b))
    return res


def scan_brackets(f, lo, hi, step=None):
    """Sign-change brackets of ``f`` on [lo, hi], sampled every ``step``.

    ``f`` may return a float or a ``(value, error)`` pair. A local minimum of
    |f| between same-sign samples is examined by golden-section search, which
    turns a hidden pair of close zeros into two brackets.
    """
    if not lo < hi:
        raise InvalidBracket(f"need lo < hi, got [{lo}, {hi}]")
    if step is None:
        step = (hi - lo) / 200
    return _scan(_as_pair(f), lo, hi, step).brackets


def refine_root(f, bracket, tol=DEFAULT_ZERO_TOL):
    """Bisect a sign-change bracket down to width 2*tol; returns the midpoint."""
    g = _as_pair(f)
    a, b = map(float, bracket)
    if not a < b:
        raise InvalidBracket(f"bracket must satisfy a < b, got ({a}, {b})")
    fa, _ = g(a)
    fb, _ = g(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise InvalidBracket(f"f has the same sign at both ends of ({a}, {b})")
    max_steps = max(1, math.ceil(math.log2((b - a) / tol))) + 2
    for _ in range(max_steps):
        if b - a <= 2 * tol:
            break
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm, _ = g(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


# ---------------------------------------------------------------------------
# zero tables


def initial_step(params: MLParams, target: ZeroTarget):
    """Scan step from the first two series terms.

    phi(-x) ~ 1/Gamma(beta) - gamma x / Gamma(omega + beta) vanishes near
    x0 = Gamma(omega + beta) / (gamma Gamma(beta)); step is 5% of sqrt(x0) in r
    for the squared-argument targets and 5% of x0 otherwise.
    """
    x0 = math.exp(log_gamma(params.omega + params.beta) - log_gamma(params.beta)) / params.gamma
    return 0.05 * (math.sqrt(x0) if ZeroTarget.parse(target).squared_argument else x0)


def _certify(f, z, tol):
    """Return the smallest tolerance in {tol, 10 tol, 1e-11} at which z is certified."""
    for t in sorted({tol, 10 * tol, MAX_ZERO_TOL}):
        lo, elo = f(z - t)
        hi, ehi = f(z + t)
        if abs(lo) > elo and abs(hi) > ehi and (lo > 0) != (hi > 0):
            return t
    return None


_cache: dict = {}
_cache_lock = threading.Lock()


def zeros_of(params: MLParams, target: ZeroTarget, count: int, tol=DEFAULT_ZERO_TOL) -> ZeroTable:
    """First ``count`` positive zeros of a target, each certified within ``per_zero_tol``.

    Certification evaluates the target at z -/+ tol and requires two signs that
    are resolved beyond the evaluation error. ``per_zero_tol`` is the worst
    tolerance achieved and never exceeds 1e-11; PrecisionLoss is raised when
    series cancellation makes that impossible.
    """
    target = ZeroTarget.parse(target)
    if int(count) != count or count < 1:
        raise ValueError(f"count must be a positive integer, got {count}")
    count = int(count)
    key = (params, target, float(tol))
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None and len(hit) >= count:
        return ZeroTable(params, target, hit.zeros[:count], hit.per_zero_tol)

    f = target_function(params, target)
    step = initial_step(params, target)
    lo = 0.0
    width = 20 * step
    found = []
    worst = tol
    for _ in range(MAX_WINDOW_STEPS):
        res = _scan(f, lo, lo + width, step)
        if res.tangencies:
            loc = res.tangencies[0][0]
            raise ZeroRealityViolation(
                f"|{target.value}| has a near-zero local minimum without sign change at r={loc:.12g}",
                location=loc,
            )
        for br in res.brackets:
            if found and br[0] < found[-1]:
                continue
            z = refine_root(f, br, tol / 4)
            t = _certify(f, z, tol)
            if t is None:
                raise PrecisionLoss(
                    f"zero #{len(found) + 1} of {target.value} near r={z:.12g} cannot be resolved "
                    f"to {MAX_ZERO_TOL:g}: series cancellation exceeds the sign margin"
                )
            worst = max(worst, t)
            found.append(z)
            if len(found) == count:
                break
        if len(found) >= count:
            break
        if res.stopped_at is not None:
            raise PrecisionLoss(
                f"{target.value}: values stop being resolvable at r={res.stopped_at:.12g} "
                f"after {len(found)} zeros"
            )
        lo += width
        width *= 2
    else:
        raise NonConvergence(f"only {len(found)} zeros of {target.value} found")

    table = ZeroTable(params, target, tuple(found), worst)
    with _cache_lock:
        prev = _cache.get(key)
        if prev is None or len(prev) < len(table):
            _cache[key] = table
    return table


def first_zero(params: MLParams, target: ZeroTarget) -> float:
    return zeros_of(params, target, 1).zeros[0]


def domain_limit(params: MLParams, target: ZeroTarget) -> float:
    """First zero of the target, or +inf when none can be located."""
    try:
        return first_zero(params, target)
    except (NonConvergence, ZeroRealityViolation):
        return math.inf


def check_interlacing(fn_zeros: ZeroTable, deriv_zeros: ZeroTable) -> bool:
    """True iff d_1 < z_1 and z_n < d_(n+1) < z_(n+1) for every available n."""
    z = list(fn_zeros.zeros)
    d = list(deriv_zeros.zeros)
    if not z or not d or not d[0] < z[0]:
        return False
    for n in range(len(z)):
        if n + 1 < len(d):
            if not z[n] < d[n + 1]:
                return False
            if n + 1 < len(z) and not d[n + 1] < z[n + 1]:
                return False
    return True
