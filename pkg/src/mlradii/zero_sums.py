"""Zero-sum forms of logarithmic derivatives.

Each zero target is an entire function P(w) of order below one in the variable
w (w = r^2 for the squared-argument targets, w = r otherwise), so

    w P'(w) / P(w) = -sum_n w / (mu_n - w),        mu_n = zeros in w.

Only a handful of zeros can be resolved numerically. The remaining ones enter
through the power sums s_j = sum_n mu_n^(-j), which Newton's identities give
exactly from the Taylor coefficients of P:

    L(w) = -sum_{n<=N} w/(mu_n - w) - sum_{j=1}^{J} S_j w^j + R,
    S_j = s_j - sum_{n<=N} mu_n^(-j),  |R| <= |w|^(J+1) S_(J+1) / (1 - |w|/mu_N).

The tabulated zeros carry an error delta_n, which dominates the computed S_j
once the true tail drops below it. A shift of mu_n changes the expansion only
through the terms beyond order J, by at most
delta_n (J+1) |w|^(J+1) / (mu_n^(J+2) (1 - |w|/mu_n)^2); remainder_bound adds
that, and widens S_(J+1) by the same perturbation.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from functools import lru_cache

from .ml_core import MLParams, _lgamma_dec, eval_phi, eval_phi_derivative
from .zero_finder import ZeroTable, ZeroTarget

_CTX = decimal.Context(prec=60, Emax=10**8, Emin=-10**8)
DEFAULT_ORDER = 12


@lru_cache(maxsize=256)
def taylor_coefficients(params: MLParams, target: ZeroTarget, n: int):
    """First n Taylor coefficients of the target in its own variable w (Decimal)."""
    target = ZeroTarget.parse(target)
    D = decimal.Decimal
    om, be, ga = D(params.omega), D(params.beta), D(params.gamma)
    out = []
    with decimal.localcontext(_CTX):
        lg_ga = _lgamma_dec(ga)
        for k in range(n):
            la = _lgamma_dec(ga + k) - lg_ga - _lgamma_dec(D(k + 1)) - _lgamma_dec(om * k + be)
            a = la.exp() * (-1 if k % 2 else 1)
            if target is ZeroTarget.PSI_PRIME:
                a *= be + 2 * k
            elif target is ZeroTarget.G_PRIME:
                a *= 2 * k + 1
            elif target is ZeroTarget.H_PRIME:
                a *= k + 1
            out.append(+a)
    return tuple(out)


@lru_cache(maxsize=256)
def power_sums(params: MLParams, target: ZeroTarget, order: int):
    """s_1..s_order, the sums of mu_n^(-j) over all zeros mu_n in w."""
    p = taylor_coefficients(params, target, order + 1)
    with decimal.localcontext(_CTX):
        q = [c / p[0] for c in p]
        s = []
        for k in range(1, order + 1):
            acc = -k * q[k]
            for j in range(1, k):
                acc -= s[j - 1] * q[k - j]
            s.append(acc)
    return tuple(s)


def log_derivative_direct(params: MLParams, target: ZeroTarget, w: float) -> float:
    """w P'(w)/P(w) from the series, for real w in [0, mu_1)."""
    target = ZeroTarget.parse(target)
    w = float(w)
    x = -w
    p0 = eval_phi(params, x).value
    p1 = eval_phi_derivative(params, x, 1).value
    if target in (ZeroTarget.LAMBDA, ZeroTarget.H_FUNCTION):
        return -w * p1 / p0
    p2 = eval_phi_derivative(params, x, 2).value
    if target is ZeroTarget.PSI_PRIME:
        b = params.beta
        return w * (-(b + 2) * p1 + 2 * w * p2) / (b * p0 - 2 * w * p1)
    if target is ZeroTarget.G_PRIME:
        return w * (-3 * p1 + 2 * w * p2) / (p0 - 2 * w * p1)
    return w * (-2 * p1 + w * p2) / (p0 - w * p1)


@dataclass(frozen=True)
class LogDerivativeExpansion:
    target: ZeroTarget
    params: MLParams
    mu: tuple
    tail_sums: tuple  # S_1 .. S_(J+1)
    mu_err: tuple = ()

    @classmethod
    def build(cls, table: ZeroTable, order: int = DEFAULT_ORDER, n_zeros: int | None = None):
        zs = table.zeros if n_zeros is None else table.zeros[:n_zeros]
        t = table.per_zero_tol
        if table.target.squared_argument:
            mu = tuple(z * z for z in zs)
            mu_err = tuple(2 * z * t + t * t for z in zs)
        else:
            mu, mu_err = tuple(zs), tuple(t for _ in zs)
        s = power_sums(table.params, table.target, order + 1)
        D = decimal.Decimal
        tails = []
        with decimal.localcontext(_CTX):
            for j, sj in enumerate(s, start=1):
                part = sum((D(m) ** -j for m in mu), D(0))
                tails.append(float(sj - part))
        return cls(table.target, table.params, mu, tuple(tails), mu_err)

    @property
    def order(self):
        return len(self.tail_sums) - 1

    def __call__(self, w):
        acc = 0j
        for m in self.mu:
            acc -= w / (m - w)
        wj = 1.0
        for S in self.tail_sums[:-1]:
            wj = wj * w
            acc -= S * wj
        return acc

    def zero_part(self, w):
        """Contribution of the tabulated zeros only (no tail)."""
        return -sum(w / (m - w) for m in self.mu)

    def remainder_bound(self, abs_w):
        """Bound on |R(w)| for |w| = abs_w < mu_N."""
        abs_w = float(abs_w)
        if not self.mu or abs_w >= self.mu[-1]:
            return math.inf
        k = self.order + 1
        err = list(self.mu_err) + [0.0] * (len(self.mu) - len(self.mu_err))
        S = abs(self.tail_sums[-1]) + sum(k * d / m ** (k + 1) for m, d in zip(self.mu, err))
        bound = abs_w**k * S / (1 - abs_w / self.mu[-1])
        bound += sum(d * k * abs_w**k / (m ** (k + 1) * (1 - abs_w / m) ** 2) for m, d in zip(self.mu, err))
        return bound

    def calibration_residual(self, abs_w):
        """|series - expansion| on the positive real axis at w = abs_w."""
        direct = log_derivative_direct(self.params, self.target, abs_w)
        return abs(direct - self(complex(abs_w)).real)
