"""Membership in the parameter set W_i on which phi(omega, beta, gamma, .) has
only real negative zeros.

Points are pairs (x, beta) with x = 1/omega. W_a is the strip 1 < omega < 2,
beta in [omega - 1, 1] U [omega, 2]; W_b = A(W_a) U B(W_a); W_i is the
smallest superset of W_b closed under A, B and C.  Membership is decided by a
backward search through preimages.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidParameters

_EPS = 1e-12  # slack for float noise at closed interval endpoints
WB_BETA_MAX = 4.0  # B(W_a) has beta = omega + beta_a <= 2 + 2


class Op(enum.Enum):
    A = "A"
    B = "B"
    C = "C"


@dataclass(frozen=True)
class RegionPoint:
    x: float
    beta: float

    def __post_init__(self):
        x, b = float(self.x), float(self.beta)
        if not (math.isfinite(x) and 0 < x < 1):
            raise InvalidParameters(f"x = 1/omega must lie in (0, 1), got {x}")
        if not (math.isfinite(b) and b > 0):
            raise InvalidParameters(f"beta must be > 0, got {b}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "beta", b)

    @property
    def omega(self):
        return 1.0 / self.x

    @classmethod
    def from_params(cls, omega, beta):
        return cls(1.0 / float(omega), beta)


def transform(op: Op, p: RegionPoint) -> RegionPoint:
    op = Op(op)
    if op is Op.A:
        return RegionPoint(p.x / 2, p.beta)
    if op is Op.B:
        return RegionPoint(p.x / 2, 1.0 / p.x + p.beta)
    if p.beta > 1:
        return RegionPoint(p.x, p.beta - 1)
    return p


def in_Wa(p: RegionPoint) -> bool:
    w = 1.0 / p.x
    if not (1 < w < 2):
        return False
    b = p.beta
    return (w - 1 - _EPS <= b <= 1 + _EPS) or (w - _EPS <= b <= 2 + _EPS)


def _wb_origin(x, beta):
    """A point of W_a mapping onto (x, beta) under A or B, or None."""
    x2 = 2 * x
    if x2 >= 1:
        return None
    q = RegionPoint(x2, beta)
    if in_Wa(q):
        return q, Op.A
    b = beta - 1.0 / x2
    if b > 0:
        q = RegionPoint(x2, b)
        if in_Wa(q):
            return q, Op.B
    return None


def in_Wb(p: RegionPoint) -> bool:
    return _wb_origin(p.x, p.beta) is not None


@dataclass(frozen=True)
class Witness:
    """A W_a point and the forward operations taking it to the queried point."""

    origin: RegionPoint
    ops: tuple

    def replay(self) -> RegionPoint:
        p = self.origin
        for op in self.ops:
            p = transform(op, p)
        return p

    def describe(self):
        chain = " -> ".join(op.value for op in self.ops)
        return f"(omega={self.origin.omega:.17g}, beta={self.origin.beta:.17g}) in W_a, then {chain}"

    def to_dict(self):
        return {
            "origin": {"omega": self.origin.omega, "beta": self.origin.beta},
            "ops": [op.value for op in self.ops],
        }


class WiStatus(enum.Enum):
    MEMBER = "Member"
    NON_MEMBER = "NonMember"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class WiVerdict:
    status: WiStatus
    witness: Witness | None = None
    reason: str = ""

    @property
    def is_member(self):
        return self.status is WiStatus.MEMBER

    def to_dict(self):
        return {
            "status": self.status.value,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "reason": self.reason,
        }


def _max_b_drop(x):
    # largest total beta decrease from inverse-B steps while x doubles below 1
    total, x = 0.0, 2 * x
    while x < 1:
        total += 1.0 / x
        x *= 2
    return total


def c_steps_bound(p: RegionPoint) -> int:
    """Upper bound on inverse-C steps any successful backward chain can need."""
    return max(0, math.ceil(WB_BETA_MAX - p.beta + _max_b_drop(p.x)))


def in_Wi(p: RegionPoint, max_c_depth: int = 64) -> WiVerdict:
    """Decide (x, beta) in W_i by backward search.

    Inverse A: (x, b) <- (2x, b); inverse B: (x, b) <- (2x, b - 1/(2x)), needing
    b - 1/(2x) > 0; inverse C: (x, b) <- (x, b + 1).  Every W_b point has
    x in (1/4, 1/2), and A, B only shrink x, so x >= 1/2 is never a member.
    """
    if int(max_c_depth) != max_c_depth or max_c_depth < 1:
        raise InvalidParameters(f"max_c_depth must be a positive integer, got {max_c_depth}")
    if p.x >= 0.5:
        return WiVerdict(WiStatus.NON_MEMBER, None, "x = 1/omega >= 1/2; every W_i point has x < 1/2")
    bound = c_steps_bound(p)
    limit = min(int(max_c_depth), bound)

    seen = set()
    # states: (x, beta, c_used, ops taken backward from the query)
    stack = [(p.x, p.beta, 0, ())]
    while stack:
        x, b, c_used, back = stack.pop()
        key = (x, round(b, 9), c_used)
        if key in seen:
            continue
        seen.add(key)
        hit = _wb_origin(x, b)
        if hit is not None:
            origin, op = hit
            ops = (op,) + tuple(reversed(back))
            return WiVerdict(WiStatus.MEMBER, Witness(origin, ops), "")
        # prune: beta too large to come back below 4 with the remaining B steps
        if b - _max_b_drop(x) > WB_BETA_MAX + _EPS:
            continue
        if c_used < limit:
            stack.append((x, b + 1, c_used + 1, back + (Op.C,)))
        if 2 * x < 1:
            x2 = 2 * x
            stack.append((x2, b, c_used, back + (Op.A,)))
            b2 = b - 1.0 / x2
            if b2 > 0:
                stack.append((x2, b2, c_used, back + (Op.B,)))
    if bound <= max_c_depth:
        return WiVerdict(WiStatus.NON_MEMBER, None, "backward search exhausted")
    return WiVerdict(
        WiStatus.UNKNOWN, None, f"search needs up to {bound} C-steps; depth limit {max_c_depth} reached"
    )


def wi_check(omega: float, beta: float, max_c_depth: int = 64) -> WiVerdict:
    """W_i test on (1/omega, beta); omega <= 1 is outside the region outright."""
    omega, beta = float(omega), float(beta)
    if not (math.isfinite(omega) and omega > 0):
        raise InvalidParameters(f"omega must be > 0, got {omega}")
    if not (math.isfinite(beta) and beta > 0):
        raise InvalidParameters(f"beta must be > 0, got {beta}")
    if omega <= 1:
        return WiVerdict(WiStatus.NON_MEMBER, None, "omega <= 1: x = 1/omega >= 1 is outside the region")
    return in_Wi(RegionPoint.from_params(omega, beta), max_c_depth)
