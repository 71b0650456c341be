"""Exact formulas for A(p/q) on the families where the optimum is known.

* p = 1: the tent function is extremal and A(1/q) = 1/q.
* p = 2, q odd: A(2/q) = (1 + cos(pi/q)) / (q cos(pi/q)).
* q = 2p + 1: A = cos(pi/q) / (1 + cos(pi/q)).
* p = 3, 3 does not divide q: a three-node positive quadrature rule on the
  residues 0, r0, r0 + 1 (r0 = q // 3) bounds the optimum and is attained.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import cos, pi
from typing import Optional

import numpy as np

from .errors import InvalidQ
from .problems import ProblemInstance


class Source(enum.Enum):
    STECHKIN = "stechkin"
    THEOREM3 = "two_over_q"
    THEOREM4 = "p_over_2p1"
    THEOREM5 = "three_over_q"


@dataclass(frozen=True, eq=False)
class ClosedFormResult:
    value: float
    source: Source
    breakpoints: Optional[np.ndarray] = None
    s_star: Optional[np.ndarray] = None

    def __post_init__(self):
        if not 0.0 < self.value <= 1.0:
            raise ValueError(f"A must lie in (0, 1], got {self.value}")
        bp = self.breakpoints
        if bp is not None and (bp[0] != 1.0 or bp[-1] != 0.0):
            raise ValueError("breakpoints must start at 1 and end at 0")

    @property
    def b(self) -> np.ndarray:
        """Interior heights b_1..b_{p-1}."""
        return self.breakpoints[1:-1]


@dataclass(frozen=True)
class QuadratureWeights:
    """Positive weights with

        (1/q) sum_r a(r) = gamma0 a(0) + gamma1 a(r0) + gamma2 a(r0 + 1)

    for every a in span{1, cos(2 pi r/q), cos(4 pi r/q)}.
    """

    q: int
    r0: int
    gamma0: float
    gamma1: float
    gamma2: float
    delta: float
    delta1: float
    delta2: float

    @property
    def nodes(self) -> tuple[int, int, int]:
        return (0, self.r0, self.r0 + 1)

    @property
    def weights(self) -> tuple[float, float, float]:
        return (self.gamma0, self.gamma1, self.gamma2)

    def apply(self, values_at_nodes) -> float:
        return float(np.dot(self.weights, values_at_nodes))

    def exactness_residuals(self) -> np.ndarray:
        """|rule - discrete mean| on the basis 1, cos(2 pi r/q), cos(4 pi r/q)."""
        out = []
        rs = np.arange(self.q)
        for k in range(3):
            basis = np.cos(2 * pi * ((k * rs) % self.q) / self.q)
            mean = basis.mean()
            rule = self.apply([basis[n] for n in self.nodes])
            out.append(abs(rule - mean))
        return np.array(out)


def _cos2(m: int, q: int) -> float:
    return cos(2 * pi * (m % q) / q)


def stechkin_value(q: int) -> ClosedFormResult:
    if q < 2:
        raise InvalidQ(f"q must be >= 2, got {q}")
    return ClosedFormResult(1.0 / q, Source.STECHKIN, np.array([1.0, 0.0]))


def theorem3_value(q: int) -> ClosedFormResult:
    """A(2/q) for odd q >= 5; the single height is b_1 = 1/(2 cos(pi/q))."""
    if q < 5 or q % 2 == 0:
        raise InvalidQ(f"two_over_q needs odd q >= 5, got {q}")
    c = cos(pi / q)
    return ClosedFormResult((1 + c) / (q * c), Source.THEOREM3, np.array([1.0, 1 / (2 * c), 0.0]))


def theorem4_value(p: int) -> ClosedFormResult:
    """A(p/(2p+1)) with heights and the optimal residue schedule s*."""
    if p < 1:
        raise InvalidQ(f"p must be >= 1, got {p}")
    q = 2 * p + 1
    c = cos(pi / q)
    heights = np.array([(c + _cos2(k, q)) / (1 + c) for k in range(p + 1)])
    heights[0], heights[-1] = 1.0, 0.0
    s = np.zeros(q)
    s[0] = c / (1 + c)
    s[1] = 1 / (1 + c)
    return ClosedFormResult(c / (1 + c), Source.THEOREM4, heights, s)


def _check_three(q: int):
    if q < 7 or q % 3 == 0:
        raise InvalidQ(f"three_over_q needs q >= 7 with 3 not dividing q, got {q}")


def quadrature_weights(q: int) -> QuadratureWeights:
    _check_three(q)
    r0 = q // 3
    c1, c2 = _cos2(r0, q), _cos2(r0 + 1, q)
    d1, d2 = _cos2(2 * r0, q), _cos2(2 * (r0 + 1), q)
    # Cramer's rule for the ratios gamma_i / gamma0
    delta = c1 * d2 - c2 * d1
    delta1 = c2 - d2
    delta2 = d1 - c1
    g1, g2 = delta1 / delta, delta2 / delta
    gamma0 = 1.0 / (1.0 + g1 + g2)
    return QuadratureWeights(q, r0, gamma0, g1 * gamma0, g2 * gamma0, delta, delta1, delta2)


def theorem5_value(q: int) -> ClosedFormResult:
    _check_three(q)
    r0 = q // 3
    c1, c2 = _cos2(r0, q), _cos2(r0 + 1, q)
    denom = 1 + 2 * c1 * c2
    value = (1 + (1 - 2 * (c1 + c2)) / denom) / q
    b1 = -(c1 + c2) / denom
    b2 = 0.5 / denom
    return ClosedFormResult(value, Source.THEOREM5, np.array([1.0, b1, b2, 0.0]))


def applicable_closed_forms(inst: ProblemInstance) -> list[ClosedFormResult]:
    """Every closed form that covers ``inst``, in dispatch preference order."""
    p, q = inst.p, inst.q
    out = []
    if p == 1:
        out.append(stechkin_value(q))
    if p == 2 and q % 2 == 1 and q >= 5:
        out.append(theorem3_value(q))
    if q == 2 * p + 1:
        out.append(theorem4_value(p))
    if p == 3 and q >= 7 and q % 3:
        out.append(theorem5_value(q))
    return out


def dispatch_closed_form(inst: ProblemInstance) -> Optional[ClosedFormResult]:
    forms = applicable_closed_forms(inst)
    return forms[0] if forms else None
