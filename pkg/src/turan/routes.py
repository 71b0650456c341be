"""Evaluate A(p/q) along every available route and compare them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .closed_forms import ClosedFormResult, applicable_closed_forms
from .problems import DEFAULT_TOL, ProblemInstance, b_from_s, make_lp1, make_lp2
from .simplex import LPSolution, solve


@dataclass(frozen=True, eq=False)
class RouteResults:
    inst: ProblemInstance
    lp1: LPSolution
    lp2: LPSolution
    closed: list[ClosedFormResult]

    @property
    def closed_value(self) -> Optional[float]:
        return self.closed[0].value if self.closed else None

    @property
    def lp2_breakpoints(self) -> np.ndarray:
        return np.concatenate([[1.0], self.lp2.variables, [0.0]])

    def lp1_breakpoints(self, tol: float = DEFAULT_TOL) -> np.ndarray:
        b, _ = b_from_s(self.inst, self.lp1.variables, tol)
        return np.concatenate([[1.0], b, [0.0]])

    @property
    def best_breakpoints(self) -> np.ndarray:
        if self.closed:
            return self.closed[0].breakpoints
        return self.lp2_breakpoints

    @property
    def best_value(self) -> float:
        return self.closed_value if self.closed else self.lp2.value

    @property
    def lp1_vs_lp2(self) -> float:
        return abs(self.lp1.value - self.lp2.value)

    @property
    def lp_vs_closed(self) -> Optional[float]:
        if not self.closed:
            return None
        return max(abs(c.value - lp.value) for c in self.closed for lp in (self.lp1, self.lp2))

    def values(self) -> dict[str, float]:
        out = {"lp1": self.lp1.value, "lp2": self.lp2.value}
        for c in self.closed:
            out[f"closed:{c.source.value}"] = c.value
        return out

    @property
    def max_pairwise_delta(self) -> float:
        vals = list(self.values().values())
        return max(abs(a - b) for a in vals for b in vals)


def compute_routes(inst: ProblemInstance, tol: float = DEFAULT_TOL) -> RouteResults:
    return RouteResults(inst, solve(make_lp1(inst), tol), solve(make_lp2(inst), tol),
                        applicable_closed_forms(inst))
