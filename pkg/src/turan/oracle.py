"""Brute-force solvers that share no code path with the simplex.

They are only meant for desk-sized instances and serve as independent
witnesses for the simplex optimum.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import BudgetExceeded
from .problems import ProblemInstance, cos_table

MAX_VERTEX_Q = 12
MAX_GRID_P = 4
_FEAS = 1e-12


@dataclass(frozen=True, eq=False)
class OracleResult:
    value: float
    argmax: np.ndarray
    instances_examined: int


def _lp1_system(inst: ProblemInstance) -> tuple[np.ndarray, np.ndarray]:
    q = inst.q
    rows = [np.ones(q)] + [cos_table(q, [k], range(q))[0] for k in range(inst.p, q // 2 + 1)]
    rhs = np.zeros(len(rows))
    rhs[0] = 1.0
    return np.array(rows), rhs


def lp1_vertex_enumeration(inst: ProblemInstance) -> OracleResult:
    """max s_0 over all basic feasible solutions of the LP1 equality system."""
    if inst.q > MAX_VERTEX_Q:
        raise BudgetExceeded(f"vertex enumeration limited to q <= {MAX_VERTEX_Q}, got {inst.q}")
    A, rhs = _lp1_system(inst)
    m, n = A.shape
    best, best_s, examined = -np.inf, None, 0
    for support in combinations(range(n), m):
        examined += 1
        B = A[:, support]
        if abs(np.linalg.det(B)) < 1e-10:
            continue
        sB = np.linalg.solve(B, rhs)
        if sB.min() < -_FEAS:
            continue
        s = np.zeros(n)
        s[list(support)] = sB
        if np.abs(A @ s - rhs).max() > 1e-10:
            continue
        if s[0] > best + 1e-15:
            best, best_s = s[0], s
    if best_s is None:
        raise RuntimeError(f"no feasible vertex found for {inst}")
    return OracleResult(float(best), best_s, examined)


def _lp2_values(C: np.ndarray, q: int, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Objective and feasibility mask for a batch of candidate heights."""
    feasible = (1.0 + 2.0 * pts @ C.T).min(axis=1) >= -_FEAS
    return (1.0 + 2.0 * pts.sum(axis=1)) / q, feasible


def lp2_grid_search(inst: ProblemInstance, span: float = 2.0, steps: int = 801,
                    refinements: int = 10, chunk: int = 200_000) -> OracleResult:
    """Best feasible heights on a uniform grid, then local refinement.

    Each refinement halves the step and hill-climbs on the (2w+1)^d stencil
    around the incumbent until no neighbour improves.
    """
    p, q = inst.p, inst.q
    if p > MAX_GRID_P:
        raise BudgetExceeded(f"grid search limited to p <= {MAX_GRID_P}, got {p}")
    if span <= 0 or steps < 100:
        raise ValueError("need span > 0 and steps >= 100")
    d = p - 1
    if d == 0:
        return OracleResult(1.0 / q, np.zeros(0), 1)
    C = cos_table(q, range(q), range(1, p))
    axis = np.linspace(-span, span, steps)
    best_val, best_b, examined = -np.inf, None, 0

    total = steps ** d
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        pts = np.stack([axis[(idx // steps ** j) % steps] for j in range(d)], axis=1)
        vals, ok = _lp2_values(C, q, pts)
        examined += len(idx)
        if ok.any():
            vals = np.where(ok, vals, -np.inf)
            i = int(np.argmax(vals))
            if vals[i] > best_val:
                best_val, best_b = float(vals[i]), pts[i].copy()
    if best_b is None:
        raise RuntimeError(f"no feasible grid point for {inst}")

    step = axis[1] - axis[0]
    width = 3
    offsets = np.array(list(product(range(-width, width + 1), repeat=d)), dtype=float)
    for _ in range(refinements):
        step /= 2.0
        for _ in range(10_000):
            pts = best_b + step * offsets
            vals, ok = _lp2_values(C, q, pts)
            examined += len(pts)
            vals = np.where(ok, vals, -np.inf)
            i = int(np.argmax(vals))
            if vals[i] <= best_val:
                break
            best_val, best_b = float(vals[i]), pts[i].copy()
    return OracleResult(best_val, best_b, examined)
