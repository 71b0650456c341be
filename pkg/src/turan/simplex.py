"""Dense two-phase primal simplex for :class:`~turan.problems.LinearProgram`.

The LP is first rewritten in standard form ``max c @ z, A z = b, z >= 0``:
bounded variables are shifted to a zero lower bound, free variables are split
into a difference of two nonnegative columns and every inequality row gets a
surplus column. The entering column follows Dantzig's rule. Cycling is ruled
out by a lexicographic leaving-row rule (default) or, with
``anti_cycling="bland"``, by switching to Bland's rule after a run of
degenerate pivots. The tableau is refactored from the original data every
few pivots and before optimality is declared.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NumericalBreakdown
from .problems import DEFAULT_TOL, LinearProgram

_EPS = np.finfo(float).eps


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class LPSolution:
    status: Status
    value: float
    variables: np.ndarray
    basis: tuple[int, ...]
    max_residual: float
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


@dataclass(frozen=True, eq=False)
class StandardForm:
    """max c @ z + offset s.t. A z = b, z >= 0, with x = shift + T z."""

    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    offset: float
    T: np.ndarray
    shift: np.ndarray

    def recover(self, z: np.ndarray) -> np.ndarray:
        return self.shift + self.T @ z[: self.T.shape[1]]


def to_standard_form(lp: LinearProgram) -> StandardForm:
    n = lp.n_vars
    shift = np.array([0.0 if lo is None else lo for lo in lp.lower_bounds])
    cols = []
    for j, lo in enumerate(lp.lower_bounds):
        e = np.zeros(n)
        e[j] = 1.0
        cols.append(e)
        if lo is None:
            cols.append(-e)
    T = np.column_stack(cols) if cols else np.zeros((n, 0))
    m_eq, m_in = lp.eq_matrix.shape[0], lp.ineq_matrix.shape[0]
    n_struct = T.shape[1]
    A = np.zeros((m_eq + m_in, n_struct + m_in))
    A[:m_eq, :n_struct] = lp.eq_matrix @ T
    A[m_eq:, :n_struct] = lp.ineq_matrix @ T
    A[m_eq:, n_struct:] = -np.eye(m_in)
    b = np.concatenate([lp.eq_rhs - lp.eq_matrix @ shift, lp.ineq_rhs - lp.ineq_matrix @ shift])
    c = np.concatenate([lp.objective @ T, np.zeros(m_in)])
    offset = float(lp.objective @ shift + lp.objective_offset)
    return StandardForm(A=A, b=b, c=c, offset=offset, T=T, shift=shift)


class _Tableau:
    """Rows ``[B^-1 A | B^-1 b]``; ``ident`` lists the columns that formed the
    initial identity basis, so ``rows[:, ident]`` is B^-1."""

    refactor_every = 32

    def __init__(self, rows: np.ndarray, basis: list[int], tol: float,
                 degenerate_limit: Optional[int]):
        self.original = rows.copy()
        self.row_ids = list(range(rows.shape[0]))
        self.rows = rows
        self.basis = basis
        self.ident = list(basis)
        self.tol = tol
        self.degenerate_limit = degenerate_limit
        self.iterations = 0
        self.since_refresh = 0

    def refresh(self):
        """Rebuild the tableau from the original rows to discard accumulated rounding."""
        data = self.original[self.row_ids]
        try:
            self.rows = np.linalg.solve(data[:, self.basis], data)
        except np.linalg.LinAlgError as exc:
            raise NumericalBreakdown("basis matrix became singular") from exc
        self.since_refresh = 0

    def drop_rows(self, keep: list[int]):
        self.rows = self.rows[keep]
        self.basis = [self.basis[i] for i in keep]
        self.ident = [self.ident[i] for i in keep]
        self.row_ids = [self.row_ids[i] for i in keep]

    def reduced_costs(self, c: np.ndarray) -> np.ndarray:
        return c - c[self.basis] @ self.rows[:, :-1]

    def pivot(self, i: int, j: int):
        rows = self.rows
        rows[i] /= rows[i, j]
        col = rows[:, j].copy()
        col[i] = 0.0
        rows -= np.outer(col, rows[i])
        self.basis[i] = j
        self.iterations += 1
        self.since_refresh += 1
        if self.since_refresh >= self.refactor_every:
            self.refresh()

    def leaving_row(self, ties: np.ndarray, col: np.ndarray) -> int:
        """Lexicographically smallest row of [rhs, B^-1] / pivot among ratio ties."""
        if ties.size == 1:
            return int(ties[0])
        scaled = self.rows[np.ix_(ties, self.ident)] / col[ties, None]
        alive = np.arange(ties.size)
        # entries within tol count as equal, otherwise rounding noise decides ties
        for k in range(scaled.shape[1]):
            v = scaled[alive, k]
            alive = alive[v <= v.min() + self.tol]
            if alive.size == 1:
                break
        return int(ties[alive[0]])

    def run(self, c: np.ndarray, allowed: np.ndarray) -> bool:
        """Maximise c over the tableau; returns False if unbounded."""
        tol = self.tol
        degenerate = 0
        max_iter = 50 * (self.rows.shape[0] + self.rows.shape[1]) + 1000
        for _ in range(max_iter):
            d = self.reduced_costs(c)
            d[~allowed] = 0.0
            d[self.basis] = 0.0
            candidates = np.flatnonzero(d > tol)
            if candidates.size == 0:
                if self.since_refresh == 0:
                    return True
                # confirm optimality on a freshly factored tableau
                self.refresh()
                continue
            bland = self.degenerate_limit is not None and degenerate >= self.degenerate_limit
            j = int(candidates[0]) if bland else int(candidates[np.argmax(d[candidates])])
            col = self.rows[:, j]
            rhs = self.rows[:, -1]
            positive = np.flatnonzero(col > tol)
            if positive.size == 0:
                scale = max(1.0, float(np.abs(self.rows).max()))
                if col.max(initial=0.0) > 64 * _EPS * scale:
                    raise NumericalBreakdown(
                        f"entering column {j} has only tiny positive entries (max {col.max():.3e})")
                return False
            ratios = np.maximum(rhs[positive], 0.0) / col[positive]
            best = ratios.min()
            ties = positive[ratios <= best + tol * max(1.0, best)]
            if self.degenerate_limit is None:
                i = self.leaving_row(ties, col)
            else:
                i = int(min(ties, key=lambda r: self.basis[r]))
            degenerate = degenerate + 1 if best <= tol else 0
            self.pivot(i, j)
        raise NumericalBreakdown(f"no convergence after {max_iter} pivots")


def _default_degenerate_limit(lp: LinearProgram) -> int:
    # LP1 has q variables, LP2 has q inequality rows
    return 3 * max(lp.n_vars, lp.eq_matrix.shape[0] + lp.ineq_matrix.shape[0], 1)


def solve(lp: LinearProgram, tol: float = DEFAULT_TOL, anti_cycling: str = "lexicographic",
          degenerate_limit: Optional[int] = None) -> LPSolution:
    """Solve ``lp`` to optimality or report infeasibility / unboundedness.

    ``anti_cycling="bland"`` switches to Bland's rule after ``degenerate_limit``
    consecutive degenerate pivots (default 3 * max(#variables, #rows)). It
    terminates in exact arithmetic but in floating point it can settle on
    badly conditioned bases once q exceeds about 150.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if anti_cycling == "lexicographic":
        degenerate_limit = None
    elif anti_cycling == "bland":
        if degenerate_limit is None:
            degenerate_limit = _default_degenerate_limit(lp)
    else:
        raise ValueError(f"unknown anti_cycling rule {anti_cycling!r}")
    sf = to_standard_form(lp)
    A, b = sf.A.copy(), sf.b.copy()
    m, n = A.shape
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # surplus columns flipped to +1 serve as an initial basis, the rest need artificials
    basis = []
    artificial_rows = []
    singleton = np.flatnonzero((A != 0.0).sum(axis=0) == 1)
    for i in range(m):
        hit = [j for j in singleton if A[i, j] == 1.0]
        if hit:
            basis.append(hit[0])
        else:
            basis.append(-1)
            artificial_rows.append(i)
    n_art = len(artificial_rows)
    rows = np.zeros((m, n + n_art + 1))
    rows[:, :n] = A
    rows[:, -1] = b
    for a, i in enumerate(artificial_rows):
        rows[i, n + a] = 1.0
        basis[i] = n + a
    tab = _Tableau(rows, basis, tol, degenerate_limit)

    if n_art:
        c1 = np.zeros(n + n_art)
        c1[n:] = -1.0
        # an artificial that has left the basis never needs to return
        tab.run(c1, np.arange(n + n_art) < n)
        infeasibility = float(tab.rows[:, -1][np.array(tab.basis) >= n].sum())
        if infeasibility > tol * max(1.0, float(np.abs(b).max(initial=0.0))):
            return LPSolution(Status.INFEASIBLE, float("nan"), np.zeros(0), (), float("inf"),
                              tab.iterations)
        keep = []
        for i in range(m):
            if tab.basis[i] < n:
                keep.append(i)
                continue
            row = tab.rows[i, :n]
            j = int(np.argmax(np.abs(row)))
            if abs(row[j]) > tol:
                tab.pivot(i, j)
                keep.append(i)
            # otherwise the row is a linear combination of the others and is dropped
        tab.drop_rows(keep)
        tab.refresh()

    # artificial columns stay in the tableau (they carry B^-1) but may not re-enter
    allowed = np.zeros(n + n_art, dtype=bool)
    allowed[:n] = True
    c2 = np.concatenate([sf.c, np.zeros(n_art)])
    if not tab.run(c2, allowed):
        return LPSolution(Status.UNBOUNDED, float("inf"), np.zeros(0), tuple(tab.basis),
                          float("nan"), tab.iterations)

    z = _basic_solution(sf, tab.basis)
    x = sf.recover(z)
    return LPSolution(Status.OPTIMAL, lp.value(x), x, tuple(tab.basis), lp.max_residual(x),
                      tab.iterations)


def _basic_solution(sf: StandardForm, basis) -> np.ndarray:
    """Recompute basic values from the original data to shed pivoting error."""
    z = np.zeros(sf.A.shape[1])
    if basis:
        B = sf.A[:, list(basis)]
        z[list(basis)] = np.linalg.lstsq(B, sf.b, rcond=None)[0]
    return z


def certificate_check(lp: LinearProgram, sol: LPSolution, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``sol`` is primal feasible and its basis is dual feasible with
    matching objective, i.e. an optimality certificate for a maximum."""
    if sol.status is not Status.OPTIMAL:
        return False
    x = np.asarray(sol.variables, dtype=float)
    if x.shape != (lp.n_vars,) or not np.all(np.isfinite(x)):
        return False
    if lp.max_residual(x) > tol:
        return False
    sf = to_standard_form(lp)
    basis = list(sol.basis)
    if basis:
        y = np.linalg.lstsq(sf.A[:, basis].T, sf.c[basis], rcond=None)[0]
        if np.abs(sf.A[:, basis].T @ y - sf.c[basis]).max() > tol:
            return False
    else:
        y = np.zeros(sf.A.shape[0])
    reduced = sf.c - sf.A.T @ y
    nonbasic = np.setdiff1d(np.arange(sf.A.shape[1]), basis)
    scale = max(1.0, float(np.abs(sf.c).max(initial=0.0)))
    if nonbasic.size and reduced[nonbasic].max() > tol * scale:
        return False
    dual_value = float(sf.b @ y) + sf.offset
    return abs(lp.value(x) - dual_value) <= tol * max(1.0, abs(dual_value))
