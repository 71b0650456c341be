"""Problem instances and the two finite linear programs for A(p/q).

For a support length h = p/q the extremal constant is the common optimum of

* LP1: maximise s_0 over residue-class sums s_0..s_{q-1} >= 0 with
  sum(s) = 1 and sum_r s_r cos(2 pi r k / q) = 0 for k = p..q-p;
* LP2: maximise (1 + 2 sum_k b_k) / q over free heights b_1..b_{p-1} subject
  to 1 + 2 sum_k b_k cos(2 pi r k / q) >= 0 for every residue r.

The two are linked by a discrete cosine inversion, see :func:`s_from_b` and
:func:`b_from_s`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .errors import ConstraintViolation, InfeasibleB, InvalidInstance, NotCoprime, SupportTooLarge

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class ProblemInstance:
    """A validated support length h = p/q with gcd(p, q) = 1 and 2p <= q."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if isinstance(p, bool) or isinstance(q, bool) or int(p) != p or int(q) != q:
            raise InvalidInstance(f"p and q must be integers, got p={p!r}, q={q!r}")
        if p < 1 or q < 2:
            raise InvalidInstance(f"need p >= 1 and q >= 2, got p={p}, q={q}")
        if gcd(p, q) != 1:
            raise NotCoprime(f"gcd({p}, {q}) = {gcd(p, q)} != 1")
        if 2 * p > q:
            raise SupportTooLarge(f"2p = {2 * p} exceeds q = {q}")

    @property
    def h(self) -> Fraction:
        return Fraction(self.p, self.q)


def make_instance(p: int, q: int) -> ProblemInstance:
    return ProblemInstance(int(p), int(q))


def coprime_instances(max_q: int, min_q: int = 2):
    """All valid instances with min_q <= q <= max_q, ordered by (q, p)."""
    for q in range(max(min_q, 2), max_q + 1):
        for p in range(1, q // 2 + 1):
            if gcd(p, q) == 1:
                yield ProblemInstance(p, q)


def cos_table(q: int, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    """Matrix of cos(2 pi r k / q) for r in rows, k in cols.

    The product r*k is reduced mod q before scaling so that large indices do
    not accumulate rounding error in the angle.
    """
    r = np.asarray(rows, dtype=np.int64)[:, None]
    k = np.asarray(cols, dtype=np.int64)[None, :]
    return np.cos(2.0 * np.pi * ((r * k) % q) / q)


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """Dense LP: maximise objective @ x + objective_offset subject to

    eq_matrix @ x == eq_rhs, ineq_matrix @ x >= ineq_rhs and
    x_j >= lower_bounds[j] (``None`` marks a free variable).
    """

    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    ineq_matrix: np.ndarray
    ineq_rhs: np.ndarray
    lower_bounds: tuple[Optional[float], ...]
    variable_labels: tuple[str, ...]
    objective_offset: float = 0.0
    name: str = field(default="lp")

    def __post_init__(self):
        n = len(self.objective)
        for label, mat, rhs in (("eq", self.eq_matrix, self.eq_rhs),
                                ("ineq", self.ineq_matrix, self.ineq_rhs)):
            if mat.ndim != 2 or mat.shape[1] != n:
                raise ValueError(f"{label}_matrix must have {n} columns, got shape {mat.shape}")
            if mat.shape[0] != len(rhs):
                raise ValueError(f"{label}_rhs length {len(rhs)} != {mat.shape[0]} rows")
            if not (np.all(np.isfinite(mat)) and np.all(np.isfinite(rhs))):
                raise ValueError(f"{label} rows must be finite")
        if len(self.lower_bounds) != n or len(self.variable_labels) != n:
            raise ValueError("lower_bounds and variable_labels must match objective length")

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def residuals(self, x: np.ndarray) -> dict[str, float]:
        """Largest violation of each constraint family at x (0 when satisfied)."""
        x = np.asarray(x, dtype=float)
        eq = np.abs(self.eq_matrix @ x - self.eq_rhs)
        ineq = np.maximum(self.ineq_rhs - self.ineq_matrix @ x, 0.0)
        lb = [max(lo - xi, 0.0) for lo, xi in zip(self.lower_bounds, x) if lo is not None]
        return {
            "eq": float(eq.max(initial=0.0)),
            "ineq": float(ineq.max(initial=0.0)),
            "bounds": float(max(lb, default=0.0)),
        }

    def max_residual(self, x: np.ndarray) -> float:
        return max(self.residuals(x).values())

    def value(self, x: np.ndarray) -> float:
        return float(self.objective @ np.asarray(x, dtype=float) + self.objective_offset)


def lp1_cosine_indices(inst: ProblemInstance, dedup: bool = True) -> list[int]:
    """Frequencies k whose cosine rows constrain LP1.

    Row k and row q-k coincide, so with ``dedup`` only k = p..floor(q/2) are kept.
    """
    upper = inst.q // 2 if dedup else inst.q - inst.p
    return list(range(inst.p, upper + 1))


def make_lp1(inst: ProblemInstance, dedup: bool = True) -> LinearProgram:
    q = inst.q
    ks = lp1_cosine_indices(inst, dedup)
    cos_rows = cos_table(q, ks, range(q))
    eq_matrix = np.vstack([np.ones((1, q)), cos_rows])
    eq_rhs = np.zeros(len(ks) + 1)
    eq_rhs[0] = 1.0
    objective = np.zeros(q)
    objective[0] = 1.0
    return LinearProgram(
        objective=objective,
        eq_matrix=eq_matrix,
        eq_rhs=eq_rhs,
        ineq_matrix=np.zeros((0, q)),
        ineq_rhs=np.zeros(0),
        lower_bounds=(0.0,) * q,
        variable_labels=tuple(f"s_{r}" for r in range(q)),
        name=f"lp1({inst.p},{q})",
    )


def make_lp2(inst: ProblemInstance) -> LinearProgram:
    p, q = inst.p, inst.q
    n = p - 1
    # 1 + 2 sum_k b_k cos(2 pi r k/q) >= 0  <=>  2 C b >= -1
    ineq = 2.0 * cos_table(q, range(q), range(1, p)) if n else np.zeros((q, 0))
    return LinearProgram(
        objective=np.full(n, 2.0 / q),
        eq_matrix=np.zeros((0, n)),
        eq_rhs=np.zeros(0),
        ineq_matrix=ineq,
        ineq_rhs=np.full(q, -1.0),
        lower_bounds=(None,) * n,
        variable_labels=tuple(f"b_{k}" for k in range(1, p)),
        objective_offset=1.0 / q,
        name=f"lp2({p},{q})",
    )


def cosine_polynomial(inst: ProblemInstance, b: Sequence[float], residues=None) -> np.ndarray:
    """Values of 1 + 2 sum_k b_k cos(2 pi r k / q) at the given residues (default 0..q-1)."""
    b = np.asarray(b, dtype=float).reshape(-1)
    if len(b) != inst.p - 1:
        raise ValueError(f"expected {inst.p - 1} heights, got {len(b)}")
    rs = range(inst.q) if residues is None else residues
    if len(b) == 0:
        return np.ones(len(rs))
    return 1.0 + 2.0 * cos_table(inst.q, rs, range(1, inst.p)) @ b


def is_feasible_b(inst: ProblemInstance, b: Sequence[float], tol: float = DEFAULT_TOL) -> bool:
    return bool(cosine_polynomial(inst, b).min() >= -tol)


def s_from_b(inst: ProblemInstance, b: Sequence[float], tol: float = DEFAULT_TOL) -> np.ndarray:
    """Symmetrised residue sums (s_r + s_{q-r}) / 2 implied by heights b.

    Uses b_0 = 1 and b_p = ... = b_{q-p} = 0 together with the inverse
    discrete cosine transform.
    """
    sym = cosine_polynomial(inst, b) / inst.q
    if sym.min() < -tol:
        r = int(np.argmin(sym))
        raise InfeasibleB(f"symmetrised s_{r} = {sym[r]:.3e} < 0 for {inst}")
    return sym


def cosine_sums(q: int, s: Sequence[float], ks: Sequence[int]) -> np.ndarray:
    """Forward transform b_k = sum_r s_r cos(2 pi r k / q) for each k in ks."""
    s = np.asarray(s, dtype=float)
    return cos_table(q, ks, range(q)) @ s


def b_from_s(inst: ProblemInstance, s: Sequence[float],
             tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Heights b_1..b_{p-1} from a feasible LP1 vector, plus the residuals
    |b_k| for k = p..q-p, all of which must vanish."""
    s = np.asarray(s, dtype=float)
    if s.shape != (inst.q,):
        raise ValueError(f"expected a vector of length {inst.q}, got shape {s.shape}")
    b = cosine_sums(inst.q, s, range(1, inst.p))
    residuals = np.abs(cosine_sums(inst.q, s, range(inst.p, inst.q - inst.p + 1)))
    if residuals.size and residuals.max() > tol:
        k = inst.p + int(np.argmax(residuals))
        raise ConstraintViolation(f"|b_{k}| = {residuals.max():.3e} exceeds tol {tol:g}")
    return b, residuals
