"""Piecewise-linear members of K(p/q) and their cosine spectra.

An :class:`ExtremalFunction` is the even, 1-periodic function that is linear
between the nodes k/q with heights b_0 = 1, b_1, ..., b_p = 0 and vanishes on
[p/q, 1/2]. Its Fourier coefficients have the closed form

    alpha_0 = (1 + 2 sum_k b_k) / q,
    alpha_n = 2q (sin(pi n/q) / (pi n))^2 (1 + 2 sum_k b_k cos(2 pi n k/q)),

so nonnegativity of the spectrum reduces to a finite check over residues.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, pi

import numpy as np

from .errors import MembershipViolation
from .problems import DEFAULT_TOL, ProblemInstance, cosine_polynomial, make_instance, s_from_b


@dataclass(frozen=True, eq=False)
class ExtremalFunction:
    q: int
    heights: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.heights, dtype=float)
        if h.ndim != 1 or len(h) < 2 or h[0] != 1.0 or h[-1] != 0.0:
            raise ValueError("heights must be b_0 = 1, ..., b_p = 0")
        if 2 * (len(h) - 1) > self.q:
            raise ValueError(f"support p/q = {len(h) - 1}/{self.q} exceeds 1/2")
        object.__setattr__(self, "heights", h)

    @property
    def p(self) -> int:
        return len(self.heights) - 1

    @property
    def b(self) -> np.ndarray:
        return self.heights[1:-1]

    @property
    def instance(self) -> ProblemInstance:
        return make_instance(self.p, self.q)

    def __call__(self, x):
        return phi_eval(self, x)


def build_extremal(inst: ProblemInstance, b, tol: float = DEFAULT_TOL) -> ExtremalFunction:
    b = np.asarray(b, dtype=float).reshape(-1)
    s_from_b(inst, b, tol)  # raises InfeasibleB
    return ExtremalFunction(inst.q, np.concatenate([[1.0], b, [0.0]]))


def _eval_scalar(f: ExtremalFunction, x: float) -> float:
    x = x - round(x)
    t = f.q * abs(x)
    nearest = round(t)
    if abs(t - nearest) <= 1e-12 * max(1.0, t):
        t = float(nearest)
    k = floor(t)
    if k >= f.p:
        return 0.0
    bk, bk1 = f.heights[k], f.heights[k + 1]
    return float(bk + (bk - bk1) * (k - t))


def phi_eval(f: ExtremalFunction, x):
    """Evaluate f at a scalar or array of points (any real x, by periodicity)."""
    if np.ndim(x) == 0:
        return _eval_scalar(f, float(x))
    return np.array([_eval_scalar(f, float(v)) for v in np.ravel(x)]).reshape(np.shape(x))


def _sinc_factor(q: int, n: np.ndarray) -> np.ndarray:
    """2q (sin(pi n/q) / (pi n))^2, exactly zero when q | n."""
    n = np.asarray(n, dtype=np.int64)
    m = n % q
    out = np.zeros(n.shape)
    nz = m != 0
    out[nz] = 2.0 * q * (np.sin(pi * m[nz] / q) / (pi * n[nz])) ** 2
    return out


def fourier_spectrum(f: ExtremalFunction, N: int) -> np.ndarray:
    """alpha_0..alpha_N from the closed formula."""
    n = np.arange(N + 1)
    alpha = np.empty(N + 1)
    alpha[0] = (1.0 + 2.0 * f.b.sum()) / f.q
    if N >= 1:
        poly = cosine_polynomial(f.instance, f.b, residues=range(f.q))
        alpha[1:] = _sinc_factor(f.q, n[1:]) * poly[n[1:] % f.q]
    return alpha


def fourier_alpha(f: ExtremalFunction, n: int) -> float:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return float((1.0 + 2.0 * f.b.sum()) / f.q)
    poly = cosine_polynomial(f.instance, f.b, residues=[n % f.q])[0]
    return float(_sinc_factor(f.q, np.array([n]))[0] * poly)


def trapezoid_mean(f: ExtremalFunction) -> float:
    """Exact integral of f over one period, summed panel by panel."""
    hts = f.heights
    return float(2.0 * np.sum((hts[:-1] + hts[1:]) / 2.0) / f.q)


@dataclass(frozen=True)
class MembershipReport:
    p: int
    q: int
    terms: int
    min_alpha: float
    argmin_alpha: int
    partial_sum: float
    sum_defect: float
    tail_bound: float
    support_max: float
    support_points: int
    tol: float

    @property
    def coefficients_ok(self) -> bool:
        return self.min_alpha >= -self.tol

    @property
    def sum_ok(self) -> bool:
        return self.sum_defect <= self.tail_bound + self.tol

    @property
    def support_ok(self) -> bool:
        return self.support_max <= self.tol

    @property
    def passed(self) -> bool:
        return self.coefficients_ok and self.sum_ok and self.support_ok


def tail_bound(f: ExtremalFunction, N: int) -> float:
    """Upper bound on sum_{n>N} |alpha_n|.

    Split n > N into blocks of q consecutive indices. A block starting at m
    meets every residue once, so it contributes at most 2q S / (pi m)^2 with
    S = sum_r |P(r)|. Summing over blocks gives
    (2 S / pi^2) (q / (N+1)^2 + 1 / (N+1)). For feasible heights S = q.
    """
    if N < 0:
        return float("inf")
    S = float(np.abs(cosine_polynomial(f.instance, f.b)).sum())
    m = N + 1.0
    return 2.0 * S / pi ** 2 * (f.q / m ** 2 + 1.0 / m)


def validate_membership(f: ExtremalFunction, N: int | None = None, tol: float = DEFAULT_TOL,
                        grid_points: int = 1000) -> MembershipReport:
    """Check the class conditions for f using its first N coefficients
    plus :func:`tail_bound` for the rest."""
    q = f.q
    N = 10 * q if N is None else N
    alpha = fourier_spectrum(f, N)
    i = int(np.argmin(alpha))
    if alpha[i] < -tol:
        raise MembershipViolation(f"alpha_{i} = {alpha[i]:.3e} < 0 for p/q = {f.p}/{q}")
    tail = tail_bound(f, N)
    partial = float(alpha.sum())
    xs = np.linspace(f.p / q, 0.5, grid_points)
    support_max = float(np.abs(phi_eval(f, xs)).max())
    return MembershipReport(f.p, q, N, float(alpha[i]), i, partial, abs(partial - 1.0), tail,
                            support_max, grid_points, tol)


@dataclass(frozen=True)
class StechkinTriangle:
    """The tent max(1 - |x|/h, 0) with its analytic cosine spectrum."""

    h: Fraction

    def __post_init__(self):
        h = Fraction(self.h)
        if not 0 < h <= Fraction(1, 2):
            raise ValueError(f"h must lie in (0, 1/2], got {h}")
        object.__setattr__(self, "h", h)

    def coefficient(self, n: int) -> float:
        h = self.h
        if n == 0:
            return float(h)
        if (n * h).denominator == 1:
            return 0.0
        x = pi * n * float(h)
        return 2.0 * float(h) * (np.sin(x) / x) ** 2

    def __call__(self, x: float) -> float:
        x = x - round(x)
        return max(1.0 - abs(x) / float(self.h), 0.0)

    def as_extremal(self) -> ExtremalFunction:
        """Same function on the grid 1/q: heights b_k = 1 - k/p."""
        p, q = self.h.numerator, self.h.denominator
        return ExtremalFunction(q, np.array([1.0 - k / p for k in range(p + 1)]))


def stechkin_triangle(h) -> StechkinTriangle:
    return StechkinTriangle(Fraction(h))
