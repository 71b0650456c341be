"""Self-consistency checks across solvers, closed forms and oracles.

Every check yields one :class:`Check` record; the run passes iff all records
pass. Records are produced in a fixed order so reports are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import nan

import numpy as np

from .asymptotics import theorem1_bound_check
from .closed_forms import quadrature_weights, stechkin_value, theorem3_value, theorem4_value, theorem5_value
from .errors import TuranError
from .extremal import build_extremal, validate_membership
from .oracle import MAX_VERTEX_Q, lp1_vertex_enumeration, lp2_grid_search
from .problems import DEFAULT_TOL, coprime_instances, make_lp1, make_lp2
from .routes import compute_routes
from .simplex import certificate_check

GRID_TOL = 1e-5


@dataclass(frozen=True)
class Check:
    name: str
    subject: str
    residual: float
    threshold: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        text = f"{flag} {self.name:<22} {self.subject:<18} residual={self.residual:.3e} threshold={self.threshold:.1e}"
        return text + (f" {self.detail}" if self.detail else "")


def _cmp(name: str, subject: str, residual: float, threshold: float, detail: str = "") -> Check:
    ok = bool(np.isfinite(residual) and residual <= threshold)
    return Check(name, subject, float(residual), threshold, ok, detail)


def run_checks(max_q: int, tol: float = DEFAULT_TOL) -> list[Check]:
    checks: list[Check] = []

    for q in range(2, max_q + 1):
        checks.append(_cmp("stechkin", f"q={q}", abs(stechkin_value(q).value - 1.0 / q), tol))

    overlap = [("t4(1)=stechkin(3)", theorem4_value(1).value, stechkin_value(3).value),
               ("t4(2)=t3(5)", theorem4_value(2).value, theorem3_value(5).value),
               ("t4(3)=t5(7)", theorem4_value(3).value, theorem5_value(7).value)]
    for label, a, b in overlap:
        checks.append(_cmp("overlap", label, abs(a - b), tol))

    for q in range(7, max_q + 1):
        if q % 3 == 0:
            continue
        w = quadrature_weights(q)
        bad_sign = min(w.weights) <= 0 or max(w.delta, w.delta1, w.delta2) >= 0
        resid = max(abs(sum(w.weights) - 1.0), float(w.exactness_residuals().max()))
        checks.append(_cmp("quadrature", f"q={q}", resid if not bad_sign else np.inf, tol,
                           "sign conditions violated" if bad_sign else ""))

    hs, values = [], []
    for inst in coprime_instances(max_q):
        subject = f"p={inst.p},q={inst.q}"
        try:
            r = compute_routes(inst, tol)
        except TuranError as exc:
            checks.append(Check("lp_solve", subject, nan, tol, False, type(exc).__name__))
            continue
        if not (r.lp1.optimal and r.lp2.optimal):
            checks.append(Check("lp_solve", subject, nan, tol, False, "not optimal"))
            continue
        checks.append(_cmp("lp1_vs_lp2", subject, r.lp1_vs_lp2, tol))
        cert = certificate_check(make_lp1(inst), r.lp1, tol) and certificate_check(make_lp2(inst), r.lp2, tol)
        checks.append(Check("certificate", subject, 0.0 if cert else 1.0, tol, cert))
        if r.closed:
            checks.append(_cmp("lp_vs_closed", subject, r.lp_vs_closed, tol, r.closed[0].source.value))
            if len(r.closed) > 1:
                spread = max(c.value for c in r.closed) - min(c.value for c in r.closed)
                checks.append(_cmp("closed_pairwise", subject, spread, tol))
        try:
            f = build_extremal(inst, r.best_breakpoints[1:-1], tol)
            rep = validate_membership(f, tol=tol)
            ok = rep.passed
            resid = max(-rep.min_alpha, 0.0, rep.support_max,
                        max(rep.sum_defect - rep.tail_bound, 0.0))
            checks.append(Check("membership", subject, resid, tol, ok))
        except TuranError as exc:
            checks.append(Check("membership", subject, nan, tol, False, type(exc).__name__))
        if inst.q <= MAX_VERTEX_Q:
            v = lp1_vertex_enumeration(inst).value
            checks.append(_cmp("vertex_oracle", subject, abs(v - r.lp1.value), tol))
        if inst.p in (2, 3) and inst.q <= 20:
            g = lp2_grid_search(inst).value
            gap = r.lp2.value - g
            resid = gap if gap >= -tol else np.inf
            checks.append(_cmp("grid_oracle", subject, resid, max(tol, GRID_TOL)))
        if inst.p >= 2:
            excess = r.best_value - float(inst.h)
            checks.append(Check("popov_strict", subject, excess, 1e-6, bool(excess > 1e-6),
                                "requires residual > threshold"))
        if inst.h <= 0.2:
            hs.append(inst.h)
            values.append(r.best_value)

    if hs:
        rep = theorem1_bound_check(hs, values)
        checks.append(Check("theorem1_bound", f"h<=0.2 n={len(hs)}", rep.max_ratio, rep.constant,
                            rep.passed, f"min_excess={rep.min_excess:.3e}"))
    return checks


def format_report(checks: list[Check]) -> str:
    failed = sum(not c.passed for c in checks)
    lines = [c.line() for c in checks]
    lines.append(f"SUMMARY checks={len(checks)} failed={failed}")
    return "\n".join(lines) + "\n"
