"""Acceptance criteria, one test per criterion.

Each test prints a single ``CRITERION n PASS|FAIL`` line with its measured
residual and runtime. Reference values are evaluated here from the formulas
with :mod:`math`, independently of :mod:`turan.closed_forms`.

Run standalone with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import subprocess
import sys
import time
from dataclasses import dataclass
from math import cos, pi

import numpy as np
import pytest

from turan.asymptotics import FAMILIES, Family, remainder_order_fit, theorem1_bound_check
from turan.closed_forms import (applicable_closed_forms, quadrature_weights, stechkin_value, theorem3_value,
                                theorem4_value, theorem5_value)
from turan.extremal import ExtremalFunction, validate_membership
from turan.oracle import lp1_vertex_enumeration, lp2_grid_search
from turan.problems import b_from_s, coprime_instances, make_instance, make_lp1, make_lp2
from turan.simplex import solve


@dataclass
class Outcome:
    passed: bool
    detail: str


CRITERIA = {}


def criterion(number: int, title: str, budget: float | None = None):
    def register(fn):
        CRITERIA[number] = (title, budget, fn)
        return fn
    return register


def _lp_values(inst):
    return solve(make_lp1(inst)).value, solve(make_lp2(inst)).value


@criterion(1, "A(1/q) = 1/q for q = 2..50", budget=1.0)
def stechkin_exactness() -> Outcome:
    err = 0.0
    for q in range(2, 51):
        a1, a2 = _lp_values(make_instance(1, q))
        err = max(err, abs(a1 - 1 / q), abs(a2 - 1 / q), abs(stechkin_value(q).value - 1 / q))
    return Outcome(err <= 1e-12, f"max_err={err:.2e}")


@criterion(2, "|S1 - S2| <= 1e-8 for all q <= 40", budget=60.0)
def lp_equivalence() -> Outcome:
    worst, n = 0.0, 0
    for inst in coprime_instances(40):
        a1, a2 = _lp_values(inst)
        worst = max(worst, abs(a1 - a2))
        n += 1
    return Outcome(worst <= 1e-8, f"instances={n} max_delta={worst:.2e}")


@criterion(3, "A(2/q) catalog, odd q = 5..51", budget=10.0)
def two_over_q_catalog() -> Outcome:
    val_err = b_err = 0.0
    for q in range(5, 52, 2):
        c = cos(pi / q)
        expected = (1 + c) / (q * c)
        inst = make_instance(2, q)
        lp1, lp2 = solve(make_lp1(inst)), solve(make_lp2(inst))
        val_err = max(val_err, abs(lp1.value - expected), abs(lp2.value - expected))
        b_err = max(b_err, abs(lp2.variables[0] - 1 / (2 * c)))
    return Outcome(val_err <= 1e-8 and b_err <= 1e-7, f"value_err={val_err:.2e} b1_err={b_err:.2e}")


@criterion(4, "A(p/(2p+1)) catalog, p = 1..12")
def p_over_2p1_catalog() -> Outcome:
    val_err = b_err = 0.0
    for p in range(1, 13):
        q = 2 * p + 1
        c = cos(pi / q)
        expected = c / (1 + c)
        heights = np.array([(c + cos(2 * pi * k / q)) / (1 + c) for k in range(1, p)])
        inst = make_instance(p, q)
        lp1, lp2 = solve(make_lp1(inst)), solve(make_lp2(inst))
        val_err = max(val_err, abs(lp1.value - expected), abs(lp2.value - expected))
        if p > 1:
            b1, _ = b_from_s(inst, lp1.variables)
            b_err = max(b_err, float(np.abs(lp2.variables - heights).max()), float(np.abs(b1 - heights).max()))
    return Outcome(val_err <= 1e-8 and b_err <= 1e-7, f"value_err={val_err:.2e} breakpoint_err={b_err:.2e}")


@criterion(5, "A(3/q) catalog and quadrature, q = 7..50, 3 does not divide q")
def three_over_q_catalog() -> Outcome:
    val_err = sum_err = exact_err = 0.0
    positive = True
    for q in range(7, 51):
        if q % 3 == 0:
            continue
        r0 = q // 3
        c1, c2 = cos(2 * pi * r0 / q), cos(2 * pi * (r0 + 1) / q)
        expected = (1 + (1 - 2 * (c1 + c2)) / (1 + 2 * c1 * c2)) / q
        a1, a2 = _lp_values(make_instance(3, q))
        val_err = max(val_err, abs(a1 - expected), abs(a2 - expected))
        w = quadrature_weights(q)
        positive &= min(w.weights) > 0
        sum_err = max(sum_err, abs(sum(w.weights) - 1))
        rs = np.arange(q)
        for k in range(3):
            basis = np.cos(2 * pi * k * rs / q)
            rule = w.gamma0 * basis[0] + w.gamma1 * basis[r0] + w.gamma2 * basis[r0 + 1]
            exact_err = max(exact_err, abs(rule - basis.mean()))
    ok = val_err <= 1e-8 and positive and sum_err <= 1e-12 and exact_err <= 1e-12
    return Outcome(ok, f"value_err={val_err:.2e} positive={positive} sum_err={sum_err:.2e} "
                       f"exactness_err={exact_err:.2e}")


@criterion(6, "overlap identities")
def overlaps() -> Outcome:
    deltas = [abs(theorem4_value(2).value - theorem3_value(5).value),
              abs(theorem4_value(3).value - theorem5_value(7).value),
              abs(theorem4_value(1).value - stechkin_value(3).value)]
    return Outcome(max(deltas) <= 1e-12, f"max_delta={max(deltas):.2e}")


@criterion(7, "vertex and grid oracles agree with the simplex")
def oracles() -> Outcome:
    v_err = g_err = 0.0
    for inst in coprime_instances(12):
        v_err = max(v_err, abs(lp1_vertex_enumeration(inst).value - solve(make_lp1(inst)).value))
    for inst in coprime_instances(20):
        if inst.p in (2, 3):
            g_err = max(g_err, abs(lp2_grid_search(inst).value - solve(make_lp2(inst)).value))
    return Outcome(v_err <= 1e-9 and g_err <= 1e-5, f"vertex_err={v_err:.2e} grid_err={g_err:.2e}")


@criterion(8, "extremal functions satisfy the class conditions, q <= 40")
def membership() -> Outcome:
    min_alpha, worst_sum, support, n = np.inf, -np.inf, 0.0, 0
    for inst in coprime_instances(40):
        candidates = [np.concatenate([[1.0], solve(make_lp2(inst)).variables, [0.0]])]
        candidates += [c.breakpoints for c in applicable_closed_forms(inst)]
        for heights in candidates:
            f = ExtremalFunction(inst.q, heights)
            rep = validate_membership(f, N=10 * inst.q, tol=1e-10, grid_points=1000)
            min_alpha = min(min_alpha, rep.min_alpha)
            worst_sum = max(worst_sum, rep.sum_defect - rep.tail_bound)
            support = max(support, rep.support_max)
            n += 1
    ok = min_alpha >= -1e-10 and worst_sum <= 0 and support == 0.0
    return Outcome(ok, f"functions={n} min_alpha={min_alpha:.2e} "
                       f"max(sum_defect - tail)={worst_sum:.2e} support_max={support:.1e}")


@criterion(9, "(A - h)/h^3 in [0, 16] for h <= 0.2; A > h + 1e-6 for p >= 2")
def theorem1_bound() -> Outcome:
    hs, values, popov_gap = [], [], np.inf
    for inst in coprime_instances(40):
        a = solve(make_lp2(inst)).value
        if inst.h <= 0.2:
            hs.append(inst.h)
            values.append(a)
        if inst.p >= 2:
            popov_gap = min(popov_gap, a - float(inst.h))
    rep = theorem1_bound_check(hs, values)
    min_ratio = min(rep.ratios)
    ok = rep.passed and min_ratio >= -1e-9 and popov_gap > 1e-6
    return Outcome(ok, f"instances={len(hs)} ratio_range=[{min_ratio:.2e}, {rep.max_ratio:.4f}] "
                       f"min_popov_gap={popov_gap:.2e}")


@criterion(10, "remainder orders 7 and 6, h^4 sign flip", budget=5.0)
def remainder_orders() -> Outcome:
    s2 = remainder_order_fit(Family.TWO_OVER_Q_ODD, [11, 21, 41, 81, 161])
    s31 = remainder_order_fit(Family.THREE_OVER_Q_1MOD3, [13, 25, 49, 97, 193])
    s32 = remainder_order_fit(Family.THREE_OVER_Q_2MOD3, [11, 23, 47, 95, 191])
    h4a = dict(FAMILIES[Family.THREE_OVER_Q_1MOD3].terms)[4]
    h4b = dict(FAMILIES[Family.THREE_OVER_Q_2MOD3].terms)[4]
    ok = abs(s2 - 7) <= 0.3 and abs(s31 - 6) <= 0.3 and abs(s32 - 6) <= 0.3 and abs(h4a + h4b) <= 1e-12
    return Outcome(ok, f"slopes={s2:.3f},{s31:.3f},{s32:.3f} h4_sum={abs(h4a + h4b):.1e}")


@criterion(11, "verify --max-q 12 is byte-identical across runs")
def determinism() -> Outcome:
    cmd = [sys.executable, "-m", "turan.cli", "verify", "--max-q", "12"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout
    ok = same and all(r.returncode == 0 for r in runs) and len(runs[0].stdout) > 0
    return Outcome(ok, f"bytes={len(runs[0].stdout)} identical={same} "
                       f"exit={[r.returncode for r in runs]}")


def evaluate(number: int) -> tuple[bool, str]:
    title, budget, fn = CRITERIA[number]
    t0 = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - t0
    in_time = budget is None or elapsed < budget
    passed = out.passed and in_time
    limit = f" budget={budget:g}s" if budget is not None else ""
    line = (f"CRITERION {number:>2} {'PASS' if passed else 'FAIL'} {title}: {out.detail} "
            f"time={elapsed:.2f}s{limit}")
    return passed, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    passed, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
