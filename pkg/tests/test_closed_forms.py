from math import cos, pi, sqrt

import numpy as np
import pytest

from turan.closed_forms import (Source, applicable_closed_forms, dispatch_closed_form, quadrature_weights,
                                stechkin_value, theorem3_value, theorem4_value, theorem5_value)
from turan.errors import InvalidQ
from turan.problems import b_from_s, coprime_instances, cosine_polynomial, make_instance, make_lp1, make_lp2
from turan.simplex import solve


@pytest.mark.parametrize("q, expected", [(2, 0.5), (3, 1 / 3), (10, 0.1)])
def test_stechkin(q, expected):
    r = stechkin_value(q)
    assert r.value == expected
    assert list(r.breakpoints) == [1.0, 0.0]
    assert r.source is Source.STECHKIN


def test_theorem3_five():
    r = theorem3_value(5)
    assert r.value == pytest.approx(0.4472136, abs=1e-7)
    assert r.b[0] == pytest.approx(0.6180340, abs=1e-7)
    # golden-ratio identities: cos(pi/5) = phi/2
    assert r.value == pytest.approx(1 / sqrt(5), abs=1e-15)
    assert r.b[0] == pytest.approx((sqrt(5) - 1) / 2, abs=1e-15)


def test_theorem3_seven():
    # independent evaluation via 1/q + 1/(q cos(pi/q))
    assert theorem3_value(7).value == pytest.approx(1 / 7 + 1 / (7 * cos(pi / 7)), abs=1e-15)
    assert theorem3_value(7).value == pytest.approx(0.30141661, abs=1e-8)


def test_theorem3_limit():
    for q in (1001, 10001):
        assert theorem3_value(q).value / (2 / q) == pytest.approx(1.0, abs=1e-5)


@pytest.mark.parametrize("q", [4, 3, 1, 10])
def test_theorem3_rejects(q):
    with pytest.raises(InvalidQ):
        theorem3_value(q)


def test_theorem4_examples():
    assert theorem4_value(1).value == pytest.approx(1 / 3, abs=1e-15)
    assert theorem4_value(2).value == pytest.approx(0.4472136, abs=1e-7)
    assert theorem4_value(3).value == pytest.approx(0.4739524, abs=1e-7)


def test_theorem4_schedule_recovers_breakpoints():
    for p in range(1, 13):
        r = theorem4_value(p)
        b, res = b_from_s(make_instance(p, 2 * p + 1), r.s_star)
        np.testing.assert_allclose(b, r.b, atol=1e-12)
        assert res.max(initial=0.0) <= 1e-12
        assert r.s_star[0] == pytest.approx(r.value, abs=1e-15)


def test_quadrature_seven():
    w = quadrature_weights(7)
    assert w.r0 == 2
    assert w.gamma0 == pytest.approx(0.30141661, abs=1e-8)
    assert w.gamma0 == pytest.approx(1 / (7 * theorem5_value(7).value), abs=1e-12)


def test_quadrature_eight_by_hand():
    w = quadrature_weights(8)
    assert w.r0 == 2
    # nodes: cos(pi/2) = 0, cos(3 pi/4) = -sqrt2/2; second harmonics -1 and 0
    c1, c2, d1, d2 = 0.0, -sqrt(2) / 2, -1.0, 0.0
    delta = c1 * d2 - c2 * d1
    assert w.delta == pytest.approx(delta, abs=1e-15)
    assert w.gamma0 == pytest.approx(1 / (1 + (1 + sqrt(2))), abs=1e-12)
    assert w.gamma0 == pytest.approx(0.2928932, abs=1e-7)


@pytest.mark.parametrize("q", [q for q in range(7, 101) if q % 3])
def test_quadrature_invariants(q):
    w = quadrature_weights(q)
    assert w.r0 == q // 3
    assert min(w.weights) > 0
    assert sum(w.weights) == pytest.approx(1.0, abs=1e-12)
    assert max(w.delta, w.delta1, w.delta2) < 0
    assert w.exactness_residuals().max() <= 1e-12


@pytest.mark.parametrize("q", [9, 6, 5])
def test_quadrature_rejects(q):
    with pytest.raises(InvalidQ):
        quadrature_weights(q)
    with pytest.raises(InvalidQ):
        theorem5_value(q)


def test_theorem5_eight():
    r = theorem5_value(8)
    assert r.value == pytest.approx((2 + sqrt(2)) / 8, abs=1e-15)
    np.testing.assert_allclose(r.b, [sqrt(2) / 2, 0.5], atol=1e-15)


def test_theorem5_ten_matches_lp2():
    assert theorem5_value(10).value == pytest.approx(solve(make_lp2(make_instance(3, 10))).value, abs=1e-9)


@pytest.mark.parametrize("q", [q for q in range(7, 101) if q % 3])
def test_theorem5_polynomial_zeros(q):
    r = theorem5_value(q)
    poly = cosine_polynomial(make_instance(3, q), r.b)
    assert poly.min() >= -1e-10
    r0 = q // 3
    assert abs(poly[r0]) <= 1e-12 and abs(poly[r0 + 1]) <= 1e-12


def test_theorem5_breakpoints_match_lp2():
    # an LP2 optimiser need not be unique, so compare objective values through the breakpoints
    for q in [q for q in range(7, 41) if q % 3]:
        r = theorem5_value(q)
        assert (1 + 2 * r.b.sum()) / q == pytest.approx(r.value, abs=1e-14)


def test_overlaps():
    assert theorem4_value(2).value == pytest.approx(theorem3_value(5).value, abs=1e-12)
    assert theorem4_value(3).value == pytest.approx(theorem5_value(7).value, abs=1e-12)
    assert theorem4_value(1).value == pytest.approx(stechkin_value(3).value, abs=1e-12)
    np.testing.assert_allclose(theorem4_value(2).b, theorem3_value(5).b, atol=1e-12)
    np.testing.assert_allclose(theorem4_value(3).b, theorem5_value(7).b, atol=1e-12)


def test_dispatch():
    r = dispatch_closed_form(make_instance(1, 6))
    assert r.source is Source.STECHKIN and r.value == pytest.approx(1 / 6)
    assert dispatch_closed_form(make_instance(4, 11)) is None
    both = applicable_closed_forms(make_instance(3, 7))
    assert [c.source for c in both] == [Source.THEOREM4, Source.THEOREM5]
    assert dispatch_closed_form(make_instance(3, 7)).source is Source.THEOREM4
    assert both[0].value == pytest.approx(both[1].value, abs=1e-12)


def test_catalog_agreement_and_popov():
    seen = 0
    for inst in coprime_instances(40):
        forms = applicable_closed_forms(inst)
        if not forms:
            continue
        seen += 1
        lp1 = solve(make_lp1(inst)).value
        lp2 = solve(make_lp2(inst)).value
        for c in forms:
            assert abs(c.value - lp1) <= 1e-8, (inst, c.source)
            assert abs(c.value - lp2) <= 1e-8, (inst, c.source)
            if inst.p >= 2:
                assert c.value > float(inst.h) + 1e-6
    assert seen > 60


def test_result_validation():
    from turan.closed_forms import ClosedFormResult
    with pytest.raises(ValueError):
        ClosedFormResult(1.5, Source.STECHKIN)
    with pytest.raises(ValueError):
        ClosedFormResult(0.5, Source.STECHKIN, np.array([0.9, 0.0]))
