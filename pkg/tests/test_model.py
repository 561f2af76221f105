import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from abelsign.model import (
    Params,
    build_p1,
    build_p2,
    build_p3,
    build_q,
    eval_A,
    eval_B,
    eval_f,
    eval_g,
    eval_gprime,
    trig_coeffs,
)
from abelsign.qnum import QNum, RadicandMismatch

from conftest import poly, rational_params

ZERO = Params.of([0] * 6)


def test_params_json_round_trip():
    obj = {"a1": "-1", "a2": "sqrt(14)", "a3": "-2", "a4": "-1", "a5": "-3*sqrt(14)", "a6": "0", "d": 14}
    p = Params.from_json(obj)
    assert p.d == 14
    assert p.a2 == QNum(0, 1, 14)
    assert p.to_json() == obj
    assert Params.from_json(p.to_json()) == p


@pytest.mark.parametrize(
    "obj",
    [
        {"a1": "1", "a2": "0", "a3": "0", "a4": "0", "a5": "0", "d": 1},
        {"a1": "x", "a2": "0", "a3": "0", "a4": "0", "a5": "0", "a6": "0", "d": 1},
        {"a1": "sqrt(3)", "a2": "0", "a3": "0", "a4": "0", "a5": "0", "a6": "0", "d": 2},
        {"a1": "1", "a2": "0", "a3": "0", "a4": "0", "a5": "0", "a6": "0", "d": -2},
    ],
)
def test_params_json_rejects_bad_input(obj):
    with pytest.raises(ValueError):
        Params.from_json(obj)


def test_params_reject_two_fields():
    with pytest.raises(RadicandMismatch):
        Params.of([QNum(0, 1, 2), QNum(0, 1, 3), 0, 0, 0, 0])


def test_trig_coeffs():
    p = Params.of([1, 2, 3, 4, 5, 6])
    tc = trig_coeffs(p)
    assert tc.fcoeffs == (-3, 11, 16, -2)
    assert tc.gcoeffs == (2, 13, -11, -6)


def test_p1_examples():
    assert build_p1(Params.of([1, 0, 1, -3, 0, 0])).is_zero
    assert build_p1(ZERO).is_zero
    assert build_p1(Params.of([0, 1, 0, 0, 0, 0])) == poly(1, 0, -3)


def test_p2_examples():
    assert build_p2(Params.of([0, 0, 1, 0, 0, 0])) == poly(-1, 0, 2)
    assert build_p2(ZERO).is_zero
    assert build_p2(Params.of([0, 0, 0, 0, 0, 1])) == poly(0, 0, 1)


def test_p3_examples():
    assert build_p3(Params.of([1, 1, -1, 2, -4, 1])).is_zero
    assert build_p3(ZERO).is_zero
    assert build_p3(Params.of([0, 0, 0, 0, 0, 1])) == poly(0, 0, -1)


def test_q_examples():
    assert build_q(Params.of([0, 1, 1, -4, -4, 1])).is_zero
    assert build_q(ZERO).is_zero
    assert build_q(Params.of([0, 0, 1, 0, 0, 0])) == poly(-4, 0, 8)


@given(rational_params())
def test_leading_coefficients(p):
    p1, p3 = build_p1(p), build_p3(p)
    assert p1.coeff(3) == -p.a6
    assert p3.coeff(3) == p.a2 - p.a1 * p.a6
    assert p1.degree <= 3 and p3.degree <= 3


@given(rational_params())
def test_p3_without_a1_is_minus_p2(p):
    q = p.replace(a1=QNum(0))
    assert build_p3(q) == -build_p2(q)


def _random_points(n, seed):
    rng = random.Random(seed)
    return [Params.of([rng.randint(-6, 6) for _ in range(6)]) for _ in range(n)]


def test_periodicity_of_A_and_B():
    rng = np.random.default_rng(0)
    for p in _random_points(1000, 1):
        theta = rng.uniform(0, 2 * math.pi)
        fc, gc = trig_coeffs(p).as_floats()
        scale = (np.abs(gc).sum() * (abs(float(p.a1)) * np.abs(gc).sum() + np.abs(fc).sum())) + np.abs(fc).sum() + 1
        assert abs(eval_A(p, theta + math.pi) - eval_A(p, theta)) < 1e-10 * scale
        assert abs(eval_B(p, theta + math.pi) + eval_B(p, theta)) < 1e-10 * scale


def test_A_vanishes_when_p1_null():
    p = Params.of([2, 0, 1, -3, 0, 0])
    theta = np.linspace(0, 2 * math.pi, 50)
    assert np.all(eval_A(p, theta) == 0)


def test_B_vanishes_on_b1_variety():
    p = Params.of([0, 1, 1, -4, -4, 1])
    theta = np.linspace(0, 2 * math.pi, 200)
    assert np.max(np.abs(eval_B(p, theta))) < 1e-12


def test_gprime_matches_finite_difference():
    p = Params.of([1, 2, -1, 3, -2, 5])
    h = 1e-6
    for theta in np.linspace(0.1, 6.0, 13):
        fd = (eval_g(p, theta + h) - eval_g(p, theta - h)) / (2 * h)
        assert abs(eval_gprime(p, theta) - fd) < 1e-6


@given(rational_params(), st.floats(-1.45, 1.45))
def test_tan_identity_for_A(p, theta):
    x = math.tan(theta)
    lhs = eval_A(p, theta) * (1 + x * x) ** 3
    p1, p3 = build_p1(p), build_p3(p)
    rhs = p1.eval_float(x) * p3.eval_float(x)
    scale = (sum(abs(c) for c in p1.float_coeffs()) * sum(abs(c) for c in p3.float_coeffs())) * (1 + abs(x)) ** 6
    assert abs(lhs - rhs) <= 1e-9 * max(scale, 1e-300)


@given(rational_params(), st.floats(-1.45, 1.45))
def test_tan_identity_for_B(p, theta):
    x = math.tan(theta)
    lhs = eval_B(p, theta) * (1 + x * x) ** 1.5
    q = build_q(p)
    scale = sum(abs(c) for c in q.float_coeffs()) * (1 + abs(x)) ** 3 + 1
    assert abs(lhs - q.eval_float(x)) <= 1e-9 * scale


def test_f_matches_definition():
    p = Params.of([0, 1, 2, 3, 4, 5])
    t = 0.7
    c, s = math.cos(t), math.sin(t)
    f = -2 * c**3 + 7 * c * c * s + 12 * c * s * s - 1 * s**3
    assert eval_f(p, t) == pytest.approx(f, rel=1e-14)
