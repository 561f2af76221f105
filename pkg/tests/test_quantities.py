import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given

from abelsign.dual import Dual, seed_duals
from abelsign.linalg import det
from abelsign.model import Params, build_p1, build_p3
from abelsign.poly import discriminant, resultant, sylvester_matrix
from abelsign.quantities import (
    compute_bundle,
    compute_R1,
    compute_R2,
    cubic_discriminant_form,
    formal_resultant,
    p1_coeffs,
    p3_coeffs,
    r2_form,
    verify_res_factorization,
)
from abelsign.qnum import QNum

from conftest import poly, rational_params

A = sympy.symbols("a1:7")


def test_R2_examples():
    assert compute_R2(Params.of([1, 0, Fraction(1, 3), -1, -1, 0])) == 0
    assert compute_R2(Params.of([0] * 6)) == 0
    assert compute_R2(Params.of([0, 0, 0, 1, -2, -1])) == 0


def test_res_factorisation_is_a_polynomial_identity():
    """Symbolic check of the closed forms, independent of the exact kernel."""
    c1 = p1_coeffs(A)
    c3 = p3_coeffs(A)
    rows = [[0] * i + list(reversed(c1)) + [0] * (2 - i) for i in range(3)]
    rows += [[0] * i + list(reversed(c3)) + [0] * (2 - i) for i in range(3)]
    res = sympy.Matrix(rows).det(method="berkowitz")
    r1 = (4 * A[1] + A[4]) ** 2 + (3 * A[2] + A[3] + A[5]) ** 2
    assert sympy.expand(res - r1 * r2_form(A)) == 0


@pytest.mark.parametrize("pt", [[1, 1, 1, 1, 1, 1], [0, 1, 2, 3, 4, 5], [1, 2, -1, 0, 1, 3]])
def test_res_factorisation_examples(pt):
    p = Params.of(pt)
    ok, witness = verify_res_factorization(p)
    assert ok
    assert witness["res(p1,p3)"] == witness["R1*R2"]


def test_res_factorisation_needs_a_cubic():
    with pytest.raises(ValueError):
        verify_res_factorization(Params.of([0, 0, 1, 0, 0, 0]))


def test_formal_resultant_matches_padded_sylvester():
    p = Params.of([1, 1, 1, 1, 1, 1])
    p1, p3 = build_p1(p), build_p3(p)
    assert p3.degree == 2
    zero = QNum(0)
    c1 = list(reversed(p1_coeffs(p.as_tuple())))
    c3 = list(reversed(p3_coeffs(p.as_tuple())))
    rows = [[zero] * i + c1 + [zero] * (2 - i) for i in range(3)]
    rows += [[zero] * i + c3 + [zero] * (2 - i) for i in range(3)]
    assert formal_resultant(p1, p3, 3, 3) == det(rows)
    assert formal_resultant(p3, p1, 3, 3) == det(rows[3:] + rows[:3]) * (-1) ** 0


@given(rational_params())
def test_res_factorisation_random(p):
    assume(build_p1(p).degree == 3 and build_p3(p).degree == 3)
    p1, p3 = build_p1(p), build_p3(p)
    assert resultant(p1, p3) == compute_R1(p) * compute_R2(p)
    assert det(sylvester_matrix(p1, p3)) == compute_R1(p) * compute_R2(p)


@given(rational_params())
def test_R1_zero_set(p):
    assert compute_R1(p) >= 0
    on = p.a5 == -4 * p.a2 and p.a6 == -3 * p.a3 - p.a4
    assert (compute_R1(p) == 0) == on


@given(rational_params())
def test_closed_form_discriminants_agree_with_kernel(p):
    b = compute_bundle(p)
    if b.p1.degree == 3:
        assert b.D1 == cubic_discriminant_form(p1_coeffs(p.as_tuple()))
    if b.p3.degree == 3:
        assert b.D3 == cubic_discriminant_form(p3_coeffs(p.as_tuple()))


def test_bundle_on_p1_null_point():
    b = compute_bundle(Params.of([1, 0, 1, -3, 0, 0]))
    assert b.p1.is_zero
    for name in ("D1", "D1p", "R113", "R133", "Rbar113", "Rbar133", "r1"):
        assert b.undefined.get(name), name
    assert b.D3 is not None


def test_bundle_generic_point_fully_defined():
    p = Params.of([1, 2, -1, 0, 1, 3])
    b = compute_bundle(p)
    assert not b.undefined
    assert b.degrees == (3, 3)


def test_bundle_degree_two_p1():
    b = compute_bundle(Params.of([0, 1, 0, 0, 0, 0]))
    assert b.p1.degree == 2
    assert b.D1 == discriminant(poly(1, 0, -3))
    assert b.D1p is None and "p1'" in b.undefined["D1p"]


@given(rational_params())
def test_definedness_bookkeeping(p):
    b = compute_bundle(p)
    assert (b.D1 is not None) == (b.p1.degree >= 2)
    assert (b.D3 is not None) == (b.p3.degree >= 2)
    if b.r1 is not None and not b.r1.is_zero and not b.p3.is_zero:
        assert b.Rbar113 is not None
    for name in ("D1", "D3", "D1p", "D3p", "R113", "R133", "Rbar113", "Rbar133", "r1", "r3"):
        assert (getattr(b, name) is None) == (name in b.undefined)


def test_bundle_json_is_exact_text():
    p = Params.of([0, QNum(0, 1, 2), 1, 0, 0, 1], 2)
    obj = compute_bundle(p).to_json()
    assert any("sqrt(2)" in str(v) for v in obj.values())


def test_dual_numbers_give_partials():
    a = seed_duals([QNum(v) for v in (1, 2, 3, 4, 5, 6)])
    out = a[0] * a[1] * a[1] - 3 * a[5] + 2
    assert out.val == 1 * 4 - 18 + 2
    assert out.gradient() == [4, 4, 0, 0, 0, -3]
    assert isinstance(out, Dual)


def test_dual_gradient_of_R2_matches_sympy():
    rng = random.Random(4)
    expr = r2_form(A)
    for _ in range(5):
        vals = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(6)]
        grad = r2_form(seed_duals([QNum(v) for v in vals])).gradient()
        subs = dict(zip(A, [sympy.Rational(v.numerator, v.denominator) for v in vals]))
        for i, sym in enumerate(A):
            ref = sympy.diff(expr, sym).subs(subs)
            assert grad[i] == QNum(Fraction(int(sympy.numer(ref)), int(sympy.denom(ref))))
