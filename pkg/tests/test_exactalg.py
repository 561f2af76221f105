from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from abelsign.linalg import det, rank
from abelsign.poly import (
    NEG_INF,
    SturmChain,
    UPoly,
    discriminant,
    odd_part,
    poly_divrem,
    poly_gcd,
    resultant,
    squarefree_decomposition,
    sturm_count,
    sylvester_matrix,
)
from abelsign.qnum import QNum, RadicandMismatch, parse_qnum, qnum_sign, squarefree_part

from conftest import linear_product, poly, qnums, small_rationals, upolys

X = sympy.Symbol("x")


def to_sympy(f: UPoly):
    return sum(sympy.Rational(int(c.a.numerator), int(c.a.denominator)) * X**k for k, c in enumerate(f.coeffs))


# -- QNum ------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "a, b, d, expected",
    [(0, 0, 1, 0), (-1, 1, 2, 1), (3, -2, 2, 1), (-3, 2, 2, -1), (1, -1, 2, -1), (0, -1, 5, -1)],
)
def test_qnum_sign_examples(a, b, d, expected):
    assert qnum_sign(QNum(a, b, d)) == expected


def test_qnum_normalisation():
    x = QNum(Fraction(2, 4), 3, 8)  # sqrt(8) = 2 sqrt(2)
    assert (x.a, x.b, x.d) == (Fraction(1, 2), 6, 2)
    y = QNum(1, 5, 1)
    assert (y.a, y.b, y.d) == (6, 0, 1)
    assert QNum(0, 1, 4) == QNum(2)


def test_qnum_mixed_radicands_rejected():
    with pytest.raises(RadicandMismatch):
        QNum(0, 1, 2) + QNum(0, 1, 3)
    # a rational tagged with another field still combines
    assert QNum(1, 0, 3) + QNum(0, 1, 2) == QNum(1, 1, 2)


@pytest.mark.parametrize(
    "text, value",
    [
        ("3/4", QNum(Fraction(3, 4))),
        ("-2", QNum(-2)),
        ("sqrt(2)", QNum(0, 1, 2)),
        ("-sqrt(2)", QNum(0, -1, 2)),
        ("1/2+3/4*sqrt(7)", QNum(Fraction(1, 2), Fraction(3, 4), 7)),
        ("-1-1/3*sqrt(7)", QNum(-1, Fraction(-1, 3), 7)),
    ],
)
def test_parse_and_print_round_trip(text, value):
    assert parse_qnum(text) == value
    assert parse_qnum(str(value)) == value


@pytest.mark.parametrize("bad", ["", "abc", "1/", "sqrt(-2)", "1 2", "1sqrt(2)"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_qnum(bad)


def test_parse_checks_radicand_against_context():
    with pytest.raises(RadicandMismatch):
        parse_qnum("sqrt(3)", d=2)
    assert parse_qnum("2*sqrt(8)", d=2) == QNum(0, 4, 2)


def test_squarefree_part():
    assert squarefree_part(72) == (2, 6)
    assert squarefree_part(1509) == (1509, 1)
    assert squarefree_part(1) == (1, 1)


@given(qnums(), qnums(), qnums())
def test_qnum_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(qnums(), qnums())
def test_qnum_sign_multiplicative_and_matches_float(x, y):
    assert qnum_sign(x * y) == qnum_sign(x) * qnum_sign(y)
    fx = float(x)
    if abs(fx) > 1e-9:
        assert qnum_sign(x) == (1 if fx > 0 else -1)


# -- division, gcd -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "f, g, q, r",
    [
        (poly(-1, 0, 1), poly(-1, 1), poly(1, 1), poly()),
        (poly(0, 0, 0, 1), poly(0, 0, 1), poly(0, 1), poly()),
        (poly(1, 0, 1), poly(0, 2), poly(0, Fraction(1, 2)), poly(1)),
    ],
)
def test_divrem_examples(f, g, q, r):
    assert poly_divrem(f, g) == (q, r)


def test_divrem_by_zero():
    with pytest.raises(ZeroDivisionError):
        poly_divrem(poly(1, 1), poly())


@given(upolys(5), upolys(3))
def test_divrem_identity(f, g):
    q, r = poly_divrem(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


def test_gcd_examples():
    assert poly_gcd(linear_product([1, -2]), linear_product([1])) == linear_product([1])
    assert poly_gcd(poly(1, 0, 1), poly(2, 0, 1)) == poly(1)
    f = linear_product([1, 1, -3])
    g = linear_product([1, -3, -3])
    assert poly_gcd(f, g) == linear_product([1, -3])
    with pytest.raises(ValueError):
        poly_gcd(poly(), poly())


# -- square-free decomposition and odd part ----------------------------------------------------


def test_squarefree_examples():
    assert squarefree_decomposition(linear_product([1, 1, -2])) == [(poly(2, 1), 1), (poly(-1, 1), 2)]
    assert squarefree_decomposition(poly(0, 0, 0, 1)) == [(poly(0, 1), 3)]
    f = poly(1, 0, 1) * linear_product([5, 5, 5])
    assert squarefree_decomposition(f) == [(poly(1, 0, 1), 1), (poly(-5, 1), 3)]
    with pytest.raises(ValueError):
        squarefree_decomposition(poly())


def test_odd_part_examples():
    assert odd_part(linear_product([1, 1, -2])) == poly(2, 1)
    assert odd_part(poly(0, 0, 0, 1)) == poly(0, 1)
    f = poly(6, -2, 4)
    assert odd_part(f) == f.monic()


@given(upolys(4))
def test_squarefree_reproduces_input(f):
    parts = squarefree_decomposition(f)
    prod = UPoly([f.lc])
    for factor, mult in parts:
        assert factor.lc == 1
        assert poly_gcd(factor, factor.deriv()).degree == 0
        prod = prod * factor**mult
    assert prod == f
    for i, (u, _) in enumerate(parts):
        for v, _ in parts[i + 1:]:
            assert poly_gcd(u, v).degree == 0


@given(upolys(3), upolys(2))
def test_odd_part_ignores_square_factors(f, g):
    if f.degree < 1 or g.degree < 1:
        return
    f = odd_part(f)  # square-free
    if poly_gcd(f, g).degree > 0:
        return
    assert odd_part(f * g * g) == odd_part(f)


@given(upolys(4))
def test_squarefree_matches_sympy(f):
    if f.degree < 1:
        return
    ours = sorted((str(to_sympy(a).expand()), m) for a, m in squarefree_decomposition(f))
    _, theirs = sympy.sqf_list(to_sympy(f), X)
    theirs = sorted((str(sympy.Poly(a, X).monic().as_expr().expand()), m) for a, m in theirs)
    assert ours == theirs


# -- resultant, discriminant -------------------------------------------------------------------


def test_resultant_examples():
    assert resultant(poly(-2, 1), poly(-3, 1)) == -1
    assert resultant(poly(-1, 0, 1), poly(-1, 1)) == 0
    assert resultant(poly(1, 0, 1), poly(0, 1)) == 1
    with pytest.raises(ValueError):
        resultant(poly(), poly(1, 1))


@given(upolys(4), upolys(4))
def test_resultant_equals_sylvester_determinant(f, g):
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == det(sylvester_matrix(f, g))


def sympy_sylvester_det(f: UPoly, g: UPoly):
    """Reference resultant: Sylvester matrix built and reduced entirely in sympy."""
    fd = [sympy.Rational(int(c.a.numerator), int(c.a.denominator)) for c in reversed(f.coeffs)]
    gd = [sympy.Rational(int(c.a.numerator), int(c.a.denominator)) for c in reversed(g.coeffs)]
    m, n = len(fd) - 1, len(gd) - 1
    rows = [[0] * i + fd + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + gd + [0] * (m - 1 - i) for i in range(m)]
    return sympy.Matrix(rows).det()


@given(upolys(4), upolys(3))
def test_resultant_matches_independent_sylvester(f, g):
    if f.degree < 1 or g.degree < 1:
        return
    ref = sympy_sylvester_det(f, g)
    assert resultant(f, g) == QNum(Fraction(int(sympy.numer(ref)), int(sympy.denom(ref))))


def test_resultant_over_quadratic_field():
    r2 = QNum.sqrt(2)
    f = UPoly([-r2, 1], 2)  # x - sqrt(2)
    g = UPoly([-2, 0, 1], 2)  # x^2 - 2
    assert resultant(f, g) == 0
    h = UPoly([-3, 1], 2)
    assert resultant(f, h) == det(sylvester_matrix(f, h))
    assert resultant(f, h) == r2 - 3


def test_discriminant_examples():
    assert discriminant(poly(-1, 0, 1)) == 4
    assert discriminant(linear_product([1, 1])) == 0
    assert discriminant(poly(0, -1, 0, 1)) == 4
    with pytest.raises(ValueError):
        discriminant(poly(1, 1))


@given(upolys(4))
def test_discriminant_matches_sympy(f):
    if f.degree < 2:
        return
    ref = sympy.discriminant(to_sympy(f), X)
    assert discriminant(f) == QNum(Fraction(int(sympy.numer(ref)), int(sympy.denom(ref))))


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3), st.lists(st.integers(-4, 4), max_size=2))
def test_resultant_zero_iff_common_factor(rf, rg):
    f = linear_product([Fraction(r) for r in rf])
    g = linear_product([Fraction(r) for r in rg]) * poly(1, 0, 1)
    assert (resultant(f, g) == 0) == (poly_gcd(f, g).degree >= 1)


@given(upolys(4))
def test_discriminant_zero_iff_repeated_root(f):
    if f.degree < 2:
        return
    assert (discriminant(f) == 0) == (poly_gcd(f, f.deriv()).degree >= 1)


# -- Sturm ------------------------------------------------------------------------------------


def test_sturm_examples():
    assert sturm_count(poly(-2, 0, 1)) == 2
    assert sturm_count(poly(1, 0, 1)) == 0
    assert sturm_count(poly(0, -1, 0, 1)) == 3
    assert sturm_count(poly(0, -1, 0, 1), (Fraction(-1, 2), 2)) == 2
    with pytest.raises(ValueError):
        sturm_count(poly(0, -1, 0, 1), (0, 2))
    with pytest.raises(ValueError):
        sturm_count(poly())


def test_sturm_chain_recurrence():
    f = poly(3, -1, -2, 1, 1)
    chain = SturmChain(f).polys
    for a, b, c in zip(chain, chain[1:], chain[2:]):
        r = poly_divrem(a, b)[1]
        # c is -r up to a positive factor
        ratio = (-r).lc / c.lc
        assert ratio > 0 and (-r) == c.scale(ratio)


@given(
    st.lists(st.integers(-5, 5), max_size=4),
    st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 4)), max_size=1),
    st.sampled_from([1, -2, Fraction(1, 3)]),
)
def test_sturm_counts_constructed_roots(roots, quads, lc):
    f = linear_product([Fraction(r) for r in roots], lc)
    for b, c in quads:
        f = f * poly(b * b + c, 2 * b, 1)  # (x + b)^2 + c, no real roots
    if f.degree < 1:
        return
    assert sturm_count(f) == len(set(roots))
    if f.degree == 3 and len(set(roots)) == len(roots):
        d = discriminant(f)
        assert (d > 0) == (len(roots) == 3)
        assert (d < 0) == (len(roots) == 1)


def test_degree_of_zero_polynomial():
    assert poly().degree == NEG_INF
    assert poly(0, 0).is_zero


def test_linalg_rank_and_det():
    rows = [[QNum(1), QNum(2)], [QNum(2), QNum(4)]]
    assert rank(rows) == 1
    assert det(rows) == 0
    assert rank([]) == 0
    assert det([[QNum(0), QNum(1)], [QNum(1), QNum(0)]]) == -1
    r2 = QNum.sqrt(2)
    assert det([[r2, QNum(1)], [QNum(1), r2]]) == 1
