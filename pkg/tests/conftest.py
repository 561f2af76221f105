from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from abelsign.model import Params
from abelsign.poly import UPoly
from abelsign.qnum import QNum

settings.register_profile(
    "default",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def record():
    def _record(n: int, ok: bool, detail: str):
        ACCEPTANCE[n] = (ok, detail)
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")

    return _record


# -- strategies ------------------------------------------------------------------------

small_rationals = st.builds(
    Fraction, st.integers(-12, 12), st.integers(1, 6)
)


@st.composite
def qnums(draw, d=2):
    return QNum(draw(small_rationals), draw(small_rationals), d)


@st.composite
def rational_params(draw):
    return Params.of([QNum(draw(small_rationals)) for _ in range(6)])


@st.composite
def upolys(draw, max_degree=4, nonzero=True):
    cs = draw(st.lists(small_rationals, min_size=1, max_size=max_degree + 1))
    p = UPoly(cs)
    if nonzero and p.is_zero:
        p = UPoly([1])
    return p


def poly(*cs, d=1):
    """Polynomial from coefficients given constant term first."""
    return UPoly(list(cs), d)


def linear_product(roots, lc=1):
    f = UPoly([lc])
    for r in roots:
        f = f * UPoly([-r, 1])
    return f
