"""Resultants, discriminants and remainders attached to a parameter point.

Closed forms are written against a generic ring (anything supporting ``+``,
``-``, ``*`` with ints), so the same code evaluates them on :class:`QNum`
values and on the dual numbers used for Jacobians.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Params, build_p1, build_p3
from .poly import UPoly, discriminant, poly_rem, resultant
from .qnum import QNum

__all__ = [
    "InvariantBundle",
    "p1_coeffs",
    "p3_coeffs",
    "r1_form",
    "r2_form",
    "cubic_discriminant_form",
    "derivative_discriminant_form",
    "compute_R1",
    "compute_R2",
    "compute_bundle",
    "formal_resultant",
    "verify_res_factorization",
]


# -- generic closed forms -------------------------------------------------------


def p1_coeffs(a):
    """Coefficients of p1 (constant first) over any ring."""
    _, a2, a3, a4, a5, a6 = a
    return (a2, 3 * a3 + a4, -(3 * a2 + a5), -a6)


def p3_coeffs(a):
    a1, a2, a3, a4, a5, a6 = a
    c1 = p1_coeffs(a)
    c2 = (-a3, 3 * a2 + a5, 2 * a3 + a4 + a6, -a2)
    return tuple(a1 * u - v for u, v in zip(c1, c2))


def r1_form(a):
    """``R1 = (4a2 + a5)^2 + (3a3 + a4 + a6)^2``."""
    _, a2, a3, a4, a5, a6 = a
    u = 4 * a2 + a5
    v = 3 * a3 + a4 + a6
    return u * u + v * v


def r2_form(a):
    """Cofactor of R1 in ``res(p1, p3)``.

    ``R2 = -(a3 a6 l0^2 + a2 l0 l1 l2 + a2^2 (l1 + l3)(l1 - l3))`` with
    ``l0 = 2a3 + a4``, ``l1 = 2a2 + a5``, ``l2 = a3 + a6``, ``l3 = a3 - a6``.
    The overall sign makes ``res(p1, p3) = R1 * R2`` hold for the descending
    Sylvester convention.
    """
    _, a2, a3, a4, a5, a6 = a
    l0 = 2 * a3 + a4
    l1 = 2 * a2 + a5
    l2 = a3 + a6
    l3 = a3 - a6
    return -(a3 * a6 * l0 * l0 + a2 * l0 * l1 * l2 + a2 * a2 * (l1 + l3) * (l1 - l3))


def cubic_discriminant_form(c):
    """Discriminant of ``c0 + c1 x + c2 x^2 + c3 x^3`` as a polynomial in the c's."""
    d, cc, b, a = c
    return (
        b * b * cc * cc
        - 4 * a * cc * cc * cc
        - 4 * b * b * b * d
        - 27 * a * a * d * d
        + 18 * a * b * cc * d
    )


def derivative_discriminant_form(c):
    """Discriminant of the derivative ``c1 + 2 c2 x + 3 c3 x^2``."""
    _, c1, c2, c3 = c
    return 4 * c2 * c2 - 12 * c3 * c1


def compute_R1(p: Params) -> QNum:
    return r1_form(p.as_tuple())


def compute_R2(p: Params) -> QNum:
    return r2_form(p.as_tuple())


# -- the bundle -----------------------------------------------------------------

_SCALARS = ("R1", "R2", "D1", "D3", "D1p", "D3p", "R113", "R133", "Rbar113", "Rbar133")


@dataclass(frozen=True)
class InvariantBundle:
    """All named quantities at one point.

    A scalar is ``None`` exactly when its definition needs a degree or
    non-vanishing condition that fails; ``undefined`` records which one.
    """

    p1: UPoly
    p3: UPoly
    R1: QNum
    R2: QNum
    D1: QNum | None
    D3: QNum | None
    D1p: QNum | None
    D3p: QNum | None
    R113: QNum | None
    R133: QNum | None
    Rbar113: QNum | None
    Rbar133: QNum | None
    r1: UPoly | None
    r3: UPoly | None
    undefined: dict = field(default_factory=dict)

    @property
    def degrees(self):
        return (self.p1.degree, self.p3.degree)

    def is_defined(self, name: str) -> bool:
        return getattr(self, name) is not None

    def to_json(self) -> dict:
        def deg(x):
            return None if x == float("-inf") else x

        out = {
            "degrees": {"p1": deg(self.p1.degree), "p3": deg(self.p3.degree)},
            "p1": self.p1.to_json(),
            "p3": self.p3.to_json(),
        }
        for name in _SCALARS:
            v = getattr(self, name)
            out[name] = str(v) if v is not None else {"undefined": self.undefined[name]}
        for name in ("r1", "r3"):
            v = getattr(self, name)
            out[name] = v.to_json() if v is not None else {"undefined": self.undefined[name]}
        return out


def compute_bundle(p: Params) -> InvariantBundle:
    p1, p3 = build_p1(p), build_p3(p)
    a = p.as_tuple()
    undefined: dict[str, str] = {}
    vals: dict = {"R1": r1_form(a), "R2": r2_form(a)}

    def disc(name, poly, label):
        if poly.degree >= 2:
            vals[name] = discriminant(poly)
        else:
            vals[name] = None
            undefined[name] = f"deg {label} < 2"

    disc("D1", p1, "p1")
    disc("D3", p3, "p3")
    dp1, dp3 = p1.deriv(), p3.deriv()
    disc("D1p", dp1, "p1'")
    disc("D3p", dp3, "p3'")

    def res(name, f, g, fl, gl):
        if f.is_zero or g.is_zero:
            vals[name] = None
            undefined[name] = f"{fl if f.is_zero else gl} is identically zero"
        else:
            vals[name] = resultant(f, g)

    res("R113", dp1, p3, "p1'", "p3")
    res("R133", p1, dp3, "p1", "p3'")

    def remainder(name, f, label):
        if f.degree >= 1:
            vals[name] = poly_rem(f, f.deriv())
        else:
            vals[name] = None
            undefined[name] = f"deg {label} < 1"

    remainder("r1", p1, "p1")
    remainder("r3", p3, "p3")

    def bar(name, f, g, fl, gl):
        for poly, label in ((f, fl), (g, gl)):
            if poly is None:
                vals[name] = None
                undefined[name] = undefined[label]
                return
            if poly.is_zero:
                vals[name] = None
                undefined[name] = f"{label} is identically zero"
                return
        vals[name] = resultant(f, g)

    bar("Rbar113", vals["r1"], p3, "r1", "p3")
    bar("Rbar133", p1, vals["r3"], "p1", "r3")
    return InvariantBundle(p1=p1, p3=p3, undefined=undefined, **vals)


def formal_resultant(f: UPoly, g: UPoly, m: int, n: int) -> QNum:
    """Resultant of ``f`` and ``g`` read as polynomials of formal degrees ``m`` and ``n``.

    Equals the ``(m + n)``-square Sylvester determinant even when a leading
    coefficient vanishes: ``Res_{m,n}(f, g) = lc(f)^(n - deg g) Res(f, g)``.
    At least one of ``f``, ``g`` must reach its formal degree.
    """
    if f.degree == m and g.degree == n:
        return resultant(f, g)
    if f.degree == m:
        if g.is_zero:
            return f.lc * 0
        return f.lc ** (n - g.degree) * resultant(f, g)
    if g.degree == n:
        sign = -1 if (m * n) % 2 else 1
        return formal_resultant(g, f, n, m) * sign
    raise ValueError(f"neither polynomial reaches its formal degree ({m}, {n})")


def verify_res_factorization(p: Params) -> tuple[bool, dict]:
    """Check ``res(p1, p3) == R1 * R2`` exactly, reading p1 and p3 as cubics.

    When one of the two drops degree the formal (degree 3, degree 3)
    resultant is used; if both drop, the identity carries no information and
    a ``ValueError`` is raised.
    """
    p1, p3 = build_p1(p), build_p3(p)
    if p1.degree != 3 and p3.degree != 3:
        raise ValueError(
            f"factorisation check needs deg p1 = 3 or deg p3 = 3, got {_deg(p1)}, {_deg(p3)}"
        )
    lhs = formal_resultant(p1, p3, 3, 3)
    rhs = compute_R1(p) * compute_R2(p)
    return lhs == rhs, {
        "res(p1,p3)": str(lhs),
        "R1*R2": str(rhs),
        "degrees": [_deg(p1), _deg(p3)],
    }


def _deg(f: UPoly):
    return None if f.is_zero else f.degree
