"""Parameter points of the quadratic system and the objects built from them.

The system is

    x' = a1 x - y - a3 x^2 + (2 a2 + a5) x y + a6 y^2
    y' = x + a1 y + a2 x^2 + (2 a3 + a4) x y - a2 y^2

whose polar form leads to the Abel equation rho' = A rho^3 + B rho^2 + a1 rho.
Exact objects (p1, p2, p3, q) are :class:`UPoly`; the trigonometric
coefficients A and B are evaluated in double precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .poly import UPoly, _common_radicand
from .qnum import QNum, parse_qnum, squarefree_part

__all__ = [
    "Params",
    "TrigCoeffs",
    "trig_coeffs",
    "build_p1",
    "build_p2",
    "build_p3",
    "build_q",
    "eval_f",
    "eval_g",
    "eval_gprime",
    "eval_A",
    "eval_B",
]

NAMES = ("a1", "a2", "a3", "a4", "a5", "a6")


@dataclass(frozen=True)
class Params:
    """One point ``(a1, ..., a6)``; every entry lives in the same Q(sqrt(d))."""

    a1: QNum
    a2: QNum
    a3: QNum
    a4: QNum
    a5: QNum
    a6: QNum
    d: int = field(default=1)

    def __post_init__(self):
        vals = [QNum.coerce(getattr(self, n), self.d) for n in NAMES]
        d = _common_radicand(vals, self.d)
        for n, v in zip(NAMES, vals):
            if v.d != d:
                v = QNum(v.a, v.b, d)
            object.__setattr__(self, n, v)
        object.__setattr__(self, "d", d)

    @classmethod
    def of(cls, values: Iterable, d: int | None = None) -> "Params":
        if d is not None and d > 1:
            d = squarefree_part(d)[0]
        vals = [parse_qnum(v, d) if isinstance(v, str) else v for v in values]
        if len(vals) != 6:
            raise ValueError("a parameter point has exactly six entries")
        return cls(*vals, d=d or 1)

    @classmethod
    def from_json(cls, obj: Mapping) -> "Params":
        """Read ``{"a1": "...", ..., "a6": "...", "d": k}``."""
        missing = [n for n in NAMES if n not in obj]
        if missing:
            raise ValueError(f"missing parameters: {', '.join(missing)}")
        d = obj.get("d", 1)
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            raise ValueError(f"radicand d must be a positive integer, got {d!r}")
        return cls.of([obj[n] for n in NAMES], d)

    def to_json(self) -> dict:
        out = {n: str(getattr(self, n)) for n in NAMES}
        out["d"] = self.d
        return out

    def as_tuple(self) -> tuple[QNum, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a5, self.a6)

    def floats(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.as_tuple())

    def replace(self, **changes) -> "Params":
        vals = {n: getattr(self, n) for n in NAMES}
        vals.update(changes)
        return Params(**vals, d=self.d)

    def __iter__(self):
        return iter(self.as_tuple())

    def __str__(self):
        inner = ", ".join(str(v) for v in self.as_tuple())
        return f"({inner})"


@dataclass(frozen=True)
class TrigCoeffs:
    """Coefficients of f and g in the basis cos^3, cos^2 sin, cos sin^2, sin^3."""

    fcoeffs: tuple[QNum, QNum, QNum, QNum]
    gcoeffs: tuple[QNum, QNum, QNum, QNum]

    def as_floats(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.array([float(c) for c in self.fcoeffs]),
            np.array([float(c) for c in self.gcoeffs]),
        )


def trig_coeffs(p: Params) -> TrigCoeffs:
    a1, a2, a3, a4, a5, a6 = p.as_tuple()
    f = (-a3, 3 * a2 + a5, 2 * a3 + a4 + a6, -a2)
    g = (a2, 3 * a3 + a4, -(3 * a2 + a5), -a6)
    return TrigCoeffs(f, g)


def build_p1(p: Params) -> UPoly:
    """``p1(x) = a2 + (3a3 + a4) x - (3a2 + a5) x^2 - a6 x^3``."""
    _, a2, a3, a4, a5, a6 = p.as_tuple()
    return UPoly([a2, 3 * a3 + a4, -(3 * a2 + a5), -a6], p.d)


def build_p2(p: Params) -> UPoly:
    _, a2, a3, a4, a5, a6 = p.as_tuple()
    return UPoly([-a3, 3 * a2 + a5, 2 * a3 + a4 + a6, -a2], p.d)


def build_p3(p: Params) -> UPoly:
    """``p3 = a1 p1 - p2``."""
    return build_p1(p).scale(p.a1) - build_p2(p)


def build_q(p: Params) -> UPoly:
    """Numerator of ``B(atan x) (1 + x^2)^(3/2)``."""
    a1, a2, a3, a4, a5, a6 = p.as_tuple()
    return UPoly(
        [
            -(2 * a1 * a2 + 4 * a3 + a4),
            12 * a2 + 3 * a5 - a1 * (6 * a3 + 2 * a4),
            8 * a3 + 3 * a4 + 4 * a6 + a1 * (6 * a2 + 2 * a5),
            -(4 * a2 + a5 - 2 * a1 * a6),
        ],
        p.d,
    )


# -- numerical side -------------------------------------------------------------


def _cubic_form(coeffs, c, s):
    k0, k1, k2, k3 = coeffs
    return ((k0 * c + k1 * s) * c + k2 * s * s) * c + k3 * s * s * s


def _float_coeffs(p: Params):
    tc = trig_coeffs(p)
    return tc.as_floats()


def eval_f(p: Params, theta):
    fc, _ = _float_coeffs(p)
    return _cubic_form(fc, np.cos(theta), np.sin(theta))


def eval_g(p: Params, theta):
    _, gc = _float_coeffs(p)
    return _cubic_form(gc, np.cos(theta), np.sin(theta))


def _gprime(gc, c, s):
    k0, k1, k2, k3 = gc
    return (
        -3 * k0 * c * c * s
        + k1 * (c * c * c - 2 * c * s * s)
        + k2 * (2 * c * c * s - s * s * s)
        + 3 * k3 * s * s * c
    )


def eval_gprime(p: Params, theta):
    _, gc = _float_coeffs(p)
    return _gprime(gc, np.cos(theta), np.sin(theta))


def eval_A(p: Params, theta):
    """``A(theta) = g (a1 g - f)``; ``theta`` may be an array."""
    fc, gc = _float_coeffs(p)
    c, s = np.cos(theta), np.sin(theta)
    f = _cubic_form(fc, c, s)
    g = _cubic_form(gc, c, s)
    return g * (float(p.a1) * g - f)


def eval_B(p: Params, theta):
    """``B(theta) = f - 2 a1 g - g'``; ``theta`` may be an array."""
    fc, gc = _float_coeffs(p)
    c, s = np.cos(theta), np.sin(theta)
    return _cubic_form(fc, c, s) - 2 * float(p.a1) * _cubic_form(gc, c, s) - _gprime(gc, c, s)
