"""Exact scalars ``a + b*sqrt(d)`` with rational ``a``, ``b``.

The rational type is ``gmpy2.mpq`` when available and :class:`fractions.Fraction`
otherwise (or when ``ABELSIGN_PURE`` is set in the environment).
"""

from __future__ import annotations

import math
import os
import re
from fractions import Fraction

__all__ = [
    "QNum",
    "Rational",
    "RadicandMismatch",
    "qnum_sign",
    "parse_qnum",
    "squarefree_part",
    "RATIONAL_BACKEND",
]

if os.environ.get("ABELSIGN_PURE"):
    Rational = Fraction
    RATIONAL_BACKEND = "fractions"
else:
    try:
        from gmpy2 import mpq as Rational
        RATIONAL_BACKEND = "gmpy2"
    except ImportError:  # pragma: no cover - depends on environment
        Rational = Fraction
        RATIONAL_BACKEND = "fractions"

_RAT_TYPE = type(Rational(0))


class RadicandMismatch(ValueError):
    """Arithmetic between two genuinely different quadratic fields."""


def _rat(x):
    if type(x) is _RAT_TYPE:
        return x
    if isinstance(x, Fraction):
        return Rational(x.numerator, x.denominator)
    if isinstance(x, str):
        return Rational(x.strip())
    return Rational(x)


def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(s, k)`` with ``n = s * k**2`` and ``s`` square-free (``n > 0``)."""
    if n <= 0:
        raise ValueError("squarefree_part needs a positive integer")
    s, k = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            k *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    return s * n, k


def _is_squarefree(d: int) -> bool:
    return d >= 1 and squarefree_part(d)[0] == d


class QNum:
    """An element ``a + b*sqrt(d)`` of Q(sqrt(d)).

    ``d`` is a positive square-free integer.  ``d == 1`` means a plain rational
    and then ``b`` is always zero.  A value with ``b == 0`` keeps the radicand of
    the field it was created in, but combines freely with any other field.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1, _trusted: bool = False):
        if _trusted:
            self.a, self.b, self.d = a, b, d
            return
        d = int(d)
        if d == 0:
            d, b = 1, 0
        if d < 0:
            raise ValueError("negative radicands are not supported")
        a, b = _rat(a), _rat(b)
        if d != 1 and not _is_squarefree(d):
            s, k = squarefree_part(d)
            d, b = s, b * k
        if d == 1:
            a, b = a + b, _rat(0)
        self.a, self.b, self.d = a, b, d

    # -- construction helpers -------------------------------------------------
    @classmethod
    def coerce(cls, x, d: int = 1) -> "QNum":
        if isinstance(x, QNum):
            return x
        if isinstance(x, str):
            return parse_qnum(x, d)
        return cls(_rat(x), _ZERO_RAT, d, _trusted=True)

    @classmethod
    def sqrt(cls, d: int) -> "QNum":
        return cls(0, 1, d)

    def _pair(self, other):
        """Common radicand for a binary operation; returns (other, d)."""
        if not isinstance(other, QNum):
            other = QNum(_rat(other), _ZERO_RAT, self.d, _trusted=True)
            return other, self.d
        if self.d == other.d:
            return other, self.d
        if not other.b:
            return other, self.d
        if not self.b:
            return other, other.d
        raise RadicandMismatch(f"cannot combine sqrt({self.d}) and sqrt({other.d})")

    # -- predicates -------------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return not self.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        return qnum_sign(self)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other, d = self._pair(other)
        return QNum(self.a + other.a, self.b + other.b, d, _trusted=True)

    __radd__ = __add__

    def __sub__(self, other):
        other, d = self._pair(other)
        return QNum(self.a - other.a, self.b - other.b, d, _trusted=True)

    def __rsub__(self, other):
        other, d = self._pair(other)
        return QNum(other.a - self.a, other.b - self.b, d, _trusted=True)

    def __neg__(self):
        return QNum(-self.a, -self.b, self.d, _trusted=True)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other, d = self._pair(other)
        sb, ob = self.b, other.b
        if not sb:
            return QNum(self.a * other.a, self.a * ob, d, _trusted=True)
        if not ob:
            return QNum(self.a * other.a, sb * other.a, d, _trusted=True)
        return QNum(
            self.a * other.a + sb * ob * d,
            self.a * ob + sb * other.a,
            d,
            _trusted=True,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QNum":
        if not self.b:
            if not self.a:
                raise ZeroDivisionError("QNum division by zero")
            return QNum(1 / self.a, self.b, self.d, _trusted=True)
        norm = self.a * self.a - self.b * self.b * self.d
        return QNum(self.a / norm, -self.b / norm, self.d, _trusted=True)

    def __truediv__(self, other):
        other, d = self._pair(other)
        if not other.b:
            if not other.a:
                raise ZeroDivisionError("QNum division by zero")
            return QNum(self.a / other.a, self.b / other.a, d, _trusted=True)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other, _ = self._pair(other)
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QNum(_ONE_RAT, _ZERO_RAT, self.d, _trusted=True)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QNum":
        return QNum(self.a, -self.b, self.d, _trusted=True)

    def norm(self):
        """Field norm ``a^2 - d b^2`` (a rational)."""
        return self.a * self.a - self.b * self.b * self.d

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QNum):
            if self.a != other.a or self.b != other.b:
                return False
            return not self.b or self.d == other.d
        try:
            return not self.b and self.a == _rat(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return qnum_sign(self - other) < 0

    def __le__(self, other):
        return qnum_sign(self - other) <= 0

    def __gt__(self, other):
        return qnum_sign(self - other) > 0

    def __ge__(self, other):
        return qnum_sign(self - other) >= 0

    # -- conversion -------------------------------------------------------------
    def __float__(self):
        if not self.b:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QNum({self})"

    def __str__(self):
        a, b, d = self.a, self.b, self.d
        if not b:
            return _fmt_rat(a)
        if b == 1:
            rad = f"sqrt({d})"
        elif b == -1:
            rad = f"-sqrt({d})"
        else:
            rad = f"{_fmt_rat(b)}*sqrt({d})"
        if not a:
            return rad
        return f"{_fmt_rat(a)}{'' if rad.startswith('-') else '+'}{rad}"


_ZERO_RAT = _rat(0)
_ONE_RAT = _rat(1)


def _fmt_rat(r) -> str:
    n, m = int(r.numerator), int(r.denominator)
    return str(n) if m == 1 else f"{n}/{m}"


def qnum_sign(x: QNum) -> int:
    """Exact sign of ``a + b*sqrt(d)``."""
    a, b = x.a, x.b
    sa = (a > 0) - (a < 0)
    if not b:
        return sa
    sb = (b > 0) - (b < 0)
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 d
    if a * a > b * b * x.d:
        return sa
    return sb


_RAT_RE = r"\d+(?:/\d+)?"
_QNUM_RE = re.compile(
    rf"""^\s*
    (?P<rsign>[+-])?\s*(?P<rat>{_RAT_RE})?
    (?:\s*(?P<isign>[+-])?\s*(?:(?P<coef>{_RAT_RE})\s*\*\s*)?sqrt\(\s*(?P<rad>\d+)\s*\))?
    \s*$""",
    re.VERBOSE,
)


def parse_qnum(text, d: int | None = None) -> QNum:
    """Parse ``"p/q"``, ``"p/q+r/s*sqrt(k)"``, ``"-sqrt(2)"`` and friends.

    ``d`` is the radicand of the surrounding context; a ``sqrt(k)`` term must
    agree with it.  Plain ints and rationals are accepted too.
    """
    if isinstance(text, QNum):
        return text
    if not isinstance(text, str):
        return QNum(_rat(text), 0, d or 1)
    m = _QNUM_RE.match(text)
    if not m or (m.group("rat") is None and m.group("rad") is None):
        raise ValueError(f"malformed number: {text!r}")
    if m.group("rat") is not None:
        a = _rat(m.group("rat"))
        if m.group("rsign") == "-":
            a = -a
        isign = m.group("isign")
        if m.group("rad") is not None and isign is None:
            raise ValueError(f"malformed number: {text!r}")
    else:
        a = _ZERO_RAT
        isign = m.group("rsign") or m.group("isign")
    if m.group("rad") is None:
        return QNum(a, 0, d or 1)
    b = _rat(m.group("coef")) if m.group("coef") is not None else _ONE_RAT
    if isign == "-":
        b = -b
    k = int(m.group("rad"))
    value = QNum(a, b, k)
    if d is not None and d != 1 and value.b and value.d != d:
        raise RadicandMismatch(f"{text!r} is not in Q(sqrt({d}))")
    if value.d == 1 and d:
        value = QNum(value.a, 0, d)
    return value
