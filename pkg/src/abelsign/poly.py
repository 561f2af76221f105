"""Dense univariate polynomials over Q(sqrt(d)) and the usual toolkit.

Coefficients are stored constant term first.  Everything here is exact; the
only float entry point is :meth:`UPoly.eval_float`.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .qnum import QNum, RadicandMismatch, qnum_sign

__all__ = [
    "NEG_INF",
    "UPoly",
    "SturmChain",
    "poly_divrem",
    "poly_rem",
    "poly_gcd",
    "squarefree_decomposition",
    "odd_part",
    "resultant",
    "discriminant",
    "sturm_count",
    "sylvester_matrix",
]

NEG_INF = float("-inf")


def _common_radicand(coeffs: Sequence[QNum], d: int | None) -> int:
    seen = {c.d for c in coeffs if c.b}
    if d is not None and d != 1:
        seen.add(d)
    if len(seen) > 1:
        raise RadicandMismatch(f"coefficients from several fields: {sorted(seen)}")
    if seen:
        return seen.pop()
    for c in coeffs:
        if c.d != 1:
            return c.d
    return d or 1


class UPoly:
    """Polynomial with :class:`QNum` coefficients, constant term first."""

    __slots__ = ("coeffs", "d")

    def __init__(self, coeffs: Iterable = (), d: int | None = None):
        cs = [QNum.coerce(c, d or 1) for c in coeffs]
        self.d = _common_radicand(cs, d)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs: list, d: int) -> "UPoly":
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        p.d = d
        return p

    @classmethod
    def constant(cls, c, d: int = 1) -> "UPoly":
        return cls([c], d)

    @classmethod
    def x(cls, d: int = 1) -> "UPoly":
        return cls([0, 1], d)

    # -- basic properties -------------------------------------------------------
    @property
    def degree(self):
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> QNum:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def coeff(self, k: int) -> QNum:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return QNum(0, 0, self.d)

    def _zero(self) -> QNum:
        return QNum(0, 0, self.d)

    def _join(self, other: "UPoly") -> int:
        if self.d == other.d or other.d == 1:
            return self.d
        if self.d == 1:
            return other.d
        # a polynomial whose coefficients are all rational is tagged with its
        # field but may still be combined with another field
        if not any(c.b for c in other.coeffs):
            return self.d
        if not any(c.b for c in self.coeffs):
            return other.d
        raise RadicandMismatch(f"cannot combine sqrt({self.d}) and sqrt({other.d})")

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly([other], self.d)
        d = self._join(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = cs[i] + c
        return UPoly._raw(cs, d)

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw([-c for c in self.coeffs], self.d)

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly([other], self.d)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return self.scale(other)
        d = self._join(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly._raw([], d)
        cs = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                t = x * y
                cs[i + j] = t if cs[i + j] is None else cs[i + j] + t
        zero = QNum(0, 0, d)
        return UPoly._raw([zero if c is None else c for c in cs], d)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        result = UPoly([1], self.d)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c) -> "UPoly":
        c = QNum.coerce(c, self.d)
        d = self.d if not c.b else c.d
        return UPoly._raw([x * c for x in self.coeffs], d)

    def deriv(self) -> "UPoly":
        return UPoly._raw([c * k for k, c in enumerate(self.coeffs) if k], self.d)

    def monic(self) -> "UPoly":
        if not self.coeffs:
            raise ValueError("cannot normalise the zero polynomial")
        inv = self.lc.inverse()
        return UPoly._raw([c * inv for c in self.coeffs[:-1]] + [QNum(1, 0, self.d)], self.d)

    def __call__(self, x):
        """Exact Horner evaluation."""
        acc = self._zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x):
        """Float evaluation; ``x`` may be a float or a numpy array."""
        acc = 0.0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    # -- comparison / display ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            cs = str(c)
            if "sqrt" in cs and c.a:
                cs = f"({cs})"
            if mono:
                terms.append(mono if cs == "1" else f"-{mono}" if cs == "-1" else f"{cs}*{mono}")
            else:
                terms.append(cs)
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


# -- division and gcd ---------------------------------------------------------


def poly_divrem(f: UPoly, g: UPoly) -> tuple[UPoly, UPoly]:
    """Quotient and remainder with ``f = q*g + r``, ``deg r < deg g``."""
    if g.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    d = f._join(g)
    r = list(f.coeffs)
    n = len(g.coeffs) - 1
    if len(r) - 1 < n:
        return UPoly._raw([], d), UPoly._raw(r, d)
    inv = g.lc.inverse()
    gc = g.coeffs
    q = [None] * (len(r) - n)
    for k in range(len(r) - 1, n - 1, -1):
        t = r[k] * inv
        q[k - n] = t
        if t:
            for j in range(n):
                r[k - n + j] = r[k - n + j] - t * gc[j]
        r[k] = QNum(0, 0, d)
    return UPoly._raw(q, d), UPoly._raw(r[:n], d)


def poly_rem(f: UPoly, g: UPoly) -> UPoly:
    return poly_divrem(f, g)[1]


def _exact_div(f: UPoly, g: UPoly) -> UPoly:
    q, r = poly_divrem(f, g)
    if not r.is_zero:
        raise ArithmeticError("inexact polynomial division")
    return q


def poly_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic greatest common divisor."""
    if f.is_zero and g.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    while not g.is_zero:
        f, g = g, poly_rem(f, g)
        if not g.is_zero:
            g = g.monic()
    return f.monic()


def squarefree_decomposition(f: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: monic, pairwise coprime, square-free factors.

    ``f == lc(f) * prod(factor**mult)``; a constant ``f`` gives ``[]``.
    """
    if f.is_zero:
        raise ValueError("square-free decomposition of the zero polynomial")
    if f.degree == 0:
        return []
    fp = f.deriv()
    a0 = poly_gcd(f, fp)
    b = _exact_div(f, a0)
    c = _exact_div(fp, a0)
    dd = c - b.deriv()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, dd)
        b = _exact_div(b, a)
        c = _exact_div(dd, a)
        dd = c - b.deriv()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def odd_part(f: UPoly) -> UPoly:
    """Monic product of the square-free factors of odd multiplicity."""
    result = UPoly([1], f.d)
    for factor, mult in squarefree_decomposition(f):
        if mult % 2:
            result = result * factor
    return result


# -- resultants ---------------------------------------------------------------


def resultant(f: UPoly, g: UPoly) -> QNum:
    """Resultant of ``f`` and ``g`` (Sylvester determinant, descending order).

    Computed through the Euclidean remainder sequence over the field:
    ``res(f, g) = (-1)^(mn) lc(g)^(m-k) res(g, f mod g)``.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("resultant with the zero polynomial")
    d = f._join(g)
    acc = QNum(1, 0, d)
    m, n = f.degree, g.degree
    while True:
        if n == 0:
            return acc * g.lc ** m
        if m == 0:
            return acc * f.lc ** n
        r = poly_rem(f, g)
        if r.is_zero:
            return QNum(0, 0, d)
        k = r.degree
        if (m * n) % 2:
            acc = -acc
        acc = acc * g.lc ** (m - k)
        f, g, m, n = g, r, n, k


def discriminant(f: UPoly) -> QNum:
    """Discriminant normalised so a real cubic with D > 0 has three real roots."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    r = resultant(f, f.deriv()) / f.lc
    return -r if (n * (n - 1) // 2) % 2 else r


def sylvester_matrix(f: UPoly, g: UPoly) -> list[list[QNum]]:
    """Sylvester matrix with coefficients in descending order."""
    m, n = f.degree, g.degree
    size = m + n
    zero = QNum(0, 0, f._join(g))
    fd, gd = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([zero] * i + fd + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gd + [zero] * (size - n - 1 - i))
    return rows


# -- Sturm sequences ----------------------------------------------------------


def _abs_scale(p: UPoly) -> UPoly:
    """Divide by |lc|; keeps signs, tames coefficient growth."""
    lc = p.lc
    return p.scale((lc if qnum_sign(lc) > 0 else -lc).inverse())


class SturmChain:
    """Signed remainder sequence ``p0 = f, p1 = f', p_{k+1} = -rem(p_{k-1}, p_k)``.

    Elements are rescaled by positive constants, which leaves every sign
    variation count unchanged.
    """

    __slots__ = ("polys",)

    def __init__(self, f: UPoly):
        if f.is_zero:
            raise ValueError("Sturm chain of the zero polynomial")
        chain = [f]
        if f.degree > 0:
            chain.append(_abs_scale(f.deriv()))
            while True:
                r = poly_rem(chain[-2], chain[-1])
                if r.is_zero:
                    break
                chain.append(_abs_scale(-r))
        self.polys = tuple(chain)

    @staticmethod
    def _variations(signs) -> int:
        count, last = 0, 0
        for s in signs:
            if s:
                if last and s != last:
                    count += 1
                last = s
        return count

    def variations_at(self, x) -> int:
        return self._variations(qnum_sign(p(x)) for p in self.polys)

    def variations_at_infinity(self, direction: int) -> int:
        signs = []
        for p in self.polys:
            s = qnum_sign(p.lc)
            if direction < 0 and p.degree % 2:
                s = -s
            signs.append(s)
        return self._variations(signs)

    def count(self, interval=None) -> int:
        if interval is None:
            return self.variations_at_infinity(-1) - self.variations_at_infinity(1)
        lo, hi = interval
        f = self.polys[0]
        if not f(lo) or not f(hi):
            raise ValueError("interval endpoint is a root")
        if lo > hi:
            lo, hi = hi, lo
        return self.variations_at(lo) - self.variations_at(hi)


def sturm_count(f: UPoly, interval=None) -> int:
    """Number of distinct real roots of ``f`` on the line or in ``(lo, hi)``."""
    return SturmChain(f).count(interval)
