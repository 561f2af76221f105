"""Sign-definiteness of A decided straight from the roots of p1 and p3.

With ``x = tan(theta)`` we have ``A = cos^6(theta) p1(x) p3(x)``, so A keeps one
sign exactly when p1 and p3 change sign at the same real points, i.e. when the
real roots of their odd-multiplicity parts coincide.  This module does not
look at the case list at all; it is the reference the classifier is tested
against.  A float sampler of ``A(theta)`` is provided as a second opinion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Params, build_p1, build_p3, eval_A, trig_coeffs
from .poly import UPoly, odd_part, poly_gcd, sturm_count

__all__ = [
    "OracleVerdict",
    "decide_definite",
    "numeric_sign_scan",
    "sign_lobes",
    "NON_NEGATIVE",
    "NON_POSITIVE",
    "SIGN_CHANGE",
    "NUMERICALLY_ZERO",
]

NON_NEGATIVE = "non-negative"
NON_POSITIVE = "non-positive"
SIGN_CHANGE = "sign-change"
NUMERICALLY_ZERO = "numerically-zero"

SCAN_RTOL = 1e-9
ZERO_RTOL = 1e-12


@dataclass(frozen=True)
class OracleVerdict:
    definite: bool
    reason: str
    odd_p1: UPoly | None = None
    odd_p3: UPoly | None = None
    gcd: UPoly | None = None
    root_counts: tuple[int, int, int] | None = None

    def to_json(self) -> dict:
        out = {"definite": self.definite, "reason": self.reason}
        if self.odd_p1 is not None:
            out["diagnostics"] = {
                "odd_part_p1": self.odd_p1.to_json(),
                "odd_part_p3": self.odd_p3.to_json(),
                "gcd": self.gcd.to_json(),
                "real_roots": dict(zip(("odd_p1", "gcd", "odd_p3"), self.root_counts)),
            }
        return out


def _is_squarefree(f: UPoly) -> bool:
    if f.degree <= 0:
        return True
    return poly_gcd(f, f.deriv()).degree == 0


def decide_definite(p: Params) -> OracleVerdict:
    p1, p3 = build_p1(p), build_p3(p)
    if p1.is_zero:
        return OracleVerdict(True, "p1-null")
    if p3.is_zero:
        return OracleVerdict(True, "p3-null")
    o1, o3 = odd_part(p1), odd_part(p3)
    # count equality below is a set equality only for square-free inputs
    assert _is_squarefree(o1) and _is_squarefree(o3), "odd parts must be square-free"
    g = poly_gcd(o1, o3)
    counts = (sturm_count(o1), sturm_count(g), sturm_count(o3))
    same = counts[0] == counts[1] == counts[2]
    return OracleVerdict(
        same, "odd-roots-coincide" if same else "odd-roots-differ", o1, o3, g, counts
    )


def _a_bound(p: Params) -> float:
    """Upper bound for ``max |A|`` from the coefficient sizes."""
    fc, gc = trig_coeffs(p).as_floats()
    ng = float(np.abs(gc).sum())
    nf = float(np.abs(fc).sum())
    return ng * (abs(float(p.a1)) * ng + nf)


def numeric_sign_scan(p: Params, grid: int = 4096) -> str:
    """Sign pattern of ``A`` sampled on ``grid`` equispaced angles in ``[0, pi)``.

    ``A`` has period ``pi`` (it is a sextic form), so half a turn suffices.
    Samples within ``1e-9 * max|A|`` of zero count as zero.
    """
    if grid < 16:
        raise ValueError("grid must be at least 16")
    theta = np.arange(grid) * (math.pi / grid)
    vals = eval_A(p, theta)
    peak = float(np.max(np.abs(vals)))
    bound = _a_bound(p)
    if peak == 0.0 or peak <= ZERO_RTOL * bound:
        return NUMERICALLY_ZERO
    tol = SCAN_RTOL * peak
    pos = bool(np.any(vals > tol))
    neg = bool(np.any(vals < -tol))
    if pos and neg:
        return SIGN_CHANGE
    return NON_NEGATIVE if pos else NON_POSITIVE


def sign_lobes(p: Params) -> tuple[float, float]:
    """``(max A, -min A)`` over a full period, located through critical points.

    With ``N = p1 p3`` the critical angles of ``A = N(x) / (1 + x^2)^3`` are the
    real roots of ``N'(1 + x^2) - 6 x N``; ``theta = pi/2`` is added separately.
    """
    n = (build_p1(p) * build_p3(p)).float_coeffs()
    if not n:
        return 0.0, 0.0
    N = np.polynomial.Polynomial(n)
    M = N.deriv() * np.polynomial.Polynomial([1.0, 0.0, 1.0]) - np.polynomial.Polynomial([0.0, 6.0]) * N
    thetas = [math.pi / 2, 0.0]
    if M.degree() >= 1 and np.any(M.coef):
        for r in M.roots():
            if abs(r.imag) <= 1e-9 * max(1.0, abs(r.real)):
                thetas.append(math.atan(r.real))
    vals = np.asarray(eval_A(p, np.array(thetas)), dtype=float)
    return max(0.0, float(vals.max())), max(0.0, -float(vals.min()))
