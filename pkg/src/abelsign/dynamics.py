"""Return map of the Abel equation and a scan for its positive fixed points.

The integrator kernel is compiled with Cython when the extension is built;
otherwise (or with ``ABELSIGN_PURE`` set) the pure-Python twin is used.
``BACKEND`` names the one in use.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .model import Params, trig_coeffs

if os.environ.get("ABELSIGN_PURE"):
    from . import _abel_py as _kernel

    BACKEND = "python"
else:
    try:
        from . import _abel_kernel as _kernel

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        from . import _abel_py as _kernel

        BACKEND = "python"

__all__ = [
    "BACKEND",
    "Escape",
    "FixedPoint",
    "ReturnMapReport",
    "return_map",
    "return_map_grid",
    "count_limit_cycles",
]

METHOD = "dormand-prince-5(4)"
RTOL = 1e-10
ATOL = 1e-300
BLOWUP = 1e6
STATUS = {0: "ok", 1: "blow-up", 2: "step-underflow", 3: "step-limit"}
CENTER_RTOL = 1e-9
CENTER_FRACTION = 0.95


@dataclass(frozen=True)
class Escape:
    """The solution left every bound before a full turn."""

    rho0: float
    theta: float
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class FixedPoint:
    rho0: float
    residual: float
    # min over the orbit of 1 - g(theta) rho(theta); positive means the orbit
    # maps back to a closed curve of the planar system
    cherkas_margin: float

    @property
    def planar_cycle(self) -> bool:
        return self.cherkas_margin > 0

    @property
    def converged(self) -> bool:
        """Residual within ``1e-10 max(1, rho)``; a crossing next to the
        blow-up edge can be too steep to resolve in double precision."""
        return self.residual < 1e-10 * max(1.0, self.rho0)


@dataclass
class ReturnMapReport:
    fixed_points: list[FixedPoint]
    center_detected: bool
    escapes: list[tuple[float, float]]
    grid: tuple[float, int]
    integrator: tuple[str, float]
    backend: str = BACKEND
    samples: list[tuple[float, float | None]] = field(default_factory=list, repr=False)

    @property
    def n_fixed(self) -> int:
        return len(self.fixed_points)

    def to_json(self) -> dict:
        return {
            "fixed_points": [
                {
                    "rho0": fp.rho0,
                    "residual": fp.residual,
                    "cherkas_margin": fp.cherkas_margin,
                    "planar_cycle": fp.planar_cycle,
                    "converged": fp.converged,
                }
                for fp in self.fixed_points
            ],
            "center_detected": self.center_detected,
            "escapes": [{"rho0": r, "theta": t} for r, t in self.escapes],
            "grid": {"rho_max": self.grid[0], "n": self.grid[1]},
            "integrator": {"method": self.integrator[0], "rtol": self.integrator[1]},
            "backend": self.backend,
        }


def _kernel_args(p: Params):
    fc, gc = trig_coeffs(p).as_floats()
    return tuple(fc.tolist()), tuple(gc.tolist()), float(p.a1)


def return_map(p: Params, rho0: float, rtol: float = RTOL, blowup: float = BLOWUP):
    """``rho(2 pi)`` for ``rho(0) = rho0``, or an :class:`Escape`."""
    if not rho0 > 0:
        raise ValueError("rho0 must be positive")
    fc, gc, a1 = _kernel_args(p)
    y, status, theta, _, _ = _kernel.integrate(fc, gc, a1, float(rho0), rtol, ATOL, blowup)
    if status:
        return Escape(float(rho0), float(theta), STATUS[status])
    return float(y)


def return_map_grid(p: Params, rho0s, rtol: float = RTOL, blowup: float = BLOWUP):
    """Batch version: ``(values, status, escape_theta, cherkas_margin)`` arrays."""
    fc, gc, a1 = _kernel_args(p)
    return _kernel.return_map_batch(fc, gc, a1, np.asarray(rho0s, float), rtol, ATOL, blowup)


def _orbit(fc, gc, a1, rho, rtol, blowup):
    y, status, _, cher, _ = _kernel.integrate(fc, gc, a1, rho, rtol, ATOL, blowup)
    return (None if status else y - rho), cher


def _bisect(fc, gc, a1, lo, hi, dlo, rtol, blowup, max_iter=200):
    """Refine a bracketed root of ``P(rho) - rho``, or ``None``.

    The upper end may be an escape.  A genuine blow-up pushes P to +inf at the
    edge of its domain, so the bracket then holds a crossing; but an orbit may
    also just pass the threshold and come back (always the case when A <= 0,
    since u = 1/rho has u' = -A >= 0 at u = 0).  A root is kept only if finite
    values were seen on both sides of it or the residual is within tolerance.
    """
    best = None
    crossed = False
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        dm, cher = _orbit(fc, gc, a1, mid, rtol, blowup)
        if dm is None:
            if dlo > 0 or hi - lo <= 4e-16 * hi:
                break
            hi = mid
            continue
        best = (mid, dm, cher)
        if abs(dm) < 1e-10 * max(1.0, mid) or hi - lo <= 4e-16 * hi:
            break
        if (dm > 0) == (dlo > 0):
            lo, dlo = mid, dm
        else:
            hi, crossed = mid, True
    if best is None:
        return None
    fp = FixedPoint(best[0], abs(best[1]), best[2])
    return fp if crossed or fp.converged else None


def count_limit_cycles(
    p: Params,
    rho_max: float = 10.0,
    n: int = 512,
    tol: float = RTOL,
    blowup: float = BLOWUP,
) -> ReturnMapReport:
    """Scan ``P(rho) - rho`` on a geometric grid of ``(0, rho_max]`` and refine sign changes."""
    if not rho_max > 0:
        raise ValueError("rho_max must be positive")
    if n < 64:
        raise ValueError("the scan needs at least 64 samples")
    fc, gc, a1 = _kernel_args(p)
    rhos = np.geomspace(rho_max / 1000.0, rho_max, n)
    vals, status, thetas, _ = _kernel.return_map_batch(fc, gc, a1, rhos, tol, ATOL, blowup)
    ok = status == 0
    escapes = [(float(r), float(t)) for r, t, s in zip(rhos, thetas, ok) if not s]
    diff = np.where(ok, vals - rhos, np.nan)
    samples = [(float(r), (float(d) if s else None)) for r, d, s in zip(rhos, diff, ok)]
    report = ReturnMapReport([], False, escapes, (float(rho_max), int(n)), (METHOD, tol), BACKEND, samples)
    if not ok.any():
        return report

    band = CENTER_RTOL * rhos
    flat = np.abs(diff[ok]) < band[ok]
    if flat.mean() >= CENTER_FRACTION:
        report.center_detected = True
        return report

    # sign changes between consecutive finite samples outside the noise band;
    # the first escape counts as P = +inf since P blows up at the edge of its domain
    signed = [(r, d) for r, d, b, s in zip(rhos, diff, band, ok) if s and abs(d) >= b]
    first_escape = next((r for r, s in zip(rhos, ok) if not s), None)
    if first_escape is not None and signed and first_escape > signed[-1][0]:
        signed.append((first_escape, math.inf))
    for (r0, d0), (r1, d1) in zip(signed, signed[1:]):
        if (d0 > 0) != (d1 > 0):
            fp = _bisect(fc, gc, a1, float(r0), float(r1), float(d0), tol, blowup)
            if fp is not None:
                report.fixed_points.append(fp)
    return report


def linear_return_value(a1: float, rho0: float) -> float:
    """Closed form when ``A = B = 0``: ``rho0 exp(2 pi a1)``."""
    return rho0 * math.exp(2.0 * math.pi * a1)
