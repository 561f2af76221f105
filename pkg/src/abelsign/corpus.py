"""Deterministic mixed corpus of parameter points for cross-checking.

The mix: random generic rationals, points sampled on individual strata,
the reference table points, and copies of the structured points with one
coordinate moved by +-1/1000.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .classifier import SAMPLEABLE, sample_case, table1_points
from .model import NAMES, Params
from .qnum import QNum

__all__ = ["CORPUS_CASES", "build_corpus", "perturb"]

CORPUS_CASES = ("1a", "1b", "2", "3a", "4", "5a", "B1", "B2")
EPS = Fraction(1, 1000)


def _generic(rng: random.Random) -> Params:
    vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(6)]
    return Params.of([QNum(v) for v in vals])


def perturb(p: Params, rng: random.Random, eps: Fraction = EPS) -> Params:
    """Move one randomly chosen coordinate by ``+eps`` or ``-eps``."""
    name = rng.choice(NAMES)
    delta = eps if rng.random() < 0.5 else -eps
    return p.replace(**{name: getattr(p, name) + delta})


def build_corpus(count: int = 10_000, seed: int = 0) -> list[tuple[str, Params]]:
    """``count`` labelled points (at least the 14 table points), reproducible from ``seed``.

    Labels are ``generic``, ``sample:<case>``, ``table:<case>`` and
    ``perturbed:<origin>``.
    """
    rng = random.Random(f"corpus:{seed}")
    out: list[tuple[str, Params]] = [(f"table:{lab}", p) for lab, p, _ in table1_points()]
    rest = max(0, count - len(out))
    n_generic = rest * 2 // 5
    n_sample = rest // 5
    n_perturb = rest - n_generic - n_sample

    per_case = -(-n_sample // len(CORPUS_CASES)) if n_sample else 0
    structured = list(out)
    for i, case in enumerate(CORPUS_CASES):
        take = min(per_case, n_sample - i * per_case)
        if take <= 0:
            break
        pts = sample_case(case, seed, take)
        structured.extend((f"sample:{case}", p) for p in pts)
    out = structured[:]

    out.extend(("generic", _generic(rng)) for _ in range(n_generic))
    for _ in range(n_perturb):
        origin, p = rng.choice(structured)
        out.append((f"perturbed:{origin}", perturb(p, rng)))
    return out[: max(count, 14)]


assert set(CORPUS_CASES) <= set(SAMPLEABLE)
