"""Exact Gaussian elimination over Q(sqrt(d))."""

from __future__ import annotations

from .qnum import QNum

__all__ = ["rank", "det"]


def _reduce(rows: list[list[QNum]], stop_at_singular: bool):
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank_, sign = 0, 1
    for col in range(ncols):
        pivot = next((i for i in range(rank_, nrows) if m[i][col]), None)
        if pivot is None:
            if stop_at_singular:
                return m, None, 0
            continue
        if pivot != rank_:
            m[rank_], m[pivot] = m[pivot], m[rank_]
            sign = -sign
        inv = m[rank_][col].inverse()
        for i in range(rank_ + 1, nrows):
            if m[i][col]:
                t = m[i][col] * inv
                row, prow = m[i], m[rank_]
                for j in range(col, ncols):
                    row[j] = row[j] - t * prow[j]
        rank_ += 1
        if rank_ == nrows:
            break
    return m, rank_, sign


def rank(rows: list[list[QNum]]) -> int:
    """Exact rank of a matrix given as a list of rows."""
    if not rows:
        return 0
    return _reduce(rows, False)[1]


def det(rows: list[list[QNum]]) -> QNum:
    """Exact determinant of a square matrix."""
    n = len(rows)
    if n == 0:
        return QNum(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    m, r, sign = _reduce(rows, True)
    if r is None:
        return m[0][0] * 0
    acc = m[0][0] * sign
    for i in range(1, n):
        acc = acc * m[i][i]
    return acc
