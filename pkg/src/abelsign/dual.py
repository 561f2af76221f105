"""Forward-mode dual numbers over Q(sqrt(d)) with a gradient in (a1, ..., a6).

Any polynomial written against a generic ring evaluates on :class:`Dual`
values to its exact value together with all six partial derivatives.
"""

from __future__ import annotations

from .qnum import QNum

__all__ = ["Dual", "seed_duals"]

NVARS = 6


class Dual:
    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = val
        self.grad = grad

    @staticmethod
    def _lift(x):
        if isinstance(x, Dual):
            return x
        return Dual(x, None)

    def _grads(self, other):
        return self.grad, other.grad

    def __add__(self, other):
        o = self._lift(other)
        g1, g2 = self.grad, o.grad
        if g1 is None:
            g = g2
        elif g2 is None:
            g = g1
        else:
            g = tuple(x + y for x, y in zip(g1, g2))
        return Dual(self.val + o.val, g)

    __radd__ = __add__

    def __neg__(self):
        g = None if self.grad is None else tuple(-x for x in self.grad)
        return Dual(-self.val, g)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        g1, g2 = self.grad, o.grad
        if g1 is None and g2 is None:
            g = None
        elif g1 is None:
            g = tuple(self.val * y for y in g2)
        elif g2 is None:
            g = tuple(x * o.val for x in g1)
        else:
            g = tuple(x * o.val + self.val * y for x, y in zip(g1, g2))
        return Dual(self.val * o.val, g)

    __rmul__ = __mul__

    def gradient(self, d: int = 1) -> list[QNum]:
        zero = QNum(0, 0, d)
        if self.grad is None:
            return [zero] * NVARS
        return [QNum.coerce(x, d) if not isinstance(x, QNum) else x for x in self.grad]

    def __repr__(self):
        return f"Dual({self.val}, {self.grad})"


def seed_duals(values) -> tuple[Dual, ...]:
    """Independent variables: ``values[i]`` carries the unit gradient ``e_i``."""
    values = list(values)
    if len(values) != NVARS:
        raise ValueError("expected six coordinates")
    zero = values[0] * 0
    one = zero + 1
    out = []
    for i, v in enumerate(values):
        grad = tuple(one if j == i else zero for j in range(NVARS))
        out.append(Dual(v, grad))
    return tuple(out)
