"""Bracketing bisection for monotone scalar functions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    iterations: int

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)


def bisect(
    pred: Callable[[float], bool],
    lo: float,
    hi: float,
    xtol: float = 0.0,
    max_iter: int = 200,
) -> Bracket:
    """Shrink ``[lo, hi]`` around the point where ``pred`` flips from False to True.

    ``pred(lo)`` must be False and ``pred(hi)`` True. With ``xtol=0`` the loop
    runs until the midpoint is no longer representable between the ends.
    """
    if pred(lo) or not pred(hi):
        raise ValueError(f"pred must be False at lo={lo!r} and True at hi={hi!r}")
    it = 0
    while it < max_iter and hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
        it += 1
    return Bracket(lo, hi, it)
