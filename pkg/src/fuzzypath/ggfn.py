"""Generalized Gaussian fuzzy numbers and their arithmetic.

A GGFN ``<(c, sigma); h>`` has membership ``h * exp(-((x - c) / sigma)**2 / 2)``.
The height ``h`` in (0, 1] is read as the reliability of the information
behind the number.  Addition adds cores and dispersions and combines the
heights with a sigma-weighted geometric mean, which keeps the result between
the input heights and makes the operation associative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError, EmptyInput, ValidationError

__all__ = [
    "Ggfn",
    "Interval",
    "membership",
    "alpha_cut",
    "add",
    "fold_sum",
    "scale",
    "nonneg_feasible",
]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValidationError(f"interval bounds out of order: [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class Ggfn:
    """Fuzzy cost ``<(c, sigma); h>``.

    ``sigma == 0`` is allowed and denotes a crisp value carrying a height.
    """

    c: float
    sigma: float
    h: float

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise ValidationError(f"core must be finite, got {self.c!r}")
        if not math.isfinite(self.sigma) or self.sigma < 0:
            raise ValidationError(f"sigma must be finite and >= 0, got {self.sigma!r}")
        if not (0.0 < self.h <= 1.0):
            raise ValidationError(f"height must lie in (0, 1], got {self.h!r}")

    def __add__(self, other: "Ggfn") -> "Ggfn":
        if not isinstance(other, Ggfn):
            return NotImplemented
        return add(self, other)

    def __rmul__(self, k: float) -> "Ggfn":
        return scale(k, self)

    def __iter__(self):
        yield self.c
        yield self.sigma
        yield self.h


def membership(g: Ggfn, x: float) -> float:
    if g.sigma == 0.0:
        return g.h if x == g.c else 0.0
    z = (x - g.c) / g.sigma
    return g.h * math.exp(-0.5 * z * z)


def _half_width(g: Ggfn, alpha: float) -> float:
    # sqrt(-2 ln(alpha/h)); alpha == h gives exactly 0
    return g.sigma * math.sqrt(-2.0 * math.log(alpha / g.h))


def alpha_cut(g: Ggfn, alpha: float) -> Interval:
    """Closed interval of values with membership >= ``alpha``.

    Raises DomainError unless ``0 < alpha <= g.h``; callers that want the
    clamped behaviour must clamp first.
    """
    if not (0.0 < alpha <= g.h):
        raise DomainError(f"alpha must lie in (0, h={g.h}], got {alpha!r}")
    w = _half_width(g, alpha)
    return Interval(g.c - w, g.c + w)


def _aggregate_height(sigmas: list[float], heights: list[float]) -> float:
    total = math.fsum(sigmas)
    # a mean of identical values is that value; skip the exp/log round trip
    weighted = [h for sg, h in zip(sigmas, heights) if sg > 0.0] or heights
    if all(h == weighted[0] for h in weighted):
        return weighted[0]
    if total == 0.0:
        # 0/0 weights: plain geometric mean, the limit for equal sigmas -> 0
        return math.exp(math.fsum(math.log(h) for h in heights) / len(heights))
    s = math.fsum(sg * math.log(h) for sg, h in zip(sigmas, heights))
    return min(1.0, math.exp(s / total))


def add(a: Ggfn, b: Ggfn) -> Ggfn:
    return Ggfn(a.c + b.c, a.sigma + b.sigma, _aggregate_height([a.sigma, b.sigma], [a.h, b.h]))


def fold_sum(items: Iterable[Ggfn]) -> Ggfn:
    """Sum of several GGFNs using the closed n-ary form.

    Equal (up to rounding) to any parenthesization of repeated :func:`add`
    whenever the total dispersion is positive.
    """
    items = list(items)
    if not items:
        raise EmptyInput("fold_sum needs at least one GGFN")
    if len(items) == 1:
        return items[0]
    sigmas = [g.sigma for g in items]
    return Ggfn(
        math.fsum(g.c for g in items),
        math.fsum(sigmas),
        _aggregate_height(sigmas, [g.h for g in items]),
    )


def scale(k: float, g: Ggfn) -> Ggfn:
    return Ggfn(k * g.c, abs(k) * g.sigma, g.h)


def nonneg_feasible(g: Ggfn, alpha_star: float) -> bool:
    """True iff every alpha-cut with alpha in [alpha_star, h] has a non-negative left end.

    The left endpoint increases with alpha, so checking ``alpha_star`` suffices.
    """
    return alpha_cut(g, alpha_star).lo >= 0.0
