"""Risk-averse ranking indices for cost- and benefit-type GGFNs.

``log10`` is used on purpose: the indices are defined with the base-10
logarithm, unlike height aggregation which uses the natural log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .ggfn import Ggfn

__all__ = ["RiskParams", "r_cost", "r_benefit", "cost_weights"]


@dataclass(frozen=True)
class RiskParams:
    """Risk attitude. ``kappa = 1`` is the baseline index, ``kappa = 0`` ignores reliability."""

    kappa: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise DomainError(f"kappa must be finite and >= 0, got {self.kappa!r}")


def r_cost(g: Ggfn, rp: RiskParams = RiskParams()) -> float:
    """Cost-type index ``c - kappa * sigma * log10(h)``; lower is better."""
    return g.c - rp.kappa * g.sigma * math.log10(g.h)


def r_benefit(g: Ggfn) -> float:
    """Benefit-type index ``c + sigma * log10(h)``; higher is better."""
    return g.c + g.sigma * math.log10(g.h)


def cost_weights(c, sigma, h, rp: RiskParams = RiskParams()) -> np.ndarray:
    """Vectorized :func:`r_cost` over per-edge arrays.

    By additivity of the index these are the edge weights whose path sums
    equal the index of the aggregated path GGFN.
    """
    c = np.asarray(c, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    h = np.asarray(h, dtype=float)
    return c - rp.kappa * sigma * np.log10(h)
