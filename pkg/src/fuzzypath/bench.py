"""Scaling experiment and deterministic alpha-cut path-cost profiles."""

from __future__ import annotations

import gc
import statistics
import time
import tracemalloc
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, Unreachable
from .ggfn import alpha_cut
from .network import Network, induced_subgraph, max_reachable
from .ranking import RiskParams
from .solver import Path, dijkstra_ranked, path_aggregate

__all__ = ["ScalingRow", "AlphaProfile", "size_grid", "run_scaling", "alpha_profile", "default_levels"]

MODES = ("lower", "upper", "midpoint")


@dataclass(frozen=True)
class ScalingRow:
    n_nodes: int
    m_edges: int
    t_dst: int
    t_median_s: float
    peak_mem_bytes: int
    skipped: bool = False


@dataclass(frozen=True)
class AlphaProfile:
    levels: tuple[float, ...]
    endpoint_mode: str
    costs: tuple[float, ...]


def size_grid(n: int, parts: int) -> list[int]:
    """``ceil(i*n/parts)`` for ``i = 1..parts``, in exact integer arithmetic."""
    if parts < 1:
        raise DomainError("parts must be >= 1")
    return [-(-i * n // parts) for i in range(1, parts + 1)]


def _timed_solve(sub: Network, src: int, dst: int, rp: RiskParams) -> tuple[float, int]:
    gc.collect()
    tracemalloc.start()
    try:
        t0 = time.perf_counter()
        dijkstra_ranked(sub, src, dst, rp)
        elapsed = time.perf_counter() - t0
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    return elapsed, peak


def run_scaling(
    net: Network, parts: int = 8, repeats: int = 5, rp: RiskParams = RiskParams(), source: int = 0
) -> list[ScalingRow]:
    """Time the ranked solver on induced prefixes of ``net``.

    For each grid size ``k`` the destination is the highest node reachable
    from ``source`` inside the size-``k`` subgraph.  Timing and peak
    allocation are measured around the solve only; the median time and the
    maximum peak over ``repeats`` runs are reported.
    """
    if repeats < 1:
        raise DomainError("repeats must be >= 1")
    rows = []
    for k in size_grid(net.n_nodes, parts):
        sub = induced_subgraph(net, k)
        if not (0 <= source < k):
            rows.append(ScalingRow(k, sub.n_edges, source, float("nan"), 0, skipped=True))
            continue
        dst = max_reachable(sub, source)
        times, peak = [], 0
        try:
            for _ in range(repeats):
                dt, mem = _timed_solve(sub, source, dst, rp)
                times.append(dt)
                peak = max(peak, mem)
        except Unreachable:
            rows.append(ScalingRow(k, sub.n_edges, dst, float("nan"), 0, skipped=True))
            continue
        rows.append(ScalingRow(k, sub.n_edges, dst, statistics.median(times), peak))
    return rows


def default_levels(step: float = 0.05) -> list[float]:
    """``step, 2*step, ...`` strictly below 1 (0.05..0.95 by default)."""
    n = int(round(1.0 / step))
    return [round(i * step, 10) for i in range(1, n)]


def alpha_profile(
    net: Network,
    p: Path,
    levels: Sequence[float],
    mode: str = "lower",
    relative: bool = False,
) -> AlphaProfile:
    """Deterministic alpha-cut cost of a path at each level.

    The path GGFN is aggregated first.  With ``relative=False`` each level is
    an absolute membership degree, clamped to ``h_P*(1 - eps)`` when it
    reaches the path height (so the profile flattens at the core there).
    With ``relative=True`` a level ``a`` cuts at ``a*h_P``, which keeps the
    whole 0..1 grid informative for subnormal paths.
    """
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    levels = [float(a) for a in levels]
    if any(not (0.0 < a < 1.0) for a in levels):
        raise DomainError("levels must lie in (0, 1)")
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise DomainError("levels must be strictly increasing")
    g = path_aggregate(net, p).ggfn
    cap = g.h * (1.0 - np.finfo(float).eps)
    costs = []
    for a in levels:
        alpha = a * g.h if relative else min(a, cap)
        cut = alpha_cut(g, alpha)
        if mode == "lower":
            costs.append(cut.lo)
        elif mode == "upper":
            costs.append(cut.hi)
        else:
            costs.append(g.c)
    return AlphaProfile(tuple(levels), mode, tuple(costs))
