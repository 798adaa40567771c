"""Shortest-path solvers for GGFN networks.

The ranked solver minimises ``R_cost`` of the path-aggregated GGFN.  Because
the index is additive under GGFN addition, this is a single-criterion
label-setting search over the per-edge weights ``c - kappa*sigma*log10(h)``
(all positive when ``c > 0``), not a Pareto search.  The search still carries
the ``(c, sigma, h)`` aggregate along each label so the reported path label
comes straight from the triple.

Tie-breaking is total: the heap pops equal distances by lower node index,
and an equal-distance relaxation replaces the current predecessor only if it
yields a lexicographically smaller node sequence.  Exhaustive enumeration
uses the same rule, so both agree path-for-path.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidPath, TooLarge, Unreachable
from .ggfn import Ggfn, fold_sum
from .network import Network
from .ranking import RiskParams, cost_weights, r_cost

__all__ = [
    "Path",
    "PathLabel",
    "dijkstra_crisp",
    "dijkstra_ranked",
    "path_aggregate",
    "path_weight",
    "enumerate_best",
    "path_from_nodes",
    "all_simple_paths",
]

MAX_ENUM_NODES = 12
MAX_ENUM_PATHS = 100_000


@dataclass(frozen=True)
class Path:
    nodes: tuple[int, ...]
    edges: tuple[int, ...]

    def labels(self, net: Network) -> list[str]:
        return [net.labels[v] for v in self.nodes]


@dataclass(frozen=True)
class PathLabel:
    c_p: float
    sigma_p: float
    h_p: float
    score: float

    @property
    def ggfn(self) -> Ggfn:
        return Ggfn(self.c_p, self.sigma_p, self.h_p)


def path_weight(p: Path, weights: Sequence[float]) -> float:
    """Left-to-right sum of edge weights, the same order the searches use."""
    total = 0.0
    for e in p.edges:
        total += weights[e]
    return total


def _walk(pred_edge: list[int], net: Network, s: int, t: int) -> Path:
    nodes = [t]
    edges = []
    v = t
    while v != s:
        e = pred_edge[v]
        edges.append(e)
        v = net.edges[e].src
        nodes.append(v)
    nodes.reverse()
    edges.reverse()
    return Path(tuple(nodes), tuple(edges))


def _node_seq(pred_edge: list[int], src: list[int], s: int, v: int) -> list[int]:
    seq = [v]
    while v != s:
        v = src[pred_edge[v]]
        seq.append(v)
    seq.reverse()
    return seq


def _search(net: Network, weights: list[float], s: int, t: int, payload=None):
    """Label-setting search from ``s`` until ``t`` is settled.

    ``payload`` is an optional per-edge list of tuples summed component-wise
    along with the distance; the aggregate at ``t`` is returned.
    """
    n = net.n_nodes
    if not (0 <= s < n and 0 <= t < n):
        raise IndexError(f"node index out of range: s={s}, t={t}")
    inf = math.inf
    dist = [inf] * n
    pred = [-1] * n
    acc = [None] * n
    settled = bytearray(n)
    src = net.src.tolist()
    dist[s] = 0.0
    if payload is not None:
        acc[s] = (0.0,) * len(payload[0]) if payload else ()
    heap = [(0.0, s)]
    out = net.out_edges
    while heap:
        d, u = heapq.heappop(heap)
        if settled[u]:
            continue
        settled[u] = 1
        if u == t:
            break
        for ei, v in out[u]:
            if settled[v]:
                continue
            nd = d + weights[ei]
            dv = dist[v]
            if nd < dv or (
                nd == dv
                and _node_seq(pred, src, s, u) + [v] < _node_seq(pred, src, s, v)
            ):
                if nd < dv:
                    heapq.heappush(heap, (nd, v))
                dist[v] = nd
                pred[v] = ei
                if payload is not None:
                    a, p = acc[u], payload[ei]
                    acc[v] = tuple(x + y for x, y in zip(a, p))
    if not settled[t]:
        raise Unreachable(net.labels[s], net.labels[t])
    return _walk(pred, net, s, t), dist[t], acc[t]


def dijkstra_crisp(net: Network, weights: Sequence[float], s: int, t: int) -> tuple[Path, float]:
    """Minimum-weight ``s -> t`` path for non-negative per-edge ``weights``."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (net.n_edges,):
        raise ValueError(f"expected {net.n_edges} weights, got shape {w.shape}")
    if net.n_edges and w.min() < 0:
        raise ValueError("edge weights must be non-negative")
    path, d, _ = _search(net, w.tolist(), s, t)
    return path, d


def _label_from_sums(c: float, sigma: float, s_ln: float, n_edges: int, ln_sum: float, rp: RiskParams) -> PathLabel:
    if n_edges == 0:
        # trivial s == t path: the additive identity, carrying full reliability
        return PathLabel(0.0, 0.0, 1.0, 0.0)
    if sigma > 0:
        h = min(1.0, math.exp(s_ln / sigma))
    else:
        h = math.exp(ln_sum / n_edges)
    g = Ggfn(c, sigma, h)
    return PathLabel(c, sigma, h, r_cost(g, rp))


def dijkstra_ranked(net: Network, s: int, t: int, rp: RiskParams = RiskParams()) -> tuple[Path, PathLabel]:
    """Path minimising ``R_cost`` of its aggregated GGFN, with that aggregate."""
    if net.n_edges and net.core.min() <= 0:
        raise ValueError("ranked search needs strictly positive cores")
    weights = cost_weights(net.core, net.sigma, net.height, rp).tolist()
    ln_h = np.log(net.height)
    payload = list(
        zip(net.core.tolist(), net.sigma.tolist(), (net.sigma * ln_h).tolist(), [1.0] * net.n_edges, ln_h.tolist())
    )
    path, _, acc = _search(net, weights, s, t, payload)
    c, sigma, s_ln, cnt, ln_sum = acc if acc else (0.0, 0.0, 0.0, 0.0, 0.0)
    return path, _label_from_sums(c, sigma, s_ln, int(cnt), ln_sum, rp)


def _check_path(net: Network, p: Path) -> None:
    if len(p.nodes) != len(p.edges) + 1:
        raise InvalidPath("a path needs exactly one more node than edges")
    if len(set(p.nodes)) != len(p.nodes):
        raise InvalidPath("path repeats a node")
    for k, ei in enumerate(p.edges):
        if not (0 <= ei < net.n_edges):
            raise InvalidPath(f"edge index {ei} out of range")
        e = net.edges[ei]
        if e.src != p.nodes[k] or e.dst != p.nodes[k + 1]:
            raise InvalidPath(f"edge {ei} does not connect {p.nodes[k]} -> {p.nodes[k + 1]}")


def path_from_nodes(net: Network, nodes: Sequence[int]) -> Path:
    try:
        edges = tuple(net.edge_index(u, v) for u, v in zip(nodes, nodes[1:]))
    except KeyError as exc:
        raise InvalidPath(f"no edge {exc.args[0][0]} -> {exc.args[0][1]}") from None
    p = Path(tuple(nodes), edges)
    _check_path(net, p)
    return p


def path_aggregate(net: Network, p: Path, rp: RiskParams = RiskParams()) -> PathLabel:
    _check_path(net, p)
    if not p.edges:
        return PathLabel(0.0, 0.0, 1.0, 0.0)
    g = fold_sum(net.edges[e].cost for e in p.edges)
    return PathLabel(g.c, g.sigma, g.h, r_cost(g, rp))


def enumerate_best(net: Network, s: int, t: int, objective="core") -> tuple[Path, float]:
    """Exhaustive oracle over all simple ``s -> t`` paths.

    ``objective`` is ``"core"`` or a :class:`RiskParams` (ranked).  The
    objective value is the left-to-right sum of the same per-edge weights the
    solvers use, and ties go to the lexicographically smallest node sequence.
    """
    if objective == "core":
        weights = net.core.tolist()
    elif isinstance(objective, RiskParams):
        weights = cost_weights(net.core, net.sigma, net.height, objective).tolist()
    else:
        raise ValueError(f"objective must be 'core' or RiskParams, got {objective!r}")
    limit = None if net.n_nodes <= MAX_ENUM_NODES else MAX_ENUM_PATHS
    best: tuple[float, tuple[int, ...], tuple[int, ...]] | None = None
    visited = 0
    on_path = bytearray(net.n_nodes)
    nodes = [s]
    edges: list[int] = []
    on_path[s] = 1

    def dfs(u: int, cost: float):
        nonlocal best, visited
        if u == t:
            visited += 1
            if limit is not None and visited > limit:
                raise TooLarge(f"more than {limit} simple paths on a {net.n_nodes}-node network")
            key = (cost, tuple(nodes))
            if best is None or key < best[:2]:
                best = (cost, tuple(nodes), tuple(edges))
            return
        for ei, v in net.out_edges[u]:
            if on_path[v]:
                continue
            on_path[v] = 1
            nodes.append(v)
            edges.append(ei)
            dfs(v, cost + weights[ei])
            edges.pop()
            nodes.pop()
            on_path[v] = 0

    dfs(s, 0.0)
    if best is None:
        raise Unreachable(net.labels[s], net.labels[t])
    return Path(best[1], best[2]), best[0]


def all_simple_paths(net: Network, s: int, t: int) -> list[Path]:
    """Every simple ``s -> t`` path in lexicographic node order (small graphs only)."""
    out: list[Path] = []
    on_path = bytearray(net.n_nodes)

    def dfs(u, nodes, edges):
        if u == t:
            out.append(Path(tuple(nodes), tuple(edges)))
            return
        for ei, v in net.out_edges[u]:
            if not on_path[v]:
                on_path[v] = 1
                dfs(v, nodes + [v], edges + [ei])
                on_path[v] = 0

    on_path[s] = 1
    dfs(s, [s], [])
    return out
