"""Directed networks with GGFN edge costs.

Nodes are dense integers ``0..n_nodes-1`` assigned to external labels in
first-appearance order.  Edge attributes are kept both as :class:`Ggfn`
objects and as parallel numpy arrays, the latter for the vectorized Monte
Carlo code.
"""

from __future__ import annotations

import configparser
import csv
import io
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import DomainError, ParseError, ValidationError
from .ggfn import Ggfn, Interval

__all__ = [
    "Edge",
    "Network",
    "HeightRegime",
    "HEADER",
    "parse_edge_list",
    "read_edge_list",
    "write_edge_list",
    "induced_subgraph",
    "max_reachable",
    "random_topology",
    "sample_beta",
    "generate_instance",
    "read_generator_config",
]

HEADER = ("source", "target", "core_c", "sigma", "height_h")


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    cost: Ggfn


@dataclass(frozen=True, eq=False)
class Network:
    """Immutable directed simple graph.

    ``out_edges[u]`` lists ``(edge_index, dst)`` pairs in ascending ``dst``
    order, which the solvers rely on for deterministic tie-breaking.
    """

    labels: tuple[str, ...]
    edges: tuple[Edge, ...]
    out_edges: tuple[tuple[tuple[int, int], ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValidationError("node labels must be unique")
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        seen = set()
        for i, e in enumerate(self.edges):
            if not (0 <= e.src < n and 0 <= e.dst < n):
                raise ValidationError(f"edge {i} has an endpoint outside [0, {n})")
            if e.src == e.dst:
                raise ValidationError(f"self-loop at node {self.labels[e.src]!r}")
            if (e.src, e.dst) in seen:
                raise ValidationError(
                    f"duplicate edge {self.labels[e.src]!r} -> {self.labels[e.dst]!r}"
                )
            seen.add((e.src, e.dst))
            adj[e.src].append((i, e.dst))
        object.__setattr__(
            self, "out_edges", tuple(tuple(sorted(a, key=lambda p: p[1])) for a in adj)
        )

    @property
    def n_nodes(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    # parallel arrays, built lazily and cached on the instance
    def _arrays(self):
        cached = self.__dict__.get("_arr")
        if cached is None:
            m = len(self.edges)
            cached = (
                np.fromiter((e.src for e in self.edges), dtype=np.int64, count=m),
                np.fromiter((e.dst for e in self.edges), dtype=np.int64, count=m),
                np.fromiter((e.cost.c for e in self.edges), dtype=float, count=m),
                np.fromiter((e.cost.sigma for e in self.edges), dtype=float, count=m),
                np.fromiter((e.cost.h for e in self.edges), dtype=float, count=m),
            )
            object.__setattr__(self, "_arr", cached)
        return cached

    @property
    def src(self) -> np.ndarray:
        return self._arrays()[0]

    @property
    def dst(self) -> np.ndarray:
        return self._arrays()[1]

    @property
    def core(self) -> np.ndarray:
        return self._arrays()[2]

    @property
    def sigma(self) -> np.ndarray:
        return self._arrays()[3]

    @property
    def height(self) -> np.ndarray:
        return self._arrays()[4]

    def node(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"unknown node label {label!r}") from None

    def edge_index(self, u: int, v: int) -> int:
        for i, w in self.out_edges[u]:
            if w == v:
                return i
        raise KeyError((u, v))

    def with_heights(self, heights: Sequence[float]) -> "Network":
        if len(heights) != self.n_edges:
            raise ValidationError("need exactly one height per edge")
        edges = tuple(
            Edge(e.src, e.dst, Ggfn(e.cost.c, e.cost.sigma, float(h)))
            for e, h in zip(self.edges, heights)
        )
        return Network(self.labels, edges)

    def same_as(self, other: "Network") -> bool:
        return self.labels == other.labels and self.edges == other.edges

    @classmethod
    def from_triples(cls, rows: Iterable[tuple[str, str, float, float, float]]) -> "Network":
        """Build from ``(source, target, c, sigma, h)`` rows, labelling nodes in order seen."""
        index: dict[str, int] = {}
        edges = []
        for s, t, c, sg, h in rows:
            for lab in (s, t):
                if lab not in index:
                    index[lab] = len(index)
            edges.append(Edge(index[s], index[t], Ggfn(float(c), float(sg), float(h))))
        return cls(tuple(index), tuple(edges))


# ---------------------------------------------------------------------------
# edge-list CSV


def parse_edge_list(text: str | TextIO) -> Network:
    """Parse the ``source,target,core_c,sigma,height_h`` CSV dialect.

    Blank lines and lines starting with ``#`` (run manifests) are skipped.
    Cores must be strictly positive since the network carries costs.
    """
    if not isinstance(text, str):
        text = text.read()
    lines = [
        (no, line)
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("missing header row")
    header_no, header_line = lines[0]
    header = tuple(h.strip() for h in next(csv.reader([header_line])))
    if header != HEADER:
        raise ParseError(f"expected header {','.join(HEADER)!s}, got {header_line!r}", header_no)

    index: dict[str, int] = {}
    edges: list[Edge] = []
    seen: dict[tuple[int, int], int] = {}
    for no, line in lines[1:]:
        fields = [f.strip() for f in next(csv.reader([line]))]
        if len(fields) != len(HEADER):
            raise ParseError(f"expected {len(HEADER)} fields, got {len(fields)}", no)
        s, t = fields[0], fields[1]
        for col, lab in zip(HEADER[:2], (s, t)):
            if not lab:
                raise ParseError("empty node label", no, col)
        values = []
        for col, raw in zip(HEADER[2:], fields[2:]):
            try:
                values.append(float(raw))
            except ValueError:
                raise ParseError(f"not a number: {raw!r}", no, col) from None
        c, sg, h = values
        if s == t:
            raise ValidationError(f"line {no}: self-loop at {s!r}")
        if not (math.isfinite(c) and c > 0):
            raise ValidationError(f"line {no}: core_c must be > 0, got {c!r}")
        try:
            cost = Ggfn(c, sg, h)
        except ValidationError as exc:
            raise ValidationError(f"line {no}: {exc}") from None
        for lab in (s, t):
            if lab not in index:
                index[lab] = len(index)
        key = (index[s], index[t])
        if key in seen:
            raise ValidationError(f"line {no}: duplicate edge {s!r} -> {t!r} (first on line {seen[key]})")
        seen[key] = no
        edges.append(Edge(key[0], key[1], cost))
    return Network(tuple(index), tuple(edges))


def read_edge_list(path) -> Network:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(net: Network, preamble: Sequence[str] = ()) -> str:
    """Serialize to the edge-list dialect; ``repr`` floats so parsing is exact.

    ``preamble`` lines are emitted as ``#`` comments before the header.
    """
    buf = io.StringIO()
    for line in preamble:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for e in net.edges:
        w.writerow([net.labels[e.src], net.labels[e.dst], repr(e.cost.c), repr(e.cost.sigma), repr(e.cost.h)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# structure


def induced_subgraph(net: Network, k: int) -> Network:
    """Keep nodes ``0..k-1`` and the edges with both endpoints among them."""
    if not (1 <= k <= net.n_nodes):
        raise DomainError(f"k must lie in [1, {net.n_nodes}], got {k}")
    if k == net.n_nodes:
        return net
    edges = tuple(e for e in net.edges if e.src < k and e.dst < k)
    return Network(net.labels[:k], edges)


def max_reachable(net: Network, src: int) -> int:
    """Highest node index reachable from ``src`` (``src`` itself if isolated)."""
    seen = bytearray(net.n_nodes)
    seen[src] = 1
    best = src
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for _, v in net.out_edges[u]:
            if not seen[v]:
                seen[v] = 1
                best = max(best, v)
                queue.append(v)
    return best


# ---------------------------------------------------------------------------
# synthetic instances

_REGIME_SHAPES = {
    "high": (8.0, 2.0),
    "moderate": (4.0, 3.0),
    "low": (2.0, 5.0),
}


@dataclass(frozen=True)
class HeightRegime:
    """Beta family for edge heights.

    ``mixed`` draws from Beta(8, 2) and flips each edge with probability
    ``eps`` to a fresh Beta(2, 5) draw.
    """

    kind: str
    a: float
    b: float
    eps: float = 0.0

    def __post_init__(self):
        if self.kind not in ("high", "moderate", "low", "mixed"):
            raise DomainError(f"unknown height regime {self.kind!r}")
        if not (self.a > 0 and self.b > 0):
            raise DomainError("Beta shape parameters must be positive")
        if not (0.0 <= self.eps < 1.0):
            raise DomainError(f"eps must lie in [0, 1), got {self.eps!r}")

    @classmethod
    def named(cls, name: str, eps: float = 0.2) -> "HeightRegime":
        name = name.lower()
        if name == "mixed":
            return cls("mixed", 8.0, 2.0, eps)
        if name not in _REGIME_SHAPES:
            raise DomainError(f"unknown height regime {name!r}")
        a, b = _REGIME_SHAPES[name]
        return cls(name, a, b, 0.0)

    @property
    def mean(self) -> float:
        m_main = self.a / (self.a + self.b)
        if self.kind != "mixed":
            return m_main
        return (1 - self.eps) * m_main + self.eps * 2.0 / 7.0

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        h = sample_beta(rng, self.a, self.b, n)
        if self.kind == "mixed":
            flip = rng.random(n) < self.eps
            k = int(flip.sum())
            if k:
                h[flip] = sample_beta(rng, 2.0, 5.0, k)
        return h


def sample_beta(rng: np.random.Generator, a: float, b: float, n: int) -> np.ndarray:
    """Beta(a, b) via the ratio of two Gamma(shape, 1) draws, nudged into (0, 1)."""
    ga = rng.standard_gamma(a, n)
    gb = rng.standard_gamma(b, n)
    x = ga / (ga + gb)
    x = np.where(x <= 0.0, np.finfo(float).eps, x)
    x = np.where(x >= 1.0, np.nextafter(1.0, 0.0), x)
    return x


def random_topology(n_nodes: int, n_edges: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Random directed simple graph where every node is reachable from node 0.

    A random arborescence (each node ``i > 0`` gets a parent below it) is
    laid down first, then the remaining edges are drawn uniformly among
    unused ordered pairs.  Every induced prefix ``0..k-1`` therefore stays
    connected from node 0, which mirrors how the scaling grid is used.
    """
    max_edges = n_nodes * (n_nodes - 1)
    if n_nodes < 1 or not (n_nodes - 1 <= n_edges <= max_edges):
        raise DomainError(
            f"need n_nodes >= 1 and {max(n_nodes - 1, 0)} <= n_edges <= {max_edges}"
        )
    pairs: list[tuple[int, int]] = []
    used = set()
    for i in range(1, n_nodes):
        p = int(rng.integers(0, i))
        pairs.append((p, i))
        used.add((p, i))
    while len(pairs) < n_edges:
        u, v = (int(x) for x in rng.integers(0, n_nodes, size=2))
        if u == v or (u, v) in used:
            continue
        used.add((u, v))
        pairs.append((u, v))
    return pairs


def generate_instance(
    topology: Network | tuple[int, int],
    regime: HeightRegime,
    sigma_factor: float = 0.4,
    core_range: Interval = Interval(5.0, 50.0),
    seed: int = 42,
) -> Network:
    """Attach synthetic GGFN costs to a topology.

    Draw order from a single stream: topology (if counts were given), cores
    ``U(core_range)``, dispersions ``sigma_factor * c * U(0, 1)``, heights.
    """
    if not (math.isfinite(sigma_factor) and sigma_factor > 0):
        raise DomainError(f"sigma_factor must be > 0, got {sigma_factor!r}")
    if not core_range.lo > 0:
        raise DomainError(f"core range must be positive, got [{core_range.lo}, {core_range.hi}]")
    rng = np.random.default_rng(seed)
    if isinstance(topology, Network):
        labels = topology.labels
        pairs = [(e.src, e.dst) for e in topology.edges]
    else:
        n_nodes, n_edges = topology
        pairs = random_topology(n_nodes, n_edges, rng)
        labels = tuple(f"n{i}" for i in range(n_nodes))
    m = len(pairs)
    c = rng.uniform(core_range.lo, core_range.hi, m)
    sigma = sigma_factor * c * rng.random(m)
    h = regime.sample(rng, m)
    edges = tuple(
        Edge(u, v, Ggfn(float(ci), float(si), float(hi)))
        for (u, v), ci, si, hi in zip(pairs, c, sigma, h)
    )
    return Network(labels, edges)


def read_generator_config(path) -> dict[str, str]:
    """Read ``key = value`` lines (no section header needed)."""
    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        parser.read_string("[generate]\n" + fh.read())
    return dict(parser["generate"])
