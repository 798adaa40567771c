"""Monte Carlo alpha-cut robustness analysis.

Each scenario realises every edge cost with the single-value scheme: draw a
level ``u ~ U(0, h)``, then the point ``v*L(u) + (1-v)*R(u)`` of the u-cut
with ``v ~ U(0, 1)``.  Negative draws are rejected and the whole ``(u, v)``
pair is redrawn.

Two fixed ex-ante baselines are chosen once per run: the core path (classic
shortest path on cores) and the ranked path (minimum ``R_cost``).  Per
scenario the ex-post optimum is recomputed and three deviations are kept:

* ``dev_rank`` / ``dev_core``: realised cost of each baseline path against
  the scenario optimum;
* ``dev_objective``: the scenario optimum against the ranked path's ex-ante
  score, i.e. how far the crisp objective predicted by the ranking lands from
  what is realised.

Seeding: scenario ``i`` of a run seeded with ``ss`` draws from
``SeedSequence(ss.entropy, spawn_key=ss.spawn_key + (i,))``, so scenarios are
independent streams and can be evaluated in any order.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, EmptyInput, RejectionExhausted
from .ggfn import Ggfn
from .network import HeightRegime, Network
from .ranking import RiskParams
from .solver import Path, PathLabel, _search, dijkstra_crisp, dijkstra_ranked, path_weight

__all__ = [
    "SamplerConfig",
    "ScenarioRecord",
    "DevStats",
    "ScenarioRun",
    "Replication",
    "sample_costs",
    "sample_edge_cost",
    "deviation",
    "summarize",
    "run_scenarios",
    "replicate",
    "scenario_seed",
    "SCENARIO_COLUMNS",
]

EPS = np.finfo(float).eps
# spawn-key slot reserved for per-replication height draws
_HEIGHT_KEY = 2**32 - 1

SCENARIO_COLUMNS = (
    "scenario",
    "opt_cost",
    "rank_cost",
    "core_cost",
    "dev_rank",
    "dev_core",
    "dev_objective",
)


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 42
    mode: str = "reject"
    max_rejects: int = 1000

    def __post_init__(self):
        if self.mode != "reject":
            raise DomainError(f"unsupported sampling mode {self.mode!r}")
        if self.max_rejects < 1:
            raise DomainError("max_rejects must be >= 1")


def _draw(c, sigma, h, rng):
    r = rng.random((len(c), 2))
    u = np.maximum(h * r[:, 0], EPS)
    v = r[:, 1]
    half = sigma * np.sqrt(-2.0 * np.log(u / h))
    # v*(c - half) + (1 - v)*(c + half), arranged to be exact when half == 0
    x = c + (1.0 - 2.0 * v) * half
    return x, u


def sample_costs(c, sigma, h, rng, max_rejects: int = 1000, return_levels: bool = False):
    """One crisp realisation per edge.

    Stream layout: one ``(u, v)`` pair per edge in ascending edge order;
    then, for edges that came out negative, fresh pairs in ascending edge
    order, repeated until all are non-negative.
    """
    c = np.asarray(c, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    h = np.asarray(h, dtype=float)
    x, u = _draw(c, sigma, h, rng)
    bad = np.flatnonzero(x < 0)
    attempts = 1
    while bad.size:
        if attempts >= max_rejects:
            raise RejectionExhausted(int(bad[0]), attempts)
        xb, ub = _draw(c[bad], sigma[bad], h[bad], rng)
        x[bad] = xb
        u[bad] = ub
        bad = bad[xb < 0]
        attempts += 1
    if return_levels:
        return x, u
    return x


def sample_edge_cost(g: Ggfn, rng, max_rejects: int = 1000) -> float:
    try:
        x = sample_costs([g.c], [g.sigma], [g.h], rng, max_rejects)
    except RejectionExhausted as exc:
        raise RejectionExhausted(None, exc.attempts) from None
    return float(x[0])


def deviation(z: float, z0: float) -> float:
    """Absolute percentage deviation ``100*|z - z0|/z0``."""
    if not z0 > 0:
        raise DomainError(f"reference value must be > 0, got {z0!r}")
    return 100.0 * abs(z - z0) / z0


@dataclass(frozen=True)
class ScenarioRecord:
    scenario_id: int
    opt_cost: float
    rank_cost: float
    core_cost: float
    dev_rank: float
    dev_core: float
    dev_objective: float


@dataclass(frozen=True)
class DevStats:
    mean_dev: float
    std_dev: float
    max_dev: float
    stability: float
    reliability_premium: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _stats(devs: np.ndarray, ddof: int, premium: float | None) -> DevStats:
    n = len(devs)
    std = float(np.std(devs, ddof=ddof)) if n > ddof else 0.0
    return DevStats(
        mean_dev=float(np.mean(devs)),
        std_dev=std,
        max_dev=float(np.max(devs)),
        stability=float(np.count_nonzero(devs == 0.0)) / n,
        reliability_premium=premium,
    )


def summarize(records: Sequence[ScenarioRecord], ddof: int = 0) -> dict[str, DevStats]:
    """Deviation statistics for the ``rank``, ``core`` and ``objective`` baselines.

    The reliability premium ``mean(dev_core - dev_rank)`` is attached to the
    ``rank`` entry only.
    """
    if not records:
        raise EmptyInput("no scenario records to summarize")
    dr = np.array([r.dev_rank for r in records])
    dc = np.array([r.dev_core for r in records])
    do = np.array([r.dev_objective for r in records])
    premium = float(np.mean(dc - dr))
    return {
        "rank": _stats(dr, ddof, premium),
        "core": _stats(dc, ddof, None),
        "objective": _stats(do, ddof, None),
    }


@dataclass
class ScenarioRun:
    records: list[ScenarioRecord]
    stats: dict[str, DevStats]
    core_path: Path
    rank_path: Path
    rank_label: PathLabel
    heights: np.ndarray = field(repr=False, default=None)

    @property
    def objective(self) -> float:
        return self.rank_label.score

    @property
    def coincide(self) -> bool:
        return self.core_path == self.rank_path


def _as_seedseq(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(int(seed))


def scenario_seed(seed, scenario_id: int) -> np.random.SeedSequence:
    base = _as_seedseq(seed)
    return np.random.SeedSequence(base.entropy, spawn_key=tuple(base.spawn_key) + (scenario_id,))


def run_scenarios(
    net: Network,
    s: int,
    t: int,
    rp: RiskParams = RiskParams(),
    n_scenarios: int = 1000,
    seed=42,
    max_rejects: int = 1000,
) -> ScenarioRun:
    """Ex-ante baselines versus ex-post optima over ``n_scenarios`` draws."""
    if n_scenarios < 1:
        raise DomainError("n_scenarios must be >= 1")
    core_path, _ = dijkstra_crisp(net, net.core, s, t)
    rank_path, rank_label = dijkstra_ranked(net, s, t, rp)
    objective = rank_label.score
    c, sigma, h = net.core, net.sigma, net.height
    base = _as_seedseq(seed)
    records = []
    for i in range(n_scenarios):
        rng = np.random.Generator(np.random.PCG64(scenario_seed(base, i)))
        x = sample_costs(c, sigma, h, rng, max_rejects).tolist()
        _, opt, _ = _search(net, x, s, t)
        rank_cost = path_weight(rank_path, x)
        core_cost = path_weight(core_path, x)
        records.append(
            ScenarioRecord(
                scenario_id=i,
                opt_cost=opt,
                rank_cost=rank_cost,
                core_cost=core_cost,
                dev_rank=deviation(rank_cost, opt),
                dev_core=deviation(core_cost, opt),
                dev_objective=deviation(opt, objective),
            )
        )
    return ScenarioRun(records, summarize(records), core_path, rank_path, rank_label, h)


@dataclass
class Replication:
    runs: list[ScenarioRun]
    per_rep: list[dict[str, DevStats]]
    grand: dict[str, DevStats]


def _grand(per_rep: list[dict[str, DevStats]]) -> dict[str, DevStats]:
    out = {}
    for key in per_rep[0]:
        rows = [p[key] for p in per_rep]
        prem = [r.reliability_premium for r in rows]
        out[key] = DevStats(
            mean_dev=float(np.mean([r.mean_dev for r in rows])),
            std_dev=float(np.mean([r.std_dev for r in rows])),
            max_dev=float(np.max([r.max_dev for r in rows])),
            stability=float(np.mean([r.stability for r in rows])),
            reliability_premium=None if prem[0] is None else float(np.mean(prem)),
        )
    return out


def replication_seed(seed, rep: int) -> np.random.SeedSequence:
    return scenario_seed(seed, rep)


def replicate(
    net: Network,
    s: int,
    t: int,
    rp: RiskParams = RiskParams(),
    n_rep: int = 10,
    n_iters: int = 1000,
    seed=42,
    regime: HeightRegime | None = None,
    max_rejects: int = 1000,
) -> Replication:
    """Outer replications of :func:`run_scenarios`.

    Replication ``r`` runs on ``replication_seed(seed, r)``.  With a
    ``regime``, edge heights are redrawn from it at the start of every
    replication (and both baselines re-solved); otherwise the network's own
    heights are used throughout.  Per-replication spreads use the sample
    standard deviation (``ddof=1``); ``grand`` averages the replication rows.
    """
    if n_rep < 1 or n_iters < 1:
        raise DomainError("n_rep and n_iters must be >= 1")
    runs, per_rep = [], []
    for r in range(n_rep):
        rep_seed = replication_seed(seed, r)
        rep_net = net
        if regime is not None:
            hs = np.random.SeedSequence(rep_seed.entropy, spawn_key=tuple(rep_seed.spawn_key) + (_HEIGHT_KEY,))
            rep_net = net.with_heights(regime.sample(np.random.default_rng(hs), net.n_edges))
        run = run_scenarios(rep_net, s, t, rp, n_iters, rep_seed, max_rejects)
        runs.append(run)
        per_rep.append(summarize(run.records, ddof=1))
    return Replication(runs, per_rep, _grand(per_rep))

