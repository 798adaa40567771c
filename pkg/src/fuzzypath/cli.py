"""Command-line front end.

Subcommands: ``solve``, ``simulate``, ``scale``, ``profile``, ``generate``.
Every file written carries a run manifest (a ``# manifest: {...}`` comment
line for CSV, a ``manifest`` key for JSON).  Exit codes: 0 success, 1 input
error, 2 unreachable target, 3 sampling infeasibility.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path as FsPath

from . import __version__
from .bench import alpha_profile, default_levels, run_scaling
from .errors import DomainError, ParseError, RejectionExhausted, Unreachable, ValidationError
from .ggfn import Interval, nonneg_feasible
from .montecarlo import SCENARIO_COLUMNS, replicate
from .network import (
    HeightRegime,
    generate_instance,
    read_edge_list,
    read_generator_config,
    write_edge_list,
)
from .ranking import RiskParams
from .solver import dijkstra_crisp, dijkstra_ranked, path_aggregate

EXIT_OK, EXIT_INPUT, EXIT_UNREACHABLE, EXIT_SAMPLING = 0, 1, 2, 3


@dataclass
class RunManifest:
    command: str
    input_path: str
    seed: int
    kappa: float
    regime: str
    params: dict = field(default_factory=dict)
    tool_version: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _manifest(args, **params) -> RunManifest:
    return RunManifest(
        command=args.command,
        input_path=str(getattr(args, "input", "") or ""),
        seed=args.seed,
        kappa=args.kappa,
        regime=getattr(args, "regime", None) or "file",
        params=params,
    )


def _write(path, text: str) -> None:
    FsPath(path).write_text(text, encoding="utf-8", newline="")


def _csv_text(manifest: RunManifest, header, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# manifest: {manifest.to_json()}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt_path(net, path) -> str:
    return "-".join(path.labels(net))


def _endpoints(net, args) -> tuple[int, int]:
    return net.node(args.source), net.node(args.target)


def _parse_levels(text: str | None) -> list[float]:
    if not text:
        return default_levels()
    if ":" in text:
        lo, hi, step = (float(x) for x in text.split(":"))
        n = int(round((hi - lo) / step))
        return [round(lo + i * step, 10) for i in range(n + 1)]
    return [float(x) for x in text.split(",") if x.strip()]


# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    net = read_edge_list(args.input)
    s, t = _endpoints(net, args)
    rp = RiskParams(args.kappa)
    core_path, core_cost = dijkstra_crisp(net, net.core, s, t)
    rank_path, label = dijkstra_ranked(net, s, t, rp)
    core_label = path_aggregate(net, core_path, rp)
    same = core_path == rank_path
    print(f"core path   : {_fmt_path(net, core_path)}  c={core_cost:.4f}  "
          f"sigma={core_label.sigma_p:.4f}  h={core_label.h_p:.4f}  R={core_label.score:.4f}")
    print(f"ranked path : {_fmt_path(net, rank_path)}  c={label.c_p:.4f}  "
          f"sigma={label.sigma_p:.4f}  h={label.h_p:.4f}  R={label.score:.4f}")
    print(f"coincide    : {'yes' if same else 'no'}")
    if args.out:
        report = {
            "manifest": asdict(_manifest(args, source=args.source, target=args.target)),
            "core": {"path": core_path.labels(net), **asdict(core_label)},
            "ranked": {"path": rank_path.labels(net), **asdict(label)},
            "coincide": same,
        }
        _write(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    if not args.out:
        raise DomainError("simulate needs --out for the scenario CSV")
    net = read_edge_list(args.input)
    s, t = _endpoints(net, args)
    regime = HeightRegime.named(args.regime, args.eps) if args.regime else None
    rep = replicate(
        net, s, t, RiskParams(args.kappa), args.n_rep, args.n_iters, args.seed, regime, args.max_rejects
    )
    manifest = _manifest(
        args, source=args.source, target=args.target, n_rep=args.n_rep, n_iters=args.n_iters,
        eps=args.eps, max_rejects=args.max_rejects,
    )
    rows = []
    for r, run in enumerate(rep.runs):
        for rec in run.records:
            rows.append([rec.scenario_id, repr(rec.opt_cost), repr(rec.rank_cost), repr(rec.core_cost),
                         repr(rec.dev_rank), repr(rec.dev_core), repr(rec.dev_objective), r])
    out = FsPath(args.out)
    _write(out, _csv_text(manifest, SCENARIO_COLUMNS + ("replication",), rows))
    stats = {
        "manifest": asdict(manifest),
        "replications": [
            {
                "core_path": run.core_path.labels(net),
                "rank_path": run.rank_path.labels(net),
                "objective": run.objective,
                **{k: v.to_dict() for k, v in per.items()},
            }
            for run, per in zip(rep.runs, rep.per_rep)
        ],
        "grand": {k: v.to_dict() for k, v in rep.grand.items()},
    }
    stats_path = FsPath(args.stats_out) if args.stats_out else out.with_suffix(".json")
    _write(stats_path, json.dumps(stats, indent=2, sort_keys=True) + "\n")
    g = rep.grand
    print(f"{args.n_rep} x {args.n_iters} scenarios, seed {args.seed}, kappa {args.kappa}")
    for key in ("objective", "rank", "core"):
        st = g[key]
        print(f"  {key:9s} mean dev {st.mean_dev:8.4f}%  std {st.std_dev:8.4f}%  "
              f"max {st.max_dev:8.4f}%  stability {st.stability:.3f}")
    print(f"  reliability premium {g['rank'].reliability_premium:.4f}%")
    print(f"wrote {out} and {stats_path}")
    return EXIT_OK


def cmd_scale(args) -> int:
    net = read_edge_list(args.input)
    src = net.node(args.source) if args.source else 0
    rows = run_scaling(net, args.parts, args.repeats, RiskParams(args.kappa), src)
    manifest = _manifest(args, parts=args.parts, repeats=args.repeats, source=net.labels[src])
    body = [
        [r.n_nodes, r.m_edges, net.labels[r.t_dst], "skip" if r.skipped else repr(r.t_median_s),
         repr(r.peak_mem_bytes / 2**20)]
        for r in rows
    ]
    text = _csv_text(manifest, ("N", "m", "t_dst", "time_s", "peak_mem_mb"), body)
    if args.out:
        _write(args.out, text)
    for r in rows:
        print(f"N={r.n_nodes:6d} m={r.m_edges:6d} t_dst={net.labels[r.t_dst]:>8s} "
              f"time={r.t_median_s:.5f}s peak={r.peak_mem_bytes / 2**20:.3f}MB")
    return EXIT_OK


def cmd_profile(args) -> int:
    net = read_edge_list(args.input)
    s, t = _endpoints(net, args)
    path, label = dijkstra_ranked(net, s, t, RiskParams(args.kappa))
    levels = _parse_levels(args.levels)
    prof = alpha_profile(net, path, levels, args.mode, relative=args.relative)
    manifest = _manifest(args, source=args.source, target=args.target, mode=args.mode,
                         relative=args.relative, levels=list(prof.levels), path=path.labels(net))
    text = _csv_text(manifest, ("alpha", "cost"), [[repr(a), repr(c)] for a, c in zip(prof.levels, prof.costs)])
    if args.out:
        _write(args.out, text)
    print(f"path {_fmt_path(net, path)}  c={label.c_p:.4f} sigma={label.sigma_p:.4f} h={label.h_p:.4f}")
    for a, c in zip(prof.levels, prof.costs):
        print(f"  alpha={a:.3f}  cost={c:.4f}")
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.config:
        cfg = read_generator_config(args.config)
        for key, value in cfg.items():
            attr = key.replace("-", "_")
            if not hasattr(args, attr):
                raise DomainError(f"unknown config key {key!r}")
            current = getattr(args, attr)
            setattr(args, attr, type(current)(value) if current is not None else value)
    regime = HeightRegime.named(args.regime or "mixed", args.eps)
    if args.input:
        topology = read_edge_list(args.input)
    else:
        topology = (args.nodes, args.edges)
    net = generate_instance(topology, regime, args.sigma_factor, Interval(args.core_min, args.core_max), args.seed)
    args.regime = regime.kind
    manifest = _manifest(
        args, eps=args.eps, sigma_factor=args.sigma_factor, core_min=args.core_min, core_max=args.core_max,
        nodes=net.n_nodes, edges=net.n_edges,
    )
    text = write_edge_list(net, preamble=[f"manifest: {manifest.to_json()}"])
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
        return EXIT_OK
    print(f"generated {net.n_nodes} nodes, {net.n_edges} edges ({regime.kind} heights) -> {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuzzypath", description="Shortest paths with generalized Gaussian fuzzy costs")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, endpoints=True, needs_input=True):
        sp.add_argument("--input", required=needs_input, help="edge-list CSV")
        if endpoints:
            sp.add_argument("--source", required=True)
            sp.add_argument("--target", required=True)
        sp.add_argument("--kappa", type=float, default=1.0)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--out")

    sp = sub.add_parser("solve", help="core and ranked baseline paths")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("simulate", help="Monte Carlo alpha-cut robustness run")
    common(sp)
    sp.add_argument("--regime", choices=["high", "moderate", "low", "mixed"],
                    help="redraw heights from this regime every replication")
    sp.add_argument("--eps", type=float, default=0.2)
    sp.add_argument("--n-rep", type=int, default=10)
    sp.add_argument("--n-iters", type=int, default=1000)
    sp.add_argument("--max-rejects", type=int, default=1000)
    sp.add_argument("--stats-out")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("scale", help="runtime/memory over induced subgraphs")
    common(sp, endpoints=False)
    sp.add_argument("--source")
    sp.add_argument("--parts", type=int, default=8)
    sp.add_argument("--repeats", type=int, default=5)
    sp.set_defaults(func=cmd_scale)

    sp = sub.add_parser("profile", help="alpha-cut cost profile of the ranked path")
    common(sp)
    sp.add_argument("--levels", help="comma list or start:stop:step (default 0.05:0.95:0.05)")
    sp.add_argument("--mode", choices=["lower", "upper", "midpoint"], default="lower")
    sp.add_argument("--relative", action="store_true", help="cut at level*h_P instead of clamping")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("generate", help="synthetic GGFN instance")
    common(sp, endpoints=False, needs_input=False)
    sp.add_argument("--config", help="key = value file overriding the flags below")
    sp.add_argument("--nodes", type=int, default=1226)
    sp.add_argument("--edges", type=int, default=2615)
    sp.add_argument("--regime", choices=["high", "moderate", "low", "mixed"], default="mixed")
    sp.add_argument("--eps", type=float, default=0.2)
    sp.add_argument("--sigma-factor", type=float, default=0.4)
    sp.add_argument("--core-min", type=float, default=5.0)
    sp.add_argument("--core-max", type=float, default=50.0)
    sp.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Unreachable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    except RejectionExhausted as exc:
        hint = ""
        if exc.edge is not None and getattr(args, "input", None):
            try:
                net = read_edge_list(args.input)
                e = net.edges[exc.edge]
                label = f"{net.labels[e.src]}->{net.labels[e.dst]}"
                ok = nonneg_feasible(e.cost, min(0.05, e.cost.h))
                hint = f" [edge {label}: nonneg_feasible(alpha*=0.05) is {ok}]"
            except Exception:  # the hint is best effort only
                pass
        print(f"error: {exc}{hint}", file=sys.stderr)
        return EXIT_SAMPLING
    except (ParseError, ValidationError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
