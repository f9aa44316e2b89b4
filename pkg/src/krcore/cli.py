"""Command-line entry point: ``krcore enumerate|maximum|oracle|bench|stats``."""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .clique import CliqueBudgetExceeded, clique_based_enum
from .enumeration import (
    DEFAULT_NAIVE_CAP,
    DEFAULT_NODE_BUDGET,
    NaiveCapExceeded,
    advanced_enum,
    naive_enum,
)
from .graph import AttributedGraph, GraphError
from .io import ParseError, load_graph, write_cores
from .maximum import BoundKind, find_maximum
from .oracle import brute_force_mkrc
from .ordering import DEFAULT_LAMBDA, OrderStrategy
from .search import BudgetExceeded, KrCore, Stats, prepare
from .similarity import ConfigError, Metric, Threshold

log = logging.getLogger("krcore")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_NAIVE_CAP = 4

COMMANDS = ("enumerate", "maximum", "oracle", "bench", "stats")


@dataclass
class RunConfig:
    command: str
    graph_path: str
    attr_path: str
    attr_mode: str = "geo"
    metric: str | None = None
    r: float = 0.0
    k: int = 2
    order: str | None = None
    bound: str = "kkcore"
    lam: float = DEFAULT_LAMBDA
    seed: int = 0
    node_budget: int = DEFAULT_NODE_BUDGET
    naive_cap: int = DEFAULT_NAIVE_CAP
    output_path: str | None = None
    algo: str = "advanced"
    target: str = "maximum"

    def threshold(self) -> Threshold:
        default = "euclidean" if self.attr_mode == "geo" else "jaccard"
        metric = Metric(self.metric or default)
        if (self.attr_mode == "geo") != metric.is_distance:
            raise ConfigError(f"metric {metric.value} does not fit attribute mode {self.attr_mode}")
        return Threshold(metric, self.r)

    def order_strategy(self, default: str) -> OrderStrategy:
        kind = self.order or default
        return OrderStrategy(kind, lam=self.lam, seed=self.seed)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if self.lam < 0:
            raise ConfigError("lambda must be non-negative")
        self.threshold()


def load_inputs(cfg: RunConfig) -> AttributedGraph:
    return load_graph(cfg.graph_path, cfg.attr_path, cfg.attr_mode)


def summarize(cores: list[KrCore], stats: Stats, seconds: float) -> dict:
    sizes = [c.size for c in cores]
    report = {
        "wall_seconds": round(seconds, 6),
        "core_count": len(cores),
        "max_size": max(sizes, default=0),
        "avg_size": sum(sizes) / len(sizes) if sizes else 0.0,
    }
    report.update(stats.as_dict())
    return report


def _emit(cfg: RunConfig, g: AttributedGraph, cores: list[KrCore], report: dict) -> None:
    if cfg.output_path:
        write_cores(cfg.output_path, g, cores)
        Path(cfg.output_path + ".stats.json").write_text(json.dumps(report, indent=2) + "\n")
    else:
        from .io import core_records
        for rec in core_records(g, cores):
            print(json.dumps(rec, separators=(",", ":")))
    print(json.dumps(report, sort_keys=True), file=sys.stderr)


def _enumerate(cfg: RunConfig, g: AttributedGraph, threshold: Threshold):
    if cfg.algo == "advanced":
        return advanced_enum(g, cfg.k, threshold, cfg.order_strategy("d1d2"), cfg.node_budget)
    if cfg.algo == "basic":
        return naive_enum(g, cfg.k, threshold, True, cfg.order_strategy("d1d2"), cfg.naive_cap, cfg.node_budget)
    if cfg.algo == "naive":
        return naive_enum(g, cfg.k, threshold, False, None, cfg.naive_cap, cfg.node_budget)
    if cfg.algo == "clique":
        return clique_based_enum(g, cfg.k, threshold)
    raise ConfigError(f"unknown algorithm {cfg.algo!r}")


def _bench(cfg: RunConfig, g: AttributedGraph, threshold: Threshold) -> str:
    out = _io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if cfg.target == "maximum":
        writer.writerow(["bound", "best_size", "nodes_visited", "bound_cutoffs", "early_terminations", "seconds"])
        for bound in BoundKind:
            t0 = time.perf_counter()
            res = find_maximum(g, cfg.k, threshold, bound, cfg.lam, cfg.order_strategy("lambda"), cfg.node_budget)
            writer.writerow([bound.value, res.size, res.stats.nodes_visited, res.stats.bound_cutoffs,
                             res.stats.early_terminations, f"{time.perf_counter() - t0:.4f}"])
    else:
        writer.writerow(["algorithm", "core_count", "nodes_visited", "early_terminations", "seconds"])
        for algo in ("basic", "advanced", "clique"):
            t0 = time.perf_counter()
            res = _enumerate(RunConfig(**{**cfg.__dict__, "algo": algo}), g, threshold)
            writer.writerow([algo, len(res.cores), res.stats.nodes_visited, res.stats.early_terminations,
                             f"{time.perf_counter() - t0:.4f}"])
    return out.getvalue()


def _graph_stats(g: AttributedGraph, cfg: RunConfig, threshold: Threshold) -> dict:
    comps = prepare(g, cfg.k, threshold)
    return {
        "vertices": g.n,
        "edges": g.m,
        "dropped_self_loops": g.dropped_self_loops,
        "dropped_duplicates": g.dropped_duplicates,
        "k": cfg.k,
        "k_core_vertices": sum(len(c) for c in comps),
        "components": len(comps),
        "largest_component": max((len(c) for c in comps), default=0),
        "dissimilar_pairs_in_components": sum(c.index.dissimilar_pairs() for c in comps),
    }


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        threshold = cfg.threshold()
        g = load_inputs(cfg)
        t0 = time.perf_counter()
        if cfg.command == "stats":
            print(json.dumps(_graph_stats(g, cfg, threshold), indent=2))
            return EXIT_OK
        if cfg.command == "bench":
            text = _bench(cfg, g, threshold)
            if cfg.output_path:
                Path(cfg.output_path).write_text(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        if cfg.command == "maximum":
            bound = BoundKind(cfg.bound)
            res = find_maximum(g, cfg.k, threshold, bound, cfg.lam, cfg.order_strategy("lambda"), cfg.node_budget)
            cores = [res.best] if res.best is not None else []
            stats = res.stats
        elif cfg.command == "oracle":
            res = brute_force_mkrc(g, cfg.k, threshold, cfg.naive_cap)
            cores, stats = res.cores, res.stats
        else:
            res = _enumerate(cfg, g, threshold)
            cores, stats = res.cores, res.stats
        _emit(cfg, g, cores, summarize(cores, stats, time.perf_counter() - t0))
        return EXIT_OK
    except (ParseError, GraphError, ConfigError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (BudgetExceeded, CliqueBudgetExceeded) as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except NaiveCapExceeded as exc:
        log.error("%s", exc)
        return EXIT_NAIVE_CAP


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="krcore", description="Mine (k,r)-cores from attributed graphs.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--graph", required=True, help="edge list file")
    p.add_argument("--attrs", required=True, help="vertex attribute file")
    p.add_argument("--attr-mode", choices=("keywords", "geo"), default="geo")
    p.add_argument("--metric", choices=[m.value for m in Metric], default=None,
                   help="defaults to euclidean for geo and jaccard for keywords")
    p.add_argument("--r", type=float, required=True, help="similarity (or distance) threshold")
    p.add_argument("--k", type=int, required=True, help="minimum degree")
    p.add_argument("--order", choices=("d1d2", "lambda", "degree", "random"), default=None)
    p.add_argument("--bound", choices=[b.value for b in BoundKind], default="kkcore")
    p.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--naive-cap", type=int, default=DEFAULT_NAIVE_CAP)
    p.add_argument("--algo", choices=("advanced", "basic", "naive", "clique"), default="advanced",
                   help="enumeration algorithm")
    p.add_argument("--target", choices=("maximum", "enumerate"), default="maximum", help="what bench compares")
    p.add_argument("--out", default=None, help="results file (JSON lines); stats go to <out>.stats.json")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    cfg = RunConfig(
        command=args.command, graph_path=args.graph, attr_path=args.attrs, attr_mode=args.attr_mode,
        metric=args.metric, r=args.r, k=args.k, order=args.order, bound=args.bound, lam=args.lam,
        seed=args.seed, node_budget=args.node_budget, naive_cap=args.naive_cap, output_path=args.out,
        algo=args.algo, target=args.target,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
