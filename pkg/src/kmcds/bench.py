"""Seeded benchmark trials and their tab-separated report."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InfeasibleError
from .general import solve_general
from .graph import NodeWeightedGraph
from .oracle import exact_kmcds
from .udg import generate_udg, ratio_scale, solve_udg

ORACLE_MAX_NODES = 12
PHASES = {
    "general": ("dominating", "padding", "inflation", "rsc", "paths"),
    "udg": ("dominating", "padding", "extra", "inflation", "rooted"),
}


def trial_rng(seed, trial):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def random_general_graph(n, rng, p_edge=0.5, weights="random"):
    """Erdos-Renyi graph with optional random integer weights in ``[1, 10]``."""
    present = rng.random(n * (n - 1) // 2) < p_edge
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = [e for e, keep in zip(pairs, present) if keep]
    if weights == "unit":
        w = [1] * n
    else:
        w = [int(x) for x in rng.integers(1, 11, size=n)]
    return NodeWeightedGraph(range(n), edges, w)


def make_instance(mode, n, seed, trial, side=2.0, weights="random", p_edge=0.5):
    if mode == "general":
        return random_general_graph(n, trial_rng(seed, trial), p_edge, weights)
    udg_seed = int(trial_rng(seed, trial).integers(0, 2**63 - 1))
    return generate_udg(n, side, udg_seed, weights).graph


@dataclass
class TrialResult:
    trial: int
    n: int
    edges: int
    status: str
    weight: float | None = None
    oracle: float | None = None
    phases: dict = field(default_factory=dict)
    scale: float | None = None

    @property
    def ratio(self):
        if self.weight is None or self.oracle is None:
            return None
        if self.oracle == 0:
            return 1.0 if self.weight == 0 else float("inf")
        return self.weight / self.oracle


def run_trial(args):
    mode, n, k, m, seed, trial, side, weights, p_edge, with_oracle = args
    G = make_instance(mode, n, seed, trial, side, weights, p_edge)
    res = TrialResult(trial, len(G), G.n_edges, "ok")
    try:
        sol = solve_general(G, k, m) if mode == "general" else solve_udg(G, k, m)
    except InfeasibleError:
        res.status = "infeasible"
        return res
    res.weight = sol.weight
    res.phases = dict(sol.trace)
    if mode == "udg":
        res.scale = ratio_scale(k, m, sol.details["unit"])
    if with_oracle and len(G) <= ORACLE_MAX_NODES:
        res.oracle = exact_kmcds(G, None, k, m).weight
    return res


def run_bench(mode, n, trials, k, m, seed, side=2.0, weights="random", p_edge=0.5, jobs=1, oracle=True):
    if mode not in PHASES:
        raise ValueError(f"unknown mode {mode!r}")
    tasks = [(mode, n, k, m, seed, t, side, weights, p_edge, oracle) for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_trial, tasks))
    else:
        results = [run_trial(t) for t in tasks]
    return sorted(results, key=lambda r: r.trial)


def _f(x):
    if x is None:
        return "-"
    return f"{x:.4f}"


def format_table(results, mode):
    phases = PHASES[mode]
    header = ["trial", "n", "edges", "status", "weight", "oracle", "ratio"] + [f"w_{p}" for p in phases]
    if mode == "udg":
        header.append("scale")
    lines = ["\t".join(header)]
    for r in results:
        row = [str(r.trial), str(r.n), str(r.edges), r.status, _f(r.weight), _f(r.oracle), _f(r.ratio)]
        row += [_f(r.phases.get(p)) if r.status == "ok" else "-" for p in phases]
        if mode == "udg":
            row.append(_f(r.scale))
        lines.append("\t".join(row))
    ok = [r for r in results if r.status == "ok"]
    for label, agg in (("mean", np.mean), ("max", np.max)):
        def col(vals):
            vals = [v for v in vals if v is not None]
            return _f(float(agg(vals))) if vals else "-"

        row = [label, "-", "-", f"{len(ok)}/{len(results)}", col([r.weight for r in ok]),
               col([r.oracle for r in ok]), col([r.ratio for r in ok])]
        row += [col([r.phases.get(p) for r in ok]) for p in phases]
        if mode == "udg":
            row.append(col([r.scale for r in ok]))
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"
