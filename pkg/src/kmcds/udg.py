"""Unit-disc pipeline: level-by-level connectivity augmentation of the terminals.

At every level the terminal set is first inflated by covering the cores of
its deficient family, then roots are chosen so that every core avoids one of
them, and the cores avoiding each root are covered until the terminal graph
gains one unit of connectivity.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .bisets import covers, enumerate_cores
from .connectivity import adjacency, is_k_connected, vertex_connectivity
from .domination import greedy_m_dominating_set
from .exceptions import CertificationError, InfeasibleError, PreconditionError
from .graph import Instance, NodeWeightedGraph
from .solution import build_solution

log = logging.getLogger(__name__)

#: a node of a minimally k-connected unit-disc graph has degree at most 5k
DEGREE_FACTOR = 5


def make_rng(seed):
    """Counter-based generator, reproducible across platforms."""
    return np.random.Generator(np.random.Philox(seed))


def generate_udg(n, side, seed, weight_mode="unit", k=1, m=1) -> Instance:
    """``n`` uniform points in ``[0, side]^2`` joined when at distance at most 1."""
    if n < 1 or not side > 0:
        raise PreconditionError("need n >= 1 and side > 0")
    if weight_mode not in ("unit", "random"):
        raise ValueError(f"unknown weight mode {weight_mode!r}")
    rng = make_rng(seed)
    pts = [(float(x), float(y)) for x, y in rng.uniform(0.0, side, size=(n, 2))]
    if weight_mode == "unit":
        weights = [1] * n
    else:
        weights = [round(float(x), 3) for x in rng.uniform(1.0, 10.0, size=n)]
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if math.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]) <= 1.0
    ]
    return Instance(NodeWeightedGraph(range(n), edges, weights, pts), k, m)


# -- covering cores ---------------------------------------------------------


@dataclass
class CoverTask:
    cores: list
    cover_map: dict  # candidate -> frozenset of core indices it covers
    capacity: int | None = None  # None means unbounded
    picks: list = field(default_factory=list)  # (node, charged core indices), filled by cover_cores


def cores_pairwise_disjoint(cores):
    seen = set()
    for c in cores:
        if not seen.isdisjoint(c.inner):
            return False
        seen |= c.inner
    return True


def build_cover_task(G, T, cores, ell, k=None):
    """Set-cover view of ``cores``; capacitated when there are many disjoint cores."""
    adj = adjacency(G)
    T = frozenset(T)
    cover_map = {}
    for v in sorted(adj):
        if v in T:
            continue
        hit = frozenset(i for i, c in enumerate(cores) if covers(v, c.biset, adj, T))
        if hit:
            cover_map[v] = hit
    capacity = None
    if k is not None and len(cores) > ell * (ell + 1) and cores_pairwise_disjoint(cores):
        capacity = DEGREE_FACTOR * k
    return CoverTask(list(cores), cover_map, capacity)


def cover_cores(task: CoverTask, weights) -> frozenset:
    """Greedy weighted set cover with soft capacities.

    A pick of ``v`` is charged for at most ``task.capacity`` uncovered cores;
    ``v`` may be picked again later for the rest, but appears once in the
    returned set.
    """
    uncovered = set(range(len(task.cores)))
    reachable = set().union(*task.cover_map.values()) if task.cover_map else set()
    if uncovered - reachable:
        i = min(uncovered - reachable)
        raise InfeasibleError(f"core {task.cores[i].biset!r} has no covering candidate")
    cap = task.capacity
    S = set()
    task.picks = []
    while uncovered:
        best = None
        for v, hit in task.cover_map.items():
            c = len(hit & uncovered)
            if c == 0:
                continue
            eff = c if cap is None else min(c, cap)
            key = (weights[v] / eff, -eff, v)
            if best is None or key < best[0]:
                best = (key, v, eff)
        _, v, eff = best
        charged = sorted(task.cover_map[v] & uncovered)[:eff]
        uncovered.difference_update(charged)
        task.picks.append((v, tuple(charged)))
        S.add(v)
    return frozenset(S)


def _kappa(adj, T):
    return vertex_connectivity({v: adj[v] & T for v in T})


def inflate_udg_rounds(G, weights, T0, p, k=None):
    """Per-round additions of ``p`` core-covering inflation rounds."""
    adj = adjacency(G)
    T = frozenset(T0)
    ell = _kappa(adj, T)
    rounds = []
    for _ in range(p):
        if _kappa(adj, T) > ell:
            break
        cores = enumerate_cores(adj, T, ell)
        if not cores:
            break
        S = cover_cores(build_cover_task(adj, T, cores, ell, k), weights)
        rounds.append(S)
        T = T | S
    return rounds


def inflate_udg(G, weights, T0, p, k=None) -> frozenset:
    T = set(T0)
    for S in inflate_udg_rounds(G, weights, T0, p, k):
        T |= S
    return frozenset(T)


def select_roots(G, T, ell, cores=None):
    """Greedy roots so every core leaves at least one root outside its outer set."""
    T = sorted(set(T))
    if cores is None:
        cores = enumerate_cores(G, T, ell)
    todo = set(range(len(cores)))
    for i in todo:
        if cores[i].outer >= set(T):
            raise PreconditionError(f"core {cores[i].biset!r} leaves no terminal outside")
    R = []
    while todo:
        best = max(T, key=lambda t: (sum(1 for i in todo if t not in cores[i].outer), -t))
        R.append(best)
        todo = {i for i in todo if best in cores[i].outer}
    return R


def cover_rooted_family(G, weights, T, r, ell, k=None) -> frozenset:
    """Cover the cores avoiding ``r`` until none remain at connectivity ``ell``."""
    adj = adjacency(G)
    T = frozenset(T)
    if r not in T:
        raise PreconditionError(f"root {r} is not a terminal")
    S = set()
    while True:
        cur = T | S
        if _kappa(adj, cur) > ell:
            break
        cores = [c for c in enumerate_cores(adj, cur, ell) if r not in c.outer]
        if not cores:
            break
        S |= cover_cores(build_cover_task(adj, cur, cores, ell, k), weights)
    return frozenset(S)


def p_schedule(ell, m, unit=False):
    """Inflation rounds for level ``ell``: 1 while ``m - ell`` is large, else a root of ``ell``.

    General weights compare against ``ell^(2/3)``, unit weights against
    ``sqrt(ell)``; fractional values are rounded up. Computed in integers.
    """
    if ell <= 0:
        return 1
    gap = m - ell
    if unit:
        if gap >= 0 and gap * gap >= ell:
            return 1
        c = math.isqrt(ell)
        return c if c * c == ell else c + 1
    if gap >= 0 and gap ** 3 >= ell * ell:
        return 1
    c = round(ell ** (2.0 / 3.0))
    while c ** 3 < ell * ell:
        c += 1
    while c > 1 and (c - 1) ** 3 >= ell * ell:
        c -= 1
    return c


def ratio_scale(k, m, unit=False):
    """Reporting factor ``min(m / (m - k + 1), k^(2/3))``; ``sqrt(k)`` replaces ``k^(2/3)`` for unit weights."""
    if not m >= k >= 1:
        raise PreconditionError(f"need m >= k >= 1, got k={k}, m={m}")
    root = math.sqrt(k) if unit else k ** (2.0 / 3.0)
    return min(m / (m - k + 1), root)


def cover_lower_bound(opt, k, ell):
    """Lower bound ``opt / (k - ell)`` on the fractional cover value of a level."""
    if not 0 <= ell < k:
        raise PreconditionError(f"need 0 <= ell < k, got ell={ell}, k={k}")
    return opt / (k - ell)


@dataclass
class LevelResult:
    ell: int
    p: int
    extra: frozenset
    inflation: frozenset
    roots: list
    rooted: frozenset

    @property
    def nodes(self):
        return self.extra | self.inflation | self.rooted


def _extra_terminals(adj, T, count):
    near = set()
    for t in T:
        near |= adj[t]
    return frozenset(sorted(near - set(T))[:count])


def augment_udg_level_detail(G, weights, T, p, k=None, unit=False) -> LevelResult:
    adj = adjacency(G)
    T = frozenset(T)
    ell = _kappa(adj, T)
    extra = _extra_terminals(adj, T, ell) if unit and ell >= 1 else frozenset()
    T1 = T | extra
    rounds = inflate_udg_rounds(adj, weights, T1, p, k)
    inflation = frozenset().union(*rounds) if rounds else frozenset()
    base = T1 | inflation
    S = set()
    roots = []
    while _kappa(adj, base | S) <= ell:
        cur = base | S
        cores = enumerate_cores(adj, cur)
        if not cores:
            raise InfeasibleError(f"terminal graph on {len(cur)} nodes admits no further connectivity")
        R = select_roots(adj, cur, ell, cores)
        roots.append(R)
        for r in R:
            S |= cover_rooted_family(adj, weights, cur, r, ell, k)
    res = LevelResult(ell, p, extra, inflation, roots, frozenset(S))
    if _kappa(adj, T | res.nodes) < ell + 1:
        raise CertificationError(f"level {ell} did not raise connectivity")
    return res


def augment_udg_level(G, weights, T, p, k=None, unit=False) -> frozenset:
    """Nodes raising the connectivity of ``G[T]`` by one."""
    return augment_udg_level_detail(G, weights, T, p, k, unit).nodes


def solve_udg(G: NodeWeightedGraph, k, m, weight_mode="auto", terminals=None, weights=None):
    """Approximate minimum-weight k-connected m-dominating set of a unit-disc graph.

    ``weight_mode`` selects the unit-weight schedule (``"unit"``), the general
    one (``"general"``), or picks by inspecting the weights (``"auto"``).
    """
    if not (m >= k >= 1):
        raise PreconditionError(f"need m >= k >= 1, got k={k}, m={m}")
    if weights is not None:
        G = G.with_weights(weights)
    if weight_mode == "auto":
        unit = G.is_unit_weight()
    elif weight_mode in ("unit", "general", "random"):
        unit = weight_mode == "unit"
    else:
        raise ValueError(f"unknown weight mode {weight_mode!r}")
    w = G.weights
    adj = G.adj
    if not is_k_connected(G, k):
        raise InfeasibleError(f"graph is not {k}-connected, so no feasible set exists")

    T0 = greedy_m_dominating_set(G, w, m) if terminals is None else frozenset(terminals)
    rest = sorted((v for v in G.nodes if v not in T0), key=lambda v: (w[v], v))
    pad = frozenset(rest[: max(0, k + 1 - len(T0))])
    T = T0 | pad
    levels = []
    ell = _kappa(adj, T)
    while ell < k:
        p = p_schedule(ell, m, unit)
        res = augment_udg_level_detail(G, w, T, p, k, unit)
        levels.append(res)
        T = T | res.nodes
        new = _kappa(adj, T)
        if new <= ell:
            raise CertificationError(f"connectivity stuck at {ell}")
        ell = new
    log.debug("udg: %d levels, |T|=%d", len(levels), len(T))

    phases = [
        ("dominating", T0),
        ("padding", pad),
        ("extra", frozenset().union(*(lv.extra for lv in levels))),
        ("inflation", frozenset().union(*(lv.inflation for lv in levels))),
        ("rooted", frozenset().union(*(lv.rooted for lv in levels))),
    ]
    details = {"terminals": T0, "levels": levels, "unit": unit}
    return build_solution(G, T, k, m, phases, details)
