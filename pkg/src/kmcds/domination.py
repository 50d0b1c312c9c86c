"""Greedy weighted m-dominating sets."""

from __future__ import annotations

from .connectivity import adjacency
from .graph import NodeWeightedGraph


def is_m_dominating(G, T, m) -> bool:
    adj = adjacency(G)
    T = set(T)
    return all(len(adj[v] & T) >= m for v in adj if v not in T)


def domination_level(G, S) -> int:
    """Largest ``m`` for which ``S`` is m-dominating; ``len(G)`` when ``S`` is everything."""
    adj = adjacency(G)
    S = set(S)
    outside = [len(adj[v] & S) for v in adj if v not in S]
    return min(outside) if outside else len(adj)


def greedy_m_dominating_set(G, weights=None, m=1) -> frozenset:
    """Weighted greedy for m-domination viewed as a multicover.

    Every node outside ``T`` has a residual demand ``max(0, m - |N(v) & T|)``.
    Each step adds the node with the smallest weight per unit of total demand
    removed (its own demand plus one per demanding neighbor); ties go to the
    lower id. Nodes of degree below ``m`` are taken up front since nothing
    else can dominate them.
    """
    adj = adjacency(G)
    if weights is None:
        weights = G.weights if isinstance(G, NodeWeightedGraph) else {v: 1 for v in adj}
    T = {v for v in adj if len(adj[v]) < m}
    demand = {v: max(0, m - len(adj[v] & T)) for v in adj if v not in T}
    demand = {v: d for v, d in demand.items() if d > 0}
    while demand:
        best = None
        for v in sorted(adj):
            if v in T:
                continue
            gain = demand.get(v, 0) + sum(1 for u in adj[v] if u in demand)
            if gain == 0:
                continue
            score = weights[v] / gain
            if best is None or score < best[0]:
                best = (score, v)
        v = best[1]
        T.add(v)
        demand.pop(v, None)
        for u in adj[v]:
            if u in demand:
                demand[u] -= 1
                if demand[u] == 0:
                    del demand[u]
    return frozenset(T)
