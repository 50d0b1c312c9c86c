"""Terminal inflation for general graphs.

Each round builds a centered instance (every non-terminal hangs directly off
the root and loses its edges to other non-terminals), solves rooted
connectivity there, and moves the chosen nodes into the terminal set.
"""

from __future__ import annotations

import logging

from .connectivity import _local, adjacency, is_k_Tr_connected
from .exceptions import CertificationError, InfeasibleError, InvalidRootError
from .graph import NodeWeightedGraph

log = logging.getLogger(__name__)


def default_rounds(k, m):
    """Round count that makes every deficient biset hold at least ``k`` terminals."""
    return max(2 * k - m - 1, 1)


def pipeline_rounds(k, m):
    return max(2 * k - m - 1, 0)


def _centered_adj(adj, T, r):
    T = set(T)
    if r not in T:
        raise InvalidRootError(f"root {r!r} is not a terminal")
    outside = {v for v in adj if v not in T}
    cut = outside | {r}
    new = {}
    for v, nb in adj.items():
        if v in cut:
            nb = nb - cut
        new[v] = set(nb)
    for v in outside:
        new[v].add(r)
        new[r].add(v)
    return {v: frozenset(nb) for v, nb in new.items()}


def build_centered_instance(G, T, r):
    """Drop edges inside ``(V \\ T) | {r}`` and join ``r`` to every non-terminal."""
    adj = _centered_adj(adjacency(G), T, r)
    if isinstance(G, NodeWeightedGraph):
        return NodeWeightedGraph(G.nodes, weights=G.weights, _adj=adj)
    return adj


def solve_centered_rsc(Gc, weights, T, r, k):
    """Greedy on the rooted deficiency potential of a centered instance.

    The potential is ``sum_t max(0, k - kappa(r, t))`` over terminals in
    ``G'[T | S]``. Each step adds the candidate with the smallest weight per
    unit of potential removed.

    Returns
    -------
    frozenset
        ``S`` inside ``V \\ T`` with ``G'[T | S]`` k-(T, r)-connected.
    """
    adj = adjacency(Gc)
    T = frozenset(T)
    if r not in T:
        raise InvalidRootError(f"root {r!r} is not a terminal")
    chosen = set(T)
    sub = {v: adj[v] & chosen for v in chosen}
    conn = {t: _local(sub, r, t, k) for t in T if t != r}
    deficient = {t for t, c in conn.items() if c < k}
    cands = sorted(v for v in adj if v not in T)
    S = set()
    while deficient:
        best = None
        for v in cands:
            if v in S:
                continue
            members = chosen | {v}
            trial = {x: adj[x] & members for x in members}
            gain = 0
            for t in deficient:
                gain += _local(trial, r, t, k) - conn[t]
            if gain <= 0:
                continue
            key = (weights[v] / gain, -gain, v)
            if best is None or key < best[0]:
                best = (key, v)
        if best is None:
            raise InfeasibleError("centered instance cannot be made k-(T,r)-connected")
        v = best[1]
        S.add(v)
        chosen.add(v)
        sub = {x: adj[x] & chosen for x in chosen}
        for t in list(deficient):
            conn[t] = _local(sub, r, t, k)
            if conn[t] >= k:
                deficient.discard(t)
    return frozenset(S)


def inflate_general_rounds(G, weights, T0, r, k, p):
    """Run ``p`` inflation rounds; return the list of per-round additions."""
    adj = adjacency(G)
    T = frozenset(T0)
    rounds = []
    for i in range(p):
        cadj = _centered_adj(adj, T, r)
        S = solve_centered_rsc(cadj, weights, T, r, k)
        members = T | S
        if not is_k_Tr_connected({v: cadj[v] & members for v in members}, T, r, k):
            raise CertificationError(f"inflation round {i + 1} left a deficient terminal")
        log.debug("inflation round %d added %d nodes", i + 1, len(S))
        rounds.append(S)
        if not S:
            break
        T = members
    return rounds


def inflate_general(G, weights, T0, r, k, p):
    """Terminal set after ``p`` inflation rounds starting from ``T0``."""
    T = set(T0)
    for S in inflate_general_rounds(G, weights, T0, r, k, p):
        T |= S
    return frozenset(T)
