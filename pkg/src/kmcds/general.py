"""End-to-end solver for general node-weighted graphs.

Pipeline: m-dominating terminals, a virtual root joined to ``k`` terminals,
inflation, rooted k-connectivity, a minimal forest of virtual edges on the
root's neighbors, and finally cheapest disjoint paths for each forest edge.
"""

from __future__ import annotations

import logging
from itertools import combinations

from .connectivity import adjacency, is_k_connected, min_weight_k_disjoint_paths
from .domination import greedy_m_dominating_set, is_m_dominating
from .exceptions import InfeasibleError, PreconditionError
from .graph import NodeWeightedGraph
from .inflation import inflate_general_rounds, pipeline_rounds
from .rsc import solve_rsc
from .solution import build_solution

log = logging.getLogger(__name__)


def attach_root(G: NodeWeightedGraph, T, k):
    """Add a zero-weight root joined to the ``k`` smallest terminals.

    Returns ``(G_r, r, R)``; the caller adds ``r`` to its terminal set.
    """
    T = sorted(set(T))
    if len(T) < k:
        raise InfeasibleError(f"need at least k={k} terminals, got {len(T)}")
    r = max(G.nodes) + 1 if len(G) else 0
    R = frozenset(T[:k])
    return G.add_node(r, R, weight=0), r, R


def _with_edges(adj, extra):
    new = {v: set(nb) for v, nb in adj.items()}
    for u, v in extra:
        new[u].add(v)
        new[v].add(u)
    return new


def minimal_forest_augmentation(H, R, k):
    """Inclusion-minimal set of new edges on ``R`` making ``H`` k-connected.

    Starts from every missing edge of the clique on ``R`` and drops edges in
    lexicographic order while k-connectivity survives.
    """
    adj = adjacency(H)
    R = sorted(R)
    J = [(u, v) for u, v in combinations(R, 2) if v not in adj[u]]
    if not is_k_connected(_with_edges(adj, J), k):
        raise InfeasibleError("H plus a clique on R is not k-connected")
    changed = True
    while changed:
        changed = False
        for e in list(J):
            rest = [f for f in J if f != e]
            if is_k_connected(_with_edges(adj, rest), k):
                J = rest
                changed = True
    return J


def is_forest(edges):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return True


def _pad_terminals(G, w, T, k):
    """Cheapest extra nodes so that ``|T| >= k + 1``."""
    extra = []
    rest = sorted((v for v in G.nodes if v not in T), key=lambda v: (w[v], v))
    while len(T) + len(extra) < k + 1:
        extra.append(rest[len(extra)])
    return frozenset(extra)


def solve_general(G: NodeWeightedGraph, k, m, terminals=None, weights=None):
    """Approximate minimum-weight k-connected m-dominating set of ``G``.

    Parameters
    ----------
    G : NodeWeightedGraph
    k, m : int
        Requires ``m >= k >= 1``.
    terminals : iterable, optional
        An m-dominating set to start from; computed greedily when omitted.
    weights : mapping, optional
        Overrides ``G.weights``.

    Returns
    -------
    Solution
    """
    if not (m >= k >= 1):
        raise PreconditionError(f"need m >= k >= 1, got k={k}, m={m}")
    if weights is not None:
        G = G.with_weights(weights)
    w = G.weights
    if not is_k_connected(G, k):
        raise InfeasibleError(f"graph is not {k}-connected, so no feasible set exists")

    if terminals is None:
        T0 = greedy_m_dominating_set(G, w, m)
    else:
        T0 = frozenset(terminals)
        G.check_nodes(T0)
        if not is_m_dominating(G, T0, m):
            raise PreconditionError(f"given terminals are not {m}-dominating")
    pad = _pad_terminals(G, w, T0, k)
    T = T0 | pad

    Gr, r, R = attach_root(G, T, k)
    w0 = {v: (0 if v in T or v == r else w[v]) for v in Gr.nodes}
    p = pipeline_rounds(k, m)
    rounds = inflate_general_rounds(Gr, w0, T | {r}, r, k, p)
    T1 = set(T) | {r}
    for S_i in rounds:
        T1 |= S_i
    S = solve_rsc(Gr, w0, T1, r, k)

    base = (T1 | S) - {r}
    H = G.induced(base)
    J = minimal_forest_augmentation(H, R, k)
    P = set()
    for u, v in J:
        P_uv, _ = min_weight_k_disjoint_paths(G, w, u, v, k, free=base)
        P |= P_uv
    answer = base | P
    log.debug("general: |T0|=%d rounds=%d |S|=%d |J|=%d |P|=%d", len(T0), len(rounds), len(S), len(J), len(P))

    inflation = set().union(*rounds) if rounds else set()
    phases = [("dominating", T0), ("padding", pad), ("inflation", inflation), ("rsc", S), ("paths", P)]
    details = {"terminals": T0, "roots": R, "forest": J, "rounds": p, "paths": frozenset(P)}
    return build_solution(G, answer, k, m, phases, details)
