"""Menger-style connectivity checks and min-weight disjoint paths.

Every node ``v`` is split into ``v_in -> v_out`` with capacity one; each
undirected edge becomes two arcs ``u_out -> v_in`` of unbounded capacity, so
minimum cuts consist of node arcs only. Adjacent pairs are handled by
dropping the direct edge and adding one to the result.

The functions accept a :class:`~kmcds.graph.NodeWeightedGraph` or a plain
adjacency mapping ``{node: set_of_neighbors}``; the latter is what the
solvers pass around internally.
"""

from __future__ import annotations

import heapq
from collections import deque

from .exceptions import InfeasibleError, InvalidNodeError, InvalidPairError, InvalidRootError
from .graph import NodeWeightedGraph

_IN, _OUT = 0, 1


def adjacency(G):
    return G.adj if isinstance(G, NodeWeightedGraph) else G


class _UnitFlow:
    """Unit node-capacity s-t flow on the split network of ``adj``."""

    __slots__ = ("adj", "s", "t", "used", "into", "value")

    def __init__(self, adj, s, t):
        self.adj = adj
        self.s = s
        self.t = t
        self.used = set()  # internal nodes whose node arc carries flow
        self.into = {}  # v -> set of u with flow on u_out -> v_in
        self.value = 0

    def _is_direct(self, a, b):
        return (a == self.s and b == self.t) or (a == self.t and b == self.s)

    def augment(self):
        adj, s, t, used, into = self.adj, self.s, self.t, self.used, self.into
        start = (s, _OUT)
        pred = {start: None}
        queue = deque([start])
        goal = (t, _IN)
        found = False
        while queue and not found:
            x = queue.popleft()
            v, side = x
            if side == _OUT:
                for u in adj[v]:
                    if v == s and u == t:
                        continue
                    y = (u, _IN)
                    if y not in pred:
                        pred[y] = x
                        if u == t:
                            found = True
                            break
                        queue.append(y)
                if not found and v in used:
                    y = (v, _IN)
                    if y not in pred:
                        pred[y] = x
                        queue.append(y)
            else:
                if v not in used and v != s:
                    y = (v, _OUT)
                    if y not in pred:
                        pred[y] = x
                        queue.append(y)
                for u in into.get(v, ()):
                    y = (u, _OUT)
                    if y not in pred:
                        pred[y] = x
                        queue.append(y)
        if not found:
            return False
        y = goal
        while pred[y] is not None:
            x = pred[y]
            (a, sa), b = x, y[0]
            if a == b:
                if sa == _IN:  # forward node arc
                    used.add(a)
                else:  # cancel node flow
                    used.discard(a)
            elif sa == _OUT:  # forward edge arc a_out -> b_in
                into.setdefault(b, set()).add(a)
            else:  # cancel flow on b_out -> a_in
                into[a].discard(b)
            y = x
        self.value += 1
        return True

    def run(self, cap=None):
        while cap is None or self.value < cap:
            if not self.augment():
                break
        return self.value

    def source_cut(self):
        """Node cut of the minimum cut closest to ``s`` (call after a max flow)."""
        adj, s, used, into = self.adj, self.s, self.used, self.into
        start = (s, _OUT)
        seen = {start}
        queue = deque([start])
        while queue:
            v, side = queue.popleft()
            if side == _OUT:
                nxt = [(u, _IN) for u in adj[v] if not (v == s and u == self.t)]
                if v in used:
                    nxt.append((v, _IN))
            else:
                nxt = [(u, _OUT) for u in into.get(v, ())]
                if v not in used and v != s:
                    nxt.append((v, _OUT))
            for y in nxt:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(v for v, side in seen if side == _IN and (v, _OUT) not in seen and v != s)

    def sink_cut(self):
        """Node cut of the minimum cut closest to ``t`` (call after a max flow)."""
        adj, s, t, used = self.adj, self.s, self.t, self.used
        outof = {}
        for v, us in self.into.items():
            for u in us:
                outof.setdefault(u, set()).add(v)
        start = (t, _IN)
        seen = {start}
        queue = deque([start])
        while queue:
            v, side = queue.popleft()
            if side == _IN:
                # residual arcs entering v_in
                nxt = [(u, _OUT) for u in adj[v] if not (u == s and v == t)]
                if v in used:
                    nxt.append((v, _OUT))
            else:
                nxt = [(u, _IN) for u in outof.get(v, ())]
                if v not in used and v != t:
                    nxt.append((v, _IN))
            for y in nxt:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(v for v, side in seen if side == _OUT and (v, _IN) not in seen and v != t)


def _check_pair(adj, s, t):
    if s not in adj or t not in adj:
        raise InvalidNodeError(f"nodes {s!r}, {t!r} must both be in the graph")
    if s == t:
        raise InvalidPairError(f"local connectivity of node {s} with itself is undefined")


def _local(adj, s, t, cap=None):
    """Number of internally disjoint s-t paths, stopping once ``cap`` is reached."""
    direct = 1 if t in adj[s] else 0
    if cap is not None:
        if cap <= direct:
            return direct
        cap -= direct
    return _UnitFlow(adj, s, t).run(cap) + direct


def local_connectivity(G, s, t, cap=None):
    """Maximum number of internally node-disjoint ``s``-``t`` paths.

    A direct edge counts as one path. With ``cap`` the search stops early and
    the result is ``min(cap, true value)``.
    """
    adj = adjacency(G)
    _check_pair(adj, s, t)
    cap = len(adj) - 1 if cap is None else min(cap, len(adj) - 1)
    return _local(adj, s, t, cap)


def vertex_connectivity(G):
    """Vertex connectivity; ``n - 1`` for complete graphs, 0 for ``n <= 1``."""
    adj = adjacency(G)
    nodes = sorted(adj)
    n = len(nodes)
    if n <= 1:
        return 0
    best = n - 1
    # some node among the first best+1 lies outside any minimum cut
    for i, v in enumerate(nodes):
        if i > best:
            break
        nb = adj[v]
        for u in nodes:
            if u == v or u in nb:
                continue
            best = min(best, _UnitFlow(adj, v, u).run(best))
            if best == 0:
                return 0
    return best


def is_k_connected(G, k):
    """True iff ``G`` has at least ``k + 1`` nodes and no node cut smaller than ``k``."""
    adj = adjacency(G)
    nodes = sorted(adj)
    n = len(nodes)
    if n == 0 or n < k + 1:
        return False
    if k <= 0:
        return True
    for v in nodes[:k]:
        nb = adj[v]
        for u in nodes:
            if u != v and u not in nb and _UnitFlow(adj, v, u).run(k) < k:
                return False
    return True


def is_k_Tr_connected(G, T, r, k):
    """True iff there are ``k`` internally disjoint ``r``-``t`` paths for every ``t`` in ``T``."""
    adj = adjacency(G)
    T = set(T)
    if r not in T:
        raise InvalidRootError(f"root {r!r} is not a terminal")
    missing = [t for t in T if t not in adj]
    if missing:
        raise InvalidNodeError(f"terminal {missing[0]!r} is not in the graph")
    return all(_local(adj, r, t, k) >= k for t in T if t != r)


def is_k_T_connected(G, T, k):
    """True iff every pair of terminals has ``k`` internally disjoint paths."""
    adj = adjacency(G)
    T = sorted(set(T))
    missing = [t for t in T if t not in adj]
    if missing:
        raise InvalidNodeError(f"terminal {missing[0]!r} is not in the graph")
    for i, s in enumerate(T):
        for t in T[i + 1:]:
            if _local(adj, s, t, k) < k:
                return False
    return True


def rooted_connectivities(adj, r, T, k):
    """``{t: min(k, kappa(r, t))}`` for every terminal ``t != r``."""
    return {t: _local(adj, r, t, k) for t in T if t != r}


def min_weight_k_disjoint_paths(G, weights, u, v, k, free=()):
    """Cheapest node set ``P`` outside ``free`` giving ``k`` disjoint ``u``-``v`` paths.

    Internal nodes in ``free`` (and the endpoints) cost nothing; every other
    node costs its weight. Solved exactly as a min-cost flow of value ``k`` on
    the split network, by successive shortest paths with node potentials.

    Returns
    -------
    (frozenset, float)
        The node set and its weight.

    Raises
    ------
    InfeasibleError
        If ``G`` itself has fewer than ``k`` internally disjoint paths.
    """
    adj = adjacency(G)
    _check_pair(adj, u, v)
    free = set(free)
    nodes = sorted(adj)
    index = {x: i for i, x in enumerate(nodes)}
    N = 2 * len(nodes)
    head, cap, cost, nxt = [], [], [], []
    first = [-1] * N

    def add_arc(a, b, c, w):
        for x, y, cc, ww in ((a, b, c, w), (b, a, 0, -w)):
            head.append(y)
            cap.append(cc)
            cost.append(ww)
            nxt.append(first[x])
            first[x] = len(head) - 1

    node_arc = {}
    for x in nodes:
        i = index[x]
        if x == u or x == v:
            add_arc(2 * i, 2 * i + 1, k, 0)
        else:
            node_arc[x] = len(head)
            add_arc(2 * i, 2 * i + 1, 1, 0 if x in free else weights[x])
    for x in nodes:
        for y in adj[x]:
            # the direct edge carries at most one path
            c = 1 if (x == u and y == v) else k
            if (x == v and y == u):
                continue
            add_arc(2 * index[x] + 1, 2 * index[y], c, 0)

    src, dst = 2 * index[u] + 1, 2 * index[v]
    pot = [0.0] * N
    flow = 0
    total = 0.0
    while flow < k:
        dist = [float("inf")] * N
        parc = [-1] * N
        dist[src] = 0.0
        heap = [(0.0, src)]
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            a = first[x]
            while a != -1:
                if cap[a] > 0:
                    y = head[a]
                    nd = d + cost[a] + pot[x] - pot[y]
                    if nd < dist[y] - 1e-12:
                        dist[y] = nd
                        parc[y] = a
                        heapq.heappush(heap, (nd, y))
                a = nxt[a]
        if dist[dst] == float("inf"):
            raise InfeasibleError(f"fewer than {k} internally disjoint paths between {u} and {v}")
        for i in range(N):
            if dist[i] < float("inf"):
                pot[i] += dist[i]
        x = dst
        while x != src:
            a = parc[x]
            cap[a] -= 1
            cap[a ^ 1] += 1
            total += cost[a]
            x = head[a ^ 1]
        flow += 1
    P = frozenset(x for x, a in node_arc.items() if cap[a] == 0 and x not in free)
    return P, sum(weights[x] for x in P)
