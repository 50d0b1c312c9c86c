"""Exhaustive reference solvers for small instances.

Everything here is exponential and capped by hard size limits. The code
avoids the flow routines it is meant to check where that is practical:
separators and deficient bisets are found by subset scans over bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bisets import Biset, minimal_bisets
from .connectivity import adjacency, is_k_T_connected
from .exceptions import InfeasibleError, PreconditionError, SizeLimitError

MAX_EXACT_NODES = 16
MAX_BISET_TERMINALS = 12


@dataclass(frozen=True)
class ExactResult:
    nodes: frozenset
    weight: float

    def __iter__(self):
        return iter((self.nodes, self.weight))


def _weights_of(G, weights):
    if weights is not None:
        return weights
    return getattr(G, "weights", None) or {v: 1 for v in adjacency(G)}


def _masks(adj):
    nodes = sorted(adj)
    index = {v: i for i, v in enumerate(nodes)}
    nbr = [0] * len(nodes)
    for v in nodes:
        for u in adj[v]:
            nbr[index[v]] |= 1 << index[u]
    return nodes, index, nbr


def _mask_connected(nbr, mask):
    if mask == 0:
        return True
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        i = low.bit_length() - 1
        new = nbr[i] & mask & ~seen
        seen |= new
        frontier |= new
    return seen == mask


def _mask_connected_pair(nbr, mask, s, t):
    """Whether bits ``s`` and ``t`` are in one component of the subgraph on ``mask``."""
    seen = 1 << s
    frontier = seen
    target = 1 << t
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        i = low.bit_length() - 1
        new = nbr[i] & mask & ~seen
        if new & target:
            return True
        seen |= new
        frontier |= new
    return False


def _mask_k_connected(nbr, mask, k):
    """k-connectivity by trying every removal of fewer than ``k`` nodes."""
    bits = [i for i in range(len(nbr)) if mask >> i & 1]
    if len(bits) < k + 1:
        return False
    for size in range(k):
        for rem in combinations(bits, size):
            rm = 0
            for i in rem:
                rm |= 1 << i
            if not _mask_connected(nbr, mask & ~rm):
                return False
    return True


def brute_force_local_connectivity(G, s, t):
    """Menger reference: one per direct edge plus the smallest s-t separator of the rest."""
    adj = adjacency(G)
    if len(adj) > MAX_EXACT_NODES:
        raise SizeLimitError(f"brute force separator search is capped at {MAX_EXACT_NODES} nodes")
    if s == t:
        raise PreconditionError("s and t must differ")
    nodes, index, nbr = _masks(adj)
    si, ti = index[s], index[t]
    direct = 0
    if nbr[si] >> ti & 1:
        direct = 1
        nbr = list(nbr)
        nbr[si] &= ~(1 << ti)
        nbr[ti] &= ~(1 << si)
    full = (1 << len(nodes)) - 1
    others = [i for i in range(len(nodes)) if i not in (si, ti)]
    for size in range(len(others) + 1):
        for sep in combinations(others, size):
            rm = 0
            for i in sep:
                rm |= 1 << i
            if not _mask_connected_pair(nbr, full & ~rm, si, ti):
                return size + direct
    # s and t stay connected however many others are removed only through the dropped edge
    return len(others) + direct


def _candidate_order(nodes, w):
    return sorted(nodes, key=lambda v: (-w[v], v))


def exact_kmcds(G, weights=None, k=1, m=1):
    """Minimum-weight k-connected m-dominating set by branch and bound.

    Nodes are decided heaviest first, exclusion before inclusion. A branch
    is cut when its weight reaches the incumbent or an excluded node can no
    longer collect ``m`` neighbors among the nodes still available.
    """
    adj = adjacency(G)
    n = len(adj)
    if n > MAX_EXACT_NODES:
        raise SizeLimitError(f"exact solver is capped at {MAX_EXACT_NODES} nodes, got {n}")
    w = _weights_of(G, weights)
    nodes, index, nbr = _masks(adj)
    order = [index[v] for v in _candidate_order(nodes, w)]
    wt = [w[v] for v in nodes]
    best = [float("inf"), None]

    def excluded_ok(avail, exc):
        x = exc
        while x:
            low = x & -x
            x ^= low
            if bin(nbr[low.bit_length() - 1] & avail).count("1") < m:
                return False
        return True

    def rec(depth, inc, avail, exc, weight):
        # avail: included plus undecided
        if weight >= best[0] - 1e-12:
            return
        if depth == n:
            if _mask_k_connected(nbr, inc, k) and weight < best[0] - 1e-12:
                best[0], best[1] = weight, inc
            return
        i = order[depth]
        bit = 1 << i
        na = avail & ~bit
        ne = exc | bit
        if bin(na).count("1") >= k + 1 and excluded_ok(na, ne):
            rec(depth + 1, inc, na, ne, weight)
        rec(depth + 1, inc | bit, avail, exc, weight + wt[i])

    rec(0, 0, (1 << n) - 1, 0, 0)
    if best[1] is None:
        raise InfeasibleError(f"no {k}-connected {m}-dominating set exists")
    chosen = frozenset(nodes[i] for i in range(n) if best[1] >> i & 1)
    return ExactResult(chosen, best[0])


def naive_kmcds(G, weights=None, k=1, m=1):
    """Full enumeration of all subsets; reference for the branch and bound."""
    adj = adjacency(G)
    n = len(adj)
    if n > MAX_EXACT_NODES:
        raise SizeLimitError(f"naive enumeration is capped at {MAX_EXACT_NODES} nodes")
    w = _weights_of(G, weights)
    nodes, index, nbr = _masks(adj)
    best = None
    for mask in range(1, 1 << n):
        weight = sum(w[nodes[i]] for i in range(n) if mask >> i & 1)
        if best is not None and weight >= best[0] - 1e-12:
            continue
        ok = all(
            bin(nbr[i] & mask).count("1") >= m for i in range(n) if not mask >> i & 1
        )
        if ok and _mask_k_connected(nbr, mask, k):
            best = (weight, mask)
    if best is None:
        raise InfeasibleError(f"no {k}-connected {m}-dominating set exists")
    return ExactResult(frozenset(nodes[i] for i in range(n) if best[1] >> i & 1), best[0])


def _subsets_by_weight(items, w):
    subsets = []
    for size in range(len(items) + 1):
        for c in combinations(items, size):
            subsets.append((sum(w[v] for v in c), size, c))
    subsets.sort()
    return subsets


def exact_subset_k_connected(G, weights=None, T=(), k=1):
    """Cheapest ``S`` outside ``T`` with ``G[T | S]`` k-T-connected."""
    adj = adjacency(G)
    if len(adj) > MAX_EXACT_NODES:
        raise SizeLimitError(f"exact solver is capped at {MAX_EXACT_NODES} nodes")
    w = _weights_of(G, weights)
    T = frozenset(T)
    rest = sorted(v for v in adj if v not in T)
    for weight, _, c in _subsets_by_weight(rest, w):
        members = T | set(c)
        if is_k_T_connected({v: adj[v] & members for v in members}, T, k):
            return ExactResult(frozenset(c), weight)
    raise InfeasibleError(f"terminals cannot be made {k}-T-connected")


def exact_min_weight_paths(G, weights, u, v, k, free=()):
    """Cheapest node set outside ``free`` leaving ``k`` disjoint u-v paths, by subset search."""
    adj = adjacency(G)
    if len(adj) > MAX_EXACT_NODES:
        raise SizeLimitError(f"exact solver is capped at {MAX_EXACT_NODES} nodes")
    base = set(free) | {u, v}
    rest = sorted(x for x in adj if x not in base)
    for weight, _, c in _subsets_by_weight(rest, weights):
        members = base | set(c)
        sub = {x: adj[x] & members for x in members}
        if brute_force_local_connectivity(sub, u, v) >= k:
            return ExactResult(frozenset(c), weight)
    raise InfeasibleError(f"fewer than {k} disjoint paths between {u} and {v}")


def exact_vertex_connectivity(G):
    adj = adjacency(G)
    nodes, _, nbr = _masks(adj)
    n = len(nodes)
    full = (1 << n) - 1
    for size in range(max(0, n - 1)):
        for rem in combinations(range(n), size):
            rm = 0
            for i in rem:
                rm |= 1 << i
            if not _mask_connected(nbr, full & ~rm):
                return size
    return max(0, n - 1)


def enumerate_all_deficient_bisets(G, T, ell=None):
    """Every biset on ``T`` with an ``ell``-node cut, no crossing ``G[T]`` edges and terminals on both sides.

    Found by scanning every cut of size ``ell`` and every inner set of the
    remaining terminals, without reference to components or flows.
    """
    adj = adjacency(G)
    T = sorted(set(T))
    if len(T) > MAX_BISET_TERMINALS:
        raise SizeLimitError(f"biset scan is capped at {MAX_BISET_TERMINALS} terminals")
    sub = {v: adj[v] & set(T) for v in T}
    if ell is None:
        ell = exact_vertex_connectivity(sub)
    nodes, index, nbr = _masks(sub)
    n = len(nodes)
    full = (1 << n) - 1
    out = []
    for cut in combinations(range(n), ell):
        cm = 0
        for i in cut:
            cm |= 1 << i
        rest = [i for i in range(n) if not cm >> i & 1]
        restmask = full & ~cm
        for size in range(1, len(rest)):
            for inner in combinations(rest, size):
                am = 0
                for i in inner:
                    am |= 1 << i
                outside = restmask & ~am
                if any(nbr[i] & outside for i in inner):
                    continue
                out.append(
                    Biset(
                        (nodes[i] for i in range(n) if am >> i & 1),
                        (nodes[i] for i in range(n) if (am | cm) >> i & 1),
                    )
                )
    return out


def minimal_deficient_bisets(G, T, ell=None):
    return minimal_bisets(enumerate_all_deficient_bisets(G, T, ell))


def rooted_bisets(G, T, r, k):
    """``(A, l)`` for every biset on ``T`` avoiding ``r`` with ``l = |cut| + d_G[T](A) <= k - 1``."""
    adj = adjacency(G)
    T = sorted(set(T))
    if len(T) > MAX_BISET_TERMINALS:
        raise SizeLimitError(f"biset scan is capped at {MAX_BISET_TERMINALS} terminals")
    if r not in T:
        raise PreconditionError("root must be a terminal")
    sub = {v: adj[v] & set(T) for v in T}
    nodes, index, nbr = _masks(sub)
    n = len(nodes)
    ri = index[r]
    others = [i for i in range(n) if i != ri]
    out = []
    for csize in range(k):
        for cut in combinations(others, csize):
            cm = 0
            for i in cut:
                cm |= 1 << i
            rest = [i for i in others if not cm >> i & 1]
            for size in range(1, len(rest) + 1):
                for inner in combinations(rest, size):
                    am = 0
                    for i in inner:
                        am |= 1 << i
                    outside = ((1 << n) - 1) & ~(am | cm)
                    d = sum(bin(nbr[i] & outside).count("1") for i in inner)
                    level = csize + d
                    if level <= k - 1:
                        b = Biset(
                            (nodes[i] for i in inner),
                            (nodes[i] for i in range(n) if (am | cm) >> i & 1),
                        )
                        out.append((b, level))
    return out
