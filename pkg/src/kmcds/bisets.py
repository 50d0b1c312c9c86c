"""Bisets, deficiency tests and enumeration of minimal deficient bisets.

For a terminal set ``T`` whose induced graph is exactly ``l``-connected, the
deficient family consists of bisets ``(A, A+)`` with ``A+ \\ A`` a minimum node
cut of ``G[T]`` and ``A`` a union of some but not all components left by that
cut. Its inclusion-minimal members (cores) are single components ``K`` with
outer set ``K | cut``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .connectivity import _UnitFlow, adjacency, vertex_connectivity
from .exceptions import InvalidCandidateError, PreconditionError

#: cut enumeration switches from subset scanning to pairwise flows above this many candidate cuts
SUBSET_SCAN_LIMIT = 4000


@dataclass(frozen=True, order=True)
class Biset:
    inner: frozenset
    outer: frozenset

    def __init__(self, inner, outer):
        inner, outer = frozenset(inner), frozenset(outer)
        if not inner <= outer:
            raise ValueError("biset inner set must be contained in its outer set")
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "outer", outer)

    @property
    def boundary(self):
        return self.outer - self.inner

    def contains(self, other: Biset) -> bool:
        """True if ``self`` is contained in ``other`` (both parts are subsets)."""
        return self.inner <= other.inner and self.outer <= other.outer

    def key(self):
        return (len(self.outer), len(self.inner), tuple(sorted(self.inner)), tuple(sorted(self.outer)))

    def __repr__(self):
        return f"Biset({sorted(self.inner)}, {sorted(self.outer)})"


@dataclass(frozen=True)
class DeficientCore:
    biset: Biset
    components: tuple

    @property
    def inner(self):
        return self.biset.inner

    @property
    def outer(self):
        return self.biset.outer

    @property
    def boundary(self):
        return self.biset.boundary


def boundary(b: Biset) -> frozenset:
    return b.outer - b.inner


def neighborhood(G, A) -> frozenset:
    """Nodes outside ``A`` with a neighbor in ``A``."""
    adj = adjacency(G)
    out = set()
    for a in A:
        out |= adj[a]
    return frozenset(out - set(A))


def covers(v, b: Biset, G, T) -> bool:
    """Whether non-terminal ``v`` is a neighbor of the inner set of ``b``."""
    if v in T:
        raise InvalidCandidateError(f"candidate {v} is a terminal")
    adj = adjacency(G)
    return v not in b.inner and not adj[v].isdisjoint(b.inner)


def crossing_edges(G, T, b: Biset) -> int:
    """Number of edges of ``G[T]`` with one end in ``A`` and the other outside ``A+``."""
    adj = adjacency(G)
    T = set(T)
    A = b.inner & T
    return sum(1 for a in A for u in adj[a] if u in T and u not in b.outer)


def is_deficient(G, T, b: Biset, k, root=None) -> bool:
    """``|cut| + d_G[T](b) <= k - 1`` with a terminal inside (and the root outside)."""
    T = set(T)
    if not (b.inner & T):
        return False
    if root is not None and root in b.outer:
        return False
    return len(b.boundary) + crossing_edges(G, T, b) <= k - 1


def in_deficient_family(G, T, b: Biset, ell) -> bool:
    """Membership in the family of ``l``-cut bisets with no crossing ``G[T]`` edge."""
    T = set(T)
    return (
        bool(b.inner & T)
        and bool(T - b.outer)
        and len(b.boundary) == ell
        and crossing_edges(G, T, b) == 0
    )


def _components(adj, nodes):
    nodes = set(nodes)
    comps = []
    while nodes:
        root = min(nodes)
        seen = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in nodes and y not in seen:
                    seen.add(y)
                    stack.append(y)
        nodes -= seen
        comps.append(frozenset(seen))
    return comps


def _component_of(adj, v, removed):
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen and y not in removed:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def minimal_bisets(bisets):
    """Inclusion-minimal members, deduplicated, in deterministic order."""
    uniq = sorted(set(bisets), key=Biset.key)
    kept = []
    for b in uniq:
        if not any(c.contains(b) for c in kept):
            kept.append(b)
    # a later biset never contains an earlier one of smaller or equal size, so one pass suffices
    return kept


def _cut_candidates_by_subsets(adj, nodes, ell):
    out = []
    for C in combinations(nodes, ell):
        C = frozenset(C)
        comps = _components(adj, set(nodes) - C)
        if len(comps) > 1:
            out.extend(Biset(K, K | C) for K in comps)
    return out


def _cut_candidates_by_flows(adj, nodes, ell):
    out = []
    for i, s in enumerate(nodes):
        nb = adj[s]
        for t in nodes[i + 1:]:
            if t in nb:
                continue
            f = _UnitFlow(adj, s, t)
            if f.run(ell + 1) != ell:
                continue
            for side, C in ((s, f.source_cut()), (t, f.sink_cut())):
                K = _component_of(adj, side, C)
                out.append(Biset(K, K | C))
    return out


def enumerate_cores(G, T, ell=None, method="auto"):
    """All cores of the deficient family of ``T``.

    Parameters
    ----------
    G : graph or adjacency mapping
    T : iterable of terminals
    ell : int, optional
        Expected connectivity of ``G[T]``. It is always recomputed; a mismatch
        raises :class:`PreconditionError`.
    method : {"auto", "subsets", "flows"}
        How minimum cuts are harvested. Both methods are complete: every core
        is the component of ``s`` behind the minimum ``s``-``t`` cut closest
        to ``s`` for some non-adjacent terminal pair.

    Returns
    -------
    list of DeficientCore
    """
    adj = adjacency(G)
    T = frozenset(T)
    sub = {v: adj[v] & T for v in T}
    true_ell = vertex_connectivity(sub)
    if ell is not None and ell != true_ell:
        raise PreconditionError(f"G[T] has connectivity {true_ell}, not {ell}")
    ell = true_ell
    nodes = sorted(T)
    if ell >= len(nodes) - 1:
        return []
    if ell == 0:
        cands = [Biset(K, K) for K in _components(sub, nodes)]
    else:
        if method == "auto":
            method = "subsets" if comb(len(nodes), ell) <= SUBSET_SCAN_LIMIT else "flows"
        if method == "subsets":
            cands = _cut_candidates_by_subsets(sub, nodes, ell)
        elif method == "flows":
            cands = _cut_candidates_by_flows(sub, nodes, ell)
        else:
            raise ValueError(f"unknown method {method!r}")
    return [DeficientCore(b, (b.inner,)) for b in minimal_bisets(cands)]
