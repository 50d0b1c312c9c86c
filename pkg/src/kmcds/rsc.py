"""Greedy rooted subset connectivity by one-step augmentations."""

from __future__ import annotations

from .connectivity import _local, adjacency, is_k_Tr_connected, min_weight_k_disjoint_paths
from .exceptions import CertificationError, InfeasibleError, InvalidRootError


def _kappas(adj, members, r, targets, cap):
    sub = {v: adj[v] & members for v in members}
    return {t: _local(sub, r, t, cap) for t in targets}


def augment_rooted(G, weights, T, r, current, ell):
    """Raise rooted connectivity of ``G[T | current]`` from ``ell`` to ``ell + 1``.

    Candidates are single nodes and, for every still-deficient terminal ``t``,
    the cheapest node set giving ``ell + 1`` disjoint ``r``-``t`` paths (an
    augmenting path may need more than one new node). The candidate with the
    least weight per newly satisfied terminal is added until none is deficient.
    """
    adj = adjacency(G)
    T = frozenset(T)
    if r not in T:
        raise InvalidRootError(f"root {r!r} is not a terminal")
    target = ell + 1
    members = set(T) | set(current)
    added = set()
    conn = _kappas(adj, members, r, [t for t in T if t != r], target)
    deficient = {t for t, c in conn.items() if c < target}
    while deficient:
        options = {}
        for v in sorted(adj):
            if v not in members:
                options[frozenset([v])] = None
        for t in sorted(deficient):
            try:
                P, _ = min_weight_k_disjoint_paths(adj, weights, r, t, target, free=members)
            except InfeasibleError:
                raise InfeasibleError(f"terminal {t} cannot reach {target} disjoint paths from {r}") from None
            if P:
                options[P] = None
        best = None
        for P in options:
            trial = _kappas(adj, members | P, r, deficient, target)
            gain = sum(1 for c in trial.values() if c >= target)
            if gain == 0:
                continue
            w = sum(weights[x] for x in P)
            key = (w / gain, -gain, len(P), tuple(sorted(P)))
            if best is None or key < best[0]:
                best = (key, P, trial)
        if best is None:
            raise InfeasibleError("no augmentation raises any deficient terminal")
        _, P, trial = best
        members |= P
        added |= P
        deficient = {t for t, c in trial.items() if c < target}
    return frozenset(added)


def solve_rsc(G, weights, T, r, k):
    """Node set ``S`` outside ``T`` with ``G[T | S]`` k-(T, r)-connected."""
    adj = adjacency(G)
    S = set()
    for ell in range(k):
        S |= augment_rooted(adj, weights, T, r, S, ell)
    members = set(T) | S
    if not is_k_Tr_connected({v: adj[v] & members for v in members}, T, r, k):
        raise CertificationError("rooted augmentation finished with a deficient terminal")
    return frozenset(S)
