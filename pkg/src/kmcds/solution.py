from __future__ import annotations

from dataclasses import dataclass, field

from .connectivity import adjacency, vertex_connectivity
from .domination import domination_level
from .exceptions import CertificationError
from .graph import emit_solution


@dataclass(frozen=True)
class Solution:
    """A certified k-connected m-dominating set.

    ``weight`` is the original weight of every selected node, terminals
    included. ``trace`` splits it by the phase that first selected each node.
    """

    nodes: frozenset
    weight: float
    k_achieved: int
    m_achieved: int
    trace: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict, compare=False)

    def to_bytes(self) -> bytes:
        return emit_solution(self.nodes, self.weight, self.k_achieved, self.m_achieved)


def certify(G, nodes, k, m):
    """Return ``(kappa, m_level)`` of ``nodes`` or raise :class:`CertificationError`."""
    adj = adjacency(G)
    nodes = frozenset(nodes)
    sub = {v: adj[v] & nodes for v in nodes}
    kappa = vertex_connectivity(sub)
    level = domination_level(adj, nodes)
    if len(nodes) < k + 1 or kappa < k:
        raise CertificationError(f"selected set is only {kappa}-connected, need {k}")
    if level < m:
        raise CertificationError(f"selected set is only {level}-dominating, need {m}")
    return kappa, level


def build_solution(G, nodes, k, m, phases, details=None):
    """Certify ``nodes`` and attribute their weight to the phases in ``phases``.

    ``phases`` is an ordered list of ``(name, node_set)``; a node counts for
    the first phase that contains it.
    """
    kappa, level = certify(G, nodes, k, m)
    w = G.weights
    seen = set()
    trace = {}
    for name, part in phases:
        fresh = set(part) - seen
        trace[name] = sum(w[v] for v in fresh)
        seen |= fresh
    if seen != set(nodes):
        raise CertificationError("phase trace does not account for every selected node")
    return Solution(frozenset(nodes), sum(w[v] for v in nodes), kappa, level, trace, details or {})
