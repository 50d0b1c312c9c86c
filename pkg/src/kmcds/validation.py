"""Input coercion so the solvers accept common graph representations."""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from .exceptions import PreconditionError
from .graph import Instance, NodeWeightedGraph


def check_km(k, m):
    """Validate and return ``(k, m)``; ``m=None`` means ``m = k``."""
    if m is None:
        m = k
    for name, val in (("k", k), ("m", m)):
        if isinstance(val, bool) or not isinstance(val, (int, np.integer)):
            raise TypeError(f"{name} must be an integer, got {val!r}")
    k, m = int(k), int(m)
    if not (m >= k >= 1):
        raise PreconditionError(f"need m >= k >= 1, got k={k}, m={m}")
    return k, m


def _from_matrix(A, sample_weight):
    if hasattr(A, "toarray"):
        A = A.toarray()
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {A.shape}")
    if not np.array_equal(A != 0, (A != 0).T):
        raise ValueError("adjacency matrix must be symmetric")
    if np.any(np.diag(A) != 0):
        raise ValueError("adjacency matrix must have a zero diagonal")
    n = A.shape[0]
    iu, ju = np.nonzero(np.triu(A != 0, 1))
    return NodeWeightedGraph(range(n), zip(iu.tolist(), ju.tolist()), sample_weight), list(range(n))


def _from_networkx(g, sample_weight):
    if g.is_directed() or g.is_multigraph():
        raise ValueError("only simple undirected graphs are supported")
    labels = list(g.nodes)
    index = {v: i for i, v in enumerate(labels)}
    if sample_weight is None:
        sample_weight = [g.nodes[v].get("weight", 1) for v in labels]
    pos = [g.nodes[v].get("pos") for v in labels]
    coords = pos if all(p is not None for p in pos) else None
    edges = [(index[u], index[v]) for u, v in g.edges if u != v]
    if len(edges) != g.number_of_edges():
        raise ValueError("self-loops are not allowed")
    return NodeWeightedGraph(range(len(labels)), edges, sample_weight, coords), labels


def check_graph(X, sample_weight=None):
    """Coerce ``X`` to ``(NodeWeightedGraph, labels)``.

    Accepts a :class:`NodeWeightedGraph`, an :class:`Instance`, a networkx
    graph (``weight`` and ``pos`` node attributes are honoured), a square
    adjacency matrix (dense or scipy sparse), or a mapping of neighbor sets.
    ``labels[i]`` is the caller's label for internal node ``i``.
    """
    if isinstance(X, Instance):
        X = X.graph
    if isinstance(X, NodeWeightedGraph):
        G = X if sample_weight is None else X.with_weights(_as_weight_map(X.nodes, sample_weight))
        return G, list(G.nodes)
    if hasattr(X, "is_directed") and hasattr(X, "nodes"):
        return _from_networkx(X, None if sample_weight is None else list(sample_weight))
    if isinstance(X, Mapping):
        labels = sorted(X)
        index = {v: i for i, v in enumerate(labels)}
        edges = {(min(index[u], index[v]), max(index[u], index[v])) for u in X for v in X[u]}
        if any(u == v for u, v in edges):
            raise ValueError("self-loops are not allowed")
        for u in X:
            for v in X[u]:
                if u not in X.get(v, ()):
                    raise ValueError(f"adjacency is not symmetric at ({u}, {v})")
        return NodeWeightedGraph(range(len(labels)), sorted(edges), sample_weight), labels
    return _from_matrix(X, None if sample_weight is None else list(sample_weight))


def _as_weight_map(nodes, sample_weight):
    if isinstance(sample_weight, Mapping):
        return sample_weight
    sample_weight = list(sample_weight)
    if len(sample_weight) != len(nodes):
        raise ValueError(f"sample_weight has {len(sample_weight)} entries for {len(nodes)} nodes")
    return dict(zip(nodes, sample_weight))
