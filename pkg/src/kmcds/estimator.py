"""scikit-learn style front end.

>>> import numpy as np
>>> from kmcds import KConnectedDominatingSet
>>> A = np.ones((4, 4)) - np.eye(4)
>>> est = KConnectedDominatingSet(k=2, m=2).fit(A)
>>> est.weight_
3
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .general import solve_general
from .graph import NodeWeightedGraph
from .oracle import exact_kmcds
from .solution import build_solution
from .udg import solve_udg
from .validation import check_graph, check_km

_METHODS = ("auto", "general", "udg", "exact")


class KConnectedDominatingSet(TransformerMixin, BaseEstimator):
    """Select a light node set that is k-connected and m-dominating.

    Parameters
    ----------
    k : int, default=1
        Required vertex connectivity of the selected subgraph.
    m : int or None, default=None
        Required domination multiplicity; defaults to ``k``. Must be ``>= k``.
    method : {"auto", "general", "udg", "exact"}, default="auto"
        ``"auto"`` uses the unit-disc solver when every node has coordinates.
        ``"exact"`` runs the branch-and-bound reference (16 nodes at most).
    weight_mode : {"auto", "unit", "general"}, default="auto"
        Round schedule of the unit-disc solver.

    Attributes
    ----------
    solution_ : Solution
    support_ : ndarray
        Labels of the selected nodes, in input order.
    weight_ : float
    k_achieved_, m_achieved_ : int
    n_nodes_in_ : int
    """

    def __init__(self, k=1, m=None, method="auto", weight_mode="auto"):
        self.k = k
        self.m = m
        self.method = method
        self.weight_mode = weight_mode

    def fit(self, X, y=None, sample_weight=None, terminals=None):
        """Solve on graph ``X``; ``sample_weight`` gives node weights.

        ``terminals`` (internal ids) seeds the solver with an m-dominating set.
        """
        k, m = check_km(self.k, self.m)
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {self.method!r}")
        G, labels = check_graph(X, sample_weight)
        method = self.method
        if method == "auto":
            has_coords = G.coords is not None and len(G.coords) == len(G)
            method = "udg" if has_coords else "general"
        if method == "general":
            sol = solve_general(G, k, m, terminals=terminals)
        elif method == "udg":
            sol = solve_udg(G, k, m, weight_mode=self.weight_mode, terminals=terminals)
        else:
            res = exact_kmcds(G, None, k, m)
            sol = build_solution(G, res.nodes, k, m, [("exact", res.nodes)])
        self.solution_ = sol
        self.graph_ = G
        self.labels_ = labels
        self._mask = np.array([v in sol.nodes for v in G.nodes], dtype=bool)
        self.support_ = np.array([lab for lab, keep in zip(labels, self._mask) if keep], dtype=object)
        self.weight_ = sol.weight
        self.k_achieved_ = sol.k_achieved
        self.m_achieved_ = sol.m_achieved
        self.n_nodes_in_ = len(G)
        return self

    def get_support(self, indices=False):
        check_is_fitted(self, "solution_")
        return np.flatnonzero(self._mask) if indices else self._mask.copy()

    def predict(self, X=None):
        """Membership indicator per node of the fitted graph."""
        check_is_fitted(self, "solution_")
        if X is not None:
            self._check_same_size(X)
        return self._mask.astype(int)

    def transform(self, X):
        """Restrict ``X`` to the selected nodes, keeping its representation."""
        check_is_fitted(self, "solution_")
        self._check_same_size(X)
        idx = self.get_support(indices=True)
        if isinstance(X, NodeWeightedGraph):
            return X.induced(X.nodes[i] for i in idx)
        if hasattr(X, "is_directed") and hasattr(X, "subgraph"):
            nodes = list(X.nodes)
            return X.subgraph([nodes[i] for i in idx]).copy()
        if hasattr(X, "tocsr"):
            X = X.tocsr()
            return X[idx][:, idx]
        X = np.asarray(X)
        return X[np.ix_(idx, idx)]

    def _check_same_size(self, X):
        n = len(X.nodes) if hasattr(X, "nodes") else np.shape(X)[0]
        if n != self.n_nodes_in_:
            raise ValueError(f"X has {n} nodes, estimator was fitted on {self.n_nodes_in_}")
