"""Approximation algorithms for minimum-weight k-connected m-dominating sets (m >= k)."""

from .connectivity import (
    is_k_connected,
    is_k_T_connected,
    is_k_Tr_connected,
    local_connectivity,
    min_weight_k_disjoint_paths,
    vertex_connectivity,
)
from .domination import greedy_m_dominating_set, is_m_dominating
from .estimator import KConnectedDominatingSet
from .exceptions import (
    CertificationError,
    InfeasibleError,
    KMCDSError,
    ParseError,
    SizeLimitError,
)
from .general import solve_general
from .graph import Instance, NodeWeightedGraph, emit_instance, parse_instance
from .solution import Solution
from .udg import generate_udg, solve_udg

__all__ = [
    "CertificationError",
    "InfeasibleError",
    "Instance",
    "KConnectedDominatingSet",
    "KMCDSError",
    "NodeWeightedGraph",
    "ParseError",
    "SizeLimitError",
    "Solution",
    "emit_instance",
    "generate_udg",
    "greedy_m_dominating_set",
    "is_k_T_connected",
    "is_k_Tr_connected",
    "is_k_connected",
    "is_m_dominating",
    "local_connectivity",
    "min_weight_k_disjoint_paths",
    "parse_instance",
    "solve_general",
    "solve_udg",
    "vertex_connectivity",
]
