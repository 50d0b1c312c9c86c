import itertools
import random

import pytest

from kmcds.connectivity import is_k_connected, is_k_Tr_connected
from kmcds.domination import greedy_m_dominating_set
from kmcds.exceptions import InvalidRootError
from kmcds.general import attach_root
from kmcds.inflation import (
    build_centered_instance,
    default_rounds,
    inflate_general,
    inflate_general_rounds,
    pipeline_rounds,
    solve_centered_rsc,
)
from kmcds.oracle import rooted_bisets

from conftest import cycle, path, random_graph


@pytest.mark.parametrize("k, m, p, q", [(1, 1, 1, 0), (2, 2, 1, 1), (3, 3, 2, 2), (3, 5, 1, 0), (2, 3, 1, 0), (4, 4, 3, 3)])
def test_round_counts(k, m, p, q):
    assert default_rounds(k, m) == p
    assert pipeline_rounds(k, m) == q


def test_centered_instance_structure():
    G = path(5)
    T = {0, 4}
    Gc = build_centered_instance(G, T, 0)
    # non-terminals 1,2,3 lose their mutual edges and hang off the root
    assert Gc.adj[1] == {0}
    assert Gc.adj[2] == {0}
    assert Gc.adj[3] == {0, 4}
    assert Gc.adj[0] == {1, 2, 3}
    with pytest.raises(InvalidRootError):
        build_centered_instance(G, T, 2)


def test_centered_rsc_path_one_round():
    G = path(5)
    T = {0, 2, 4}
    Gc = build_centered_instance(G, T, 0)
    S = solve_centered_rsc(Gc, G.weights, T, 0, 1)
    Gs = Gc.induced(T | S)
    assert is_k_Tr_connected(Gs, T, 0, 1)
    # node 3 reaches the root directly and touches both far terminals
    assert S == {3}


def _rooted_optimum(Gc, w, T, r, k):
    rest = [v for v in Gc.nodes if v not in T]
    best = None
    for size in range(len(rest) + 1):
        for c in itertools.combinations(rest, size):
            cost = sum(w[v] for v in c)
            if best is not None and cost >= best:
                continue
            if is_k_Tr_connected(Gc.induced(set(T) | set(c)), T, r, k):
                best = cost
    return best


@pytest.mark.parametrize("seed", range(20))
def test_centered_rsc_feasible_and_near_optimal(seed):
    rng = random.Random(seed)
    while True:
        G = random_graph(rng, rng.randint(6, 9), 0.5, weights="int")
        k = rng.randint(1, 2)
        if is_k_connected(G, k):
            break
    T0 = greedy_m_dominating_set(G, m=k)
    Gr, r, _ = attach_root(G, T0, k)
    T = T0 | {r}
    Gc = build_centered_instance(Gr, T, r)
    w = Gr.weights
    S = solve_centered_rsc(Gc, w, T, r, k)
    assert not S & T
    assert is_k_Tr_connected(Gc.induced(T | S), T, r, k)
    assert Gr.weight_of(S) <= 4 * _rooted_optimum(Gc, w, T, r, k) + 1e-9


def test_rounds_are_pairwise_disjoint():
    rng = random.Random(3)
    checked = 0
    for _ in range(40):
        G = random_graph(rng, 9, 0.55, weights="int")
        k, m = 3, 3
        if not is_k_connected(G, k):
            continue
        T0 = greedy_m_dominating_set(G, m=m)
        Gr, r, _ = attach_root(G, T0, k)
        w0 = {v: 0 if v in T0 or v == r else Gr.weights[v] for v in Gr.nodes}
        rounds = inflate_general_rounds(Gr, w0, T0 | {r}, r, k, default_rounds(k, m))
        seen = set(T0) | {r}
        for S in rounds:
            assert seen.isdisjoint(S)
            seen |= S
        checked += 1
    assert checked > 0


def test_path_instance_inequality_by_scan():
    G = path(6)
    T0 = greedy_m_dominating_set(G, m=1)
    Gr, r, _ = attach_root(G, T0, 1)
    T = inflate_general(Gr, Gr.weights, T0 | {r}, r, 1, default_rounds(1, 1))
    for b, level in rooted_bisets(Gr, T, r, 1):
        assert len(b.inner & T) >= 1 - level + 1 * (1 - level)


def test_cycle_needs_no_rounds_when_terminals_suffice():
    G = cycle(5)
    T = set(range(5))
    rounds = inflate_general_rounds(G, G.weights, T, 0, 2, 3)
    assert rounds == [frozenset()]
