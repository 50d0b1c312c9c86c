import random

import pytest
from hypothesis import given, settings

from kmcds.bisets import (
    Biset,
    covers,
    crossing_edges,
    enumerate_cores,
    in_deficient_family,
    is_deficient,
    minimal_bisets,
    neighborhood,
)
from kmcds.exceptions import InvalidCandidateError, PreconditionError
from kmcds.graph import NodeWeightedGraph
from kmcds.oracle import enumerate_all_deficient_bisets, minimal_deficient_bisets

from conftest import complete, cycle, graphs, path, random_graph


def _core_set(cores):
    return {c.biset for c in cores}


def test_path_cores():
    G = path(3)
    cores = enumerate_cores(G, {0, 1, 2})
    assert _core_set(cores) == {Biset({0}, {0, 1}), Biset({2}, {1, 2})}
    assert _core_set(cores) == set(minimal_deficient_bisets(G, {0, 1, 2}))


def test_biset_basics():
    b = Biset({0}, {0, 1})
    assert b.boundary == {1}
    assert b.contains(Biset({0, 2}, {0, 1, 2}))
    assert not Biset({0, 2}, {0, 1, 2}).contains(b)
    with pytest.raises(ValueError):
        Biset({0, 1}, {0})


def test_neighborhood_and_cover():
    G = NodeWeightedGraph(range(5), [(0, 1), (1, 2), (3, 0), (4, 2)])
    T = {0, 1, 2}
    b = Biset({0}, {0, 1})
    assert neighborhood(G, b.inner) == {1, 3}
    assert covers(3, b, G, T)
    assert not covers(4, b, G, T)
    with pytest.raises(InvalidCandidateError):
        covers(1, b, G, T)


def test_deficiency_predicates():
    G = cycle(6)
    T = set(range(6))
    b = Biset({0, 1}, {0, 1, 2, 5})
    assert crossing_edges(G, T, b) == 0
    assert in_deficient_family(G, T, b, 2)
    assert not in_deficient_family(G, T, b, 1)
    assert is_deficient(G, T, b, 3)
    assert not is_deficient(G, T, b, 2)
    assert not is_deficient(G, T, b, 3, root=2)
    loose = Biset({0}, {0, 1})
    assert crossing_edges(G, T, loose) == 1


def test_cores_empty_when_complete_or_ell_mismatch():
    assert enumerate_cores(complete(4), range(4)) == []
    with pytest.raises(PreconditionError):
        enumerate_cores(cycle(5), range(5), ell=1)


def test_disconnected_terminals_give_components():
    G = NodeWeightedGraph(range(4), [(0, 1), (2, 3)])
    assert _core_set(enumerate_cores(G, range(4))) == {Biset({0, 1}, {0, 1}), Biset({2, 3}, {2, 3})}


def test_cycle_cores_are_single_nodes():
    cores = _core_set(enumerate_cores(cycle(6), range(6)))
    # each node is cut off by its two neighbors
    assert cores == {Biset({v}, {v, (v + 1) % 6, (v - 1) % 6}) for v in range(6)}


def test_minimal_bisets_dedup_and_order():
    a = Biset({0}, {0, 1})
    b = Biset({0, 2}, {0, 1, 2})
    assert minimal_bisets([b, a, a]) == [a]


@pytest.mark.parametrize("method", ["subsets", "flows"])
@pytest.mark.parametrize("seed", range(40))
def test_cores_match_exhaustive_scan(seed, method):
    rng = random.Random(seed)
    G = random_graph(rng, rng.randint(4, 10), rng.uniform(0.3, 0.8))
    T = set(rng.sample(list(G.nodes), rng.randint(3, len(G))))
    got = _core_set(enumerate_cores(G, T, method=method))
    assert got == set(minimal_deficient_bisets(G, T))


@given(graphs(min_nodes=3, max_nodes=8))
@settings(max_examples=50, deadline=None)
def test_every_core_in_family_and_every_member_contains_a_core(G):
    T = set(G.nodes)
    cores = [c.biset for c in enumerate_cores(G, T)]
    family = enumerate_all_deficient_bisets(G, T)
    ell = min(len(b.boundary) for b in family) if family else None
    for c in cores:
        assert in_deficient_family(G, T, c, ell)
    for b in family:
        assert any(c.contains(b) for c in cores)
