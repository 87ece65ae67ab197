import itertools
from collections import Counter

import networkx as nx
import pytest

from starplan.core import is_simple, is_vassiliev_obstruction
from starplan.generators import from_gauss_word, g_alpha, g_infinity, k33_star_graph
from starplan.oracle import (
    CapacityError,
    edge_disjoint_cycle_pairs,
    find_obstruction_bruteforce,
    simple_cycles,
)
from starplan.certificates import vassiliev_problems


def test_g_infinity_gives_the_two_loops():
    ob = find_obstruction_bruteforce(g_infinity())
    assert {ob.c1.edge_set(), ob.c2.edge_set()} == {frozenset({"A"}), frozenset({"B"})}
    assert vassiliev_problems(g_infinity(), ob) == []


def test_g_alpha_has_none():
    assert find_obstruction_bruteforce(g_alpha()) is None


def test_k33_has_no_two_disjoint_cycles():
    g = k33_star_graph()
    cycles = simple_cycles(g)
    # 9 four-cycles and 6 six-cycles
    assert sorted(len(c) for c in cycles) == [4] * 9 + [6] * 6
    assert edge_disjoint_cycle_pairs(g) == 0
    for seed in range(10):
        assert find_obstruction_bruteforce(k33_star_graph(seed)) is None


def _cycle_edge_sets(g):
    """Edge subsets forming one connected 2-regular subgraph, by exhaustion."""
    found = set()
    es = sorted(g.edges)
    for r in range(1, len(es) + 1):
        for sub in itertools.combinations(es, r):
            deg = Counter()
            m = nx.MultiGraph()
            for e in sub:
                u, v = g.endpoints(e)
                deg[u] += 1
                deg[v] += 1
                m.add_edge(u, v)
            if all(d == 2 for d in deg.values()) and nx.is_connected(m):
                found.add(frozenset(sub))
    return found


@pytest.mark.parametrize("word", ["aa", "abab", "abcabc", "abacbc"])
def test_simple_cycles_match_exhaustive_count(word):
    g = from_gauss_word(word)
    cycles = simple_cycles(g)
    assert all(is_simple(g, c) for c in cycles)
    assert {c.edge_set() for c in cycles} == _cycle_edge_sets(g)
    assert len({c.edge_set() for c in cycles}) == len(cycles)


def test_gauss_abab_pair():
    g = from_gauss_word("abab")
    ob = find_obstruction_bruteforce(g)
    assert ob is not None and is_vassiliev_obstruction(g, ob.c1, ob.c2)


def test_cycle_cap(monkeypatch):
    g = from_gauss_word("abcabc")
    with pytest.raises(CapacityError):
        simple_cycles(g, cap=2)
    monkeypatch.setenv("STARPLAN_CYCLE_CAP", "1")
    with pytest.raises(CapacityError):
        find_obstruction_bruteforce(g)


def test_result_is_deterministic():
    g = from_gauss_word("abab")
    assert find_obstruction_bruteforce(g) == find_obstruction_bruteforce(g)
