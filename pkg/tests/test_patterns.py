from itertools import combinations

import pytest

import oracle
from dhg.errors import BadParam, TooLarge, UnknownName
from dhg.graph import DirectedHypergraph, Edge, are_isomorphic
from dhg.patterns import automorphisms, catalog, is_degenerate, pattern, two_edge_family


def test_fixed_patterns():
    r4 = pattern("R4")
    assert r4.n == 5 and r4.graph.edges == {Edge(0, 1, 2), Edge(2, 3, 4)}
    e = pattern("E")
    assert e.n == 4 and e.graph.edges == {Edge(0, 1, 2), Edge(2, 3, 1)}
    tt3 = pattern("TT(3)")
    assert tt3.n == 3 and tt3.graph.edges == {Edge(0, 1, 2)}
    assert pattern("TT:3") == tt3
    assert pattern("TT", 3).graph == tt3.graph
    assert pattern("TT4_MINUS").graph == pattern("TT4-").graph
    assert len(pattern("TT4").graph) == 4 and len(pattern("TT4-").graph) == 3


def test_pattern_errors():
    with pytest.raises(UnknownName):
        pattern("R5")
    with pytest.raises(BadParam):
        pattern("TT:2")


@pytest.mark.parametrize("name,count", [("R3", 1), ("R4", 2), ("E", 2), ("TT4-", 6), ("TT4", 2),
                                        ("TT:3", 2), ("DOUBLE", 2)])
def test_automorphism_counts(name, count):
    assert pattern(name).automorphism_count == count


def test_catalog_names():
    assert [p.name for p in catalog()] == ["R3", "R4", "E", "TT4-", "TT4", "TT:3", "DOUBLE"]


def test_degenerate_examples():
    part = is_degenerate(DirectedHypergraph(3, [(0, 1, 2)]))
    assert {frozenset(part.t1), frozenset(part.t2)} == {frozenset({0}), frozenset({1})}
    assert part.k == {2}
    assert is_degenerate(pattern("R4").graph) is None
    g = DirectedHypergraph(4, [(0, 1, 2), (0, 1, 3)])
    part = is_degenerate(g)
    assert part.k == {2, 3} and part.validates(g)
    with pytest.raises(TooLarge):
        is_degenerate(DirectedHypergraph(13))


def _brute_degenerate(g):
    for labels in __import__("itertools").product(range(3), repeat=g.n):
        if all(labels[e.head] == 2 and {labels[e.a], labels[e.b]} == {0, 1} for e in g.edges):
            return True
    return False


def test_degenerate_agrees_with_brute_force():
    import numpy as np

    rng = np.random.default_rng(3)
    for _ in range(300):
        n = int(rng.integers(3, 7))
        g = DirectedHypergraph(n, oracle.random_graph_edges(rng, n, p=0.08))
        part = is_degenerate(g)
        assert (part is not None) == _brute_degenerate(g)
        if part is not None:
            assert part.validates(g)


def test_two_edge_family_is_complete():
    fam = two_edge_family()
    assert len(fam) == 9
    assert sum(is_degenerate(p.graph) is None for p in fam) == 4
    for a, b in combinations(fam, 2):
        assert not are_isomorphic(a.graph, b.graph)
    # every 2-edge graph without isolated vertices on <= 6 vertices is one of them
    for n in range(3, 7):
        edges = oracle.edge_list(n)
        for e1, e2 in combinations(edges, 2):
            if len(set(e1) | set(e2)) != n:
                continue
            g = DirectedHypergraph(n, [e1, e2])
            assert any(p.n == n and are_isomorphic(p.graph, g) for p in fam)
    names = {p.name for p in fam}
    assert {"R3", "R4", "E", "DOUBLE"} <= names


def test_automorphisms_identity_first():
    assert automorphisms(pattern("R3").graph) == [(0, 1, 2, 3)]
