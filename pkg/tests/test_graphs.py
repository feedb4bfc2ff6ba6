import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from wreathlab.errors import DomainError, ParseError
from wreathlab.graphs import (
    SimpleGraph, complete_graph, cycle_graph, enumerate_cliques, flag_complex, load_graph,
    path_graph, simplex_boundary,
)

import oracles


def test_triangle_has_one_3_clique():
    assert enumerate_cliques(complete_graph("abc"), 3) == [("a", "b", "c")]


def test_path_edges_are_2_cliques():
    assert enumerate_cliques(path_graph("abc"), 2) == [("a", "b"), ("b", "c")]


def test_five_cycle_has_no_triangles():
    assert enumerate_cliques(cycle_graph("abcde"), 3) == []


def test_zero_cliques_is_the_empty_clique():
    assert enumerate_cliques(path_graph("abc"), 0) == [()]


@pytest.mark.parametrize("graph, cap, counts", [
    (complete_graph("abc"), 2, (1, 3, 3, 1)),
    (SimpleGraph("abcd"), 3, (1, 4, 0, 0, 0)),
    (path_graph("abc"), 2, (1, 3, 2, 0)),
])
def test_flag_complex_counts(graph, cap, counts):
    assert flag_complex(graph, cap).counts() == counts


def test_simplex_boundaries():
    L = flag_complex(complete_graph("abc"), 2)
    assert simplex_boundary(L, ("a", "b")) == {("b",): 1, ("a",): -1}
    assert simplex_boundary(L, ("a", "b", "c")) == {("b", "c"): 1, ("a", "c"): -1, ("a", "b"): 1}
    assert simplex_boundary(L, ("a",)) == {(): 1}


def test_simplex_outside_complex_rejected():
    L = flag_complex(path_graph("abc"), 2)
    with pytest.raises(DomainError, match="simplex belongs to complex"):
        simplex_boundary(L, ("a", "c"))


def test_graph_validation():
    with pytest.raises(DomainError):
        SimpleGraph("ab", [("a", "a")])
    with pytest.raises(DomainError):
        SimpleGraph("ab", [("a", "z")])
    with pytest.raises(ParseError):
        SimpleGraph.from_json({"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]})


def test_json_round_trip_sorts_edges(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"vertices": ["a", "b", "c"], "edges": [["c", "b"], ["b", "a"]]}))
    g = load_graph(path)
    assert g.sorted_edges() == [("a", "b"), ("b", "c")]
    assert SimpleGraph.from_json(g.to_json()) == g


def test_clique_counts_match_networkx_on_atlas():
    for g in oracles.all_graphs(6):
        for p in range(0, 7):
            assert len(enumerate_cliques(g, p)) == oracles.clique_count(g, p)


def test_cliques_are_sorted_and_lexicographic():
    for g in oracles.all_graphs(5):
        for p in range(1, 5):
            cs = enumerate_cliques(g, p)
            keys = [tuple(g.index(v) for v in c) for c in cs]
            assert keys == sorted(set(keys))
            assert all(list(k) == sorted(k) for k in keys)


def test_flag_property_exhaustive_up_to_7_vertices():
    import networkx as nx
    for G in nx.graph_atlas_g():
        if G.number_of_nodes() == 0:
            continue
        g = oracles.from_networkx(G)
        L = flag_complex(g, len(g))
        for size in range(2, len(g) + 1):
            for subset in itertools.combinations(g.vertices, size):
                is_face = subset in L
                has_non_edge = any(not g.adjacent(a, b) for a, b in itertools.combinations(subset, 2))
                assert is_face != has_non_edge


graphs = st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1]))))


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_boundary_squared_vanishes(data):
    n, edges = data
    g = SimpleGraph(range(n), edges)
    L = flag_complex(g, n)
    for m in range(0, L.dimension + 1):
        for s in L.simplices_of(m):
            total = {}
            for face, c in simplex_boundary(L, s).items():
                for f2, c2 in simplex_boundary(L, face).items():
                    total[f2] = total.get(f2, 0) + c * c2
            assert not any(total.values())


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_simplex_counts_equal_clique_counts(data):
    n, edges = data
    g = SimpleGraph(range(n), edges)
    L = flag_complex(g, n)
    for m in range(-1, n):
        assert len(L.simplices_of(m)) == len(enumerate_cliques(g, m + 1))
