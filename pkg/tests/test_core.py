"""Graph container, re-signing, walks, and the minor operations."""

import pytest

from signednu import (
    Edge,
    InputError,
    SignedGraph,
    Walk,
    all_cycles,
    components,
    contract_edge,
    delete_edge,
    delete_vertex,
    is_bipartite,
    is_block,
    is_connected,
    is_two_connected,
    odd_cycle,
    parity_coloring,
    resign,
    sign_equivalent,
    strip_isolated,
    vertex_induced,
    walk_parity,
)
from signednu.families import cycle_graph, double_prism, k2_eq, k3_eq, k4_odd, path_graph


def triangle(*parities):
    rows = [(1, 2, parities[0]), (2, 3, parities[1]), (1, 3, parities[2])]
    return SignedGraph.from_pairs(3, rows)


def test_build_rejects_loops_and_unknown_endpoints():
    with pytest.raises(InputError):
        SignedGraph.build([1, 2], [[1, 1, 1, False]])
    with pytest.raises(InputError):
        SignedGraph.build([1, 2], [[1, 1, 3, False]])
    with pytest.raises(InputError):
        SignedGraph.build([1, 2], [[1, 1, 2, False], [1, 2, 1, True]])


def test_basic_accessors():
    g = k2_eq()
    assert g.n_vertices == 2
    assert g.n_edges == 2
    assert g.degree(1) == 2
    assert sorted(e.odd for e in g.pair_edges[(1, 2)]) == [False, True]
    e = g.edge(1)
    assert e.other(e.u) == e.v
    with pytest.raises(InputError):
        e.other(99)


def test_resign_flips_exactly_the_cut():
    g = triangle(1, 0, 0)
    h = resign(g, {1})
    assert [e.odd for e in h.edges] == [False, False, True]
    assert resign(h, {1}).edges == g.edges
    with pytest.raises(InputError):
        resign(g, {7})


def test_sign_equivalence_is_cut_membership():
    g = triangle(1, 0, 0)
    assert sign_equivalent(g, resign(g, {2})) is not None
    # flipping a single edge of a triangle is never a cut
    h = SignedGraph.from_pairs(3, [(1, 2, 0), (2, 3, 0), (1, 3, 0)])
    assert sign_equivalent(g, h) is None
    with pytest.raises(InputError):
        sign_equivalent(g, SignedGraph.from_pairs(3, [(1, 2, 1), (2, 3, 1), (1, 2, 0)]))


def test_walk_parity_validates_the_walk():
    g = triangle(1, 1, 0)
    w = Walk((1, 2, 3, 1), (1, 2, 3), closed=True)
    assert walk_parity(g, w) is False
    odd = Walk((1, 2), (1,))
    assert walk_parity(g, odd) is True
    with pytest.raises(InputError):
        walk_parity(g, Walk((1, 3), (1,)))
    with pytest.raises(InputError):
        Walk((1, 2), (1, 2))


def test_parity_coloring_and_bipartiteness():
    even_path = path_graph(4)
    col = parity_coloring(even_path)
    assert col is not None and set(col) == {1, 2, 3, 4}
    assert is_bipartite(even_path)
    assert not is_bipartite(triangle(0, 0, 0) if False else triangle(1, 0, 0))
    assert parity_coloring(k2_eq()) is None


def test_odd_cycle_is_a_verified_certificate():
    g = triangle(1, 0, 0)
    w = odd_cycle(g)
    assert w is not None and w.closed
    assert walk_parity(g, w) is True
    assert odd_cycle(cycle_graph(4)) is None


def test_delete_and_induce():
    g = k3_eq()
    assert delete_edge(g, 1).n_edges == 5
    h = delete_vertex(g, 3)
    assert h.vertices == (1, 2)
    assert h.n_edges == 2
    assert vertex_induced(g, [1, 2]).n_edges == 2
    with pytest.raises(InputError):
        delete_vertex(g, 9)


def test_contract_even_edge_merges_endpoints():
    g = SignedGraph.from_pairs(4, [(1, 2, 0), (2, 3, 1), (3, 4, 0), (1, 4, 0)])
    h = contract_edge(g, 1)
    assert h.vertices == (1, 3, 4)
    assert h.n_edges == 3
    assert {e.pair() for e in h.edges} == {(1, 3), (3, 4), (1, 4)}


def test_contract_odd_edge_preserves_cycle_parity():
    g = triangle(1, 0, 0)  # odd triangle
    h = contract_edge(g, 1)  # contract its odd edge: the digon must stay odd
    assert h.vertices == (1, 3)
    assert h.n_edges == 2
    assert len({e.odd for e in h.edges}) == 2
    even = triangle(1, 1, 0)  # even triangle: the digon must come out even
    d = contract_edge(even, 1)
    assert len({e.odd for e in d.edges}) == 1


def test_contract_drops_parallel_mates():
    g = k2_eq()
    h = contract_edge(g, 1)
    assert h.vertices == (1,)
    assert h.n_edges == 0


def test_components_and_strip():
    g = SignedGraph.build([1, 2, 3, 4, 5], [[1, 1, 2, False], [2, 4, 5, True]])
    assert components(g) == [(1, 2), (3,), (4, 5)]
    assert not is_connected(g)
    s = strip_isolated(g)
    assert s.vertices == (1, 2, 4, 5)


def test_two_connectivity_and_blocks():
    assert is_two_connected(cycle_graph(4))
    assert is_block(k2_eq())
    assert is_block(double_prism())
    bowtie = SignedGraph.from_pairs(
        5, [(1, 2, 0), (2, 3, 0), (1, 3, 0), (3, 4, 0), (4, 5, 0), (3, 5, 0)])
    assert not is_two_connected(bowtie)


def test_all_cycles_counts():
    assert len(all_cycles(cycle_graph(5))) == 1
    assert len(all_cycles(k2_eq())) == 1
    # a triangle with one doubled pair: the triangle twice plus the digon
    g = SignedGraph.from_pairs(3, [(1, 2, 0), (1, 2, 1), (2, 3, 0), (1, 3, 0)])
    assert len(all_cycles(g)) == 3


def test_k4_odd_shape():
    g = k4_odd()
    assert g.n_vertices == 4 and g.n_edges == 6
    assert all(e.odd for e in g.edges)
