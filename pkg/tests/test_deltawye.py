"""The six reduction moves and the windowed reduction engine."""

import pytest

from signednu import (
    CapacityError,
    InputError,
    InternalInconsistencyError,
    MoveError,
    SignedGraph,
    apply_move,
    check_trace,
    reduce_to_k2eq,
    replay,
    trace_from_records,
    trace_to_records,
    try_reduce,
)
from signednu.deltawye import (
    MOVE_LEMMA,
    Move,
    delta_p2_reduce,
    delta_y_reduce,
    measure,
    parallel_reduce,
    parallel_series_reduce,
    series_reduce,
    y_delta_reduce,
)
from signednu.families import cycle_graph, double_prism, k2_eq, k4_odd


def build(n, rows):
    return SignedGraph.build(list(range(1, n + 1)),
                             [[i + 1, u, v, bool(o)] for i, (u, v, o) in enumerate(rows)])


def test_parallel_reduce_keeps_the_smaller_id():
    g = build(2, [(1, 2, 1), (1, 2, 1), (1, 2, 0)])
    h, mv = parallel_reduce(g, 2, 1)
    assert {e.id for e in h.edges} == {1, 3}
    assert mv.kind == "parallel" and mv.removed_edges == (2,)
    with pytest.raises(MoveError):
        parallel_reduce(g, 1, 3)  # differing parity
    with pytest.raises(MoveError):
        parallel_reduce(build(3, [(1, 2, 0), (2, 3, 0)]), 1, 2)


def test_series_reduce_combines_parity():
    g = build(3, [(1, 2, 1), (2, 3, 1)])
    h, mv = series_reduce(g, 2)
    assert h.vertices == (1, 3)
    (e,) = h.edges
    assert e.pair() == (1, 3) and e.odd is False
    assert mv.removed_vertices == (2,)
    with pytest.raises(MoveError):
        series_reduce(k2_eq(), 1)  # both edges lead to the same place


def test_parallel_series_reduce_contracts_the_third_edge():
    g = build(3, [(1, 2, 0), (1, 2, 1), (1, 3, 0), (2, 3, 0), (2, 3, 1)])
    h, mv = parallel_series_reduce(g, 1, 3)
    assert mv.removed_vertices == (3,)
    assert h.n_vertices == 2
    with pytest.raises(MoveError):
        parallel_series_reduce(g, 1, 1)  # remaining edges are not parallel
    same = build(2, [(1, 2, 0), (1, 2, 1), (1, 2, 0)])
    with pytest.raises(MoveError):
        parallel_series_reduce(same, 1, 3)


def test_y_delta_reduce_builds_the_parity_triangle():
    g = build(4, [(1, 4, 1), (2, 4, 0), (3, 4, 0), (1, 2, 0)])
    h, mv = y_delta_reduce(g, 4)
    assert 4 not in h.vertices
    by_pair = {e.pair(): e.odd for e in h.edges if e.id != 4}
    assert by_pair == {(1, 2): True, (1, 3): True, (2, 3): False}
    assert mv.added_vertices == ()
    doubled = build(3, [(1, 3, 0), (1, 3, 1), (2, 3, 0)])
    with pytest.raises(MoveError):
        y_delta_reduce(doubled, 3)


def test_delta_y_reduce_even_triangles_only():
    g = build(3, [(1, 2, 1), (2, 3, 1), (1, 3, 0)])
    h, mv = delta_y_reduce(g, 1, 2, 3)
    hub = mv.added_vertices[0]
    assert hub == 4
    spokes = {e.other(hub): e.odd for e in h.edges}
    # only corner 2 sits on two odd triangle edges
    assert spokes == {1: False, 2: True, 3: False}
    odd_tri = build(3, [(1, 2, 1), (2, 3, 0), (1, 3, 0)])
    with pytest.raises(MoveError):
        delta_y_reduce(odd_tri, 1, 2, 3)


def test_delta_p2_reduce_needs_a_unique_corner():
    g = build(4, [(1, 2, 0), (2, 3, 0), (1, 3, 0), (1, 4, 0), (3, 4, 1)])
    h, mv = delta_p2_reduce(g, 2, 3)
    assert mv.removed_edges == (3,)
    assert h.n_edges == 4
    bare = build(3, [(1, 2, 0), (2, 3, 0), (1, 3, 0)])
    with pytest.raises(MoveError):
        delta_p2_reduce(bare, 1, 2)  # every corner has degree 2


def test_apply_move_rejects_tampered_records():
    g = build(3, [(1, 2, 1), (2, 3, 1)])
    h, mv = series_reduce(g, 2)
    assert apply_move(g, mv) == h
    forged = Move(mv.kind, mv.anchor, mv.removed_edges, mv.removed_vertices,
                  ((3, 1, 3, True),), mv.added_vertices)
    with pytest.raises(MoveError):
        apply_move(g, forged)


def test_odd_cycle_reduces_by_series_moves():
    g = cycle_graph(5, 1)
    trace = reduce_to_k2eq(g)
    assert [m.kind for m in trace.moves] == ["series", "series", "series"]
    assert trace.invariant == "faces"
    assert replay(trace)
    assert check_trace(trace)


def test_trace_records_round_trip():
    trace = reduce_to_k2eq(cycle_graph(5, 1))
    obj = trace_to_records(trace)
    back = trace_from_records(obj)
    assert back == trace
    assert check_trace(back)
    obj["moves"][0]["lemma"] = "something-else"
    with pytest.raises(InputError):
        trace_from_records(obj)


def test_check_trace_catches_a_broken_replay():
    trace = reduce_to_k2eq(cycle_graph(5, 1))
    moves = list(trace.moves)
    moves[1], moves[0] = moves[0], moves[1]
    import dataclasses
    shuffled = dataclasses.replace(trace, moves=tuple(moves))
    assert not check_trace(shuffled)


def test_try_reduce_preconditions():
    with pytest.raises(InputError):
        try_reduce(cycle_graph(5, 1), invariant="nonsense")
    with pytest.raises(InputError):
        try_reduce(cycle_graph(6))  # bipartite
    path = build(3, [(1, 2, 1), (2, 3, 0)])
    with pytest.raises(InputError):
        try_reduce(path)  # not a block
    with pytest.raises(CapacityError):
        try_reduce(cycle_graph(21, 1))
    with pytest.raises(InputError):
        try_reduce(double_prism(), invariant="faces")


def test_reduction_fails_honestly_above_level_two():
    assert try_reduce(k4_odd(), invariant="block") is None
    with pytest.raises(InternalInconsistencyError):
        reduce_to_k2eq(k4_odd(), invariant="block")


def test_named_blocks_reduce_in_faces_mode():
    k4_one_odd = build(4, [(1, 2, 1), (2, 3, 0), (1, 3, 0), (1, 4, 0),
                           (2, 4, 0), (3, 4, 0)])
    trace = reduce_to_k2eq(k4_one_odd)
    assert check_trace(trace)
    assert measure(trace.final) == 4
    wheel = build(5, [(1, 2, 1), (2, 3, 0), (3, 4, 0), (4, 1, 0),
                      (1, 5, 0), (2, 5, 0), (3, 5, 0), (4, 5, 0)])
    trace = reduce_to_k2eq(wheel)
    assert check_trace(trace)


def test_move_lemma_tags_are_stable():
    assert MOVE_LEMMA["parallel"] == "level-equal-parity-merge"
    assert MOVE_LEMMA["delta_y"] == "level-monotone-triangle-to-star"
    assert MOVE_LEMMA["y_delta"] == "level-monotone-star-to-triangle"
    g = cycle_graph(3, 1)
    trace = reduce_to_k2eq(g)
    assert all(m.lemma == MOVE_LEMMA[m.kind] for m in trace.moves)
