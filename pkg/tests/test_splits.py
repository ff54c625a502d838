"""Split finders, their completeness, and the level recurrence."""

import random

import pytest

from signednu import (
    InternalInconsistencyError,
    SignedGraph,
    decide_nu,
    edge_subgraph,
    find_01_split,
    find_2_split,
    find_3_split,
    is_connected,
    split_nu_recurrence,
)
from signednu.families import double_prism, k2_eq, k3_eq, k4_odd

LEVEL = {"nu_le_1": 1, "nu_eq_2": 2, "nu_ge_3": 3}


def build(n, rows):
    return SignedGraph.build(list(range(1, n + 1)),
                             [[i + 1, u, v, bool(o)] for i, (u, v, o) in enumerate(rows)])


def prism(odd_edges=()):
    rows = [(1, 2, 0), (2, 3, 0), (1, 3, 0), (4, 5, 0), (5, 6, 0), (4, 6, 0),
            (1, 4, 0), (2, 5, 0), (3, 6, 0)]
    rows = [(u, v, int(i + 1 in odd_edges)) for i, (u, v, _) in enumerate(rows)]
    return build(6, rows)


def test_kind_0_split_on_disconnected_graph():
    g = build(6, [(1, 2, 1), (2, 3, 0), (1, 3, 0), (4, 5, 0), (5, 6, 1), (4, 6, 0)])
    desc = find_01_split(g)
    assert desc is not None and desc.kind == 0
    assert desc.separator == ()
    assert sorted(desc.side_edges[0] + desc.side_edges[1]) == [1, 2, 3, 4, 5, 6]
    assert len(desc.parts) == 2


def test_kind_1_split_on_cut_vertex():
    bowtie = build(5, [(1, 2, 1), (2, 3, 0), (1, 3, 0), (3, 4, 0), (4, 5, 1), (3, 5, 0)])
    desc = find_01_split(bowtie)
    assert desc is not None and desc.kind == 1
    assert desc.separator == (3,)
    for part in desc.parts:
        assert part.n_edges == 3


def test_kind_2_split_structure():
    g = build(4, [(1, 2, 1), (2, 3, 0), (3, 4, 0), (4, 1, 0)])
    desc = find_2_split(g)
    assert desc is not None and desc.kind == 2
    u, v = desc.separator
    ids = {e.id for e in g.edges}
    assert set(desc.side_edges[0]) | set(desc.side_edges[1]) == ids
    assert not set(desc.side_edges[0]) & set(desc.side_edges[1])
    for part, own, prov in zip(desc.parts, desc.side_edges, desc.virtual_edges):
        part_ids = {e.id for e in part.edges}
        assert part_ids == set(own) | set(prov)
        for eid, info in prov.items():
            e = part.edge(eid)
            assert {e.u, e.v} == {u, v}
            assert e.odd == info["parity"]


def test_mixed_pair_has_no_split():
    assert find_01_split(k2_eq()) is None
    assert find_2_split(k2_eq()) is None
    assert find_3_split(k2_eq()) is None


def test_targets_and_double_prism_are_split_free():
    for g in (k3_eq(), k4_odd(), double_prism()):
        assert find_01_split(g) is None
        assert find_2_split(g) is None
        assert find_3_split(g) is None


def test_kind_3_split_on_even_prism():
    desc = find_3_split(prism())
    assert desc is not None and desc.kind == 3
    assert len(desc.parts) == 1
    part = desc.parts[0]
    assert desc.hub in part.vertices
    spokes = [e for e in part.edges if e.touches(desc.hub)]
    assert len(spokes) == 3
    # the far side is all even, so every spoke parity is even
    assert not any(e.odd for e in spokes)
    assert set(desc.separator) == {e.other(desc.hub) for e in spokes}


def _fits_mixed_pair(side, u, v):
    for e in side.edges:
        if {e.u, e.v} != {u, v}:
            return False
    ne = sum(1 for e in side.edges if not e.odd)
    return ne <= 1 and side.n_edges - ne <= 1


def naive_two_split_exists(g):
    """All 2^m edge bipartitions, checked against the 2-split definition."""
    ids = [e.id for e in g.edges]
    for mask in range(1, 2 ** len(ids) - 1):
        e1 = [x for b, x in enumerate(ids) if mask >> b & 1]
        e2 = [x for b, x in enumerate(ids) if not mask >> b & 1]
        s1 = edge_subgraph(g, e1)
        s2 = edge_subgraph(g, e2)
        shared = set(s1.vertices) & set(s2.vertices)
        if len(shared) != 2:
            continue
        u, v = sorted(shared)
        if not (is_connected(s1) and is_connected(s2)):
            continue
        if _fits_mixed_pair(s1, u, v) or _fits_mixed_pair(s2, u, v):
            continue
        return True
    return False


def test_two_split_finder_matches_naive_enumeration():
    rng = random.Random(2)
    for _ in range(120):
        n = rng.randint(3, 5)
        m = rng.randint(3, 8)
        rows = []
        for _ in range(m):
            u, v = rng.sample(range(1, n + 1), 2)
            rows.append((u, v, rng.random() < 0.5))
        g = build(n, rows)
        assert (find_2_split(g) is not None) == naive_two_split_exists(g)


def test_parts_combine_to_the_whole_level():
    rng = random.Random(3)
    seen = 0
    for _ in range(250):
        n = rng.randint(3, 6)
        m = rng.randint(3, 9)
        rows = []
        for _ in range(m):
            u, v = rng.sample(range(1, n + 1), 2)
            rows.append((u, v, rng.random() < 0.5))
        g = build(n, rows)
        desc = find_01_split(g) or find_2_split(g) or find_3_split(g)
        if desc is None:
            continue
        seen += 1
        child_levels = [LEVEL[decide_nu(p).answer] for p in desc.parts]
        combined = split_nu_recurrence(desc.kind, child_levels)
        assert combined == LEVEL[decide_nu(g).answer]
    assert seen >= 50


def test_recurrence_arity():
    assert split_nu_recurrence(0, [1, 2]) == 2
    assert split_nu_recurrence(2, [2, 3]) == 3
    assert split_nu_recurrence(3, [2]) == 2
    with pytest.raises(InternalInconsistencyError):
        split_nu_recurrence(2, [2])
    with pytest.raises(InternalInconsistencyError):
        split_nu_recurrence(3, [2, 2])
