"""Canonical keys, isomorphism search, and backend agreement."""

import random

import pytest

from signednu import (
    CapacityError,
    SignedGraph,
    canonical_key,
    labeled_key,
    pair_counts,
    resign,
    signed_isomorphic,
)
from signednu import kernels
from signednu.families import cycle_graph, double_prism, k2_eq, k3_eq, k4_odd


def relabel(g, perm):
    rows = [(perm[e.u], perm[e.v], e.odd) for e in g.edges]
    return SignedGraph.build(sorted(perm[v] for v in g.vertices),
                             [[i + 1, u, v, bool(o)] for i, (u, v, o) in enumerate(rows)])


def test_pair_counts():
    assert pair_counts(k2_eq()) == {(1, 2): (1, 1)}
    assert pair_counts(k4_odd())[(1, 2)] == (0, 1)


def test_canonical_key_invariant_under_relabeling_and_resigning():
    rng = random.Random(5)
    for g in (k2_eq(), k3_eq(), k4_odd(), double_prism(), cycle_graph(5, 1)):
        key = canonical_key(g)
        vs = list(g.vertices)
        for _ in range(5):
            shuffled = vs[:]
            rng.shuffle(shuffled)
            perm = dict(zip(vs, shuffled))
            around = {v for v in vs if rng.random() < 0.5}
            assert canonical_key(relabel(resign(g, around), perm)) == key


def test_canonical_key_separates_parities():
    odd_tri = SignedGraph.from_pairs(3, [(1, 2, 1), (2, 3, 0), (1, 3, 0)])
    even_tri = SignedGraph.from_pairs(3, [(1, 2, 0), (2, 3, 0), (1, 3, 0)])
    assert canonical_key(odd_tri) != canonical_key(even_tri)
    # one odd edge in a triangle is sign-equivalent to three odd edges
    all_odd = SignedGraph.from_pairs(3, [(1, 2, 1), (2, 3, 1), (1, 3, 1)])
    assert canonical_key(odd_tri) == canonical_key(all_odd)


def test_canonical_key_vertex_cap():
    big = cycle_graph(33)
    with pytest.raises(CapacityError):
        canonical_key(big)


def test_labeled_key_is_exact_and_cheap():
    g = cycle_graph(12, 1)
    assert labeled_key(g) == labeled_key(g)
    assert labeled_key(g) != labeled_key(cycle_graph(12))
    # labeled keys ignore edge ids but nothing else
    shifted = SignedGraph.build(
        list(g.vertices), [[e.id + 7, e.u, e.v, e.odd] for e in g.edges])
    assert labeled_key(shifted) == labeled_key(g)


def test_signed_isomorphic_returns_a_checkable_witness():
    g = k3_eq()
    perm = {1: 2, 2: 3, 3: 1}
    h = relabel(resign(g, {1}), perm)
    got = signed_isomorphic(g, h)
    assert got is not None
    mapping, flip = got
    back = resign(h, flip)
    assert pair_counts(back) == {
        tuple(sorted((mapping[a], mapping[b]))): c
        for (a, b), c in pair_counts(g).items()}


def test_signed_isomorphic_identity_is_deterministic():
    g = double_prism()
    mapping, flip = signed_isomorphic(g, g)
    assert mapping == {v: v for v in g.vertices}
    assert flip == frozenset()


def test_signed_isomorphic_rejects():
    assert signed_isomorphic(k3_eq(), k4_odd()) is None
    odd_tri = SignedGraph.from_pairs(3, [(1, 2, 1), (2, 3, 0), (1, 3, 0)])
    even_tri = SignedGraph.from_pairs(3, [(1, 2, 0), (2, 3, 0), (1, 3, 0)])
    assert signed_isomorphic(odd_tri, even_tri) is None


def test_backends_agree_byte_for_byte(monkeypatch):
    if not kernels.have_compiled():
        pytest.skip("compiled kernels unavailable")
    from signednu import _pykernels, _speedups
    from signednu.classify import two_odd_faces

    graphs = [k2_eq(), k3_eq(), k4_odd(), double_prism(), cycle_graph(6, 2)]
    results = {}
    for name, mod in (("python", _pykernels), ("compiled", _speedups)):
        monkeypatch.setattr(kernels, "_active", mod)
        keys = [canonical_key(g) for g in graphs]
        embs = []
        for g in graphs:
            emb = two_odd_faces(g)
            embs.append(None if emb is None else emb.to_records())
        results[name] = (keys, embs)
    assert results["python"] == results["compiled"]
