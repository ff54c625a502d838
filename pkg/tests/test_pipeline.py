"""The structural decider, its certificates, and the brute-force oracle."""

import json
import random

import pytest

import numpy as np

from signednu import (
    CapacityError,
    MinorWitness,
    SignedGraph,
    Verdict,
    brute_force_minor,
    decide_nu,
    even_cycle_matroid_matrix,
    is_bipartite,
    validate_verdict,
    verify_minor_witness,
)
from signednu.families import cycle_graph, double_prism, k2_eq, k3_eq, k4_odd, path_graph


def build(n, rows):
    return SignedGraph.build(list(range(1, n + 1)),
                             [[i + 1, u, v, bool(o)] for i, (u, v, o) in enumerate(rows)])


def random_graph(rng, n_max=6, m_max=10):
    n = rng.randint(2, n_max)
    rows = []
    for _ in range(rng.randint(1, m_max)):
        u, v = rng.sample(range(1, n + 1), 2)
        rows.append((u, v, rng.random() < 0.5))
    return build(n, rows)


def test_answers_on_named_graphs():
    cases = [
        (path_graph(4), "nu_le_1", "bipartite"),
        (cycle_graph(6), "nu_le_1", "bipartite"),
        (k2_eq(), "nu_eq_2", "base-small"),
        (cycle_graph(3, 1), "nu_eq_2", "almost-bipartite"),
        (cycle_graph(5, 1), "nu_eq_2", "split-2"),
        (double_prism(), "nu_eq_2", "double-prism"),
        (k3_eq(), "nu_ge_3", "minor"),
        (k4_odd(), "nu_ge_3", "minor"),
    ]
    for g, answer, rule in cases:
        verdict = decide_nu(g)
        assert verdict.answer == answer
        assert verdict.tree["rule"] == rule
        assert validate_verdict(g, verdict)


def test_isolated_vertices_are_stripped_first():
    g = SignedGraph.build([1, 2, 3, 7], [[1, 1, 2, True], [2, 1, 2, False]])
    verdict = decide_nu(g)
    assert verdict.answer == "nu_eq_2"
    assert verdict.tree["rule"] == "strip-isolated"
    assert validate_verdict(g, verdict)


def test_verdict_evidence_matches_the_answer():
    verdict = decide_nu(cycle_graph(7, 1))
    assert verdict.odd_cycle is not None
    assert verdict.minor is None
    verdict = decide_nu(k4_odd())
    assert verdict.minor is not None
    assert verify_minor_witness(k4_odd(), verdict.minor)
    bip = decide_nu(cycle_graph(4))
    assert bip.odd_cycle is None


def test_verdict_records_round_trip():
    for g in (cycle_graph(4), cycle_graph(5, 1), k3_eq(), double_prism()):
        verdict = decide_nu(g)
        obj = json.loads(json.dumps(verdict.to_records()))
        back = Verdict.from_records(obj)
        assert back.answer == verdict.answer
        assert validate_verdict(g, back)


def test_validation_rejects_tampering():
    g = cycle_graph(5, 1)
    verdict = decide_nu(g)
    obj = verdict.to_records()

    wrong_answer = json.loads(json.dumps(obj))
    wrong_answer["answer"] = "nu_ge_3"
    assert not validate_verdict(g, Verdict.from_records(wrong_answer))

    wrong_cycle = json.loads(json.dumps(obj))
    wrong_cycle["odd_cycle"]["edges"] = wrong_cycle["odd_cycle"]["edges"][::-1]
    tampered = Verdict.from_records(wrong_cycle)
    assert not validate_verdict(g, tampered)

    other = decide_nu(cycle_graph(7, 1))
    assert not validate_verdict(g, other)


def test_validation_rejects_a_foreign_minor():
    g = k4_odd()
    verdict = decide_nu(g)
    stolen = Verdict(verdict.answer, verdict.tree, verdict.odd_cycle,
                     decide_nu(k3_eq()).minor)
    assert not validate_verdict(g, stolen)


def test_brute_force_minor_finds_and_verifies():
    w = brute_force_minor(double_prism(), "k2eq")
    assert w is not None and w.target == "k2eq"
    assert verify_minor_witness(double_prism(), w)
    assert brute_force_minor(double_prism(), "k4o") is None
    assert brute_force_minor(cycle_graph(6), "k2eq") is None
    expanded = build(5, [(1, 2, 1), (2, 3, 0), (3, 4, 0), (4, 5, 0),
                         (5, 1, 0), (2, 5, 0), (1, 2, 0)])
    got = brute_force_minor(expanded, "k2eq")
    assert got is not None and verify_minor_witness(expanded, got)


def test_minor_witness_rejects_mismatches():
    w = brute_force_minor(double_prism(), "k2eq")
    # replaying someone else's script against the wrong graph must fail
    assert not verify_minor_witness(k4_odd(), w)
    harmed = MinorWitness(w.target, w.operations[:-1], w.mapping, w.resign)
    assert not verify_minor_witness(double_prism(), harmed)


def test_brute_force_minor_edge_cap():
    with pytest.raises(CapacityError):
        brute_force_minor(cycle_graph(21, 1), "k2eq")


def test_decider_agrees_with_oracle_on_random_graphs():
    rng = random.Random(99)
    for _ in range(120):
        g = random_graph(rng)
        verdict = decide_nu(g)
        bad = (brute_force_minor(g, "k4o") is not None
               or brute_force_minor(g, "k3eq") is not None)
        assert (verdict.answer == "nu_ge_3") == bad
        assert (verdict.answer == "nu_le_1") == is_bipartite(g)
        assert validate_verdict(g, verdict)


def test_even_cycle_matroid_matrix():
    g = k2_eq()
    a = even_cycle_matroid_matrix(g)
    assert a.shape == (3, 3)
    assert a.dtype == np.int8
    assert a[0].tolist() == [1, 0, 1]  # unit column, even edge, odd edge
    assert a[:, 1].tolist() == [0, 1, 1]
    # the two parallel edges differ exactly in the extra coordinate
    assert (a[:, 1] ^ a[:, 2]).tolist() == [1, 0, 0]


def test_decide_nu_splits_recurse():
    bowtie = build(5, [(1, 2, 1), (2, 3, 0), (1, 3, 0), (3, 4, 0),
                       (4, 5, 1), (3, 5, 0)])
    verdict = decide_nu(bowtie)
    assert verdict.answer == "nu_eq_2"
    assert verdict.tree["rule"] == "split-1"
    assert len(verdict.tree["children"]) == 2
    assert validate_verdict(bowtie, verdict)
