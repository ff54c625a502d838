"""End-to-end acceptance checks behind the `selftest` subcommand.

Ten numbered criteria, each an independent exercise of the package: the
structural decider against the brute-force oracle and against hand-checkable
families, the move engine on generated plane blocks, and the matrix lemmas on
randomized positive semidefinite samples.  Every criterion pins its own seeds,
tolerance, and wall-clock budget, returns (ok, detail), and is reported as a
single PASS or FAIL line; an exception inside a criterion counts as a failure
of that criterion, never a crash of the run.
"""

from __future__ import annotations

import json
import os
import shutil
import subprocess
import sys
import tempfile
from collections import Counter, deque
from itertools import combinations
from time import monotonic

import numpy as np

from .canonical import canonical_key
from .classify import embed_plane, plane_embedding
from .core import (
    Edge,
    SignedGraph,
    Walk,
    all_cycles,
    components,
    contract_edge,
    delete_vertex,
    is_bipartite,
    is_block,
    is_two_connected,
    resign,
    sign_equivalent,
    walk_parity,
)
from .deltawye import check_trace, reduce_to_k2eq, try_reduce
from .errors import InputError
from .families import cycle_graph, double_prism, k2_eq, k3_eq, k4_odd
from .matrix import (
    PatternMatrix,
    bipartite_inverse_sign_check,
    canonical_witness,
    pattern_check,
    psd_nullity,
    sample_psd,
    sap_check,
    schur_complement,
)
from .pipeline import brute_force_minor, decide_nu, validate_verdict, verify_minor_witness
from .splits import find_01_split, find_2_split, find_3_split

TOL = 1e-8

CRITERIA: list = []


def criterion(num: int, name: str):
    def deco(fn):
        CRITERIA.append((num, name, fn))
        return fn
    return deco


def run_criterion(num: int) -> tuple[bool, str, str]:
    """(ok, name, detail) for one criterion; exceptions become failures."""
    for n, name, fn in CRITERIA:
        if n == num:
            try:
                ok, detail = fn()
            except Exception as exc:
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            return ok, name, detail
    raise InputError(f"no criterion {num}")


def run_all(stream, only=None) -> bool:
    """Run every criterion (or just `only`), one PASS/FAIL line each."""
    todo = sorted(n for n, _, _ in CRITERIA)
    if only is not None:
        if only not in todo:
            raise InputError(f"no criterion {only}")
        todo = [only]
    all_ok = True
    for num in todo:
        ok, name, detail = run_criterion(num)
        all_ok = all_ok and ok
        stream.write(f"{'PASS' if ok else 'FAIL'} criterion-{num} {name} ({detail})\n")
        stream.flush()
    return all_ok


# -- shared generators ---------------------------------------------------------

def _graph_from_rows(n: int, rows) -> SignedGraph:
    return SignedGraph.build(
        list(range(1, n + 1)),
        [[i + 1, u, v, bool(odd)] for i, (u, v, odd) in enumerate(rows)])


def covered_signed_graphs(n_max: int = 4, m_max: int = 6) -> list:
    """Every signed graph with 2..n_max vertices, 1..m_max edges, and no
    isolated vertex, one representative per signed-isomorphism class."""
    seen = set()
    out = []
    for n in range(2, n_max + 1):
        pairs = list(combinations(range(1, n + 1), 2))

        def rec(i, budget, chosen):
            if i == len(pairs):
                eid = 0
                edges = []
                touched = set()
                for (u, v), (ne, no) in zip(pairs, chosen):
                    for _ in range(ne):
                        eid += 1
                        edges.append(Edge(eid, u, v, False))
                    for _ in range(no):
                        eid += 1
                        edges.append(Edge(eid, u, v, True))
                    if ne + no:
                        touched.update((u, v))
                if not edges or len(touched) != n:
                    return
                g = SignedGraph(tuple(range(1, n + 1)), tuple(edges))
                key = canonical_key(g)
                if key not in seen:
                    seen.add(key)
                    out.append(g)
                return
            for ne in range(budget + 1):
                for no in range(budget - ne + 1):
                    chosen.append((ne, no))
                    rec(i + 1, budget - ne - no, chosen)
                    chosen.pop()

        rec(0, m_max, [])
    return out


def underlying_multigraphs(n_max: int = 5, m_max: int = 7) -> list:
    """Every loopless multigraph with 2..n_max vertices, 1..m_max edges, and
    no isolated vertex, one per isomorphism class, all edges even."""
    seen = set()
    out = []
    for n in range(2, n_max + 1):
        pairs = list(combinations(range(1, n + 1), 2))

        def rec(i, budget, mult):
            if i == len(pairs):
                eid = 0
                edges = []
                touched = set()
                for (u, v), k in zip(pairs, mult):
                    for _ in range(k):
                        eid += 1
                        edges.append(Edge(eid, u, v, False))
                    if k:
                        touched.update((u, v))
                if not edges or len(touched) != n:
                    return
                g = SignedGraph(tuple(range(1, n + 1)), tuple(edges))
                key = canonical_key(g)
                if key not in seen:
                    seen.add(key)
                    out.append(g)
                return
            for k in range(budget + 1):
                mult.append(k)
                rec(i + 1, budget - k, mult)
                mult.pop()

        rec(0, m_max, [])
    return out


def _random_signed_graph(rng, n_max: int = 6, m_max: int = 10) -> SignedGraph:
    n = rng.randint(2, n_max)
    m = rng.randint(1, m_max)
    rows = []
    for _ in range(m):
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        while v == u:
            v = rng.randint(1, n)
        rows.append((u, v, rng.random() < 0.5))
    return _graph_from_rows(n, rows)


def _random_connected_graph(rng, n_max: int = 6, extra_max: int = 4) -> SignedGraph:
    n = rng.randint(3, n_max)
    rows = [(rng.randint(1, v - 1), v, rng.random() < 0.5) for v in range(2, n + 1)]
    for _ in range(rng.randint(0, extra_max)):
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        while v == u:
            v = rng.randint(1, n)
        rows.append((u, v, rng.random() < 0.5))
    return _graph_from_rows(n, rows)


def _has_bad_minor(g: SignedGraph) -> bool:
    return (brute_force_minor(g, "k4o") is not None
            or brute_force_minor(g, "k3eq") is not None)


def _answers_agree(g: SignedGraph):
    """None when decider, oracle, and certificate agree; else a complaint."""
    verdict = decide_nu(g)
    if (verdict.answer == "nu_ge_3") != _has_bad_minor(g):
        return f"answer {verdict.answer} against the minor oracle"
    if (verdict.answer == "nu_le_1") != is_bipartite(g):
        return f"answer {verdict.answer} against bipartiteness"
    if not validate_verdict(g, verdict):
        return "certificate failed validation"
    return None


# -- criterion 1 ---------------------------------------------------------------

@criterion(1, "named graphs and canonical matrices check out")
def _c1():
    t0 = monotonic()
    expected = {
        "k2eq": (k2_eq(), "nu_eq_2", "base-small", 2),
        "k3eq": (k3_eq(), "nu_ge_3", "minor", 3),
        "k4o": (k4_odd(), "nu_ge_3", "minor", 3),
    }
    for name, (g, answer, rule, nullity) in expected.items():
        verdict = decide_nu(g)
        if verdict.answer != answer:
            return False, f"{name} answered {verdict.answer}, wanted {answer}"
        if verdict.tree["rule"] != rule:
            return False, f"{name} used rule {verdict.tree['rule']}, wanted {rule}"
        if not validate_verdict(g, verdict):
            return False, f"{name} certificate failed validation"
        pm = canonical_witness(name)
        if not pattern_check(pm, TOL):
            return False, f"{name} witness breaks the sign pattern"
        psd, nul = psd_nullity(pm.values, TOL)
        if not psd or nul != nullity:
            return False, f"{name} witness psd={psd} nullity={nul}, wanted {nullity}"
        if not sap_check(pm, TOL).holds:
            return False, f"{name} witness fails the independence condition"
    dp = double_prism()
    verdict = decide_nu(dp)
    if verdict.answer != "nu_eq_2" or verdict.tree["rule"] != "double-prism":
        return False, f"double prism gave {verdict.answer} via {verdict.tree['rule']}"
    if not validate_verdict(dp, verdict):
        return False, "double prism certificate failed validation"
    dt = monotonic() - t0
    if dt >= 1.0:
        return False, f"took {dt:.2f}s, budget 1s"
    return True, f"4 graphs, 3 matrices, tol {TOL:g}, {dt:.2f}s"


# -- criterion 2 ---------------------------------------------------------------

@criterion(2, "structural decider agrees with the brute-force oracle")
def _c2():
    t0 = monotonic()
    corpus = covered_signed_graphs(4, 6)
    for g in corpus:
        complaint = _answers_agree(g)
        if complaint is not None:
            rows = [(e.u, e.v, e.odd) for e in g.edges]
            return False, f"exhaustive case {rows}: {complaint}"
    import random
    rng = random.Random(20260816)
    trials = 500
    for t in range(trials):
        g = _random_signed_graph(rng)
        complaint = _answers_agree(g)
        if complaint is not None:
            rows = [(e.u, e.v, e.odd) for e in g.edges]
            return False, f"random case {t} {rows}: {complaint}"
    dt = monotonic() - t0
    if dt >= 600.0:
        return False, f"took {dt:.0f}s, budget 600s"
    return True, f"{len(corpus)} exhaustive classes + {trials} random graphs, {dt:.1f}s"


# -- criterion 3 ---------------------------------------------------------------

def _splits_free(g: SignedGraph) -> bool:
    return (find_01_split(g) is None and find_2_split(g) is None
            and find_3_split(g) is None)


@criterion(3, "split-free blocks land in a leaf classification")
def _c3():
    t0 = monotonic()
    leaf_rules = {"base-small", "almost-bipartite", "two-odd-faces", "double-prism"}
    corpus = [
        k2_eq(),
        _graph_from_rows(3, [(1, 2, 1), (2, 3, 0), (1, 3, 0)]),
        _graph_from_rows(3, [(1, 2, 0), (1, 2, 1), (2, 3, 0), (1, 3, 0)]),
        double_prism(),
    ]
    import random
    rng = random.Random(20260403)
    for _ in range(300):
        n = rng.randint(3, 5)
        rows = [(i, i + 1, rng.random() < 0.5) for i in range(1, n)] + \
               [(n, 1, rng.random() < 0.5)]
        for _ in range(rng.randint(0, 3)):
            u = rng.randint(1, n)
            v = rng.randint(1, n)
            while v == u:
                v = rng.randint(1, n)
            rows.append((u, v, rng.random() < 0.5))
        corpus.append(_graph_from_rows(n, rows))
    seen_rules = Counter()
    kept = 0
    for g in corpus:
        if g.n_edges > 12 or is_bipartite(g) or not is_block(g):
            continue
        if not _splits_free(g) or _has_bad_minor(g):
            continue
        kept += 1
        verdict = decide_nu(g)
        rule = verdict.tree["rule"]
        if rule not in leaf_rules:
            rows = [(e.u, e.v, e.odd) for e in g.edges]
            return False, f"{rows} routed through {rule}, not a leaf"
        if verdict.answer != "nu_eq_2":
            return False, f"split-free block answered {verdict.answer}"
        if not validate_verdict(g, verdict):
            return False, "leaf certificate failed validation"
        seen_rules[rule] += 1
    if kept < 25:
        return False, f"only {kept} qualifying blocks, wanted at least 25"
    if len(seen_rules) < 3:
        return False, f"only leaf rules {sorted(seen_rules)} exercised"
    dt = monotonic() - t0
    if dt >= 120.0:
        return False, f"took {dt:.0f}s, budget 120s"
    hist = ", ".join(f"{r} x{c}" for r, c in sorted(seen_rules.items()))
    return True, f"{kept} blocks: {hist}, {dt:.1f}s"


# -- criterion 4 ---------------------------------------------------------------

def _random_plane_block_rows(rng):
    """Rows of an all-even plane block grown from a cycle by subdividing,
    doubling, and planarity-checked chording."""
    n = rng.randint(3, 6)
    rows = [(i, i + 1) for i in range(1, n)] + [(n, 1)]
    for _ in range(rng.randint(0, 9)):
        if len(rows) >= 14:
            break
        roll = rng.random()
        if roll < 0.35 and n < 12:
            i = rng.randrange(len(rows))
            u, v = rows.pop(i)
            n += 1
            rows.extend([(u, n), (n, v)])
        elif roll < 0.6:
            u, v = rows[rng.randrange(len(rows))]
            if sum(1 for r in rows if set(r) == {u, v}) < 2:
                rows.append((u, v))
        else:
            u = rng.randint(1, n)
            v = rng.randint(1, n)
            if u == v:
                continue
            cand = rows + [(u, v)]
            g = _graph_from_rows(n, [(a, b, 0) for a, b in cand])
            if embed_plane(g) is not None:
                rows = cand
    return n, rows


def _sign_two_faces(g: SignedGraph, rng) -> SignedGraph:
    """Re-sign an all-even plane block so one embedding has exactly two odd
    faces: flip the edges crossed by a dual path between two random faces."""
    emb = embed_plane(g)
    faces = emb.faces
    by_edge = {}
    for idx, face in enumerate(faces):
        for eid, _ in face:
            by_edge.setdefault(eid, set()).add(idx)
    f1, f2 = rng.sample(range(len(faces)), 2)
    parent = {f1: (None, None)}
    queue = deque([f1])
    while queue and f2 not in parent:
        f = queue.popleft()
        for eid in sorted({eid for eid, _ in faces[f]}):
            for nf in by_edge[eid]:
                if nf not in parent:
                    parent[nf] = (f, eid)
                    queue.append(nf)
    flips = set()
    f = f2
    while parent[f][0] is not None:
        f, eid = parent[f]
        flips ^= {eid}
    signed = SignedGraph(g.vertices, tuple(
        Edge(e.id, e.u, e.v, e.odd != (e.id in flips)) for e in g.edges))
    check = plane_embedding(signed, emb.rotation_map())
    if check.odd_face_count != 2:
        raise InputError(f"dual path left {check.odd_face_count} odd faces")
    return signed


@criterion(4, "generated plane blocks reduce with the invariant held")
def _c4():
    t0 = monotonic()
    import random
    rng = random.Random(20260704)
    total_moves = 0
    max_edges = 0
    blocks = 100
    for t in range(blocks):
        n, rows = _random_plane_block_rows(rng)
        g = _graph_from_rows(n, [(a, b, 0) for a, b in rows])
        signed = _sign_two_faces(g, rng)
        max_edges = max(max_edges, signed.n_edges)
        trace = reduce_to_k2eq(signed, invariant="faces")
        if not check_trace(trace):
            return False, f"block {t}: reduction trace failed its checks"
        total_moves += len(trace.moves)
    dt = monotonic() - t0
    if dt >= 300.0:
        return False, f"took {dt:.0f}s, budget 300s"
    return True, (f"{blocks} blocks up to {max_edges} edges, "
                  f"{total_moves} moves total, {dt:.1f}s")


# -- criterion 5 ---------------------------------------------------------------

@criterion(5, "the double prism behaves as the one exceptional block")
def _c5():
    t0 = monotonic()
    dp = double_prism()
    verdict = decide_nu(dp)
    if verdict.answer != "nu_eq_2" or verdict.tree["rule"] != "double-prism":
        return False, f"decided {verdict.answer} via {verdict.tree['rule']}"
    if not validate_verdict(dp, verdict):
        return False, "certificate failed validation"
    try:
        try_reduce(dp, invariant="faces")
    except InputError:
        pass
    else:
        return False, "plane reduction accepted a graph with no two-odd-face embedding"
    trace = reduce_to_k2eq(dp, invariant="block")
    counts = Counter(mv.kind for mv in trace.moves)
    want = {"delta_y": 2, "parallel_series": 6, "parallel": 4}
    if dict(counts) != want:
        return False, f"move inventory {dict(counts)}, wanted {want}"
    if trace.window != 3:
        return False, f"needed window {trace.window}, wanted 3"
    if not check_trace(trace):
        return False, "block-mode trace failed its checks"
    w = brute_force_minor(dp, "k2eq")
    if w is None or not verify_minor_witness(dp, w):
        return False, "mixed-pair minor missing or unverifiable"
    for name in ("k3eq", "k4o"):
        if brute_force_minor(dp, name) is not None:
            return False, f"unexpected {name} minor"
    dt = monotonic() - t0
    if dt >= 60.0:
        return False, f"took {dt:.0f}s, budget 60s"
    return True, (f"12 moves ({', '.join(f'{k} x{v}' for k, v in sorted(want.items()))}), "
                  f"window 3, {dt:.1f}s")


# -- criterion 6 ---------------------------------------------------------------

def _clique_reduced_host(g: SignedGraph, v: int) -> SignedGraph:
    """Host for eliminating v: keep every edge away from v, then join each
    pair of its neighbours once per distinct spoke-parity combination."""
    rows = [(e.u, e.v, e.odd) for e in g.edges if not e.touches(v)]
    nbrs = sorted({e.other(v) for e in g.edges if e.touches(v)})
    spoke = {}
    for u in nbrs:
        key = (u, v) if u < v else (v, u)
        spoke[u] = {e.odd for e in g.pair_edges[key]}
    for a, b in combinations(nbrs, 2):
        for p in sorted({pa != pb for pa in spoke[a] for pb in spoke[b]}):
            rows.append((a, b, p))
    survivors = sorted(set(g.vertices) - {v})
    return SignedGraph.build(
        survivors, [[i + 1, a, b, bool(o)] for i, (a, b, o) in enumerate(rows)])


def _random_bipartite_connected(rng, n_max: int = 6) -> SignedGraph:
    n = rng.randint(2, n_max)
    colors = {v: rng.randint(0, 1) for v in range(1, n + 1)}
    rows = []
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        rows.append((u, v, colors[u] != colors[v]))
    for _ in range(rng.randint(0, 3)):
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        if u == v:
            continue
        rows.append((u, v, colors[u] != colors[v]))
    return _graph_from_rows(n, rows)


@criterion(6, "vertex elimination preserves pattern, semidefiniteness, nullity")
def _c6():
    t0 = monotonic()
    import random
    rng = random.Random(20260606)
    done = 0
    attempts = 0
    while done < 200:
        attempts += 1
        if attempts > 1000:
            return False, f"only {done} eliminations in 1000 attempts"
        g = _random_connected_graph(rng)
        v = rng.choice(sorted(g.vertices))
        strategy = "incidence" if attempts % 2 else "shifted"
        pm = sample_psd(g, seed=attempts, strategy=strategy)
        psd, nul = psd_nullity(pm.values, TOL)
        if not psd:
            return False, f"sample {attempts} ({strategy}) is not semidefinite"
        host = _clique_reduced_host(g, v)
        try:
            sc = schur_complement(pm, {v}, TOL, reduced_host=host)
        except InputError:
            continue  # eliminated block not definite for this sample
        if not pattern_check(sc, TOL):
            return False, f"elimination {attempts} broke the sign pattern"
        psd2, nul2 = psd_nullity(sc.values, TOL)
        if not psd2:
            return False, f"elimination {attempts} lost semidefiniteness"
        if nul2 != nul:
            return False, f"elimination {attempts} moved nullity {nul} to {nul2}"
        done += 1
    inv = 0
    while inv < 50:
        g = _random_bipartite_connected(rng)
        pm = sample_psd(g, seed=1000 + inv, strategy="incidence")
        pd = PatternMatrix(g, pm.values + 0.5 * np.eye(g.n_vertices))
        if not bipartite_inverse_sign_check(pd, TOL):
            return False, f"bipartite inverse check {inv} found a negative entry"
        inv += 1
    dt = monotonic() - t0
    if dt >= 120.0:
        return False, f"took {dt:.0f}s, budget 120s"
    return True, f"{done} eliminations + {inv} bipartite inverses, {dt:.1f}s"


# -- criterion 7 ---------------------------------------------------------------

def _cut_vertex_graph(rng) -> tuple[SignedGraph, int]:
    """Two random cycles glued at one shared vertex; returns (graph, cut)."""
    k1 = rng.randint(3, 4)
    k2 = rng.randint(3, 4)
    left = list(range(1, k1 + 1))
    right = [1] + list(range(k1 + 1, k1 + k2))
    rows = []
    for ring in (left, right):
        for a, b in zip(ring, ring[1:] + ring[:1]):
            rows.append((a, b, rng.random() < 0.5))
    return _graph_from_rows(k1 + k2 - 1, rows), 1


@criterion(7, "kernel independence forbids two singular parts")
def _c7():
    t0 = monotonic()
    import random
    rng = random.Random(20260707)
    holding = 0
    attempts = 0
    while holding < 200:
        attempts += 1
        if attempts > 1000:
            return False, f"only {holding} independence-holding samples in 1000 tries"
        g, cut = _cut_vertex_graph(rng)
        strategy = "incidence" if attempts % 2 else "shifted"
        pm = sample_psd(g, seed=attempts, strategy=strategy)
        if not sap_check(pm, TOL).holds:
            continue
        holding += 1
        rest = delete_vertex(g, cut)
        singular = 0
        for comp in components(rest):
            idx = [pm.index_of(v) for v in comp]
            block = pm.values[np.ix_(idx, idx)]
            _, nul = psd_nullity(block, TOL)
            singular += nul > 0
        if singular > 1:
            return False, f"sample {attempts}: {singular} singular parts coexist"
    built = 0
    for trial in range(20):
        na = 4 + 2 * (trial % 2)
        nb = 4 + 2 * ((trial // 2) % 2)
        left = cycle_graph(na)
        rows = [(e.u, e.v, e.odd) for e in left.edges]
        offset = na
        ring = list(range(offset + 1, offset + nb + 1))
        rows += [(a, b, 0) for a, b in zip(ring, ring[1:] + ring[:1])]
        g = _graph_from_rows(na + nb, rows)
        pm = sample_psd(g, seed=trial, strategy="incidence")
        a = pm.values
        comps = components(g)
        if len(comps) != 2:
            return False, "construction was not a disjoint pair"
        kernels = []
        for comp in comps:
            idx = [pm.index_of(v) for v in comp]
            block = a[np.ix_(idx, idx)]
            w, vecs = np.linalg.eigh(block)
            if abs(w[0]) > TOL * max(1.0, abs(w[-1])):
                return False, f"construction {trial}: part is not singular"
            vec = np.zeros(pm.n)
            for i, j in enumerate(idx):
                vec[j] = vecs[i, 0]
            kernels.append(vec)
        u, w_ = kernels
        crossed = np.outer(u, w_) + np.outer(w_, u)
        sap = sap_check(pm, TOL)
        if sap.holds:
            return False, f"construction {trial}: violation went undetected"
        basis = np.stack([x.reshape(-1) for x in sap.witness], axis=1)
        for x in sap.witness:
            if float(np.max(np.abs(a @ x))) > 1e-6 * max(1.0, float(np.max(np.abs(a)))):
                return False, f"construction {trial}: reported witness fails A X = 0"
        target = crossed.reshape(-1)
        _, res, _, _ = np.linalg.lstsq(basis, target, rcond=None)
        gap = float(np.sqrt(res[0])) if res.size else float(
            np.linalg.norm(basis @ np.linalg.lstsq(basis, target, rcond=None)[0] - target))
        if gap > 1e-6 * float(np.linalg.norm(target)):
            return False, f"construction {trial}: crossed kernel term is outside the witness span"
        built += 1
    dt = monotonic() - t0
    if dt >= 120.0:
        return False, f"took {dt:.0f}s, budget 120s"
    return True, f"{holding} holding samples, {built} constructed violations, {dt:.1f}s"


# -- criterion 8 ---------------------------------------------------------------

def _almost_bipartite_block(rng) -> tuple[SignedGraph, int]:
    """2-connected graph that one vertex deletion makes balanced: an even
    cycle plus coloring-consistent chords, joined to a fresh apex."""
    while True:
        n = rng.randint(4, 7)
        colors = {v: rng.randint(0, 1) for v in range(1, n + 1)}
        order = list(range(1, n + 1))
        rng.shuffle(order)
        ring = list(zip(order, order[1:] + order[:1]))
        rows = [(a, b, colors[a] != colors[b]) for a, b in ring]
        for _ in range(rng.randint(0, 3)):
            u = rng.randint(1, n)
            v = rng.randint(1, n)
            if u == v:
                continue
            rows.append((u, v, colors[u] != colors[v]))
        apex = n + 1
        spokes = rng.sample(range(1, n + 1), rng.randint(2, min(4, n)))
        rows += [(apex, s, rng.random() < 0.5) for s in sorted(spokes)]
        g = _graph_from_rows(apex, rows)
        if is_bipartite(g) or not is_two_connected(g):
            continue
        if not is_bipartite(delete_vertex(g, apex)):
            continue
        return g, apex


@criterion(8, "near-balanced blocks keep sampled nullity at most two")
def _c8():
    t0 = monotonic()
    import random
    rng = random.Random(20260808)
    samples = 0
    worst = 0
    for t in range(100):
        g, _ = _almost_bipartite_block(rng)
        for strategy in ("incidence", "shifted"):
            pm = sample_psd(g, seed=t, strategy=strategy)
            psd, nul = psd_nullity(pm.values, TOL)
            if not psd:
                return False, f"sample {t} ({strategy}) is not semidefinite"
            if nul > 2:
                rows = [(e.u, e.v, e.odd) for e in g.edges]
                return False, f"sample {t} ({strategy}) reached nullity {nul} on {rows}"
            worst = max(worst, nul)
            samples += 1
    dt = monotonic() - t0
    if dt >= 60.0:
        return False, f"took {dt:.0f}s, budget 60s"
    return True, f"{samples} samples, worst nullity {worst}, {dt:.1f}s"


# -- criterion 9 ---------------------------------------------------------------

@criterion(9, "re-signing orbits and contraction parities are exact")
def _c9():
    t0 = monotonic()
    corpus = underlying_multigraphs(5, 7)
    sigmas = 0
    flips = 0
    for g in corpus:
        m = g.n_edges
        vs = g.vertices
        for mask in range(1 << m):
            sg = SignedGraph(vs, tuple(
                Edge(e.id, e.u, e.v, bool(mask >> j & 1))
                for j, e in enumerate(g.edges)))
            sigmas += 1
            orbit = set()
            for vm in range(1 << len(vs)):
                around = frozenset(v for i, v in enumerate(vs) if vm >> i & 1)
                h = resign(sg, around)
                orbit.add(tuple(e.odd for e in h.edges))
            for v in vs:
                h = resign(sg, {v})
                if sign_equivalent(sg, h) is None:
                    return False, f"single-vertex re-signing at {v} not recognized"
                if resign(h, {v}).edges != sg.edges:
                    return False, f"re-signing at {v} is not an involution"
            for e in sg.edges:
                flipped = SignedGraph(vs, tuple(
                    Edge(x.id, x.u, x.v, (not x.odd) if x.id == e.id else x.odd)
                    for x in sg.edges))
                eq = sign_equivalent(sg, flipped) is not None
                if eq != (tuple(x.odd for x in flipped.edges) in orbit):
                    return False, (f"edge flip {e.id}: equivalence test and "
                                   f"orbit membership disagree")
                flips += 1
    contractions = 0
    import random
    rng = random.Random(20260909)
    for g in corpus:
        cycles = all_cycles(g)
        for _ in range(4):
            sg = SignedGraph(g.vertices, tuple(
                Edge(e.id, e.u, e.v, rng.random() < 0.5) for e in g.edges))
            for e in sg.edges:
                mates = {x.id for x in sg.pair_edges[e.pair()]}
                h = contract_edge(sg, e.id)
                for cyc in cycles:
                    if any(eid in mates for eid in cyc.edge_ids):
                        continue
                    relabeled = Walk(
                        tuple(e.u if x == e.v else x for x in cyc.vertices),
                        cyc.edge_ids, closed=True)
                    if walk_parity(h, relabeled) != walk_parity(sg, cyc):
                        return False, (f"contracting edge {e.id} changed the "
                                       f"parity of a surviving cycle")
                    contractions += 1
    dt = monotonic() - t0
    if dt >= 300.0:
        return False, f"took {dt:.0f}s, budget 300s"
    return True, (f"{len(corpus)} multigraphs, {sigmas} signings, {flips} edge "
                  f"flips, {contractions} cycle checks, {dt:.1f}s")


# -- criterion 10 --------------------------------------------------------------

def _run_cli(args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "signednu.cli", *args],
        capture_output=True, cwd=cwd, timeout=300)


@criterion(10, "command line output is deterministic with pinned exit codes")
def _c10():
    t0 = monotonic()
    tmp = tempfile.mkdtemp(prefix="signednu-accept-")
    try:
        with open(os.path.join(tmp, "tri.txt"), "w") as fh:
            fh.write("signed-graph v1 3\n1 2 -\n2 3 +\n1 3 +\n")
        from .graphio import graph_to_records
        with open(os.path.join(tmp, "dp.json"), "w") as fh:
            json.dump(graph_to_records(double_prism()), fh)
        big = cycle_graph(11)
        rows = [(e.u, e.v, "+") for e in big.edges]
        rows += rows[:10]
        with open(os.path.join(tmp, "cap.txt"), "w") as fh:
            fh.write("signed-graph v1 11\n")
            fh.writelines(f"{u} {v} {s}\n" for u, v, s in rows)
        checked = 0
        for args in (["classify", "tri.txt"],
                     ["classify", "dp.json"],
                     ["classify", "tri.txt", "--dot", "tri.dot"],
                     ["reduce", "tri.txt"],
                     ["minor", "dp.json", "--target", "k2eq"]):
            r1 = _run_cli(args, tmp)
            r2 = _run_cli(args, tmp)
            if r1.returncode != 0:
                return False, f"{' '.join(args)} exited {r1.returncode}: {r1.stderr.decode()!r}"
            if r1.stdout != r2.stdout:
                return False, f"{' '.join(args)} output differs between runs"
            checked += 1
        _run_cli(["classify", "tri.txt", "--dot", "a.dot"], tmp)
        _run_cli(["classify", "tri.txt", "--dot", "b.dot"], tmp)
        if (open(os.path.join(tmp, "a.dot"), "rb").read()
                != open(os.path.join(tmp, "b.dot"), "rb").read()):
            return False, "dot drawing differs between runs"
        r = _run_cli(["classify", "tri.txt", "--out", "cert.json"], tmp)
        if r.returncode != 0:
            return False, "could not write a verdict certificate"
        r = _run_cli(["witness", "tri.txt", "--certificate", "cert.json"], tmp)
        if r.returncode != 0:
            return False, f"valid certificate rejected with exit {r.returncode}"
        cert = open(os.path.join(tmp, "cert.json")).read()
        with open(os.path.join(tmp, "bad.json"), "w") as fh:
            fh.write(cert.replace("nu_eq_2", "nu_eq_9"))
        r = _run_cli(["witness", "tri.txt", "--certificate", "bad.json"], tmp)
        if r.returncode != 1:
            return False, f"tampered certificate exited {r.returncode}, wanted 1"
        with open(os.path.join(tmp, "garbled.txt"), "w") as fh:
            fh.write("signed-graph v1 2\n1 3 +\n")
        r = _run_cli(["classify", "garbled.txt"], tmp)
        if r.returncode != 1:
            return False, f"malformed input exited {r.returncode}, wanted 1"
        r = _run_cli(["reduce", "cap.txt"], tmp)
        if r.returncode != 2:
            return False, f"oversized reduction exited {r.returncode}, wanted 2"
        r = _run_cli(["minor", "missing.txt", "--target", "k2eq"], tmp)
        if r.returncode != 1:
            return False, f"missing file exited {r.returncode}, wanted 1"
    finally:
        shutil.rmtree(tmp, ignore_errors=True)
    dt = monotonic() - t0
    if dt >= 120.0:
        return False, f"took {dt:.0f}s, budget 120s"
    return True, f"{checked} commands byte-stable, 4 failure modes pinned, {dt:.1f}s"
