"""Local reductions driving a plane block with two odd faces down to the
two-vertex mixed pair.

Six moves.  Four keep the level exactly: merging two parallel edges of equal
parity, eliminating a degree-2 vertex into a single edge of the combined
parity, contracting the third edge at a degree-3 vertex carrying a mixed
pair, and deleting the triangle edge opposite a degree-2 corner of an even
triangle.  Two never lower it: replacing a degree-3 star by its triangle
(parities combined pairwise) and replacing an even triangle by a star whose
spoke is odd exactly at a corner with two odd triangle edges.

The reducer searches depth-first in a fixed preference order, memoising
states by canonical key, and insists the vertex+edge count drops within a
sliding window of moves (window 3, escalating to 6 and 12 before giving
up)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

from . import families
from .canonical import labeled_key, signed_isomorphic
from .classify import two_odd_faces
from .core import Edge, SignedGraph, contract_edge, delete_edge, \
    is_bipartite, is_block
from .errors import CapacityError, InputError, InternalInconsistencyError, \
    MoveError

EDGE_CAP = 20
PREFERENCE = ("parallel", "series", "parallel_series", "delta_p2",
              "y_delta", "delta_y")
WINDOW_LADDER = (3, 6, 12)
GROWTH_CAP = 4  # measure may never exceed the start by more than this

MOVE_LEMMA = {
    "parallel": "level-equal-parity-merge",
    "series": "level-equal-path-elimination",
    "parallel_series": "level-equal-pair-contraction",
    "delta_p2": "level-equal-even-chord-drop",
    "y_delta": "level-monotone-star-to-triangle",
    "delta_y": "level-monotone-triangle-to-star",
}


@dataclass(frozen=True)
class Move:
    kind: str
    anchor: tuple
    removed_edges: tuple = ()
    removed_vertices: tuple = ()
    added_edges: tuple = ()  # (id, u, v, odd) rows
    added_vertices: tuple = ()

    @property
    def lemma(self) -> str:
        return MOVE_LEMMA[self.kind]


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    failed_at: Optional[int] = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class ReductionTrace:
    initial: SignedGraph
    moves: tuple
    final: SignedGraph
    window: int
    invariant: str = "faces"


def measure(g: SignedGraph) -> int:
    return g.n_vertices + g.n_edges


# -- the six moves -------------------------------------------------------------


def parallel_reduce(g: SignedGraph, a: int, b: int):
    """Drop the larger-id edge of a same-parity parallel pair."""
    ea, eb = g.edge(a), g.edge(b)
    if a == b or ea.pair() != eb.pair():
        raise MoveError("edges must be parallel")
    if ea.odd != eb.odd:
        raise MoveError("edges must have equal parity")
    keep, drop = min(a, b), max(a, b)
    h = delete_edge(g, drop)
    return h, Move("parallel", (keep, drop), removed_edges=(drop,))


def series_reduce(g: SignedGraph, v: int):
    """Replace the two edges at a degree-2 vertex with one edge carrying
    their combined parity."""
    if not g.has_vertex(v):
        raise MoveError(f"no vertex {v}")
    es = g.adjacency[v]
    if len(es) != 2:
        raise MoveError("series vertex must have degree 2")
    e1, e2 = es
    u, w = e1.other(v), e2.other(v)
    if u == w:
        raise MoveError("series edges must lead to distinct vertices")
    nid = g.fresh_edge_id()
    new = Edge(nid, min(u, w), max(u, w), e1.odd != e2.odd)
    h = SignedGraph(tuple(x for x in g.vertices if x != v),
                    tuple(e for e in g.edges if e.id not in (e1.id, e2.id))
                    + (new,))
    return h, Move("series", (v,),
                   removed_edges=tuple(sorted((e1.id, e2.id))),
                   removed_vertices=(v,),
                   added_edges=((new.id, new.u, new.v, new.odd),))


def parallel_series_reduce(g: SignedGraph, v: int, third: int):
    """At a degree-3 vertex carrying a mixed parallel pair, contract the
    remaining edge."""
    if not g.has_vertex(v):
        raise MoveError(f"no vertex {v}")
    es = g.adjacency[v]
    if len(es) != 3:
        raise MoveError("vertex must have degree 3")
    t = g.edge(third)
    if not t.touches(v):
        raise MoveError("third edge must touch the vertex")
    pair = [e for e in es if e.id != third]
    if len(pair) != 2 or pair[0].pair() != pair[1].pair():
        raise MoveError("the other two edges must be parallel")
    if pair[0].odd == pair[1].odd:
        raise MoveError("the parallel pair must be mixed")
    if t.other(v) == pair[0].other(v):
        raise MoveError("third edge must leave the pair's endpoints")
    h = contract_edge(g, third)
    return h, Move("parallel_series", (v, third),
                   removed_edges=(third,),
                   removed_vertices=(t.v,))


def y_delta_reduce(g: SignedGraph, v: int):
    """Replace a degree-3 star by the triangle of combined parities."""
    if not g.has_vertex(v):
        raise MoveError(f"no vertex {v}")
    es = g.adjacency[v]
    if len(es) != 3:
        raise MoveError("star vertex must have degree 3")
    spokes = {}
    for e in es:
        w = e.other(v)
        if w in spokes:
            raise MoveError("star needs three distinct neighbors")
        spokes[w] = e.odd
    ns = sorted(spokes)
    base = g.fresh_edge_id()
    added = []
    for k, (x, y) in enumerate(((ns[0], ns[1]), (ns[0], ns[2]),
                                (ns[1], ns[2]))):
        added.append(Edge(base + k, x, y, spokes[x] != spokes[y]))
    h = SignedGraph(tuple(x for x in g.vertices if x != v),
                    tuple(e for e in g.edges if not e.touches(v))
                    + tuple(added))
    return h, Move("y_delta", (v,),
                   removed_edges=tuple(sorted(e.id for e in es)),
                   removed_vertices=(v,),
                   added_edges=tuple((e.id, e.u, e.v, e.odd) for e in added))


def delta_y_reduce(g: SignedGraph, a: int, b: int, c: int):
    """Replace an even triangle (given by its three edge ids) by a star on a
    fresh hub; a spoke is odd exactly where both triangle edges are odd."""
    ids = tuple(sorted((a, b, c)))
    if len(set(ids)) != 3:
        raise MoveError("need three distinct edges")
    es = [g.edge(i) for i in ids]
    pairs = {e.pair() for e in es}
    verts = sorted({x for e in es for x in (e.u, e.v)})
    if len(verts) != 3 or len(pairs) != 3:
        raise MoveError("edges must form a triangle")
    if sum(e.odd for e in es) % 2:
        raise MoveError("triangle must be even")
    at = {v: [e for e in es if e.touches(v)] for v in verts}
    hub = g.fresh_vertex_id()
    base = g.fresh_edge_id()
    added = []
    for k, v in enumerate(verts):
        e1, e2 = at[v]
        added.append(Edge(base + k, v, hub, e1.odd and e2.odd))
    h = SignedGraph(g.vertices + (hub,),
                    tuple(e for e in g.edges if e.id not in ids)
                    + tuple(added))
    return h, Move("delta_y", ids,
                   removed_edges=ids,
                   added_vertices=(hub,),
                   added_edges=tuple((e.id, e.u, e.v, e.odd) for e in added))


def delta_p2_reduce(g: SignedGraph, v: int, opposite: int):
    """In a triangle whose only degree-2 corner is v, delete the edge
    opposite v."""
    if not g.has_vertex(v):
        raise MoveError(f"no vertex {v}")
    es = g.adjacency[v]
    if len(es) != 2:
        raise MoveError("corner must have degree 2")
    a, b = es[0].other(v), es[1].other(v)
    if a == b:
        raise MoveError("corner edges must lead to distinct vertices")
    opp = g.edge(opposite)
    if opp.pair() != (min(a, b), max(a, b)):
        raise MoveError("opposite edge must join the other two corners")
    if g.degree(a) == 2 or g.degree(b) == 2:
        raise MoveError("the degree-2 corner must be unique")
    h = delete_edge(g, opposite)
    return h, Move("delta_p2", (v, opposite), removed_edges=(opposite,))


_OPS = {
    "parallel": parallel_reduce,
    "series": series_reduce,
    "parallel_series": parallel_series_reduce,
    "y_delta": y_delta_reduce,
    "delta_y": delta_y_reduce,
    "delta_p2": delta_p2_reduce,
}


def apply_move(g: SignedGraph, move: Move) -> SignedGraph:
    """Re-run a recorded move; the regenerated record must match."""
    if move.kind not in _OPS:
        raise MoveError(f"unknown move kind {move.kind!r}")
    h, redone = _OPS[move.kind](g, *move.anchor)
    if redone != move:
        raise MoveError(f"replayed {move.kind} move does not match its record")
    return h


# -- candidate enumeration -----------------------------------------------------


def candidate_moves(g: SignedGraph):
    """All applicable moves in engine preference order.  Interchangeable
    same-parity merges collapse to the least pair of ids.  Triangle moves
    are restricted to even triangles (the level transport needs that)."""
    for pair, es in sorted(g.pair_edges.items()):
        for parity in (False, True):
            grp = sorted(e.id for e in es if e.odd == parity)
            if len(grp) >= 2:
                yield ("parallel", (grp[0], grp[1]))
    for v in sorted(g.vertices):
        es = g.adjacency[v]
        if len(es) == 2 and es[0].other(v) != es[1].other(v):
            yield ("series", (v,))
    for v in sorted(g.vertices):
        es = g.adjacency[v]
        if len(es) != 3:
            continue
        by_nb = {}
        for e in es:
            by_nb.setdefault(e.other(v), []).append(e)
        if len(by_nb) != 2:
            continue
        (pair_es, single_es) = sorted(by_nb.values(), key=len, reverse=True)
        if len(pair_es) != 2 or pair_es[0].odd == pair_es[1].odd:
            continue
        yield ("parallel_series", (v, single_es[0].id))
    for v in sorted(g.vertices):
        es = g.adjacency[v]
        if len(es) != 2:
            continue
        a, b = es[0].other(v), es[1].other(v)
        if a == b or g.degree(a) == 2 or g.degree(b) == 2:
            continue
        path_odd = es[0].odd != es[1].odd
        for opp in g.pair_edges.get((min(a, b), max(a, b)), ()):
            if opp.odd == path_odd:  # even triangle only
                yield ("delta_p2", (v, opp.id))
    for v in sorted(g.vertices):
        es = g.adjacency[v]
        if len(es) == 3 and len({e.other(v) for e in es}) == 3:
            yield ("y_delta", (v,))
    triangles = []
    for verts in combinations(sorted(g.vertices), 3):
        a, b, c = verts
        lists = [g.pair_edges.get((a, b), ()), g.pair_edges.get((a, c), ()),
                 g.pair_edges.get((b, c), ())]
        if not all(lists):
            continue
        for combo in product(*lists):
            if sum(e.odd for e in combo) % 2 == 0:
                # an exchange consuming a triangle completely beats one that
                # leaves parallel mates of its edges behind
                mates = sum(len(lst) > 1 for lst in lists)
                triangles.append((mates, verts,
                                  tuple(sorted(e.id for e in combo))))
    for _, _, ids in sorted(triangles):
        yield ("delta_y", ids)


# -- the reducer ---------------------------------------------------------------


def _is_k2eq(g: SignedGraph) -> bool:
    if g.n_vertices != 2 or g.n_edges != 2:
        return False
    e1, e2 = g.edges
    return e1.pair() == e2.pair() and e1.odd != e2.odd


def _try_reduce(g: SignedGraph, check_faces: bool, window: int,
                state_budget: int):
    face_ok = {}

    def has_two_odd(h, key):
        if key not in face_ok:
            face_ok[key] = two_odd_faces(h) is not None
        return face_ok[key]

    dead = set()
    visits = 0
    cap = measure(g) + GROWTH_CAP

    def rec(h, key, measures):
        nonlocal visits
        if _is_k2eq(h):
            return []
        visits += 1
        if visits > state_budget:
            raise CapacityError("reduction search budget exhausted")
        state = (key, tuple(measures[-window:]))
        if state in dead:
            return None
        for kind, anchor in candidate_moves(h):
            h2, mv = _OPS[kind](h, *anchor)
            mu = measure(h2)
            if mu > cap:
                continue
            if len(measures) >= window and mu >= measures[-window]:
                continue
            if is_bipartite(h2) or not is_block(h2):
                continue
            key2 = labeled_key(h2)
            if check_faces and not has_two_odd(h2, key2):
                continue
            tail = rec(h2, key2, measures + [mu])
            if tail is not None:
                return [mv] + tail
        dead.add(state)
        return None

    return rec(g, labeled_key(g), [measure(g)])


def try_reduce(g: SignedGraph, invariant: str = "faces",
               state_budget: int = 500_000) -> Optional[ReductionTrace]:
    """Search for a move sequence ending at the two-vertex mixed pair, or
    None when the escalation ladder exhausts.  invariant='faces' keeps every
    intermediate graph a block with a two-odd-face plane embedding;
    invariant='block' only keeps it a block (used for the special graphs
    that reduce without staying plane)."""
    if invariant not in ("faces", "block"):
        raise InputError(f"unknown invariant {invariant!r}")
    if g.n_edges > EDGE_CAP:
        raise CapacityError(f"reduction caps at {EDGE_CAP} edges")
    if not is_block(g):
        raise InputError("reduction needs a block")
    if is_bipartite(g):
        raise InputError("reduction needs an odd cycle")
    if invariant == "faces" and two_odd_faces(g) is None:
        raise InputError("reduction needs a plane embedding with two odd faces")
    for window in WINDOW_LADDER:
        moves = _try_reduce(g, invariant == "faces", window, state_budget)
        if moves is not None:
            final = g
            for mv in moves:
                final = apply_move(final, mv)
            return ReductionTrace(g, tuple(moves), final, window, invariant)
    return None


def reduce_to_k2eq(g: SignedGraph, invariant: str = "faces",
                   state_budget: int = 500_000) -> ReductionTrace:
    """Like try_reduce, but an exhausted search is an internal error: on the
    documented inputs the move set is guaranteed to succeed."""
    trace = try_reduce(g, invariant, state_budget)
    if trace is None:
        raise InternalInconsistencyError("reduction search exhausted")
    return trace


def replay(trace: ReductionTrace) -> ReplayResult:
    """Re-apply every move mechanically; fails with the index of the first
    move that no longer applies or mismatches, or the move count when the
    final graph differs."""
    h = trace.initial
    for i, mv in enumerate(trace.moves):
        try:
            h = apply_move(h, mv)
        except (MoveError, InputError):
            return ReplayResult(False, i)
    if h != trace.final:
        return ReplayResult(False, len(trace.moves))
    return ReplayResult(True, None)


def trace_to_records(trace: ReductionTrace) -> dict:
    from .graphio import graph_to_raw
    return {
        "initial": graph_to_raw(trace.initial),
        "final": graph_to_raw(trace.final),
        "window": trace.window,
        "invariant": trace.invariant,
        "moves": [{
            "kind": m.kind,
            "anchor": list(m.anchor),
            "removed_edges": list(m.removed_edges),
            "removed_vertices": list(m.removed_vertices),
            "added_edges": [list(r) for r in m.added_edges],
            "added_vertices": list(m.added_vertices),
            "lemma": m.lemma,
        } for m in trace.moves],
    }


def trace_from_records(obj) -> ReductionTrace:
    from .graphio import graph_from_raw
    try:
        moves = tuple(
            Move(m["kind"], tuple(m["anchor"]),
                 tuple(m["removed_edges"]), tuple(m["removed_vertices"]),
                 tuple(tuple(r) for r in m["added_edges"]),
                 tuple(m["added_vertices"]))
            for m in obj["moves"])
        for m, rec in zip(moves, obj["moves"]):
            if rec.get("lemma", MOVE_LEMMA.get(m.kind)) != MOVE_LEMMA.get(m.kind):
                raise InputError(f"move {m.kind} carries a foreign lemma tag")
        return ReductionTrace(graph_from_raw(obj["initial"]), moves,
                              graph_from_raw(obj["final"]),
                              int(obj["window"]),
                              obj.get("invariant", "faces"))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed reduction trace: {exc}")


def check_trace(trace: ReductionTrace, invariant: Optional[str] = None) -> bool:
    """Replay plus the structural guarantees: every intermediate graph is a
    non-bipartite block (with a two-odd-face embedding in faces mode), every
    move carries its fixed lemma tag, the measure drops across the recorded
    window, and the final graph is the two-vertex mixed pair."""
    if invariant is None:
        invariant = trace.invariant
    if not replay(trace):
        return False
    h = trace.initial
    graphs = [h]
    for mv in trace.moves:
        if mv.lemma != MOVE_LEMMA[mv.kind]:
            return False
        h = apply_move(h, mv)
        graphs.append(h)
    for h in graphs[1:]:
        if is_bipartite(h) or not is_block(h):
            return False
        if invariant == "faces" and two_odd_faces(h) is None:
            return False
    ms = [measure(x) for x in graphs]
    for t in range(trace.window, len(ms)):
        if not ms[t] < ms[t - trace.window]:
            return False
    return signed_isomorphic(trace.final, families.k2_eq()) is not None
