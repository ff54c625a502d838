"""Signed multigraphs and the primitive operations everything else builds on.

A signed graph is a multigraph together with a parity (odd/even) on every
edge.  Parallel edges are allowed, loops are not.  Re-signing around a vertex
set flips the parity of the edges with exactly one end inside the set; all
notions defined here (cycle parity, bipartiteness, minors) are invariant
under re-signing.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .errors import InputError


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    odd: bool

    def other(self, vertex: int) -> int:
        if vertex == self.u:
            return self.v
        if vertex == self.v:
            return self.u
        raise InputError(f"edge {self.id} does not touch vertex {vertex}")

    def touches(self, vertex: int) -> bool:
        return vertex == self.u or vertex == self.v

    def pair(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)


@dataclass(frozen=True)
class Walk:
    """A walk given as alternating vertex / edge-id sequences."""

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]
    closed: bool = False

    def __post_init__(self):
        if len(self.vertices) != len(self.edge_ids) + 1:
            raise InputError("walk needs one more vertex than edges")
        if self.closed and self.vertices and self.vertices[0] != self.vertices[-1]:
            raise InputError("closed walk must start and end at the same vertex")


@dataclass(frozen=True)
class SignedGraph:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise InputError("duplicate vertex id")
        ids = set()
        for e in self.edges:
            if e.u == e.v:
                raise InputError(f"loop at vertex {e.u} (edge {e.id})")
            if e.u not in seen or e.v not in seen:
                raise InputError(f"edge {e.id} uses an undeclared vertex")
            if e.id in ids:
                raise InputError(f"duplicate edge id {e.id}")
            ids.add(e.id)

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def build(vertices: Iterable[int], edges: Iterable) -> "SignedGraph":
        out = []
        for e in edges:
            if isinstance(e, Edge):
                out.append(e)
            else:
                eid, u, v, odd = e
                out.append(Edge(int(eid), int(u), int(v), bool(odd)))
        return SignedGraph(tuple(int(v) for v in vertices), tuple(out))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable) -> "SignedGraph":
        """Vertices 1..n, edges numbered 1..m in the given order of (u, v, odd)."""
        edges = [Edge(i + 1, int(u), int(v), bool(odd))
                 for i, (u, v, odd) in enumerate(pairs)]
        return cls(tuple(range(1, n + 1)), tuple(edges))

    # -- cached views ---------------------------------------------------------

    @cached_property
    def _edge_by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append(e)
            adj[e.v].append(e)
        return {v: tuple(sorted(es, key=lambda e: e.id)) for v, es in adj.items()}

    @cached_property
    def pair_edges(self) -> dict:
        out = {}
        for e in self.edges:
            out.setdefault(e.pair(), []).append(e)
        return {p: tuple(es) for p, es in out.items()}

    # -- simple accessors -----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise InputError(f"no edge with id {edge_id}") from None

    def has_vertex(self, v: int) -> bool:
        return v in self.adjacency

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted({e.other(v) for e in self.adjacency[v]}))

    def fresh_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=0) + 1

    def fresh_vertex_id(self) -> int:
        return max(self.vertices, default=0) + 1


# -- re-signing and parity ----------------------------------------------------

def resign(g: SignedGraph, around: Iterable[int]) -> SignedGraph:
    """Flip the parity of every edge with exactly one end in `around`."""
    cut = set(around)
    unknown = cut - set(g.vertices)
    if unknown:
        raise InputError(f"re-signing around unknown vertices {sorted(unknown)}")
    edges = tuple(
        Edge(e.id, e.u, e.v, e.odd != ((e.u in cut) != (e.v in cut)))
        for e in g.edges
    )
    return SignedGraph(g.vertices, edges)


def walk_parity(g: SignedGraph, walk: Walk) -> bool:
    """True when the walk uses an odd number of odd edges."""
    odd = False
    for a, eid, b in zip(walk.vertices, walk.edge_ids, walk.vertices[1:]):
        e = g.edge(eid)
        if not ((e.u == a and e.v == b) or (e.u == b and e.v == a)):
            raise InputError(f"edge {eid} does not join {a} and {b}")
        odd ^= e.odd
    return odd


def parity_coloring(g: SignedGraph) -> Optional[dict]:
    """2-coloring with every odd edge bichromatic and every even edge
    monochromatic, or None when no such coloring exists (an odd cycle)."""
    for es in g.pair_edges.values():
        if len({e.odd for e in es}) == 2:
            return None
    color = {}
    for root in sorted(g.vertices):
        if root in color:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for e in g.adjacency[v]:
                w = e.other(v)
                want = color[v] ^ e.odd
                if w not in color:
                    color[w] = want
                    queue.append(w)
                elif color[w] != want:
                    return None
    return color


def is_bipartite(g: SignedGraph) -> bool:
    """No cycle of odd parity."""
    return parity_coloring(g) is not None


def odd_cycle(g: SignedGraph) -> Optional[Walk]:
    """Some cycle of odd parity, as a closed walk, or None."""
    for c in all_cycles(g):
        if walk_parity(g, c):
            return c
    return None


def sign_equivalent(g1: SignedGraph, g2: SignedGraph):
    """Vertex set U with the parities of g2 equal to g1 re-signed around U,
    or None.  Both graphs must share vertices and underlying edges."""
    if g1.vertices != g2.vertices:
        raise InputError("sign comparison needs identical vertex tuples")
    u1 = {e.id: (e.pair()) for e in g1.edges}
    u2 = {e.id: (e.pair()) for e in g2.edges}
    if u1 != u2:
        raise InputError("sign comparison needs identical underlying edges")
    # Edges whose parity differs must form a cut; check by 2-coloring the
    # graph whose "odd" edges are exactly the differing ones.
    parity2 = {e.id: e.odd for e in g2.edges}
    diff = {e.id for e in g1.edges if e.odd != parity2[e.id]}
    marked = SignedGraph(g1.vertices, tuple(
        Edge(e.id, e.u, e.v, e.id in diff) for e in g1.edges))
    color = parity_coloring(marked)
    if color is None:
        return None
    return frozenset(v for v, c in color.items() if c == 1)


# -- minor operations ---------------------------------------------------------

def delete_edge(g: SignedGraph, edge_id: int) -> SignedGraph:
    g.edge(edge_id)
    return SignedGraph(g.vertices, tuple(e for e in g.edges if e.id != edge_id))


def delete_vertex(g: SignedGraph, v: int) -> SignedGraph:
    if not g.has_vertex(v):
        raise InputError(f"no vertex {v}")
    return SignedGraph(tuple(x for x in g.vertices if x != v),
                       tuple(e for e in g.edges if not e.touches(v)))


def contract_edge(g: SignedGraph, edge_id: int) -> SignedGraph:
    """Contract an edge.  An odd edge is first made even by re-signing around
    one endpoint, so every cycle through the edge keeps its parity.  Parallel
    mates collapse to loops and are discarded.  The surviving endpoint is the
    edge's first endpoint."""
    e = g.edge(edge_id)
    h = resign(g, (e.u,)) if e.odd else g
    u, v = e.u, e.v
    edges = []
    for f in h.edges:
        if f.id == edge_id:
            continue
        a = u if f.u == v else f.u
        b = u if f.v == v else f.v
        if a == b:
            continue
        edges.append(Edge(f.id, a, b, f.odd))
    return SignedGraph(tuple(x for x in g.vertices if x != v), tuple(edges))


def strip_isolated(g: SignedGraph) -> SignedGraph:
    kept = tuple(v for v in g.vertices if g.degree(v) > 0)
    if len(kept) == len(g.vertices):
        return g
    return SignedGraph(kept, g.edges)


def edge_subgraph(g: SignedGraph, edge_ids: Iterable[int]) -> SignedGraph:
    """Subgraph on the given edges; vertices are exactly their endpoints."""
    wanted = set(edge_ids)
    unknown = wanted - {e.id for e in g.edges}
    if unknown:
        raise InputError(f"unknown edge ids {sorted(unknown)}")
    edges = tuple(e for e in g.edges if e.id in wanted)
    verts = sorted({x for e in edges for x in (e.u, e.v)})
    return SignedGraph(tuple(verts), edges)


def vertex_induced(g: SignedGraph, vs: Iterable[int]) -> SignedGraph:
    keep = set(vs)
    unknown = keep - set(g.vertices)
    if unknown:
        raise InputError(f"unknown vertices {sorted(unknown)}")
    return SignedGraph(tuple(v for v in g.vertices if v in keep),
                       tuple(e for e in g.edges if e.u in keep and e.v in keep))


# -- connectivity -------------------------------------------------------------

def components(g: SignedGraph) -> list[tuple[int, ...]]:
    """Vertex sets of the connected components, each sorted, ordered by their
    smallest vertex."""
    seen = set()
    out = []
    for root in sorted(g.vertices):
        if root in seen:
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for e in g.adjacency[v]:
                w = e.other(v)
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(tuple(sorted(comp)))
    return out


def is_connected(g: SignedGraph) -> bool:
    return len(components(g)) <= 1


def _block_decomposition(g: SignedGraph):
    """Edge-id groups of the biconnected components plus the cut vertices."""
    index = {}
    low = {}
    counter = itertools.count()
    stack = []
    groups = []
    cuts = set()
    seen_edges = set()

    def dfs(root):
        # Iterative DFS so deep paths cannot hit the recursion limit.  Each
        # frame is (vertex, id of the tree edge that reached it, iterator).
        work = [(root, None, iter(g.adjacency[root]))]
        index[root] = low[root] = next(counter)
        root_children = 0
        while work:
            v, parent_eid, it = work[-1]
            advanced = False
            for e in it:
                if e.id in seen_edges:
                    continue
                w = e.other(v)
                if w not in index:
                    seen_edges.add(e.id)
                    stack.append(e)
                    index[w] = low[w] = next(counter)
                    work.append((w, e.id, iter(g.adjacency[w])))
                    if v == root:
                        root_children += 1
                    advanced = True
                    break
                # back edge; forward edges cannot occur since a finished
                # vertex has consumed every incident edge
                seen_edges.add(e.id)
                stack.append(e)
                low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= index[pv]:
                    group = []
                    while True:
                        popped = stack.pop()
                        group.append(popped.id)
                        if popped.id == parent_eid:
                            break
                    groups.append(sorted(group))
                    if pv != root:
                        cuts.add(pv)
        if root_children >= 2:
            cuts.add(root)

    for root in sorted(g.vertices):
        if root not in index:
            dfs(root)
            if stack:
                raise AssertionError("edge stack not drained")
    return groups, cuts


def blocks(g: SignedGraph) -> list[SignedGraph]:
    """Biconnected components as signed subgraphs; isolated vertices give
    singleton blocks.  Ordered by smallest edge id (edge-bearing blocks
    first), then by vertex."""
    groups, _ = _block_decomposition(g)
    out = [edge_subgraph(g, grp) for grp in sorted(groups)]
    for v in sorted(g.vertices):
        if g.degree(v) == 0:
            out.append(SignedGraph((v,), ()))
    return out


def cut_vertices(g: SignedGraph) -> tuple[int, ...]:
    _, cuts = _block_decomposition(g)
    return tuple(sorted(cuts))


def is_two_connected(g: SignedGraph) -> bool:
    return g.n_vertices >= 3 and is_connected(g) and not cut_vertices(g)


def is_block(g: SignedGraph) -> bool:
    """Connected with no cut vertex (single biconnected component)."""
    return is_connected(g) and len(blocks(g)) == 1


# -- cycle enumeration --------------------------------------------------------

def all_cycles(g: SignedGraph, max_len: Optional[int] = None) -> list[Walk]:
    """Every simple cycle (length >= 2), once per edge set, smallest vertex
    first.  Exhaustive; intended for desk-scale graphs."""
    found = {}

    def record(verts, eids):
        key = frozenset(eids)
        if key not in found:
            found[key] = Walk(tuple(verts), tuple(eids), closed=True)

    for es in g.pair_edges.values():
        for e, f in itertools.combinations(es, 2):
            a, b = e.pair()
            record([a, b, a], [min(e.id, f.id), max(e.id, f.id)])

    def extend(start, path_v, path_e, used):
        v = path_v[-1]
        if max_len is not None and len(path_e) >= max_len:
            return
        for e in g.adjacency[v]:
            w = e.other(v)
            if w == start and len(path_e) >= 2:
                record(path_v + [start], path_e + [e.id])
            elif w not in used and w > start:
                used.add(w)
                extend(start, path_v + [w], path_e + [e.id], used)
                used.remove(w)

    for start in sorted(g.vertices):
        extend(start, [start], [], {start})
    return sorted(found.values(), key=lambda w: (len(w.edge_ids), w.edge_ids))
