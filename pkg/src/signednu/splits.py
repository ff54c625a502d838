"""Edge-partition splits along 0, 1, 2, or 3 shared vertices.

A k-split partitions the edges into two nonempty sides whose vertex sets
share exactly k vertices.  Sides are rebuilt into smaller parts whose levels
combine back: for kinds 0-2 the level of the whole is the maximum over the
parts, for kind 3 it equals the level of the single rebuilt part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, combinations, product
from typing import Optional

from .core import (Edge, SignedGraph, components, cut_vertices, edge_subgraph,
                   is_connected, parity_coloring, vertex_induced)
from .errors import InternalInconsistencyError


@dataclass
class SplitDescription:
    kind: int
    separator: tuple[int, ...]
    side_edges: tuple[tuple[int, ...], ...]
    parts: tuple[SignedGraph, ...]
    strong: Optional[bool] = None
    #: per part, new edge id -> {"role": ..., "parity": bool, ...}
    virtual_edges: tuple[dict, ...] = field(default_factory=tuple)
    hub: Optional[int] = None  # kind 3: the fresh vertex standing in for side 2


def _units(g: SignedGraph, sep: set) -> list[tuple[int, ...]]:
    """Indivisible edge groups relative to a separator: each component of
    g - sep claims its incident edges; separator-to-separator edges stand
    alone.  Ordered by component (smallest vertex) then by edge id."""
    rest = [v for v in g.vertices if v not in sep]
    sub = vertex_induced(g, rest)
    units = []
    for comp in components(sub):
        eids = sorted({e.id for v in comp for e in g.adjacency[v]})
        if eids:
            units.append(tuple(eids))
    for p, es in sorted(g.pair_edges.items()):
        if p[0] in sep and p[1] in sep:
            for e in es:
                units.append((e.id,))
    return units


def _check_parts_shrink(g: SignedGraph, desc: SplitDescription) -> SplitDescription:
    for part in desc.parts:
        if part.n_edges >= g.n_edges:
            raise InternalInconsistencyError("split part failed to shrink")
        if part.n_edges == 0:
            raise InternalInconsistencyError("split produced an empty part")
    return desc


def find_01_split(g: SignedGraph) -> Optional[SplitDescription]:
    """Kind 0 (two edge-bearing components apart) or kind 1 (around the
    smallest cut vertex), or None."""
    if g.n_edges < 2:
        return None
    edge_comps = []
    for comp in components(g):
        cs = set(comp)
        eids = sorted(e.id for e in g.edges if e.u in cs)
        if eids:
            edge_comps.append(tuple(eids))
    if len(edge_comps) >= 2:
        e1 = edge_comps[0]
        e2 = tuple(sorted(chain(*edge_comps[1:])))
        parts = (edge_subgraph(g, e1), edge_subgraph(g, e2))
        return _check_parts_shrink(g, SplitDescription(
            kind=0, separator=(), side_edges=(e1, e2), parts=parts,
            virtual_edges=({}, {})))
    cuts = cut_vertices(g)
    if not cuts:
        return None
    v = cuts[0]
    units = _units(g, {v})
    e1 = units[0]
    e2 = tuple(sorted(chain(*units[1:])))
    parts = (edge_subgraph(g, e1), edge_subgraph(g, e2))
    return _check_parts_shrink(g, SplitDescription(
        kind=1, separator=(v,), side_edges=(e1, e2), parts=parts,
        virtual_edges=({}, {})))


def _fits_inside_k2eq(side: SignedGraph, u: int, v: int) -> bool:
    """Nothing but direct u-v edges, at most one of each parity."""
    for e in side.edges:
        if {e.u, e.v} != {u, v}:
            return False
    ne = sum(1 for e in side.edges if not e.odd)
    return ne <= 1 and side.n_edges - ne <= 1


def _replacement_edges(g: SignedGraph, other: SignedGraph, u: int, v: int,
                       next_id: int):
    """Edges standing in for the far side of a 2-split: a single u-v edge
    carrying the far side's unique path parity when it is bipartite, an even
    and an odd u-v edge when it is not."""
    coloring = parity_coloring(other)
    if coloring is None:
        return ([Edge(next_id, u, v, False), Edge(next_id + 1, u, v, True)],
                {next_id: {"role": "far-side-nonbipartite", "parity": False},
                 next_id + 1: {"role": "far-side-nonbipartite", "parity": True}})
    odd = bool(coloring[u] ^ coloring[v])
    return ([Edge(next_id, u, v, odd)],
            {next_id: {"role": "far-side-path", "parity": odd}})


def find_2_split(g: SignedGraph) -> Optional[SplitDescription]:
    """First valid 2-split in pair order, unit-assignment order.  Valid means
    both sides connected, sharing exactly the two chosen vertices, and
    neither fitting inside the two-vertex mixed pair.  Returns the rebuilt
    parts: each side plus replacement edges for the far side."""
    verts = sorted(g.vertices)
    for u, v in combinations(verts, 2):
        units = _units(g, {u, v})
        if len(units) < 2:
            continue
        for assign in product((1, 2), repeat=len(units) - 1):
            side2 = [units[i + 1] for i, s in enumerate(assign) if s == 2]
            if not side2:
                continue
            side1 = [units[0]] + [units[i + 1]
                                  for i, s in enumerate(assign) if s == 1]
            e1 = tuple(sorted(chain(*side1)))
            e2 = tuple(sorted(chain(*side2)))
            s1 = edge_subgraph(g, e1)
            s2 = edge_subgraph(g, e2)
            if set(s1.vertices) & set(s2.vertices) != {u, v}:
                continue
            if not (is_connected(s1) and is_connected(s2)):
                continue
            if _fits_inside_k2eq(s1, u, v) or _fits_inside_k2eq(s2, u, v):
                continue
            base = g.fresh_edge_id()
            new1, prov1 = _replacement_edges(g, s2, u, v, base)
            new2, prov2 = _replacement_edges(g, s1, u, v, base)
            parts = (SignedGraph(s1.vertices, s1.edges + tuple(new1)),
                     SignedGraph(s2.vertices, s2.edges + tuple(new2)))
            strong = (parity_coloring(s1) is None
                      and parity_coloring(s2) is None)
            return _check_parts_shrink(g, SplitDescription(
                kind=2, separator=(u, v), side_edges=(e1, e2), parts=parts,
                strong=strong, virtual_edges=(prov1, prov2)))
    return None


def find_3_split(g: SignedGraph) -> Optional[SplitDescription]:
    """First valid 3-split: side 2 bipartite, connected, with at least four
    edges, meeting side 1 in exactly the three separator vertices.  The
    single rebuilt part replaces side 2 by a fresh hub vertex whose three
    spokes carry side 2's path parities (the spoke at the smallest separator
    vertex is even)."""
    verts = sorted(g.vertices)
    for sep in combinations(verts, 3):
        sset = set(sep)
        units = _units(g, sset)
        if len(units) < 2:
            continue
        for assign in product((1, 2), repeat=len(units)):
            e1 = tuple(sorted(chain(*(units[i] for i, s in enumerate(assign)
                                      if s == 1))))
            e2 = tuple(sorted(chain(*(units[i] for i, s in enumerate(assign)
                                      if s == 2))))
            if not e1 or len(e2) < 4:
                continue
            s1 = edge_subgraph(g, e1)
            s2 = edge_subgraph(g, e2)
            if set(s1.vertices) & set(s2.vertices) != sset:
                continue
            if not is_connected(s2):
                continue
            coloring = parity_coloring(s2)
            if coloring is None:
                continue
            hub = g.fresh_vertex_id()
            base = g.fresh_edge_id()
            u1 = sep[0]
            spokes = []
            prov = {}
            for k, ui in enumerate(sep):
                odd = bool(coloring[u1] ^ coloring[ui])
                spokes.append(Edge(base + k, ui, hub, odd))
                prov[base + k] = {"role": "hub-spoke", "anchor": ui,
                                  "parity": odd}
            part = SignedGraph(s1.vertices + (hub,), s1.edges + tuple(spokes))
            return _check_parts_shrink(g, SplitDescription(
                kind=3, separator=sep, side_edges=(e1, e2), parts=(part,),
                virtual_edges=(prov,), hub=hub))
    return None


def split_nu_recurrence(kind: int, child_levels: list[int]) -> int:
    """Combine part levels: maximum for kinds 0-2, identity for kind 3."""
    if kind in (0, 1, 2):
        if len(child_levels) != 2:
            raise InternalInconsistencyError("kinds 0-2 take two parts")
        return max(child_levels)
    if kind == 3:
        if len(child_levels) != 1:
            raise InternalInconsistencyError("kind 3 takes one part")
        return child_levels[0]
    raise InternalInconsistencyError(f"unknown split kind {kind}")
