"""Plane embeddings and the structure classes that pin the level at two.

Embeddings are rotation systems: a cyclic order of outgoing darts per
vertex.  A dart is (edge id, end) with end 0 leaving the edge's first
endpoint.  Faces are traced by following the successor of the twin dart
around the head vertex; a rotation system is plane when every component
satisfies faces = edges - vertices + 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Optional

from . import families, kernels
from .canonical import signed_isomorphic
from .core import (SignedGraph, components, delete_vertex, is_bipartite,
                   is_connected, vertex_induced)
from .errors import CapacityError, InputError

EDGE_CAP = 20
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class PlaneEmbedding:
    graph: SignedGraph
    #: ((vertex, (dart, ...)), ...) sorted by vertex
    rotations: tuple
    #: faces in traversal order, each a tuple of darts, sorted by least dart
    faces: tuple

    @cached_property
    def odd_face_count(self) -> int:
        by_id = {e.id: e.odd for e in self.graph.edges}
        total = 0
        for face in self.faces:
            par = False
            for eid, _ in face:
                par ^= by_id[eid]
            total += par
        return total

    @property
    def face_count(self) -> int:
        """Face count with the outer faces of the components merged, so that
        vertices - edges + faces = 1 + components."""
        return len(self.faces) - (len(components(self.graph)) - 1)

    def rotation_map(self) -> dict:
        return dict(self.rotations)

    def to_records(self) -> dict:
        return {
            "rotations": [[v, [list(d) for d in darts]]
                          for v, darts in self.rotations],
            "faces": [[list(d) for d in face] for face in self.faces],
            "odd_faces": self.odd_face_count,
        }


def _dart_tail(g: SignedGraph, dart) -> int:
    e = g.edge(dart[0])
    return e.u if dart[1] == 0 else e.v


def _dart_head(g: SignedGraph, dart) -> int:
    e = g.edge(dart[0])
    return e.v if dart[1] == 0 else e.u


def plane_embedding(g: SignedGraph, rot_map: dict) -> PlaneEmbedding:
    """Build and validate an embedding from a rotation map."""
    darts = {(e.id, end) for e in g.edges for end in (0, 1)}
    listed = [d for _, ds in sorted(rot_map.items()) for d in ds]
    if sorted(rot_map) != sorted(g.vertices) or sorted(listed) != sorted(darts):
        raise InputError("rotation map must list every dart exactly once")
    succ = {}
    for v, ds in rot_map.items():
        for d in ds:
            if _dart_tail(g, d) != v:
                raise InputError(f"dart {d} does not leave vertex {v}")
        for i, d in enumerate(ds):
            succ[d] = ds[(i + 1) % len(ds)]
    faces = []
    seen = set()
    for start in sorted(darts):
        if start in seen:
            continue
        face = []
        d = start
        while d not in seen:
            seen.add(d)
            face.append(d)
            d = succ[(d[0], 1 - d[1])]
        faces.append(tuple(face))
    emb = PlaneEmbedding(
        g,
        tuple((v, tuple(rot_map[v])) for v in sorted(rot_map)),
        tuple(faces))
    for comp in components(g):
        cs = set(comp)
        fc = sum(1 for face in faces
                 if face and _dart_tail(g, face[0]) in cs)
        ec = sum(1 for e in g.edges if e.u in cs)
        if len(comp) == 1 and ec == 0:
            continue  # an isolated vertex contributes its single empty face
        if fc != ec - len(comp) + 2:
            raise InputError("rotation system is not plane")
    return emb


def _component_arrays(g: SignedGraph, comp):
    vs = sorted(comp)
    vidx = {v: i for i, v in enumerate(vs)}
    cs = set(comp)
    es = sorted((e for e in g.edges if e.u in cs), key=lambda e: e.id)
    head = []
    eodd = []
    incid = [[] for _ in vs]
    for k, e in enumerate(es):
        head.append(vidx[e.v])
        head.append(vidx[e.u])
        eodd.append(1 if e.odd else 0)
        incid[vidx[e.u]].append(2 * k)
        incid[vidx[e.v]].append(2 * k + 1)
    vstart = [0]
    vdarts = []
    for ds in incid:
        vdarts.extend(sorted(ds))
        vstart.append(len(vdarts))
    return vs, es, head, eodd, vstart, vdarts


def _darts_from_flat(es, vstart, flat):
    """Translate kernel dart ints back to (edge id, end) per vertex."""
    out = []
    for i in range(len(vstart) - 1):
        seg = flat[vstart[i]:vstart[i + 1]]
        out.append(tuple((es[d >> 1].id, d & 1) for d in seg))
    return out


def _cap(g: SignedGraph):
    if g.n_edges > EDGE_CAP:
        raise CapacityError(f"embedding operations cap at {EDGE_CAP} edges")


def two_odd_faces(g: SignedGraph,
                  budget: int = DEFAULT_BUDGET) -> Optional[PlaneEmbedding]:
    """A plane embedding with at most two odd faces (zero when the graph is
    bipartite, exactly two otherwise), or None when no such embedding
    exists.  First hit in rotation-enumeration order."""
    _cap(g)
    comps = components(g)
    nonbip = [c for c in comps
              if not is_bipartite(vertex_induced(g, c))]
    if len(nonbip) >= 2:
        return None
    rot_map = {}
    for comp in comps:
        vs, es, head, eodd, vstart, vdarts = _component_arrays(g, comp)
        max_odd = 2 if comp in nonbip else 0
        status, flat, _, _ = kernels.search_embedding(
            len(vs), len(es), head, eodd, vstart, vdarts, max_odd, budget)
        if status == kernels.OVER_BUDGET:
            raise CapacityError("embedding search budget exhausted")
        if status != kernels.FOUND:
            return None
        for v, darts in zip(vs, _darts_from_flat(es, vstart, flat)):
            rot_map[v] = darts
    return plane_embedding(g, rot_map)


def embed_plane(g: SignedGraph,
                budget: int = DEFAULT_BUDGET) -> Optional[PlaneEmbedding]:
    """Some plane embedding with no constraint on face parities, or None
    for a non-planar graph.  First hit in rotation-enumeration order."""
    _cap(g)
    rot_map = {}
    for comp in components(g):
        vs, es, head, eodd, vstart, vdarts = _component_arrays(g, comp)
        status, flat, _, _ = kernels.search_embedding(
            len(vs), len(es), head, eodd, vstart, vdarts, 2 * len(es) + 1,
            budget)
        if status == kernels.OVER_BUDGET:
            raise CapacityError("embedding search budget exhausted")
        if status != kernels.FOUND:
            return None
        for v, darts in zip(vs, _darts_from_flat(es, vstart, flat)):
            rot_map[v] = darts
    return plane_embedding(g, rot_map)


def is_planar(g: SignedGraph, budget: int = DEFAULT_BUDGET) -> bool:
    _cap(g)
    for comp in components(g):
        vs, es, head, eodd, vstart, vdarts = _component_arrays(g, comp)
        status, _, _, _ = kernels.search_embedding(
            len(vs), len(es), head, eodd, vstart, vdarts, 2 * len(es) + 1,
            budget)
        if status == kernels.OVER_BUDGET:
            raise CapacityError("embedding search budget exhausted")
        if status != kernels.FOUND:
            return False
    return True


def planar_embeddings(g: SignedGraph) -> Iterator[PlaneEmbedding]:
    """Every plane rotation system, streamed in deterministic order (the
    same order the embedding search scans)."""
    _cap(g)
    comps = components(g)
    per_comp = []
    for comp in comps:
        vs, es, head, eodd, vstart, vdarts = _component_arrays(g, comp)
        if not es:
            per_comp.append([{vs[0]: ()}])
            continue
        from ._pykernels import build_succ, rotation_candidates, _trace_counts
        cands = rotation_candidates(len(vs), vstart, vdarts)
        found = []
        for rots in product(*cands):
            succ = build_succ(len(es), rots)
            fc, _ = _trace_counts(len(es), head, eodd, succ)
            if fc == len(es) - len(vs) + 2:
                flat = [d for r in rots for d in r]
                found.append(dict(zip(vs, _darts_from_flat(es, vstart, flat))))
        per_comp.append(found)
    for choice in product(*per_comp):
        rot_map = {}
        for m in choice:
            rot_map.update(m)
        yield plane_embedding(g, rot_map)


def is_almost_bipartite(g: SignedGraph) -> Optional[int]:
    """Smallest vertex whose removal kills every odd cycle, or None."""
    for v in sorted(g.vertices):
        if is_bipartite(delete_vertex(g, v)):
            return v
    return None


def is_double_prism(g: SignedGraph) -> bool:
    if g.n_vertices != 6 or g.n_edges != 12:
        return False
    return signed_isomorphic(g, families.double_prism()) is not None


def nu_le_1(g: SignedGraph) -> bool:
    """Level at most one means no odd cycle at all."""
    return is_bipartite(g)


def m_plus_le_1(g: SignedGraph) -> bool:
    """The all-PSD variant stays at one only for connected bipartite
    graphs."""
    return is_connected(g) and is_bipartite(g)
