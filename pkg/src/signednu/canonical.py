"""Canonical keys and isomorphism for signed graphs.

Two signed graphs are treated as the same object when some vertex bijection
carries one onto a re-signing of the other.  The canonical key picks, per
graph, the lexicographically least pair-code matrix over all relabelings
(restricted to color-refinement classes) with re-signing canonicalised per
relabeling, so equal keys mean exactly "signed-isomorphic".
"""

from __future__ import annotations

from itertools import permutations, product
from math import factorial

from . import kernels
from .core import SignedGraph
from .errors import CapacityError

#: refuse searches whose relabeling space exceeds this
_SEARCH_CAP = 2_000_000


def pair_counts(g: SignedGraph) -> dict:
    """(even, odd) edge multiplicities per unordered vertex pair."""
    out = {}
    for p, es in g.pair_edges.items():
        ne = sum(1 for e in es if not e.odd)
        out[p] = (ne, len(es) - ne)
    return out


def labeled_key(g: SignedGraph) -> tuple:
    """Cheap exact state key: vertex set plus the parity-tagged edge
    multiset.  Equal keys mean equal labeled graphs up to edge ids; no
    relabeling or re-signing is factored out, so this stays linear and is
    safe for memo tables on big symmetric graphs."""
    return (g.vertices, tuple(sorted((e.u, e.v, e.odd) for e in g.edges)))


def _refine(graphs):
    """Joint color refinement; colors are comparable across the input graphs
    and invariant under re-signing (pair data enters only as total
    multiplicity plus a both-parities flag)."""
    counts = [pair_counts(g) for g in graphs]

    def pair_class(gi, a, b):
        ne, no = counts[gi].get((a, b) if a < b else (b, a), (0, 0))
        return (ne + no, min(ne, no) > 0)

    color = {}
    for gi, g in enumerate(graphs):
        for v in g.vertices:
            profile = sorted(pair_class(gi, v, w) for w in g.neighbors(v))
            color[(gi, v)] = (g.degree(v), tuple(profile))
    # compress to ranks, then refine until the partition stops splitting
    def compress():
        ranks = {c: i for i, c in enumerate(sorted(set(color.values())))}
        for k in color:
            color[k] = ranks[color[k]]
        return len(ranks)

    size = compress()
    while True:
        snapshot = dict(color)
        for gi, g in enumerate(graphs):
            for v in g.vertices:
                around = sorted(
                    (snapshot[(gi, w)],) + pair_class(gi, v, w)
                    for w in g.neighbors(v))
                color[(gi, v)] = (snapshot[(gi, v)], tuple(around))
        new_size = compress()
        if new_size == size:
            break
        size = new_size
    return [{v: color[(gi, v)] for v in g.vertices}
            for gi, g in enumerate(graphs)]


def _groups(g, colors):
    """Vertices ordered by (color, id), grouped into runs of equal color."""
    base = sorted(g.vertices, key=lambda v: (colors[v], v))
    groups = []
    for pos, v in enumerate(base):
        if pos and colors[v] == colors[base[pos - 1]]:
            groups[-1].append(pos)
        else:
            groups.append([pos])
    return base, groups


def _check_search_size(groups):
    total = 1
    for grp in groups:
        total *= factorial(len(grp))
        if total > _SEARCH_CAP:
            raise CapacityError("isomorphism search space too large")


def canonical_key(g: SignedGraph):
    """Hashable key equal for exactly the signed-isomorphic graphs."""
    n = g.n_vertices
    if n == 0:
        return (0, b"")
    if n > 32:
        raise CapacityError("canonical form capacity is 32 vertices")
    colors = _refine([g])[0]
    base, groups = _groups(g, colors)
    _check_search_size(groups)
    pos = {v: i for i, v in enumerate(base)}
    even = [0] * (n * n)
    odd = [0] * (n * n)
    for (a, b), (ne, no) in pair_counts(g).items():
        i, j = pos[a], pos[b]
        even[i * n + j] = even[j * n + i] = ne
        odd[i * n + j] = odd[j * n + i] = no
    return (n, kernels.min_encoding(n, even, odd, groups))


def signed_isomorphic(g1: SignedGraph, g2: SignedGraph):
    """A pair (mapping, resign_set) with `mapping` a vertex bijection from g1
    onto g2 re-signed around resign_set (a subset of g2's vertices), or None.
    Deterministic: the first bijection in class order is returned, and g
    against itself yields the identity with an empty resign set."""
    if g1.n_vertices != g2.n_vertices or g1.n_edges != g2.n_edges:
        return None
    if max(g1.n_vertices, g2.n_vertices) > 8:
        raise CapacityError("isomorphism search capacity is 8 vertices")
    c1, c2 = _refine([g1, g2])
    by_color1 = {}
    for v in sorted(g1.vertices):
        by_color1.setdefault(c1[v], []).append(v)
    by_color2 = {}
    for v in sorted(g2.vertices):
        by_color2.setdefault(c2[v], []).append(v)
    if set(by_color1) != set(by_color2):
        return None
    if any(len(by_color1[c]) != len(by_color2[c]) for c in by_color1):
        return None
    colors = sorted(by_color1)
    _check_search_size([by_color1[c] for c in colors])
    pc1 = pair_counts(g1)
    pc2 = pair_counts(g2)
    vs1 = [v for c in colors for v in by_color1[c]]
    for choice in product(*(permutations(by_color2[c]) for c in colors)):
        image = [v for grp in choice for v in grp]
        mapping = dict(zip(vs1, image))
        resign_set = _resign_match(g1, g2, mapping, pc1, pc2)
        if resign_set is not None:
            return mapping, resign_set
    return None


def _resign_match(g1, g2, mapping, pc1, pc2):
    """Resign set making the mapped parities agree, or None.

    Pairs whose (even, odd) counts are asymmetric pin down whether the two
    image endpoints differ in the re-sign indicator; the pinned constraints
    must 2-color.  Unconstrained vertices stay outside the set."""
    constraints = []
    verts1 = sorted(g1.vertices)
    for ai in range(len(verts1)):
        for bi in range(ai + 1, len(verts1)):
            a, b = verts1[ai], verts1[bi]
            x, y = mapping[a], mapping[b]
            cc1 = pc1.get((a, b), (0, 0))
            cc2 = pc2.get((x, y) if x < y else (y, x), (0, 0))
            swapped = (cc2[1], cc2[0])
            if cc1 == cc2 and cc1 == swapped:
                continue
            if cc1 == cc2:
                constraints.append((x, y, 0))
            elif cc1 == swapped:
                constraints.append((x, y, 1))
            else:
                return None
    adj = {v: [] for v in g2.vertices}
    for x, y, flip in constraints:
        adj[x].append((y, flip))
        adj[y].append((x, flip))
    side = {}
    for root in sorted(g2.vertices):
        if root in side:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w, flip in adj[v]:
                want = side[v] ^ flip
                if w not in side:
                    side[w] = want
                    stack.append(w)
                elif side[w] != want:
                    return None
    return frozenset(v for v, s in side.items() if s == 1)
