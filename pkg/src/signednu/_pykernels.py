"""Pure-Python reference kernels.

Two hot loops live behind the `kernels` facade: the canonical pair-code
encoding (minimised over vertex relabelings and re-signings) and the
rotation-system search for plane embeddings with few odd faces.  The compiled
backend in `_speedups` mirrors these functions; both must produce identical
bytes / identical rotations on identical input, and the test suite checks
that.
"""

from __future__ import annotations

from itertools import permutations, product

BACKEND = "python"

# encoding search results
FOUND = 0
EXHAUSTED = 1
OVER_BUDGET = 2


def _find(parent, parity, x):
    p = 0
    while parent[x] != x:
        p ^= parity[x]
        x = parent[x]
    return x, p


def _encode(n, even, odd, perm, best):
    """Pair codes for one relabeling, re-signed to the lexicographic minimum.

    Scans pairs (i, j) row-major.  A pair whose two counts differ wants its
    smaller count first; whether the swap is achievable depends on the
    re-signing choices already committed, tracked by a parity union-find
    (swapping pair (i, j) happens exactly when the re-sign indicators of i
    and j differ).  Returns None as soon as the encoding exceeds `best`.
    """
    parent = list(range(n))
    parity = [0] * n
    out = []
    pos = 0
    better = best is None
    for i in range(n):
        pi = perm[i] * n
        for j in range(i + 1, n):
            pj = perm[j]
            a = even[pi + pj]
            b = odd[pi + pj]
            if a != b:
                ri, pari = _find(parent, parity, i)
                rj, parj = _find(parent, parity, j)
                if ri == rj:
                    flip = pari ^ parj
                else:
                    flip = 1 if b < a else 0
                    parent[rj] = ri
                    parity[rj] = pari ^ parj ^ flip
                if flip:
                    a, b = b, a
            if not better:
                ba = best[pos]
                bb = best[pos + 1]
                if a > ba or (a == ba and b > bb):
                    return None
                if a < ba or (a == ba and b < bb):
                    better = True
            out.append(a)
            out.append(b)
            pos += 2
    return out


def min_encoding(n, even, odd, groups):
    """Lexicographically least pair-code string over all relabelings that
    permute only within the given groups, with re-signing canonicalised per
    relabeling.  `even`/`odd` are flattened n*n symmetric count matrices."""
    if n == 0:
        return b""
    if any(c > 255 for c in even) or any(c > 255 for c in odd):
        raise ValueError("pair multiplicity over 255")
    best = None
    for choice in product(*(permutations(grp) for grp in groups)):
        perm = [x for grp in choice for x in grp]
        enc = _encode(n, even, odd, perm, best)
        if enc is not None:
            best = enc
    return bytes(best)


def _trace_counts(m, head, eodd, succ):
    seen = bytearray(2 * m)
    faces = 0
    odd_faces = 0
    for d0 in range(2 * m):
        if seen[d0]:
            continue
        faces += 1
        par = 0
        d = d0
        while not seen[d]:
            seen[d] = 1
            par ^= eodd[d >> 1]
            d = succ[d ^ 1]
        odd_faces += par
    return faces, odd_faces


def rotation_candidates(nv, vstart, vdarts):
    """Per-vertex candidate rotations: the first dart is pinned, the rest are
    permuted in lexicographic order (darts arrive sorted ascending)."""
    cands = []
    for v in range(nv):
        ds = vdarts[vstart[v]:vstart[v + 1]]
        if len(ds) <= 2:
            cands.append((tuple(ds),))
        else:
            first = ds[0]
            cands.append(tuple((first,) + rest for rest in permutations(ds[1:])))
    return cands


def build_succ(m, rots):
    succ = [0] * (2 * m)
    for r in rots:
        k = len(r)
        for idx in range(k):
            succ[r[idx]] = r[(idx + 1) % k]
    return succ


def search_embedding(nv, m, head, eodd, vstart, vdarts, max_odd, budget):
    """First rotation system that embeds the connected input in the plane
    with at most max_odd odd faces.

    head[d] is the vertex index entered by dart d; dart d leaves head[d^1];
    vdarts lists outgoing darts per vertex (ascending), sliced by vstart.
    Returns (status, rot, faces, odd) where rot concatenates the chosen
    per-vertex rotations; rot is None unless status == FOUND.
    """
    if m == 0:
        return (FOUND, [], 1, 0) if nv == 1 else (EXHAUSTED, None, 0, 0)
    cands = rotation_candidates(nv, vstart, vdarts)
    want = m - nv + 2
    tried = 0
    for rots in product(*cands):
        if tried >= budget:
            return (OVER_BUDGET, None, 0, 0)
        tried += 1
        succ = build_succ(m, rots)
        fc, oc = _trace_counts(m, head, eodd, succ)
        if fc == want and oc <= max_odd:
            return (FOUND, [d for r in rots for d in r], fc, oc)
    return (EXHAUSTED, None, 0, 0)
