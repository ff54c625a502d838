"""Symmetric matrices attached to a signed graph.

A matrix fits a signed graph when, for every pair of distinct vertices, the
entry is negative if the pair is joined by even edges only, positive if by
odd edges only, unrestricted if joined both ways, and zero if not adjacent.
Diagonal entries are always free.  Rows and columns follow the sorted vertex
order of the host graph.

All numerical decisions use a relative tolerance: an eigenvalue or entry
counts as zero when its magnitude is at most tol * max(1, scale), with scale
the spectral radius (or largest magnitude) of the matrix at hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .core import SignedGraph, parity_coloring, is_connected, vertex_induced
from .errors import InputError

DEFAULT_TOL = 1e-8


def _thresh(a: np.ndarray, tol: float) -> float:
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    return tol * max(1.0, scale)


@dataclass(frozen=True)
class PatternMatrix:
    host: SignedGraph
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        a = np.array(self.values, dtype=float)
        n = self.host.n_vertices
        if a.ndim != 2 or a.shape != (n, n):
            raise InputError(f"matrix must be {n}x{n} for this host")
        if not np.isfinite(a).all():
            raise InputError("matrix entries must be finite")
        if not (a == a.T).all():
            raise InputError("matrix must be exactly symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "values", a)

    @property
    def order(self) -> tuple:
        return tuple(sorted(self.host.vertices))

    @property
    def n(self) -> int:
        return self.host.n_vertices

    def index_of(self, v: int) -> int:
        try:
            return self.order.index(v)
        except ValueError:
            raise InputError(f"vertex {v} not in host") from None


def pattern_violations(pm: PatternMatrix, tol: float = DEFAULT_TOL) -> list:
    """Entries breaking the sign pattern, as (u, v, reason) triples."""
    a = pm.values
    cut = _thresh(a, tol)
    order = pm.order
    counts = {}
    for p, es in pm.host.pair_edges.items():
        ne = sum(1 for e in es if not e.odd)
        counts[p] = (ne, len(es) - ne)
    out = []
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            ne, no = counts.get((order[i], order[j]), (0, 0))
            x = a[i, j]
            if ne and no:
                continue
            if ne:
                if not x < -cut:
                    out.append((order[i], order[j], "even pair needs a negative entry"))
            elif no:
                if not x > cut:
                    out.append((order[i], order[j], "odd pair needs a positive entry"))
            elif abs(x) > cut:
                out.append((order[i], order[j], "non-adjacent pair needs a zero entry"))
    return out


def pattern_check(pm: PatternMatrix, tol: float = DEFAULT_TOL) -> bool:
    return not pattern_violations(pm, tol)


def psd_nullity(a: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[bool, int]:
    """(positive semidefinite?, nullity), eigenvalues within the relative
    tolerance of zero counting as zero."""
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return True, 0
    w = np.linalg.eigvalsh(a)
    cut = tol * max(1.0, float(np.max(np.abs(w))))
    return bool(w[0] > -cut), int(np.sum(np.abs(w) <= cut))


@dataclass(frozen=True)
class SapResult:
    holds: bool
    witness: tuple  # basis of violating matrices, empty when holds


def _free_pairs(host: SignedGraph):
    order = tuple(sorted(host.vertices))
    adj = set(host.pair_edges)
    out = []
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if (order[i], order[j]) not in adj:
                out.append((i, j))
    return out


def sap_check(pm: PatternMatrix, tol: float = DEFAULT_TOL) -> SapResult:
    """Whether X = 0 is the only symmetric X with AX = 0 that vanishes on
    the diagonal and on all adjacent pairs.  When it is not, a basis of
    violating matrices is returned."""
    a = pm.values
    free = _free_pairs(pm.host)
    k = len(free)
    if k == 0:
        return SapResult(True, ())
    n = pm.n
    m = np.zeros((n * n, k))
    for col, (i, j) in enumerate(free):
        x = np.zeros((n, n))
        x[:, j] += a[:, i]
        x[:, i] += a[:, j]
        m[:, col] = x.reshape(-1)
    s = np.linalg.svd(m, compute_uv=False) if min(m.shape) else np.zeros(0)
    smax = float(s[0]) if s.size else 0.0
    cut = tol * max(1.0, smax)
    rank = int(np.sum(s > cut))
    if rank == k:
        return SapResult(True, ())
    _, _, vt = np.linalg.svd(m)
    basis = []
    for row in vt[rank:]:
        x = np.zeros((n, n))
        for coef, (i, j) in zip(row, free):
            x[i, j] = coef
            x[j, i] = coef
        # fix the overall sign so the result is reproducible
        flat = x.reshape(-1)
        lead = flat[np.argmax(np.abs(flat))]
        if lead < 0:
            x = -x
        basis.append(x)
    return SapResult(False, tuple(basis))


def schur_complement(pm: PatternMatrix, c: Iterable[int],
                     tol: float = DEFAULT_TOL,
                     reduced_host: Optional[SignedGraph] = None) -> PatternMatrix:
    """Schur complement eliminating the vertex set c, whose principal
    submatrix must be positive definite.  The result lives on reduced_host
    (by default the host with c deleted)."""
    cset = set(c)
    unknown = cset - set(pm.host.vertices)
    if unknown:
        raise InputError(f"unknown vertices {sorted(unknown)}")
    if not cset:
        return pm if reduced_host is None else PatternMatrix(reduced_host, pm.values)
    order = pm.order
    ci = [i for i, v in enumerate(order) if v in cset]
    ri = [i for i, v in enumerate(order) if v not in cset]
    a = pm.values
    acc = a[np.ix_(ci, ci)]
    w = np.linalg.eigvalsh(acc)
    if w[0] <= tol * max(1.0, float(np.max(np.abs(w)))):
        raise InputError("eliminated block must be positive definite")
    arr = a[np.ix_(ri, ri)]
    arc = a[np.ix_(ri, ci)]
    b = arr - arc @ np.linalg.solve(acc, arc.T)
    b = (b + b.T) / 2.0
    if reduced_host is None:
        reduced_host = vertex_induced(pm.host, [order[i] for i in ri])
    if sorted(reduced_host.vertices) != [order[i] for i in ri]:
        raise InputError("reduced host must keep exactly the surviving vertices")
    return PatternMatrix(reduced_host, b)


def canonical_witness(name: str) -> PatternMatrix:
    """Hand-checkable PSD matrix of maximum nullity for a named target."""
    from . import families
    if name == "k2eq":
        return PatternMatrix(families.k2_eq(), np.zeros((2, 2)))
    if name == "k3eq":
        return PatternMatrix(families.k3_eq(), np.zeros((3, 3)))
    if name == "k4o":
        return PatternMatrix(families.k4_odd(), np.ones((4, 4)))
    raise InputError(f"unknown target {name!r}")


def sample_psd(g: SignedGraph, seed: int = 0,
               strategy: str = "incidence") -> PatternMatrix:
    """Random PSD matrix fitting g.

    incidence: weighted sum of rank-one terms, one per edge (difference of
    endpoint indicators for an even edge, sum for an odd one), plus a small
    positive diagonal bump on both ends of every pair joined by both
    parities.  Nullity equals the number of bipartite components when no
    bump applies.

    shifted: random symmetric matrix in the pattern, shifted by its least
    eigenvalue; always singular and PSD.
    """
    rng = np.random.default_rng(seed)
    order = tuple(sorted(g.vertices))
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    a = np.zeros((n, n))
    if strategy == "incidence":
        for e in g.edges:
            w = rng.uniform(0.5, 2.0)
            z = np.zeros(n)
            z[pos[e.u]] = 1.0
            z[pos[e.v]] = 1.0 if e.odd else -1.0
            a += w * np.outer(z, z)
        for (u, v), es in sorted(g.pair_edges.items()):
            kinds = {e.odd for e in es}
            if len(kinds) == 2:
                a[pos[u], pos[u]] += rng.uniform(0.1, 0.5)
                a[pos[v], pos[v]] += rng.uniform(0.1, 0.5)
    elif strategy == "shifted":
        counts = {}
        for p, es in g.pair_edges.items():
            ne = sum(1 for e in es if not e.odd)
            counts[p] = (ne, len(es) - ne)
        for i in range(n):
            for j in range(i + 1, n):
                ne, no = counts.get((order[i], order[j]), (0, 0))
                if ne and no:
                    x = rng.normal()
                elif ne:
                    x = -rng.uniform(0.5, 2.0)
                elif no:
                    x = rng.uniform(0.5, 2.0)
                else:
                    x = 0.0
                a[i, j] = a[j, i] = x
        for i in range(n):
            a[i, i] = rng.normal()
        if n:
            a = a - np.eye(n) * float(np.linalg.eigvalsh(a)[0])
    else:
        raise InputError(f"unknown strategy {strategy!r}")
    return PatternMatrix(g, a)


def kernel_support_check(pm: PatternMatrix, tol: float = DEFAULT_TOL) -> bool:
    """For a PSD matrix on a connected bipartite host: does every kernel
    vector have full support?  Entries under tol * the vector's largest
    magnitude count as zero.  A kernel of dimension two or more always
    contains a vector with a zero entry, so that case returns False."""
    if not is_connected(pm.host):
        raise InputError("host must be connected")
    if parity_coloring(pm.host) is None:
        raise InputError("host must be bipartite")
    w, vecs = np.linalg.eigh(pm.values)
    cut = tol * max(1.0, float(np.max(np.abs(w))) if w.size else 0.0)
    if w.size and w[0] <= -cut:
        raise InputError("matrix must be positive semidefinite")
    kernel = [vecs[:, i] for i in range(len(w)) if abs(w[i]) <= cut]
    if len(kernel) >= 2:
        return False
    for x in kernel:
        top = float(np.max(np.abs(x)))
        if np.any(np.abs(x) <= tol * top):
            return False
    return True


def bipartite_inverse_sign_check(pm: PatternMatrix,
                                 tol: float = DEFAULT_TOL) -> bool:
    """Positive definite matrix on a bipartite host: after re-signing to make
    all off-diagonal entries nonpositive, the inverse must be entrywise
    nonnegative."""
    coloring = parity_coloring(pm.host)
    if coloring is None:
        raise InputError("host must be bipartite")
    order = pm.order
    d = np.array([-1.0 if coloring[v] else 1.0 for v in order])
    m = pm.values * np.outer(d, d)
    w = np.linalg.eigvalsh(m)
    if w.size and w[0] <= tol * max(1.0, float(np.max(np.abs(w)))):
        raise InputError("matrix must be positive definite")
    inv = np.linalg.inv(m)
    return bool(np.all(inv >= -tol * max(1.0, float(np.max(np.abs(inv))))))


def lift_sap_witness(pm: PatternMatrix, c: Iterable[int], s: Iterable[int],
                     y: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Pull a Schur-side violating matrix back to the full matrix.

    c is the eliminated set, s the shared boundary; the host must have no
    edges between c and the remaining vertices outside s, and y (indexed by
    the surviving vertices in order) must vanish on s x s.  If y violates
    the reduced matrix's independence condition, the returned x violates the
    full one; callers verify A x = 0 numerically.
    """
    cset, sset = set(c), set(s)
    order = pm.order
    ci = [i for i, v in enumerate(order) if v in cset]
    ri = [i for i, v in enumerate(order) if v not in cset]
    rpos = {order[i]: k for k, i in enumerate(ri)}
    si = [rpos[v] for v in order if v in sset]
    for (u, v) in pm.host.pair_edges:
        if (u in cset) != (v in cset):
            outside = v if u in cset else u
            if outside not in sset:
                raise InputError("eliminated set may only attach to the boundary")
    y = np.asarray(y, dtype=float)
    if y.shape != (len(ri), len(ri)):
        raise InputError("witness has the wrong shape")
    if si and float(np.max(np.abs(y[np.ix_(si, si)]))) > tol:
        raise InputError("witness must vanish on the boundary block")
    a = pm.values
    acc = a[np.ix_(ci, ci)]
    acs_full = a[np.ix_(ci, ri)]
    z = -np.linalg.solve(acc, acs_full @ y)  # |c| x |r|
    n = pm.n
    x = np.zeros((n, n))
    for p, gi in enumerate(ri):
        for q, gj in enumerate(ri):
            x[gi, gj] = y[p, q]
    for p, gi in enumerate(ci):
        for q, gj in enumerate(ri):
            x[gi, gj] = z[p, q]
            x[gj, gi] = z[p, q]
    # the boundary columns of z are zero by construction when BY = 0; zero
    # them exactly so the result is supported off the pattern
    for gi in ci:
        for v in sset:
            j = order.index(v)
            x[gi, j] = x[j, gi] = 0.0
    return x


def delta_y_extension(pm: PatternMatrix, v1: int, v2: int, v3: int,
                      tol: float = DEFAULT_TOL) -> np.ndarray:
    """Border a matrix for the triangle-to-star move.

    The host must join each of the three pairs by a single edge, the
    triangle must have an even number of odd edges, and the bordered matrix
    (new vertex last) eliminates back to the original by one Schur step.
    The new off-diagonal entries match the star's edge parities: the spoke
    at a corner is odd exactly when both triangle edges at that corner are
    odd."""
    order = pm.order
    tri = (v1, v2, v3)
    par = {}
    for a_, b_ in ((v1, v2), (v1, v3), (v2, v3)):
        key = (a_, b_) if a_ < b_ else (b_, a_)
        es = pm.host.pair_edges.get(key, ())
        if len(es) != 1:
            raise InputError("triangle pairs must carry exactly one edge")
        par[(a_, b_)] = par[(b_, a_)] = es[0].odd
    if (par[(v1, v2)] + par[(v1, v3)] + par[(v2, v3)]) % 2:
        raise InputError("triangle must be even")
    i1, i2, i3 = (pm.index_of(v) for v in tri)
    a = pm.values
    t12, t13, t23 = a[i1, i2], a[i1, i3], a[i2, i3]
    if min(abs(t12), abs(t13), abs(t23)) <= tol:
        raise InputError("triangle entries must be nonzero")
    csq = -t12 * t23 / t13
    if csq <= 0:
        raise InputError("triangle entries do not factor")
    # spoke at a corner is odd iff the two triangle edges there are both odd
    odd2 = par[(v1, v2)] and par[(v2, v3)]
    cval = np.sqrt(csq) if odd2 else -np.sqrt(csq)
    bval = -t12 / cval
    dval = -t23 / cval
    n = pm.n
    z = np.zeros(n)
    z[i1], z[i2], z[i3] = bval, cval, dval
    out = np.zeros((n + 1, n + 1))
    out[:n, :n] = a + np.outer(z, z)
    out[:n, n] = z
    out[n, :n] = z
    out[n, n] = 1.0
    return out
