# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Semantics and enumeration order mirror _pykernels
exactly; the test suite compares the two byte for byte."""

from libc.string cimport memset

BACKEND = "compiled"

FOUND = 0
EXHAUSTED = 1
OVER_BUDGET = 2

# capacity of the static scratch arrays: 32 vertices for the encoder
# (496 pairs), 40 edges / 80 darts for the embedding search


cdef bint _next_perm(int* a, int lo, int hi) noexcept:
    """Next lexicographic permutation of a[lo:hi]; when it wraps, leaves the
    segment sorted ascending and returns False."""
    cdef int i = hi - 2
    cdef int j, t, l, r
    while i >= lo and a[i] >= a[i + 1]:
        i -= 1
    if i < lo:
        l = lo
        r = hi - 1
        while l < r:
            t = a[l]; a[l] = a[r]; a[r] = t
            l += 1; r -= 1
        return False
    j = hi - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    l = i + 1
    r = hi - 1
    while l < r:
        t = a[l]; a[l] = a[r]; a[r] = t
        l += 1; r -= 1
    return True


def min_encoding(int n, even, odd, groups):
    cdef int ceven[1024]
    cdef int codd[1024]
    cdef int cur[32]
    cdef int gstart[33]
    cdef int glen[32]
    cdef int parent[32]
    cdef int parity[32]
    cdef int out[992]
    cdef int best[992]
    cdef int ngroups, i, j, k, pos, a, b, t, pi, pj
    cdef int ri, rj, pari, parj, flip, x, p
    cdef bint have_best = False, better, ok

    if n == 0:
        return b""
    if n > 32:
        raise ValueError("encoder capacity is 32 vertices")
    for i in range(n * n):
        t = even[i]
        if t > 255:
            raise ValueError("pair multiplicity over 255")
        ceven[i] = t
        t = odd[i]
        if t > 255:
            raise ValueError("pair multiplicity over 255")
        codd[i] = t

    ngroups = len(groups)
    k = 0
    for i in range(ngroups):
        gstart[i] = k
        for x in groups[i]:
            cur[k] = x
            k += 1
        glen[i] = k - gstart[i]
    gstart[ngroups] = k

    cdef int npairs = n * (n - 1) // 2
    while True:
        for i in range(n):
            parent[i] = i
            parity[i] = 0
        pos = 0
        better = not have_best
        ok = True
        for i in range(n):
            pi = cur[i] * n
            for j in range(i + 1, n):
                pj = cur[j]
                a = ceven[pi + pj]
                b = codd[pi + pj]
                if a != b:
                    x = i
                    p = 0
                    while parent[x] != x:
                        p ^= parity[x]
                        x = parent[x]
                    ri = x; pari = p
                    x = j
                    p = 0
                    while parent[x] != x:
                        p ^= parity[x]
                        x = parent[x]
                    rj = x; parj = p
                    if ri == rj:
                        flip = pari ^ parj
                    else:
                        flip = 1 if b < a else 0
                        parent[rj] = ri
                        parity[rj] = pari ^ parj ^ flip
                    if flip:
                        t = a; a = b; b = t
                if not better:
                    if a > best[pos] or (a == best[pos] and b > best[pos + 1]):
                        ok = False
                        break
                    if a < best[pos] or (a == best[pos] and b < best[pos + 1]):
                        better = True
                out[pos] = a
                out[pos + 1] = b
                pos += 2
            if not ok:
                break
        if ok:
            for i in range(2 * npairs):
                best[i] = out[i]
            have_best = True
        # advance the odometer, last group fastest
        k = ngroups - 1
        while k >= 0:
            if glen[k] > 1 and _next_perm(cur, gstart[k], gstart[k] + glen[k]):
                break
            k -= 1
        if k < 0:
            break

    result = bytearray(2 * npairs)
    for i in range(2 * npairs):
        result[i] = best[i]
    return bytes(result)


def search_embedding(int nv, int m, head, eodd, vstart, vdarts,
                     int max_odd, long budget):
    cdef int codd_e[40]
    cdef int cstart[41]
    cdef int rot[80]
    cdef int succ[80]
    cdef char seen[80]
    cdef int i, v, s, e, k, idx, d0, d, par, faces, oddf, want, nd
    cdef long tried = 0

    if m == 0:
        if nv == 1:
            return (FOUND, [], 1, 0)
        return (EXHAUSTED, None, 0, 0)
    if m > 40 or nv > 40:
        raise ValueError("embedding capacity is 40 edges / 40 vertices")

    nd = 2 * m
    for i in range(m):
        codd_e[i] = eodd[i]
    for i in range(nv + 1):
        cstart[i] = vstart[i]
    for i in range(nd):
        rot[i] = vdarts[i]

    want = m - nv + 2
    while True:
        if tried >= budget:
            return (OVER_BUDGET, None, 0, 0)
        tried += 1
        for v in range(nv):
            s = cstart[v]
            e = cstart[v + 1]
            k = e - s
            for idx in range(k):
                succ[rot[s + idx]] = rot[s + (idx + 1) % k]
        memset(seen, 0, nd)
        faces = 0
        oddf = 0
        for d0 in range(nd):
            if seen[d0]:
                continue
            faces += 1
            par = 0
            d = d0
            while not seen[d]:
                seen[d] = 1
                par ^= codd_e[d >> 1]
                d = succ[d ^ 1]
            oddf += par
        if faces == want and oddf <= max_odd:
            return (FOUND, [rot[i] for i in range(nd)], faces, oddf)
        v = nv - 1
        while v >= 0:
            s = cstart[v] + 1
            e = cstart[v + 1]
            if e - s > 1 and _next_perm(rot, s, e):
                break
            v -= 1
        if v < 0:
            return (EXHAUSTED, None, 0, 0)
