"""numba kernels shared by the bootstrap and enumeration modules.

Two families:

* multi-word bitset kernels (``rows`` is ``uint64[n, W]``) for graphs with
  ``n <= 512``;
* single-word kernels (``rows`` is ``int64[k]``, bit ``v`` of ``rows[u]`` set
  iff ``uv`` is an edge) for ``k <= 10``, used by the census and canonical
  labelling.
"""

import numpy as np
from numba import njit

_DEBRUIJN = 0x03F79D71B4CB0A89
_CTZ_TABLE = np.zeros(64, dtype=np.int64)
for _i in range(64):
    _CTZ_TABLE[(((1 << _i) * _DEBRUIJN) & ((1 << 64) - 1)) >> 58] = _i
del _i

SMALL_MAX = 10
_POP = np.array([bin(i).count("1") for i in range(1 << SMALL_MAX)], dtype=np.int64)


@njit(cache=True, inline="always")
def ctz64(x):
    """Index of the lowest set bit of a non-zero uint64."""
    low = x & (~x + np.uint64(1))
    return _CTZ_TABLE[(low * np.uint64(_DEBRUIJN)) >> np.uint64(58)]


@njit(cache=True, inline="always")
def ctz_small(x):
    """Index of the lowest set bit of a non-zero int64 (any width)."""
    return ctz64(np.uint64(x))


# -- multi-word closure -------------------------------------------------------

@njit(cache=True)
def _has(rows, u, v):
    return (rows[u, v >> 6] >> np.uint64(v & 63)) & np.uint64(1)


@njit(cache=True)
def _set(rows, u, v):
    rows[u, v >> 6] |= np.uint64(1) << np.uint64(v & 63)


@njit(cache=True)
def _clear(rows, u, v):
    rows[u, v >> 6] &= ~(np.uint64(1) << np.uint64(v & 63))


@njit(cache=True)
def _push(inq, qu, qv, top, u, v):
    if u > v:
        u, v = v, u
    if _has(inq, u, v):
        return top
    _set(inq, u, v)
    qu[top] = u
    qv[top] = v
    return top + 1


@njit(cache=True)
def dense_closure(rows_in):
    """K4-bootstrap closure on bitset rows; returns a new rows array.

    Worklist of candidate non-edges. A candidate ``uv`` is added when the
    common neighbourhood of ``u`` and ``v`` contains an edge. After adding
    ``uv`` the pairs whose test can change are re-queued: ``(u, w)`` for
    ``w`` in N(v), ``(v, w)`` for ``w`` in N(u), and non-adjacent pairs inside
    N(u) & N(v).
    """
    rows = rows_in.copy()
    n, W = rows.shape
    inq = np.zeros((n, W), dtype=np.uint64)
    cap = n * n + 1
    qu = np.empty(cap, dtype=np.int64)
    qv = np.empty(cap, dtype=np.int64)
    top = 0
    dist2 = np.empty(W, dtype=np.uint64)
    common = np.empty(W, dtype=np.uint64)
    for u in range(n):
        for k in range(W):
            dist2[k] = 0
        for k in range(W):
            x = rows[u, k]
            while x:
                w = k * 64 + ctz64(x)
                x &= x - np.uint64(1)
                for j in range(W):
                    dist2[j] |= rows[w, j]
        for k in range(W):
            x = dist2[k] & ~rows[u, k]
            while x:
                v = k * 64 + ctz64(x)
                x &= x - np.uint64(1)
                if v > u:
                    top = _push(inq, qu, qv, top, u, v)
    while top > 0:
        top -= 1
        u = qu[top]
        v = qv[top]
        _clear(inq, u, v)
        if _has(rows, u, v):
            continue
        for k in range(W):
            common[k] = rows[u, k] & rows[v, k]
        hit = False
        for k in range(W):
            x = common[k]
            while x and not hit:
                w = k * 64 + ctz64(x)
                x &= x - np.uint64(1)
                for j in range(W):
                    if rows[w, j] & common[j]:
                        hit = True
                        break
            if hit:
                break
        if not hit:
            continue
        _set(rows, u, v)
        _set(rows, v, u)
        for k in range(W):
            x = rows[v, k]
            while x:
                w = k * 64 + ctz64(x)
                x &= x - np.uint64(1)
                if w != u and not _has(rows, u, w):
                    top = _push(inq, qu, qv, top, u, w)
            x = rows[u, k]
            while x:
                w = k * 64 + ctz64(x)
                x &= x - np.uint64(1)
                if w != v and not _has(rows, v, w):
                    top = _push(inq, qu, qv, top, v, w)
        for k in range(W):
            x = common[k]
            while x:
                a = k * 64 + ctz64(x)
                x &= x - np.uint64(1)
                for j in range(W):
                    y = common[j] & ~rows[a, j]
                    while y:
                        b = j * 64 + ctz64(y)
                        y &= y - np.uint64(1)
                        if b > a:
                            top = _push(inq, qu, qv, top, a, b)
    return rows


@njit(cache=True)
def rows_to_edges(rows):
    n, W = rows.shape
    m = 0
    for u in range(n):
        for k in range(W):
            x = rows[u, k]
            while x:
                v = k * 64 + ctz64(x)
                x &= x - np.uint64(1)
                if v > u:
                    m += 1
    out = np.empty((m, 2), dtype=np.int64)
    i = 0
    for u in range(n):
        for k in range(W):
            x = rows[u, k]
            while x:
                v = k * 64 + ctz64(x)
                x &= x - np.uint64(1)
                if v > u:
                    out[i, 0] = u
                    out[i, 1] = v
                    i += 1
    return out


@njit(cache=True)
def edge_count(rows):
    n, W = rows.shape
    total = 0
    for u in range(n):
        for k in range(W):
            x = rows[u, k]
            while x:
                x &= x - np.uint64(1)
                total += 1
    return total // 2


# -- single-word kernels (k <= 10) -------------------------------------------

@njit(cache=True)
def small_percolates(rows, k, tmp):
    """True iff the K4-closure of the k-vertex graph is complete.

    Full-pass fixpoint over non-adjacent pairs; ``tmp`` is scratch of length k.
    """
    if k <= 1:
        return True
    full = (1 << k) - 1
    missing = 0
    for u in range(k):
        tmp[u] = rows[u]
        missing += k - 1 - _POP[rows[u]]
    missing //= 2
    changed = True
    while changed and missing > 0:
        changed = False
        for u in range(k):
            if tmp[u] == full ^ (1 << u):
                continue
            for v in range(u + 1, k):
                if (tmp[u] >> v) & 1:
                    continue
                c = tmp[u] & tmp[v]
                x = c
                while x:
                    w = ctz_small(x)
                    x &= x - 1
                    if tmp[w] & c:
                        tmp[u] |= 1 << v
                        tmp[v] |= 1 << u
                        missing -= 1
                        changed = True
                        break
    return missing == 0


@njit(cache=True)
def small_two_neighbour(rows, k, active):
    """Closure of the vertex mask ``active`` under 2-neighbour bootstrap."""
    changed = True
    while changed:
        changed = False
        for v in range(k):
            if (active >> v) & 1:
                continue
            if _POP[rows[v] & active] >= 2:
                active |= 1 << v
                changed = True
    return active


@njit(cache=True)
def small_irreducible(rows, k, tmp):
    """Assumes the graph percolates; True iff every single-edge deletion kills it."""
    for u in range(k):
        x = rows[u] >> (u + 1)
        while x:
            v = u + 1 + ctz_small(x)
            x &= x - 1
            # a degree-1 vertex cannot sit in a percolating graph on >= 3 vertices
            if k >= 3 and (_POP[rows[u]] == 2 or _POP[rows[v]] == 2):
                continue
            rows[u] ^= 1 << v
            rows[v] ^= 1 << u
            perc = small_percolates(rows, k, tmp)
            rows[u] ^= 1 << v
            rows[v] ^= 1 << u
            if perc:
                return False
    return True


@njit(cache=True)
def small_core(rows, k, deg):
    """Peel degree-2 vertices (smallest index first) until the remainder has
    minimum degree >= 3 or two vertices are left.

    Returns ``(alive_mask, peel_order_packed, npeeled)``; the peel order is packed
    4 bits per vertex.
    """
    alive = (1 << k) - 1
    nalive = k
    for v in range(k):
        deg[v] = _POP[rows[v]]
    order = 0
    npeeled = 0
    while nalive > 2:
        pick = -1
        for v in range(k):
            if (alive >> v) & 1 and deg[v] == 2:
                pick = v
                break
        if pick < 0:
            break
        alive &= ~(1 << pick)
        nalive -= 1
        x = rows[pick] & alive
        while x:
            w = ctz_small(x)
            x &= x - 1
            deg[w] -= 1
        order |= pick << (4 * npeeled)
        npeeled += 1
    return alive, order, npeeled


@njit(cache=True)
def small_canonical(rows, k):
    """Canonical code: lexicographically least upper-triangle bit string over
    all relabellings that list colour classes in increasing colour order.

    Colours come from iterated degree refinement (colour = rank of the pair
    (old colour, multiset of neighbour colours)), so they are isomorphism
    invariant. Bits are ordered column by column: for ``p = 1..k-1`` and
    ``i = 0..p-1`` the bit ``adj(perm[i], perm[p])``; the first bit is most
    significant, so integer order equals lexicographic order.
    """
    if k <= 1:
        return 0
    color = np.empty(k, dtype=np.int64)
    sig = np.empty(k, dtype=np.int64)
    for v in range(k):
        color[v] = _POP[rows[v]]
    ncolors = _rank_inplace(color, sig, k)
    while True:
        for v in range(k):
            s = color[v] << 40
            x = rows[v]
            while x:
                w = ctz_small(x)
                x &= x - 1
                s += 1 << (4 * color[w])
            sig[v] = s
        for v in range(k):
            color[v] = sig[v]
        nc = _rank_inplace(color, sig, k)
        if nc == ncolors:
            break
        ncolors = nc
    # slot colour per position
    slot = np.empty(k, dtype=np.int64)
    pos = 0
    for c in range(ncolors):
        for v in range(k):
            if color[v] == c:
                slot[pos] = c
                pos += 1
    total_bits = k * (k - 1) // 2
    perm = np.empty(k, dtype=np.int64)
    nextc = np.zeros(k, dtype=np.int64)
    code_at = np.zeros(k + 1, dtype=np.int64)
    used = 0
    best = -1
    depth = 0
    while depth >= 0:
        v = nextc[depth]
        found = -1
        while v < k:
            if not (used >> v) & 1 and color[v] == slot[depth]:
                found = v
                break
            v += 1
        if found < 0:
            depth -= 1
            if depth >= 0:
                used &= ~(1 << perm[depth])
            continue
        nextc[depth] = found + 1
        col = 0
        for i in range(depth):
            col = (col << 1) | ((rows[perm[i]] >> found) & 1)
        newcode = (code_at[depth] << depth) | col
        if best >= 0:
            nbits = depth * (depth + 1) // 2
            if newcode > (best >> (total_bits - nbits)):
                continue
        if depth == k - 1:
            if best < 0 or newcode < best:
                best = newcode
            continue
        perm[depth] = found
        used |= 1 << found
        code_at[depth + 1] = newcode
        nextc[depth + 1] = 0
        depth += 1
    return best


@njit(cache=True)
def _rank_inplace(vals, scratch, k):
    """Replace vals by the rank of each value among the distinct values."""
    for i in range(k):
        scratch[i] = vals[i]
    srt = np.sort(scratch[:k])
    distinct = 0
    for i in range(k):
        if i == 0 or srt[i] != srt[i - 1]:
            srt[distinct] = srt[i]
            distinct += 1
    for i in range(k):
        lo = 0
        hi = distinct - 1
        x = vals[i]
        while lo < hi:
            mid = (lo + hi) // 2
            if srt[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        vals[i] = lo
    return distinct


# -- census ------------------------------------------------------------------

@njit(cache=True)
def binom(n, r):
    if r < 0 or r > n:
        return 0
    r = min(r, n - r)
    out = 1
    for i in range(r):
        out = out * (n - i) // (i + 1)
    return out


@njit(cache=True)
def colex_unrank(rank, m):
    """Mask of the m-subset with the given colex rank (bit = slot)."""
    mask = 0
    for i in range(m, 0, -1):
        c = i - 1
        while binom(c + 1, i) <= rank:
            c += 1
        rank -= binom(c, i)
        mask |= 1 << c
    return mask


@njit(cache=True)
def _gosper(x):
    c = x & -x
    r = x + c
    return (((r ^ x) >> 2) // c) | r


@njit(cache=True, nogil=True)
def census_chunk(k, m, rank_start, count, check_irreducible, counts, rep_i, rep_q,
                 rep_code, stats):
    """Scan ``count`` consecutive colex-ranked m-edge graphs on k vertices.

    Percolating irreducible graphs are tallied into ``counts[i, q]`` (i = number
    of degree-2 vertices, q = core size, 2 for a seed edge). Graphs whose
    labelling lists degrees in non-increasing order are also canonicalised and
    written to ``rep_*``; every isomorphism class has such a labelling, so the
    distinct codes there give exact unlabeled counts.

    ``stats``: [representatives written, core verification failures,
    degree-2 deletions that failed to percolate, percolating graphs seen].
    With ``check_irreducible`` false every percolating graph is counted (valid
    when m = 2k - 3, where no edge can be spared).
    """
    nslots = k * (k - 1) // 2
    su = np.empty(nslots, dtype=np.int64)
    sv = np.empty(nslots, dtype=np.int64)
    s = 0
    for v in range(k):
        for u in range(v):
            su[s] = u
            sv[s] = v
            s += 1
    rows = np.zeros(k, dtype=np.int64)
    tmp = np.zeros(k, dtype=np.int64)
    deg = np.zeros(k, dtype=np.int64)
    core_rows = np.zeros(k, dtype=np.int64)
    ranks = np.zeros(k, dtype=np.int64)
    full = (1 << k) - 1
    mask = colex_unrank(rank_start, m)
    nrep = stats[0]
    for step in range(count):
        if step > 0:
            mask = _gosper(mask)
        for v in range(k):
            rows[v] = 0
        x = mask
        while x:
            t = ctz_small(x)
            x &= x - 1
            rows[su[t]] |= 1 << sv[t]
            rows[sv[t]] |= 1 << su[t]
        ok = True
        if k >= 3:
            for v in range(k):
                if _POP[rows[v]] < 2:
                    ok = False
                    break
        if not ok:
            continue
        if not small_percolates(rows, k, tmp):
            continue
        stats[3] += 1
        if check_irreducible and not small_irreducible(rows, k, tmp):
            continue
        i2 = 0
        for v in range(k):
            if _POP[rows[v]] == 2:
                i2 += 1
                # the graph minus a degree-2 vertex must still percolate
                nal = 0
                for w in range(k):
                    if w != v:
                        ranks[w] = nal
                        nal += 1
                for w in range(k):
                    if w != v:
                        y = rows[w] & ~(1 << v)
                        r = 0
                        while y:
                            z = ctz_small(y)
                            y &= y - 1
                            r |= 1 << ranks[z]
                        core_rows[ranks[w]] = r
                if not small_percolates(core_rows, nal, tmp):
                    stats[2] += 1
        alive, order, npeeled = small_core(rows, k, deg)
        q = k - npeeled
        nalive = 0
        for v in range(k):
            if (alive >> v) & 1:
                ranks[v] = nalive
                nalive += 1
        for v in range(k):
            if (alive >> v) & 1:
                y = rows[v] & alive
                r = 0
                while y:
                    w = ctz_small(y)
                    y &= y - 1
                    r |= 1 << ranks[w]
                core_rows[ranks[v]] = r
        good = small_percolates(core_rows, nalive, tmp)
        if good and small_two_neighbour(rows, k, alive) != full:
            good = False
        if good and q > 2:
            for v in range(nalive):
                if _POP[core_rows[v]] < 3:
                    good = False
        if not good:
            stats[1] += 1
        counts[i2, q] += 1
        sorted_deg = True
        for v in range(1, k):
            if _POP[rows[v]] > _POP[rows[v - 1]]:
                sorted_deg = False
                break
        if sorted_deg:
            rep_i[nrep] = i2
            rep_q[nrep] = q
            rep_code[nrep] = small_canonical(rows, k)
            nrep += 1
    stats[0] = nrep


@njit(cache=True)
def edges_in_triangles(indptr, indices, edges):
    """Flag each edge ``uv`` that has a common neighbour (sorted CSR lists)."""
    m = edges.shape[0]
    out = np.zeros(m, dtype=np.bool_)
    for k in range(m):
        u = edges[k, 0]
        v = edges[k, 1]
        i = indptr[u]
        j = indptr[v]
        ie = indptr[u + 1]
        je = indptr[v + 1]
        while i < ie and j < je:
            a = indices[i]
            b = indices[j]
            if a == b:
                out[k] = True
                break
            if a < b:
                i += 1
            else:
                j += 1
    return out
