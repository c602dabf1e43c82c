"""Simple undirected graphs on vertices ``0..n-1``.

A :class:`Graph` keeps its edges as a sorted ``(m, 2)`` array with ``u < v``
and builds two adjacency views on demand: CSR neighbour lists (always) and
``uint64`` bitset rows (only for ``n <= DENSE_LIMIT``).
"""

import math
from itertools import combinations

import numpy as np
from numba import njit

from . import rng

DENSE_LIMIT = 64 * 8


class GraphError(ValueError):
    pass


class ResourceGuardError(RuntimeError):
    """A request would exceed the configured time or memory budget."""


class Graph:
    """Immutable simple graph.

    Use :func:`graph_from_edge_list` for checked construction; the constructor
    trusts its input (``edges`` sorted, unique, ``u < v``).
    """

    __slots__ = ("n", "edges", "_indptr", "_indices", "_rows", "_lists", "_eset")

    def __init__(self, n, edges):
        self.n = int(n)
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        edges.setflags(write=False)
        self.edges = edges
        self._indptr = None
        self._indices = None
        self._rows = None
        self._lists = None
        self._eset = None

    @property
    def m(self):
        return len(self.edges)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    # -- adjacency views ----------------------------------------------------

    def _build_csr(self):
        n = self.n
        if self.m == 0:
            self._indptr = np.zeros(n + 1, dtype=np.int64)
            self._indices = np.zeros(0, dtype=np.int64)
            return
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        order = np.lexsort((dst, src))
        self._indices = dst[order]
        counts = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        self._indptr = indptr

    @property
    def indptr(self):
        if self._indptr is None:
            self._build_csr()
        return self._indptr

    @property
    def indices(self):
        if self._indices is None:
            self._build_csr()
        return self._indices

    def neighbors(self, v):
        """Sorted neighbour array of ``v``."""
        ptr = self.indptr
        return self._indices[ptr[v]:ptr[v + 1]]

    def degrees(self):
        return np.diff(self.indptr)

    def degree(self, v):
        ptr = self.indptr
        return int(ptr[v + 1] - ptr[v])

    def adjacency_lists(self):
        """Neighbour lists as plain Python lists (cached)."""
        if self._lists is None:
            ptr = self.indptr.tolist()
            idx = self.indices.tolist()
            self._lists = [idx[ptr[v]:ptr[v + 1]] for v in range(self.n)]
        return self._lists

    @property
    def is_dense(self):
        return self.n <= DENSE_LIMIT

    @property
    def rows(self):
        """Bitset adjacency rows, shape ``(n, ceil(n/64))``, dtype uint64."""
        if self._rows is None:
            if not self.is_dense:
                raise GraphError(f"bitset rows only for n <= {DENSE_LIMIT}")
            self._rows = _bitset_rows(self.n, self.edges)
            self._rows.setflags(write=False)
        return self._rows

    def edge_set(self):
        if self._eset is None:
            self._eset = frozenset(map(tuple, self.edges.tolist()))
        return self._eset

    def edge_list(self):
        return [tuple(e) for e in self.edges.tolist()]

    def has_edge(self, u, v):
        if u == v:
            return False
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_set()

    def isolated_count(self):
        return int(np.count_nonzero(self.degrees() == 0))

    def without_edge(self, u, v):
        if u > v:
            u, v = v, u
        keep = ~((self.edges[:, 0] == u) & (self.edges[:, 1] == v))
        if keep.all():
            raise GraphError(f"({u}, {v}) is not an edge")
        return Graph(self.n, self.edges[keep])


@njit(cache=True)
def _bitset_rows(n, edges):
    words = max(1, (n + 63) // 64)
    rows = np.zeros((n, words), dtype=np.uint64)
    one = np.uint64(1)
    for k in range(edges.shape[0]):
        u = edges[k, 0]
        v = edges[k, 1]
        rows[u, v >> 6] |= one << np.uint64(v & 63)
        rows[v, u >> 6] |= one << np.uint64(u & 63)
    return rows


def _normalize(n, pairs, strict):
    n = int(n)
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if len(arr) == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if (arr < 0).any() or (arr >= n).any():
        raise GraphError(f"vertex index out of range 0..{n - 1}")
    if (arr[:, 0] == arr[:, 1]).any():
        raise GraphError("self-loops are not allowed")
    arr = np.sort(arr, axis=1)
    uniq = np.unique(arr, axis=0)
    if strict and len(uniq) != len(arr):
        raise GraphError("duplicate edge in strict mode")
    return uniq


def graph_from_edge_list(n, edges, strict=True):
    """Build a graph from ``(u, v)`` pairs.

    In strict mode a repeated pair (in either orientation) raises
    :class:`GraphError`; with ``strict=False`` duplicates are merged.
    """
    return Graph(n, _normalize(n, edges, strict))


def complete_graph(n):
    return Graph(n, list(combinations(range(n), 2)))


def cycle_graph(n):
    return graph_from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return graph_from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def empty_graph(n):
    return Graph(n, np.zeros((0, 2), dtype=np.int64))


def union(g, h):
    """Edge union of two graphs on the same vertex count (or padded to the larger)."""
    n = max(g.n, h.n)
    return Graph(n, _normalize(n, np.concatenate([g.edges, h.edges]), strict=False))


def induced_subgraph(g, vertices):
    """Subgraph induced by ``vertices``, relabelled by rank.

    Returns ``(subgraph, rank_map)`` where ``rank_map[i]`` is the original label
    of new vertex ``i``.
    """
    verts = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if len(verts) and (verts[0] < 0 or verts[-1] >= g.n):
        raise GraphError("vertex index out of range")
    rank = np.full(g.n, -1, dtype=np.int64)
    rank[verts] = np.arange(len(verts))
    e = g.edges
    if len(e):
        keep = (rank[e[:, 0]] >= 0) & (rank[e[:, 1]] >= 0)
        sub = rank[e[keep]]
    else:
        sub = np.zeros((0, 2), dtype=np.int64)
    # rank is monotone so (u < v) and sort order are preserved
    return Graph(len(verts), sub), verts


# -- G(n, p) ----------------------------------------------------------------

@njit(cache=True)
def _gnp_kernel(n, p, seed):
    state = rng.seed_state(seed)
    cap = 16
    us = np.empty(cap, dtype=np.int64)
    vs = np.empty(cap, dtype=np.int64)
    m = 0
    lp = np.log1p(-p)
    v = 1
    w = -1
    while v < n:
        r = rng.next_double(state)
        skip = np.floor(np.log1p(-r) / lp)
        if skip > 4.0e18:
            break
        w += 1 + np.int64(skip)
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            if m == cap:
                cap *= 2
                nu = np.empty(cap, dtype=np.int64)
                nv = np.empty(cap, dtype=np.int64)
                nu[:m] = us[:m]
                nv[:m] = vs[:m]
                us = nu
                vs = nv
            us[m] = w
            vs[m] = v
            m += 1
    out = np.empty((m, 2), dtype=np.int64)
    out[:, 0] = us[:m]
    out[:, 1] = vs[:m]
    return out


def sample_gnp(n, p, seed):
    """Sample G(n, p) with geometric skipping (Batagelj-Brandes), O(n + m).

    Pairs are visited in the order ``(0,1), (0,2), (1,2), (0,3), ...``; the gap
    to the next chosen pair is ``floor(log(1-U) / log(1-p))`` with ``U`` the
    next uniform double of ``Xoshiro256(seed)``. Output edges are sorted.
    """
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise GraphError(f"p must lie in [0, 1], got {p}")
    n = int(n)
    if n < 0:
        raise GraphError("n must be non-negative")
    if n < 2 or p == 0.0:
        return empty_graph(n)
    if p == 1.0:
        return complete_graph(n)
    e = _gnp_kernel(n, float(p), np.uint64(int(seed) & rng.MASK64))
    order = np.lexsort((e[:, 1], e[:, 0]))
    return Graph(n, e[order])


# -- edge-list text format --------------------------------------------------

def write_edge_list(g, path_or_file):
    """Write ``n m`` then one ``u v`` line per edge, sorted by (min, max)."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges.tolist())
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        with open(path_or_file, "w") as fh:
            fh.write(text)


def parse_edge_list(text, strict=True):
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    if not rows:
        raise GraphError("missing header line 'n m'")
    header = rows[0]
    if len(header) != 2:
        raise GraphError("header must be 'n m'")
    n, m = int(header[0]), int(header[1])
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header declares {m} edges, found {len(body)}")
    pairs = []
    for r in body:
        if len(r) != 2:
            raise GraphError(f"bad edge line: {' '.join(r)}")
        pairs.append((int(r[0]), int(r[1])))
    return graph_from_edge_list(n, pairs, strict=strict)


def read_edge_list(path_or_file, strict=True):
    if hasattr(path_or_file, "read"):
        return parse_edge_list(path_or_file.read(), strict=strict)
    with open(path_or_file) as fh:
        return parse_edge_list(fh.read(), strict=strict)
