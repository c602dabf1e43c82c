"""Reference K4-bootstrap closure and 2-neighbour bootstrap.

These are the slow, direct implementations that the clique process is checked
against. Graphs with ``n <= 512`` go through a numba bitset worklist; larger
graphs use the same worklist over Python sets.
"""

from collections import deque

import numpy as np

from . import _kernels
from .graph import Graph, GraphError


def k4_closure_naive(g):
    """Return the K4-bootstrap closure of ``g`` as a new :class:`Graph`.

    Repeatedly adds ``uv`` whenever ``u`` and ``v`` have two adjacent common
    neighbours, until nothing changes.
    """
    if g.n < 2:
        return g
    if g.is_dense:
        rows = _kernels.dense_closure(g.rows)
        return Graph(g.n, _kernels.rows_to_edges(rows))
    return Graph(g.n, _sparse_closure(g))


def _sparse_closure(g):
    adj = [set(nb) for nb in g.adjacency_lists()]
    stack = []
    queued = set()

    def push(a, b):
        if a > b:
            a, b = b, a
        if (a, b) not in queued:
            queued.add((a, b))
            stack.append((a, b))

    for u in range(g.n):
        for w in adj[u]:
            for v in adj[w]:
                if v > u and v not in adj[u]:
                    push(u, v)
    while stack:
        u, v = stack.pop()
        queued.discard((u, v))
        if v in adj[u]:
            continue
        common = adj[u] & adj[v]
        if not any(adj[w] & common for w in common):
            continue
        adj[u].add(v)
        adj[v].add(u)
        for w in adj[v]:
            if w != u and w not in adj[u]:
                push(u, w)
        for w in adj[u]:
            if w != v and w not in adj[v]:
                push(v, w)
        for a in common:
            for b in common - adj[a]:
                if b > a:
                    push(a, b)
    edges = [(u, v) for u in range(g.n) for v in adj[u] if v > u]
    edges.sort()
    return np.array(edges, dtype=np.int64).reshape(-1, 2)


def percolates(g, closure=None):
    """True iff the K4-closure of ``g`` is complete.

    Graphs on at most one vertex percolate, as does ``K2``. Pass ``closure``
    to reuse an already computed closure.
    """
    n = g.n
    if n <= 1:
        return True
    full = n * (n - 1) // 2
    if g.m == full:
        return True
    if closure is None and np.any(g.degrees() < 2):
        # a vertex with fewer than two neighbours never gains an edge
        return False
    if g.is_dense and closure is None:
        rows = _kernels.dense_closure(g.rows)
        return _kernels.edge_count(rows) == full
    if closure is None:
        closure = k4_closure_naive(g)
    return closure.m == full


def two_neighbour_closure(g, active):
    """Vertices eventually active under 2-neighbour bootstrap from ``active``.

    Each inactive vertex keeps a counter of active neighbours; a queue releases
    it once the counter reaches 2. Returns a sorted list.
    """
    adj = g.adjacency_lists()
    on = bytearray(g.n)
    hits = [0] * g.n
    queue = deque()
    for v in active:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
        if not on[v]:
            on[v] = 1
            queue.append(v)
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if on[w]:
                continue
            hits[w] += 1
            if hits[w] >= 2:
                on[w] = 1
                queue.append(w)
    return [v for v in range(g.n) if on[v]]


def is_contagious(g, pair):
    """True iff the two vertices of ``pair`` activate every vertex."""
    u, v = pair
    if u == v:
        raise GraphError("a contagious pair needs two distinct vertices")
    return len(two_neighbour_closure(g, (u, v))) == g.n


def is_seed_edge(g, edge):
    """True iff ``edge`` is an edge of ``g`` whose endpoints are contagious."""
    u, v = edge
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    return is_contagious(g, (u, v))


def has_seed_edge(g):
    return any(is_contagious(g, e) for e in g.edge_list())
