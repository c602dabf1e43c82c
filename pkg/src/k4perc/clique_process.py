"""Clique process: K4-closure by merging percolating clusters.

Start with one cluster per edge. Two clusters sharing at least two vertices
merge; three clusters forming a triangle (``x`` in V1&V2, ``y`` in V1&V3,
``z`` in V2&V3, all distinct) merge. At the fixpoint the closure is the union
of the cliques on the surviving clusters, and that family does not depend on
the merge order.

Engine notes
------------
* Clusters are never mutated; a merge makes a new id. Vertex incidence holds
  stale ids and resolves them through a union-find forest, so merging costs
  only the union of the smaller vertex sets.
* Every pending cluster carries a *delta*: vertices added since its largest
  ancestor was last checked. Any merge that became available through the new
  cluster has a witness vertex in that delta, so checks scan only the delta.
* Pair merges run before triple merges under every policy: the triangle
  queue is only served once no pair check is pending.
"""

import heapq
import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from .graph import Graph
from .rng import Xoshiro256

PAIR = "pair"
TRIPLE = "triple"
# clusters up to this size use the indexed triangle search
SMALL_CLUSTER = 32


@dataclass(frozen=True)
class MergeEvent:
    kind: str
    inputs: tuple
    witness: tuple
    output: int
    step: int

    def as_dict(self):
        return {
            "step": self.step,
            "kind": self.kind,
            "inputs": list(self.inputs),
            "witness": list(self.witness),
            "output": self.output,
        }


class ProcessState:
    """Terminal state of a clique process.

    ``merged`` maps the ids of clusters built by merges to their vertex sets;
    ``edges`` (ids ``edge_ids``) are the edges still alone in their starting
    cluster. ``clusters`` combines both into one id -> frozenset map on first
    use, which is avoidable for large graphs when only sizes are needed.
    """

    def __init__(self, n, merged, edges, edge_ids, trace=None):
        self.n = n
        self.merged = merged
        self.edges = edges
        self.edge_ids = edge_ids
        self.trace = trace if trace is not None else []
        self._clusters = None

    @property
    def clusters(self):
        if self._clusters is None:
            out = {int(c): frozenset((int(u), int(v)))
                   for c, (u, v) in zip(self.edge_ids.tolist(), self.edges.tolist())}
            out.update(self.merged)
            self._clusters = out
        return self._clusters

    def family(self):
        """Terminal clusters as a set of frozensets (order independent)."""
        return frozenset(self.clusters.values())

    def max_size(self):
        best = max((len(c) for c in self.merged.values()), default=0)
        if len(self.edges):
            best = max(best, 2)
        return best

    def spans(self):
        """True iff one cluster covers every vertex."""
        if any(len(c) == self.n for c in self.merged.values()):
            return True
        return self.n == 2 and len(self.edges) == 1

    def trace_json(self, indent=None):
        return json.dumps([ev.as_dict() for ev in self.trace], indent=indent)


def _slot_edge_ids(g):
    """Edge id of each CSR slot of ``g`` (same order as ``g.indices``)."""
    e = g.edges
    m = len(e)
    src = np.concatenate([e[:, 0], e[:, 1]])
    dst = np.concatenate([e[:, 1], e[:, 0]])
    ids = np.concatenate([np.arange(m), np.arange(m)])
    return ids[np.lexsort((dst, src))]


def _parse_policy(policy):
    if isinstance(policy, tuple):
        name, seed = policy
    elif isinstance(policy, str) and policy.startswith("random"):
        name, _, seed = policy.partition(":")
        seed = int(seed) if seed else 0
    else:
        name, seed = policy, 0
    if name not in ("fifo", "index-min", "random"):
        raise ValueError(f"unknown merge policy {policy!r}")
    return name, seed


class _Queue:
    """Pending cluster ids, served in the order a policy dictates."""

    def __init__(self, name, rng=None):
        self.name = name
        self.rng = rng
        if name == "fifo":
            self.items = deque()
        else:
            self.items = []

    def push(self, cid):
        if self.name == "fifo":
            self.items.append(cid)
        elif self.name == "index-min":
            heapq.heappush(self.items, cid)
        else:
            self.items.append(cid)

    def pop(self):
        if self.name == "fifo":
            return self.items.popleft()
        if self.name == "index-min":
            return heapq.heappop(self.items)
        i = self.rng.below(len(self.items))
        items = self.items
        items[i], items[-1] = items[-1], items[i]
        return items.pop()

    def __bool__(self):
        return bool(self.items)


class _Engine:
    def __init__(self, g, policy, record_trace):
        name, seed = _parse_policy(policy)
        rng = Xoshiro256(seed) if name == "random" else None
        self.n = g.n
        self.record = record_trace
        self.trace = []
        # edge clusters (ids 0..m-1) get a vertex set only when first touched
        self.members = {}
        edges = g.edges
        m = len(edges)
        self.m = m
        self.eu = edges[:, 0].tolist()
        self.ev = edges[:, 1].tolist()
        self.parent = list(range(m))
        self.indptr = g.indptr
        self.slot_edge = _slot_edge_ids(g)
        self.inc = [None] * g.n
        self.pair_delta = {}
        self.tri_delta = {}
        self.W = _Queue(name, rng)
        self.T = _Queue(name, rng)
        # edge clusters share at most one vertex; only edges in graph triangles merge
        flags = _kernels.edges_in_triangles(g.indptr, g.indices, edges)
        for cid in np.flatnonzero(flags).tolist():
            self.tri_delta[cid] = {self.eu[cid], self.ev[cid]}
            self.T.push(cid)

    def _mem(self, c):
        s = self.members.get(c)
        if s is None:
            s = {self.eu[c], self.ev[c]}
            self.members[c] = s
        return s

    def find(self, c):
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def live(self, v):
        ids = self.inc[v]
        if ids is None:
            ptr = self.indptr
            ids = set(self.slot_edge[ptr[v]:ptr[v + 1]].tolist())
            self.inc[v] = ids
        out = set()
        stale = False
        for c in ids:
            r = self.find(c)
            if r != c:
                stale = True
            out.add(r)
        if stale:
            self.inc[v] = out
        return out

    def run(self):
        parent = self.parent
        while True:
            if self.W:
                cid = self.W.pop()
                if parent[cid] != cid:
                    continue
                delta = self.pair_delta.get(cid)
                if delta is None:
                    continue
                partners = self._pair_check(cid, delta)
                if partners:
                    # one binary step per partner; the growing cluster still
                    # shares >= 2 vertices with each, and the unscanned delta
                    # is carried forward by the merges
                    cur = cid
                    mem = self._mem
                    for d in partners:
                        shared = tuple(sorted(mem(cur) & mem(d)))
                        cur = self._merge(PAIR, (cur, d), shared)
                    continue
                del self.pair_delta[cid]
                if self.tri_delta.get(cid):
                    self.T.push(cid)
                continue
            if self.T:
                cid = self.T.pop()
                if parent[cid] != cid:
                    continue
                delta = self.tri_delta.get(cid)
                if not delta:
                    continue
                hit = self._triangle_check(cid, delta)
                if hit is not None:
                    self._merge(TRIPLE, *hit)
                else:
                    del self.tri_delta[cid]
                continue
            break

    def _pair_check(self, c, delta):
        """Clusters sharing >= 2 vertices with ``c`` through the first delta
        vertex that has any; an empty list when there are none."""
        cm = self._mem(c)
        seen = {c}
        done = []
        for x in delta:
            found = []
            for d in self.live(x):
                if d in seen:
                    continue
                seen.add(d)
                if len(cm & self._mem(d)) >= 2:
                    found.append(d)
            done.append(x)
            if found:
                # every cluster through a scanned vertex has been looked at;
                # later partners through it must use a fresh vertex
                delta.difference_update(done)
                return found
        return []

    def _meet(self, a, b, exclude):
        """Some vertex of a & b outside ``exclude``, or None."""
        if len(a) > len(b):
            a, b = b, a
        for v in a:
            if v in b and v not in exclude:
                return v
        return None

    def _triangle_check(self, c, delta):
        # no pair merge is available here, so any two live clusters share <= 1 vertex
        cm = self._mem(c)
        if len(cm) <= SMALL_CLUSTER:
            return self._triangle_check_small(c, delta)
        done = []
        for x in delta:
            for d in self.live(x):
                if d != c:
                    hit = self._triangle_through(c, d, x)
                    if hit is not None:
                        delta.difference_update(done)
                        return hit
            done.append(x)
        return None

    def _triangle_through(self, c, d, x):
        """A triangle merge of ``c`` and ``d`` (which meet at ``x``) with a third cluster."""
        mem = self._mem
        cm = mem(c)
        dm = mem(d)
        if len(dm) <= len(cm):
            for z in dm:
                if z == x:
                    continue
                for e in self.live(z):
                    if e == c or e == d:
                        continue
                    y = self._meet(mem(e), cm, (x,))
                    if y is not None:
                        return (c, d, e), (x, y, z)
        else:
            for y in cm:
                if y == x:
                    continue
                for e in self.live(y):
                    if e == c or e == d:
                        continue
                    z = self._meet(mem(e), dm, (x, y))
                    if z is not None:
                        return (c, d, e), (x, y, z)
        return None

    def _triangle_check_small(self, c, delta):
        """Triangle search for a small cluster ``c``.

        Index the far vertices ``z`` of every cluster ``d`` through a delta vertex
        ``x``, then walk clusters ``e`` through the vertices ``y`` of ``c`` and
        look their vertices up. Clusters ``d`` larger than ``c`` are searched
        from the ``c`` side instead.
        """
        mem = self._mem
        cm = mem(c)
        reach = {}
        large = []
        for x in delta:
            for d in self.live(x):
                if d == c:
                    continue
                dm = mem(d)
                if len(dm) > len(cm):
                    large.append((x, d))
                    continue
                for z in dm:
                    if z != x:
                        reach.setdefault(z, []).append((x, d))
        if reach:
            for y in cm:
                for e in self.live(y):
                    if e == c:
                        continue
                    em = mem(e)
                    if len(em) <= len(reach):
                        zs = [z for z in em if z in reach]
                    else:
                        zs = [z for z in reach if z in em]
                    for z in zs:
                        if z == y:
                            continue
                        for x, d in reach[z]:
                            if x != y and d != e:
                                return (c, d, e), (x, y, z)
        for x, d in large:
            hit = self._triangle_through(c, d, x)
            if hit is not None:
                return hit
        return None

    def _merge(self, kind, inputs, witness):
        mem = self._mem
        members = self.members
        new = len(self.parent)
        self.parent.append(new)
        big = max(inputs, key=lambda c: (len(mem(c)), -c))
        merged = mem(big)
        members.pop(big)
        fresh = set()
        for c in inputs:
            if c == big:
                continue
            part = mem(c)
            members.pop(c)
            fresh |= part - merged
            merged |= part
        for c in inputs:
            self.parent[c] = new
        members[new] = merged
        pd = self.pair_delta.pop(big, None)
        td = self.tri_delta.pop(big, None)
        for c in inputs:
            self.pair_delta.pop(c, None)
            self.tri_delta.pop(c, None)
        # the deltas of the largest input are extended in place, never copied
        if pd is None:
            pd = set(fresh)
        else:
            pd |= fresh
        if td is None:
            td = set(fresh)
        else:
            td |= fresh
        self.pair_delta[new] = pd
        self.tri_delta[new] = td
        self.W.push(new)
        if self.record:
            self.trace.append(MergeEvent(kind, tuple(inputs), tuple(witness), new, len(self.trace)))
        return new

    def state(self):
        m = self.m
        merged = {c: frozenset(vs) for c, vs in self.members.items() if c >= m}
        alone = np.flatnonzero(np.asarray(self.parent[:m]) == np.arange(m))
        return ProcessState(self.n, merged, np.stack(
            [np.asarray(self.eu, dtype=np.int64)[alone], np.asarray(self.ev, dtype=np.int64)[alone]],
            axis=1), alone, self.trace)


def run_clique_process(g, policy="fifo", record_trace=True):
    """Run the clique process on ``g`` to its terminal state.

    ``policy`` is ``"fifo"``, ``"index-min"`` or ``"random:SEED"`` (also
    ``("random", seed)``); it only changes which pending cluster is examined
    next, never the terminal family.
    """
    eng = _Engine(g, policy, record_trace)
    eng.run()
    return eng.state()


def closure_from_state(state):
    # terminal clusters are edge-disjoint, so the pair lists never overlap
    parts = [np.asarray(state.edges, dtype=np.int64).reshape(-1, 2)]
    small = []
    for c in state.merged.values():
        vs = sorted(c)
        if len(vs) <= 16:
            small.extend(combinations(vs, 2))
        else:
            vs = np.array(vs, dtype=np.int64)
            iu, ju = np.triu_indices(len(vs), k=1)
            parts.append(np.stack([vs[iu], vs[ju]], axis=1))
    if small:
        parts.append(np.array(small, dtype=np.int64))
    e = np.concatenate(parts)
    order = np.lexsort((e[:, 1], e[:, 0]))
    return Graph(state.n, e[order])


def k4_closure_fast(g, policy="fifo"):
    """K4-closure as the union of cliques on the terminal clusters."""
    return closure_from_state(run_clique_process(g, policy, record_trace=False))


def largest_percolating_clique(g):
    """Size of the largest terminal cluster (0 for an edgeless graph)."""
    return run_clique_process(g, record_trace=False).max_size()


def percolates_fast(g):
    if g.n <= 1:
        return True
    return run_clique_process(g, record_trace=False).spans()


def terminal_violations(state):
    """Merges still available in ``state``; empty for a terminal state.

    Exhaustive over cluster pairs and triples that touch, independent of the
    engine's bookkeeping.
    """
    clusters = list(state.clusters.values())
    by_vertex = {}
    for idx, c in enumerate(clusters):
        for v in c:
            by_vertex.setdefault(v, []).append(idx)
    touching = [set() for _ in clusters]
    for ids in by_vertex.values():
        for a in ids:
            touching[a].update(ids)
    out = []
    for a in range(len(clusters)):
        touching[a].discard(a)
        for b in touching[a]:
            if b > a and len(clusters[a] & clusters[b]) >= 2:
                out.append((PAIR, a, b))
    for a in range(len(clusters)):
        for b in touching[a]:
            if b <= a:
                continue
            for c in touching[a] & touching[b]:
                if c <= b:
                    continue
                A, B, C = clusters[a], clusters[b], clusters[c]
                if any(
                    len({x, y, z}) == 3
                    for x in A & B for y in A & C for z in B & C
                ):
                    out.append((TRIPLE, a, b, c))
    return out
