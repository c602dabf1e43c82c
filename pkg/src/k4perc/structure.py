"""Excess, irreducibility and the seed-edge / 3-core decomposition.

Percolating graphs on ``n`` vertices have at least ``2n - 3`` edges, so the
*excess* ``m - (2n - 3)`` measures how far a graph is from edge-minimal.
Irreducible graphs percolate but stop percolating after any single edge
deletion. Peeling degree-2 vertices from an irreducible graph leaves either a
single edge whose endpoints 2-neighbour-activate everything (a seed edge) or a
percolating core of minimum degree 3 that does the same.
"""

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .bootstrap import percolates, two_neighbour_closure
from .graph import GraphError, induced_subgraph

SEED_EDGE = "seed-edge"
THREE_CORE = "three-core"


class NotPercolatingError(GraphError):
    pass


class CoreVerificationError(RuntimeError):
    """Peeling produced a remainder that fails the decomposition checks."""


def excess(g):
    return g.m - (2 * g.n - 3)


def is_irreducible(g):
    """True iff ``g`` percolates and every single-edge deletion breaks that.

    Raises :class:`NotPercolatingError` for a non-percolating input.
    """
    if not percolates(g):
        raise NotPercolatingError("is_irreducible needs a percolating graph")
    for u, v in g.edge_list():
        if percolates(g.without_edge(u, v)):
            return False
    return True


@dataclass
class CoreDecomposition:
    kind: str
    core: list
    excess: int
    peel_order: list = field(default_factory=list)

    def to_json(self, indent=None):
        return json.dumps(asdict(self), indent=indent)

    @property
    def q(self):
        """Core size with a seed edge counted as 2."""
        return len(self.core)


def peel_degree_two(g):
    """Remove degree-2 vertices (smallest index first) while more than two
    vertices remain. Returns ``(remaining_vertices, peel_order)``."""
    adj = [set(nb) for nb in g.adjacency_lists()]
    alive = set(range(g.n))
    order = []
    while len(alive) > 2:
        pick = next((v for v in sorted(alive) if len(adj[v]) == 2), None)
        if pick is None:
            break
        for w in adj[pick]:
            adj[w].discard(pick)
        adj[pick] = set()
        alive.discard(pick)
        order.append(pick)
    return sorted(alive), order


def core_decomposition(g, check=True):
    """Decompose an irreducible percolating graph into its seed edge or 3-core.

    With ``check`` the irreducibility precondition is tested first (``m + 1``
    closures). The result is always verified; a failing remainder raises
    :class:`CoreVerificationError`.
    """
    if check:
        if not is_irreducible(g):
            raise GraphError("core_decomposition needs an irreducible graph")
    core, order = peel_degree_two(g)
    kind = SEED_EDGE if len(core) == 2 else THREE_CORE
    dec = CoreDecomposition(kind, core, excess(g), order)
    verify_decomposition(g, dec)
    return dec


def verify_decomposition(g, dec):
    core = dec.core
    if len(two_neighbour_closure(g, core)) != g.n:
        raise CoreVerificationError(f"core {core} does not 2-neighbour-span the graph")
    sub, _ = induced_subgraph(g, core)
    if dec.kind == SEED_EDGE:
        if len(core) != 2 or not g.has_edge(*core):
            raise CoreVerificationError(f"seed core {core} is not an edge")
    else:
        if len(core) and sub.degrees().min() < 3:
            raise CoreVerificationError("core has a vertex of degree below 3")
        if not percolates(sub):
            raise CoreVerificationError("core does not percolate")
    if excess(sub) != dec.excess:
        raise CoreVerificationError(
            f"core excess {excess(sub)} differs from graph excess {dec.excess}")


@dataclass
class GraphStats:
    n: int
    m: int
    min_degree: int
    degree2_count: int
    excess: int


def graph_stats(g):
    deg = g.degrees()
    return GraphStats(
        n=g.n,
        m=g.m,
        min_degree=int(deg.min()) if g.n else 0,
        degree2_count=int(np.count_nonzero(deg == 2)),
        excess=excess(g),
    )


def reduce_to_irreducible(g):
    """Greedily drop edges (in sorted order) while the graph still percolates.

    Returns an irreducible spanning subgraph. Which one depends on the order;
    this is a convenience, not a canonical choice.
    """
    if not percolates(g):
        raise NotPercolatingError("reduce_to_irreducible needs a percolating graph")
    h = g
    changed = True
    while changed:
        changed = False
        for u, v in h.edge_list():
            cand = h.without_edge(u, v)
            if percolates(cand):
                h = cand
                changed = True
                break
    return h
