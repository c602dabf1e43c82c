"""Exhaustive census of labelled irreducible percolating graphs.

For ``k <= 8`` every ``m``-edge graph on ``k`` labelled vertices is visited,
``m = 2k - 3 + ell``. Subsets of the ``C(k,2)`` edge slots are walked in colex
order (slot ``s`` is the pair ``(u, v)``, ``u < v``, in column order
``(0,1), (0,2), (1,2), (0,3), ...``), cut into contiguous rank ranges and
scanned by a numba kernel that releases the GIL, so chunks run on a thread
pool. Per-chunk tallies are summed and canonical codes unioned, so the result
does not depend on the number of workers.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .bootstrap import percolates
from .graph import GraphError, ResourceGuardError, graph_from_edge_list
from .structure import excess, graph_stats, is_irreducible

K_MIN, K_MAX = 3, 8
CANON_MAX = _kernels.SMALL_MAX
CHUNK = 1 << 21


@dataclass
class EnumerationRecord:
    k: int
    ell: int
    i: int
    q: int
    labelled_count: int
    unlabeled_count: int
    codes: list = field(default_factory=list, repr=False, compare=False)

    def as_dict(self):
        d = asdict(self)
        d.pop("codes")
        return d


@dataclass
class CensusStats:
    """Side results of a census pass, tallied per (k, ell)."""

    percolating: int = 0
    core_failures: int = 0
    degree2_failures: int = 0


# -- canonical codes ----------------------------------------------------------

def small_rows(g):
    rows = np.zeros(g.n, dtype=np.int64)
    for u, v in g.edges.tolist():
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return rows


def canonical_code(g):
    """Isomorphism-invariant byte string for graphs with ``n <= 10``.

    The first byte is ``n``; the rest is the lexicographically least
    upper-triangle adjacency bit string over relabellings, read column by
    column (pairs ``(0,1), (0,2), (1,2), (0,3), ...``), big-endian.
    """
    if g.n > CANON_MAX:
        raise GraphError(f"canonical_code supports n <= {CANON_MAX}, got {g.n}")
    code = int(_kernels.small_canonical(small_rows(g), g.n))
    return _pack(g.n, code)


def _pack(n, code):
    nbytes = (n * (n - 1) // 2 + 7) // 8
    return bytes([n]) + code.to_bytes(nbytes, "big")


def graph_from_code(code):
    """The labelled graph a canonical code spells out."""
    n = code[0]
    value = int.from_bytes(code[1:], "big")
    bits = n * (n - 1) // 2
    edges = []
    b = bits - 1
    for p in range(1, n):
        for i in range(p):
            if (value >> b) & 1:
                edges.append((i, p))
            b -= 1
    return graph_from_edge_list(n, edges)


# -- census -----------------------------------------------------------------

def _scan(k, m, start, count, check_irreducible):
    counts = np.zeros((k + 1, k + 1), dtype=np.int64)
    rep_i = np.zeros(count, dtype=np.int64)
    rep_q = np.zeros(count, dtype=np.int64)
    rep_code = np.zeros(count, dtype=np.int64)
    stats = np.zeros(4, dtype=np.int64)
    _kernels.census_chunk(k, m, start, count, check_irreducible, counts,
                          rep_i, rep_q, rep_code, stats)
    nrep = int(stats[0])
    keys = set(zip(rep_i[:nrep].tolist(), rep_q[:nrep].tolist(), rep_code[:nrep].tolist()))
    return counts, keys, stats


def census_level(k, ell, threads=1, chunk=CHUNK, check_irreducible=True):
    """Census for one ``(k, ell)``: ``(records, CensusStats)``."""
    if not K_MIN <= k <= K_MAX:
        raise ResourceGuardError(f"exhaustive census supports {K_MIN} <= k <= {K_MAX}")
    nslots = k * (k - 1) // 2
    m = 2 * k - 3 + ell
    cs = CensusStats()
    if m > nslots:
        return [], cs
    total = math.comb(nslots, m)
    starts = list(range(0, total, chunk))
    jobs = [(k, m, s, min(chunk, total - s), check_irreducible) for s in starts]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda a: _scan(*a), jobs))
    else:
        parts = [_scan(*a) for a in jobs]
    counts = np.zeros((k + 1, k + 1), dtype=np.int64)
    keys = set()
    for c, kset, st in parts:
        counts += c
        keys |= kset
        cs.core_failures += int(st[1])
        cs.degree2_failures += int(st[2])
        cs.percolating += int(st[3])
    records = []
    for i in range(k + 1):
        for q in range(k + 1):
            if counts[i, q] == 0:
                continue
            codes = sorted(_pack(k, c) for (ki, kq, c) in keys if ki == i and kq == q)
            records.append(EnumerationRecord(k, ell, i, q, int(counts[i, q]), len(codes), codes))
    return records, cs


def enumerate_census(k, ell_max, threads=1, check_irreducible=True, chunk=CHUNK):
    """Records ``(k, ell, i, q, labelled, unlabeled)`` for all ``ell <= ell_max``.

    ``i`` is the number of degree-2 vertices and ``q`` the size of the core
    left after peeling them (2 when a seed edge remains). Only non-empty
    classes are listed.
    """
    if ell_max < 0:
        raise ValueError("ell_max must be non-negative")
    out = []
    for ell in range(ell_max + 1):
        recs, _ = census_level(k, ell, threads, chunk, check_irreducible)
        out.extend(recs)
    return out


def census_to_json(records, indent=None):
    return json.dumps([r.as_dict() for r in records], indent=indent)


def census_table(records):
    lines = [f"{'k':>2} {'ell':>3} {'i':>2} {'q':>2} {'labelled':>12} {'unlabeled':>9}"]
    for r in records:
        lines.append(f"{r.k:>2} {r.ell:>3} {r.i:>2} {r.q:>2} {r.labelled_count:>12} "
                     f"{r.unlabeled_count:>9}")
    return "\n".join(lines) + "\n"


def three_core_records(records):
    """Records whose graphs have minimum degree at least 3."""
    return [r for r in records if r.i == 0 and r.q == r.k]


def find_seven_core():
    """The 7-vertex irreducible percolating 3-core, in canonical labelling.

    Raises if the census does not find exactly one isomorphism class.
    """
    recs = three_core_records(enumerate_census(7, 0))
    codes = [c for r in recs for c in r.codes]
    if len(codes) != 1:
        raise RuntimeError(f"expected one 7-vertex 3-core class, found {len(codes)}")
    return graph_from_code(codes[0])


def nine_vertex_construction(core7, edge):
    """Swap ``edge = (u, v)`` for a K4 minus ``uv`` glued on ``u`` and ``v``.

    Two new vertices ``w1 = n`` and ``w2 = n + 1`` get the edges
    ``u-w1, u-w2, v-w1, v-w2, w1-w2``.
    """
    u, v = edge
    if not core7.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    n = core7.n
    w1, w2 = n, n + 1
    edges = [e for e in core7.edge_list() if e != (min(u, v), max(u, v))]
    edges += [(u, w1), (u, w2), (v, w1), (v, w2), (w1, w2)]
    return graph_from_edge_list(n + 2, edges)


def nine_vertex_survey(core7):
    """Apply the construction at every edge; one dict per edge."""
    rows = []
    for e in core7.edge_list():
        h = nine_vertex_construction(core7, e)
        perc = percolates(h)
        st = graph_stats(h)
        irr = perc and is_irreducible(h)
        rows.append({
            "edge": list(e),
            "n": h.n,
            "m": h.m,
            "excess": excess(h),
            "percolates": perc,
            "irreducible": irr,
            "min_degree": st.min_degree,
            "good": bool(perc and irr and st.min_degree >= 3 and excess(h) == 0),
        })
    return rows


# -- counting bounds --------------------------------------------------------

def _e_bounds(terms=40):
    """Rationals ``lo < e < hi`` from the exponential series."""
    s = Fraction(0)
    f = Fraction(1)
    for j in range(terms):
        if j:
            f /= j
        s += f
    # tail after `terms` terms is below 2 / terms!
    return s, s + 2 * f / terms


E_LO, E_HI = _e_bounds()


def total_bound(k, ell, i):
    """``(2/e)^k k! k^(k + 2 ell + i)`` as a float (for display)."""
    return math.exp(k * math.log(2 / math.e) + math.lgamma(k + 1) + (k + 2 * ell + i) * math.log(k))


def check_total_bound(count, k, ell, i):
    """Exact test of ``count <= (2/e)^k k! k^(k+2ell+i)``.

    ``count * e^k <= 2^k k! k^(...)`` is decided with rational bounds on ``e``;
    the bounds are tight enough that no census value is ambiguous, but an
    ambiguous case would raise rather than guess.
    """
    rhs = (2 ** k) * math.factorial(k) * k ** (k + 2 * ell + i)
    if count * E_HI ** k <= rhs:
        return True
    if count * E_LO ** k > rhs:
        return False
    raise ArithmeticError("bound comparison not decided by the rational bracket for e")


@dataclass
class BoundsReport:
    rows: list
    psi_rows: list
    base_rows: list
    all_pass: bool

    def to_json(self, indent=None):
        return json.dumps(asdict(self), indent=indent)


def verify_count_bounds(records, eps=0.0):
    """Check the census against the labelled counting bounds.

    ``rows``: one per ``(k, ell, i)`` with ``I = sum_q count`` against
    ``(2/e)^k k! k^(k+2ell+i)`` (exact). ``psi_rows``: per ``(k, ell, i, q)``
    the ratio of the count to ``psi_eps(q/k)^k k! k^(k+2ell+i)``, an
    observation only since the lemma's constant is unspecified (taken as 1).
    ``base_rows``: ``I(5, i) <= C(5, i) C(4, 2)`` for ``i = 1, 2, 3`` at
    ``ell = 0`` when ``k = 5`` is present.
    """
    from .asymptotics import psi_eps

    totals = {}
    for r in records:
        key = (r.k, r.ell, r.i)
        totals[key] = totals.get(key, 0) + r.labelled_count
    rows = []
    for (k, ell, i), c in sorted(totals.items()):
        ok = check_total_bound(c, k, ell, i)
        b = total_bound(k, ell, i)
        rows.append({"k": k, "ell": ell, "i": i, "count": c, "bound": b,
                     "ratio": c / b, "pass": ok})
    psi_rows = []
    for r in records:
        y = r.q / r.k
        logb = (r.k * math.log(psi_eps(y, eps)) + math.lgamma(r.k + 1)
                + (r.k + 2 * r.ell + r.i) * math.log(r.k))
        psi_rows.append({"k": r.k, "ell": r.ell, "i": r.i, "q": r.q,
                         "count": r.labelled_count,
                         "ratio": r.labelled_count / math.exp(logb)})
    base_rows = []
    if any(k == 5 and ell == 0 for (k, ell, _) in totals):
        for i in (1, 2, 3):
            c = totals.get((5, 0, i), 0)
            lim = math.comb(5, i) * math.comb(4, 2)
            base_rows.append({"i": i, "count": c, "limit": lim, "pass": c <= lim})
    all_pass = all(r["pass"] for r in rows) and all(r["pass"] for r in base_rows)
    return BoundsReport(rows, psi_rows, base_rows, all_pass)


def labelled_from_unlabeled_ok(record):
    """``unlabeled <= labelled <= unlabeled * k!``."""
    return record.unlabeled_count <= record.labelled_count <= (
        record.unlabeled_count * math.factorial(record.k))


def automorphism_count(g):
    """``|Aut(g)|`` by brute force over permutations (small ``n`` only)."""
    from itertools import permutations

    if g.n > 9:
        raise ResourceGuardError("automorphism_count is brute force; n <= 9")
    es = g.edge_set()
    cnt = 0
    for perm in permutations(range(g.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in es for u, v in es):
            cnt += 1
    return cnt

