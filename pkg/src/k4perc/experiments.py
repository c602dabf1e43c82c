"""Seeded Monte Carlo scans on G(n, p) with ``p = sqrt(alpha / (n log n))``.

Each trial's graph seed is ``mix_seed(master_seed, trial, alpha_index)`` (see
:mod:`k4perc.rng`), so a row depends only on the config and its own indices.
Trials may run in worker processes; rows are always returned in
``(alpha_index, trial)`` order and ``runtime_ms`` stays 0 unless timing is
switched on, so the output bytes do not depend on the worker count.
"""

import csv
import io
import json
import math
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .asymptotics import beta_star
from .bootstrap import k4_closure_naive
from .clique_process import closure_from_state, run_clique_process
from .graph import ResourceGuardError, sample_gnp
from .rng import mix_seed

N_CAP = 200_000
MEM_LIMIT = 3 * 2 ** 30
# rough resident cost of one edge inside the clique process (sets, ids, arrays)
BYTES_PER_EDGE = 900
CROSS_CHECK_N = 60

CSV_COLUMNS = ["n", "alpha", "p", "trial", "seed", "percolated", "max_clique",
               "isolated", "seed_edges", "runtime_ms"]


def edge_probability(n, alpha):
    if n < 3:
        raise ValueError("p = sqrt(alpha / (n log n)) needs n >= 3")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    p = math.sqrt(alpha / (n * math.log(n)))
    if p >= 1:
        raise ValueError(f"alpha={alpha} gives p >= 1 at n={n}")
    return p


@dataclass
class ExperimentConfig:
    n: int
    alphas: list
    trials: int
    master_seed: int = 0
    threads: int = 1
    seed_edge_cap: int = -1  # -1: skip the seed-edge census
    timing: bool = False
    cross_check: bool = True
    mem_limit: int = MEM_LIMIT

    def __post_init__(self):
        if isinstance(self.alphas, (int, float)):
            self.alphas = [self.alphas]
        self.alphas = [float(a) for a in self.alphas]
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        for a in self.alphas:
            edge_probability(self.n, a)

    def preflight(self):
        """Raise :class:`ResourceGuardError` if a trial would not fit."""
        if self.n > N_CAP:
            raise ResourceGuardError(f"n={self.n} exceeds the cap {N_CAP}")
        p = edge_probability(self.n, max(self.alphas))
        edges = self.n * (self.n - 1) / 2 * p
        need = edges * BYTES_PER_EDGE * max(1, min(self.threads, self.trials))
        if need > self.mem_limit:
            raise ResourceGuardError(
                f"estimated {need / 2**30:.1f} GiB exceeds limit {self.mem_limit / 2**30:.1f} GiB")


@dataclass
class ScanRow:
    n: int
    alpha: float
    p: float
    trial: int
    seed: int
    percolated: bool
    max_clique: int
    isolated: int
    seed_edges: object = None
    runtime_ms: float = 0


def _trial(job):
    n, alpha, ai, trial, master, cap, timing, cross = job
    t0 = time.perf_counter()
    p = edge_probability(n, alpha)
    seed = mix_seed(master, trial, ai)
    g = sample_gnp(n, p, seed)
    st = run_clique_process(g, record_trace=False)
    if cross and n <= CROSS_CHECK_N and closure_from_state(st) != k4_closure_naive(g):
        raise AssertionError(f"fast and naive closures differ (n={n}, seed={seed})")
    seeds = seed_edge_census(g, cap) if cap >= 0 else None
    ms = (time.perf_counter() - t0) * 1000 if timing else 0
    return ScanRow(n, alpha, p, trial, seed, st.spans(), st.max_size(),
                   g.isolated_count(), seeds, round(ms, 3))


def _jobs(cfg):
    return [(cfg.n, a, ai, t, cfg.master_seed, cfg.seed_edge_cap, cfg.timing, cfg.cross_check)
            for ai, a in enumerate(cfg.alphas) for t in range(cfg.trials)]


def run_trials(cfg):
    cfg.preflight()
    jobs = _jobs(cfg)
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            return list(pool.map(_trial, jobs))
    return [_trial(j) for j in jobs]


def percolation_probability_scan(cfg):
    """One row per (alpha, trial): did G(n, p) percolate, and its largest cluster."""
    return run_trials(cfg)


def percolation_fractions(rows):
    """``{alpha: (fraction, trials)}`` in first-seen alpha order."""
    out = {}
    for r in rows:
        hit, tot = out.get(r.alpha, (0, 0))
        out[r.alpha] = (hit + bool(r.percolated), tot + 1)
    return {a: (h / t, t) for a, (h, t) in out.items()}


def monotone_violations(fractions, slack_sigmas=2.0):
    """Adjacent alpha pairs where the fraction drops by more than the binomial slack."""
    items = sorted(fractions.items())
    bad = []
    for (a0, (f0, t0)), (a1, (f1, t1)) in zip(items, items[1:]):
        sd = math.sqrt(f0 * (1 - f0) / t0 + f1 * (1 - f1) / t1)
        if f1 < f0 - slack_sigmas * max(sd, 1e-12):
            bad.append((a0, a1, f0, f1))
    return bad


def clique_ratio_summary(rows):
    """Per alpha: statistics of ``max_clique / log n``."""
    by = {}
    for r in rows:
        by.setdefault(r.alpha, []).append(r.max_clique / math.log(r.n))
    out = []
    for a, vals in by.items():
        x = np.asarray(vals, dtype=float)
        q = np.quantile(x, [0.1, 0.5, 0.9]).tolist()
        out.append({
            "n": rows[0].n,
            "alpha": a,
            "beta_star": beta_star(a) if a < 1 / 3 else None,
            "trials": len(x),
            "mean": float(x.mean()),
            "sd": float(x.std(ddof=1)) if len(x) > 1 else 0.0,
            "q10": q[0],
            "median": q[1],
            "q90": q[2],
        })
    return out


def largest_clique_scan(cfg):
    """Summary of ``largest_percolating_clique / log n`` over the trials.

    Returns ``(summary, rows)``; ``summary`` has one entry per alpha.
    """
    rows = run_trials(cfg)
    return clique_ratio_summary(rows), rows


def seed_edge_census(g, cap=0):
    """Number of edges whose endpoints 2-neighbour-activate every vertex.

    Examines at most ``cap`` edges (0: all). A vertex of degree below 2 can only
    become active as an endpoint, so those vertices restrict the candidates
    before any closure is run; each closure stops as soon as its queue empties.
    """
    n = g.n
    if n <= 2:
        return g.m
    adj = g.adjacency_lists()
    low = [v for v in range(n) if len(adj[v]) < 2]
    if len(low) > 2:
        return 0
    edges = g.edge_list()
    if cap:
        edges = edges[:cap]
    count = 0
    for u, v in edges:
        if any(w != u and w != v for w in low):
            continue
        if _spans_from(adj, n, u, v):
            count += 1
    return count


def _spans_from(adj, n, u, v):
    hits = {}
    on = {u, v}
    queue = deque((u, v))
    while queue:
        x = queue.popleft()
        for w in adj[x]:
            if w in on:
                continue
            c = hits.get(w, 0) + 1
            if c >= 2:
                on.add(w)
                queue.append(w)
            else:
                hits[w] = c
    return len(on) == n


# -- output -------------------------------------------------------------------

def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_cell(getattr(r, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def rows_to_json(rows, indent=None):
    return json.dumps([asdict(r) for r in rows], indent=indent)


def rows_from_csv(text):
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        out.append(ScanRow(
            n=int(rec["n"]), alpha=float(rec["alpha"]), p=float(rec["p"]),
            trial=int(rec["trial"]), seed=int(rec["seed"]),
            percolated=rec["percolated"] == "1", max_clique=int(rec["max_clique"]),
            isolated=int(rec["isolated"]),
            seed_edges=int(rec["seed_edges"]) if rec["seed_edges"] else None,
            runtime_ms=float(rec["runtime_ms"]),
        ))
    return out
