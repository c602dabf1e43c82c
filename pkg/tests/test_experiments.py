import math

import pytest

from k4perc.experiments import (CSV_COLUMNS, ExperimentConfig, ScanRow, clique_ratio_summary,
                                edge_probability, largest_clique_scan, monotone_violations,
                                percolation_fractions, percolation_probability_scan,
                                rows_from_csv, rows_to_csv, rows_to_json, seed_edge_census)
from k4perc.graph import ResourceGuardError, complete_graph, cycle_graph, sample_gnp
from k4perc.rng import mix_seed


def test_seed_census_examples(c5):
    assert seed_edge_census(complete_graph(4)) == 6
    assert seed_edge_census(c5) == 0


def test_seed_census_matches_direct_check():
    from k4perc.bootstrap import is_seed_edge

    for seed in range(60):
        g = sample_gnp(9, 0.45, seed)
        want = sum(is_seed_edge(g, e) for e in g.edge_list())
        assert seed_edge_census(g) == want


def test_seed_census_subcritical_gnp():
    counts = [seed_edge_census(sample_gnp(2000, edge_probability(2000, 0.2), s)) for s in range(3)]
    assert counts == [0, 0, 0]


def test_edge_probability():
    assert edge_probability(1000, 1 / 3) == pytest.approx(math.sqrt(1 / (3000 * math.log(1000))))
    for bad in ((2, 0.2), (100, 0.0), (10, 100.0)):
        with pytest.raises(ValueError):
            edge_probability(*bad)


def test_rows_and_csv():
    cfg = ExperimentConfig(n=80, alphas=[0.5, 4.0], trials=3, master_seed=5, seed_edge_cap=0)
    rows = percolation_probability_scan(cfg)
    assert [(r.alpha, r.trial) for r in rows] == [(a, t) for a in (0.5, 4.0) for t in range(3)]
    assert all(r.seed == mix_seed(5, r.trial, [0.5, 4.0].index(r.alpha)) for r in rows)
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert rows_from_csv(text) == rows
    assert '"max_clique"' in rows_to_json(rows)
    for r in rows:
        if r.isolated == 0:
            assert r.percolated == (r.max_clique == r.n)


def test_scan_reproducible_and_thread_invariant():
    cfg = dict(n=60, alphas=[0.3, 2.0], trials=4, master_seed=9)
    a = rows_to_csv(percolation_probability_scan(ExperimentConfig(**cfg)))
    b = rows_to_csv(percolation_probability_scan(ExperimentConfig(**cfg)))
    c = rows_to_csv(percolation_probability_scan(ExperimentConfig(threads=2, **cfg)))
    assert a == b == c


def test_cross_check_runs_on_small_n():
    # n <= 60 compares with the naive closure inside each trial
    rows = percolation_probability_scan(ExperimentConfig(n=40, alphas=[1.0, 6.0], trials=5))
    assert len(rows) == 10


def test_fractions_and_monotonicity():
    rows = [ScanRow(10, a, 0.1, t, 0, ok, 2, 0) for a, oks in ((1.0, [0, 0, 1, 0]), (2.0, [1, 1, 1, 0]))
            for t, ok in enumerate(oks)]
    fr = percolation_fractions(rows)
    assert fr == {1.0: (0.25, 4), 2.0: (0.75, 4)}
    assert monotone_violations(fr) == []
    assert monotone_violations({1.0: (1.0, 100), 2.0: (0.0, 100)}) == [(1.0, 2.0, 1.0, 0.0)]


def test_clique_summary():
    summary, rows = largest_clique_scan(ExperimentConfig(n=300, alphas=[0.2], trials=5))
    (s,) = summary
    assert s["trials"] == 5 and s["beta_star"] == pytest.approx(0.7702, abs=1e-3)
    assert s["mean"] == pytest.approx(sum(r.max_clique for r in rows) / 5 / math.log(300))
    zero = clique_ratio_summary([ScanRow(50, 0.2, 0.1, 0, 0, False, 0, 50)])
    assert zero[0]["mean"] == 0


def test_resource_guard():
    with pytest.raises(ResourceGuardError):
        ExperimentConfig(n=300_000, alphas=[0.2], trials=1).preflight()
    with pytest.raises(ResourceGuardError):
        ExperimentConfig(n=100_000, alphas=[0.2], trials=1, mem_limit=1000).preflight()
    with pytest.raises(ValueError):
        ExperimentConfig(n=100, alphas=[0.2], trials=0)
