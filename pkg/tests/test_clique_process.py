import json
import random
from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from k4perc.bootstrap import k4_closure_naive, percolates
from k4perc.clique_process import (PAIR, TRIPLE, closure_from_state, k4_closure_fast,
                                   largest_percolating_clique, percolates_fast,
                                   run_clique_process, terminal_violations)
from k4perc.graph import Graph, complete_graph, empty_graph, graph_from_edge_list, sample_gnp

POLICIES = ["fifo", "index-min", "random:1", ("random", 99)]


def test_triangle_single_triple_merge(triangle):
    st = run_clique_process(triangle)
    assert st.family() == {frozenset({0, 1, 2})}
    assert [ev.kind for ev in st.trace] == [TRIPLE]
    ev = st.trace[0]
    assert len(set(ev.witness)) == 3 and len(ev.inputs) == 3


def test_bowtie_two_triangles(bowtie):
    st = run_clique_process(bowtie)
    assert st.family() == {frozenset({0, 1, 2}), frozenset({2, 3, 4})}
    assert [ev.kind for ev in st.trace] == [TRIPLE, TRIPLE]


def test_k4_uses_a_pair_merge(k4):
    st = run_clique_process(k4)
    assert st.family() == {frozenset(range(4))}
    assert any(ev.kind == PAIR for ev in st.trace)


def test_fast_closure_examples(bowtie, k4_minus_edge):
    assert k4_closure_fast(bowtie) == bowtie
    assert k4_closure_fast(k4_minus_edge) == complete_graph(4)


def test_fast_equals_naive_on_gnp_12():
    for seed in range(200):
        g = sample_gnp(12, 0.35, seed)
        assert k4_closure_fast(g) == k4_closure_naive(g)


def test_largest_clique_examples(bowtie):
    assert largest_percolating_clique(empty_graph(5)) == 0
    assert largest_percolating_clique(bowtie) == 3


def test_largest_clique_matches_max_clique_of_closure():
    checked = 0
    for seed in range(100):
        g = sample_gnp(14, 0.3, seed)
        h = k4_closure_naive(g)
        ng = nx.Graph()
        ng.add_nodes_from(range(h.n))
        ng.add_edges_from(h.edge_list())
        best = max(len(c) for c in nx.find_cliques(ng))
        if best >= 3:
            checked += 1
            assert largest_percolating_clique(g) == best
    assert checked > 50


def test_policies_reach_the_same_family():
    for seed in range(150):
        r = random.Random(seed)
        g = sample_gnp(r.randint(5, 30), r.uniform(0.1, 0.5), seed)
        fams = {run_clique_process(g, pol).family() for pol in POLICIES}
        assert len(fams) == 1


def test_terminal_state_has_no_available_merge():
    for seed in range(150):
        r = random.Random(seed)
        g = sample_gnp(r.randint(5, 40), r.uniform(0.05, 0.4), seed)
        assert terminal_violations(run_clique_process(g)) == []


def test_terminal_violation_checker_detects_merges():
    from k4perc.clique_process import ProcessState

    pair = ProcessState(4, {10: frozenset({0, 1, 2}), 11: frozenset({1, 2, 3})},
                        np.zeros((0, 2), dtype=np.int64), np.zeros(0, dtype=np.int64))
    assert terminal_violations(pair) == [(PAIR, 0, 1)]
    tri = ProcessState(3, {}, np.array([[0, 1], [0, 2], [1, 2]]), np.arange(3))
    assert terminal_violations(tri) == [(TRIPLE, 0, 1, 2)]


def test_clusters_edge_disjoint_and_triangle_free():
    for seed in range(60):
        g = sample_gnp(30, 0.15, seed)
        st = run_clique_process(g)
        cl = list(st.family())
        for a, b in combinations(cl, 2):
            assert len(a & b) <= 1
        # every graph edge lies in exactly one cluster
        for u, v in g.edge_list():
            assert sum(1 for c in cl if u in c and v in c) == 1


def test_clusters_percolate_in_graph_closure():
    for seed in range(40):
        g = sample_gnp(20, 0.25, seed)
        h = k4_closure_naive(g)
        for c in run_clique_process(g).family():
            sub = [e for e in h.edge_list() if e[0] in c and e[1] in c]
            assert len(sub) == len(c) * (len(c) - 1) // 2


def test_trace_records_valid_merges():
    for seed in range(40):
        g = sample_gnp(25, 0.25, seed)
        st = run_clique_process(g, "random:3")
        sizes = {i: 2 for i in range(g.m)}
        sets = {i: set(e) for i, e in enumerate(g.edge_list())}
        for ev in st.trace:
            ins = [sets.pop(c) for c in ev.inputs]
            if ev.kind == PAIR:
                assert len(ins) == 2 and len(ev.witness) >= 2
                assert set(ev.witness) <= ins[0] & ins[1]
            else:
                x, y, z = ev.witness
                assert len({x, y, z}) == 3
                assert x in ins[0] & ins[1] and y in ins[0] & ins[2] and z in ins[1] & ins[2]
            out = set().union(*ins)
            assert len(out) <= sum(len(s) for s in ins)
            assert len(out) <= 3 * max(sizes[c] for c in ev.inputs)
            sets[ev.output] = out
            sizes[ev.output] = len(out)
        assert {frozenset(s) for s in sets.values()} == st.family()


def test_trace_json_round_trip(k4):
    st = run_clique_process(k4)
    data = json.loads(st.trace_json())
    assert [d["step"] for d in data] == list(range(len(st.trace)))
    assert set(data[0]) == {"step", "kind", "inputs", "witness", "output"}


def test_unknown_policy_rejected(triangle):
    with pytest.raises(ValueError):
        run_clique_process(triangle, "lifo")


def test_percolates_fast_matches_reference():
    for seed in range(150):
        g = sample_gnp(10, 0.4, seed)
        if g.isolated_count() == 0:
            assert percolates_fast(g) == percolates(g)


def test_large_sparse_graph_runs():
    g = sample_gnp(20_000, 0.0008, 5)
    st = run_clique_process(g, record_trace=False)
    assert 2 <= st.max_size() < 20
    assert st.spans() is False
    # state is usable without materialising every cluster
    assert len(st.edges) <= g.m


def test_two_vertex_edge_spans():
    st = run_clique_process(graph_from_edge_list(2, [(0, 1)]))
    assert st.spans() and st.max_size() == 2
    assert closure_from_state(st) == Graph(2, [(0, 1)])
