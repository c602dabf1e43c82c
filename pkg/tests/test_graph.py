import io
import math

import numpy as np
import pytest

from k4perc.graph import (DENSE_LIMIT, GraphError, complete_graph, cycle_graph, empty_graph,
                          graph_from_edge_list, induced_subgraph, parse_edge_list,
                          read_edge_list, sample_gnp, union, write_edge_list)


def test_triangle_construction():
    g = graph_from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
    assert g.m == 3
    assert g.degrees().tolist() == [2, 2, 2]


def test_edgeless():
    g = graph_from_edge_list(4, [])
    assert g.m == 0 and g.n == 4
    assert g.isolated_count() == 4


def test_strict_rejects_reversed_duplicate():
    with pytest.raises(GraphError):
        graph_from_edge_list(4, [(0, 1), (1, 0)])


def test_lenient_merges_duplicates():
    g = graph_from_edge_list(4, [(0, 1), (1, 0), (0, 1)], strict=False)
    assert g.edge_list() == [(0, 1)]


@pytest.mark.parametrize("edges", [[(0, 4)], [(-1, 2)], [(2, 2)]])
def test_bad_pairs_rejected(edges):
    with pytest.raises(GraphError):
        graph_from_edge_list(4, edges)


def test_edges_stored_sorted_with_u_less_than_v():
    g = graph_from_edge_list(5, [(4, 0), (3, 1), (1, 0)])
    assert g.edge_list() == [(0, 1), (0, 4), (1, 3)]
    assert g.has_edge(4, 0) and not g.has_edge(2, 3)


def test_adjacency_views_agree():
    g = sample_gnp(70, 0.2, 11)
    rows = g.rows
    for v in range(g.n):
        nb = g.neighbors(v).tolist()
        bits = [w for w in range(g.n) if (int(rows[v, w >> 6]) >> (w & 63)) & 1]
        assert nb == bits == g.adjacency_lists()[v]
    assert g.degrees().sum() == 2 * g.m


def test_bitset_rows_refused_beyond_dense_limit():
    g = empty_graph(DENSE_LIMIT + 1)
    assert not g.is_dense
    with pytest.raises(GraphError):
        g.rows


def test_gnp_extremes():
    assert sample_gnp(10, 0.0, 5).m == 0
    assert sample_gnp(10, 1.0, 5).m == 45


def test_gnp_rejects_bad_p():
    for p in (-0.1, 1.5, float("nan")):
        with pytest.raises(GraphError):
            sample_gnp(10, p, 0)


def test_gnp_edge_count_within_four_sigma():
    g = sample_gnp(10_000, 1e-3, 1)
    mean = math.comb(10_000, 2) * 1e-3
    sd = math.sqrt(mean * (1 - 1e-3))
    assert abs(g.m - mean) <= 4 * sd


def test_gnp_reproducible_and_seed_sensitive():
    a = sample_gnp(500, 0.05, 42)
    assert a == sample_gnp(500, 0.05, 42)
    assert a != sample_gnp(500, 0.05, 43)


def test_gnp_pair_frequencies_uniform():
    # each pair should be hit with probability p, including the first and last slots
    n, p, reps = 8, 0.3, 3000
    hits = np.zeros((n, n))
    for s in range(reps):
        for u, v in sample_gnp(n, p, s).edge_list():
            hits[u, v] += 1
    iu = np.triu_indices(n, 1)
    freq = hits[iu] / reps
    sd = math.sqrt(p * (1 - p) / reps)
    assert np.all(np.abs(freq - p) < 4.5 * sd)


def test_gnp_degree_handshake():
    g = sample_gnp(3000, 0.004, 9)
    assert int(g.degrees().sum()) == 2 * g.m
    assert (g.edges[:, 0] < g.edges[:, 1]).all()


def test_induced_triangle_pair():
    g = graph_from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
    sub, rank = induced_subgraph(g, [0, 1])
    assert sub.edge_list() == [(0, 1)] and rank.tolist() == [0, 1]


def test_induced_identity():
    g = complete_graph(4)
    sub, rank = induced_subgraph(g, range(4))
    assert sub == g and rank.tolist() == [0, 1, 2, 3]


def test_induced_path_from_cycle():
    sub, _ = induced_subgraph(cycle_graph(5), [0, 1, 2])
    assert sub.m == 2 and sub.edge_list() == [(0, 1), (1, 2)]


def test_induced_relabels_by_rank():
    g = graph_from_edge_list(6, [(1, 5), (5, 3), (0, 2)])
    sub, rank = induced_subgraph(g, [5, 3, 1])
    assert rank.tolist() == [1, 3, 5]
    assert sub.edge_list() == [(0, 2), (1, 2)]


def test_induced_out_of_range():
    with pytest.raises(GraphError):
        induced_subgraph(complete_graph(3), [0, 3])


def test_union_merges_edge_sets():
    a = graph_from_edge_list(4, [(0, 1), (1, 2)])
    b = graph_from_edge_list(4, [(1, 2), (2, 3)])
    assert union(a, b).edge_list() == [(0, 1), (1, 2), (2, 3)]


def test_edge_list_round_trip(tmp_path):
    g = sample_gnp(40, 0.2, 3)
    path = tmp_path / "g.txt"
    write_edge_list(g, path)
    assert read_edge_list(path) == g
    text = path.read_text().splitlines()
    assert text[0] == f"{g.n} {g.m}"


def test_edge_list_comments_and_errors():
    g = parse_edge_list("# a comment\n3 2\n0 1\n# inner\n2 1\n")
    assert g.edge_list() == [(0, 1), (1, 2)]
    with pytest.raises(GraphError):
        parse_edge_list("3 3\n0 1\n1 2\n")
    with pytest.raises(GraphError):
        parse_edge_list("3 2\n0 1\n1 0\n")
    assert parse_edge_list("3 2\n0 1\n1 0\n", strict=False).m == 1


def test_writer_accepts_file_objects():
    buf = io.StringIO()
    write_edge_list(graph_from_edge_list(3, [(2, 0)]), buf)
    assert buf.getvalue() == "3 1\n0 2\n"
