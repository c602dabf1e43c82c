# %% [markdown]
# # K4-bootstrap closure and the clique process
#
# An edge uv is added when u and v have two adjacent common neighbours. We
# run the naive fixpoint and the cluster-merging process side by side.

# %%
from k4perc.bootstrap import k4_closure_naive, percolates
from k4perc.clique_process import k4_closure_fast, run_clique_process
from k4perc.graph import complete_graph, graph_from_edge_list, sample_gnp

k4m = graph_from_edge_list(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
print(k4_closure_naive(k4m) == complete_graph(4), percolates(k4m))

# %% [markdown]
# The merge trace of a K4: triple merges build triangles, then a pair merge
# joins two triangles that share an edge.

# %%
st = run_clique_process(complete_graph(4))
for ev in st.trace:
    print(ev.kind, ev.inputs, ev.witness, "->", ev.output)

# %%
bad = 0
for seed in range(300):
    g = sample_gnp(30, 0.2, seed)
    bad += k4_closure_fast(g) != k4_closure_naive(g)
print("mismatches:", bad)

# %% [markdown]
# Terminal clusters pairwise share at most one vertex, so the closure is the
# union of the cliques on them.

# %%
g = sample_gnp(40, 0.18, 3)
fam = sorted(run_clique_process(g).family(), key=len, reverse=True)
print([len(c) for c in fam[:10]])
