# %% [markdown]
# # Irreducible percolating graphs on few vertices
#
# Every edge set of size 2k-3+ell on k labelled vertices is visited. Counts
# are split by the number i of degree-2 vertices and the size q of the core
# left after peeling them (q = 2 means a seed edge).

# %%
from k4perc.enumeration import (census_table, enumerate_census, find_seven_core,
                                nine_vertex_survey, three_core_records, verify_count_bounds)
from k4perc.structure import core_decomposition

recs = []
for k in range(3, 8):
    recs += enumerate_census(k, 1)
print(census_table(recs))

# %% [markdown]
# No vertex set below 7 carries a minimum-degree-3 irreducible graph; on 7
# vertices there is one class (630 labellings, 8 automorphisms).

# %%
print([r for r in three_core_records(recs)])
core7 = find_seven_core()
print(core7.edge_list())
print(core_decomposition(core7))

# %% [markdown]
# Replacing a core edge by K4 minus that edge keeps excess 0 and can give a
# 9-vertex core.

# %%
for row in nine_vertex_survey(core7):
    print(row["edge"], row["percolates"], row["irreducible"], row["min_degree"], row["good"])

# %%
rep = verify_count_bounds(recs)
print(rep.all_pass)
for r in rep.rows:
    print(r["k"], r["ell"], r["i"], r["count"], f"{r['ratio']:.3g}")
