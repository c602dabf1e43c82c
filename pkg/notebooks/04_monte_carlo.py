# %% [markdown]
# # Monte Carlo on G(n, p), p = sqrt(alpha / (n log n))
#
# Desk-scale n cannot show the sharp threshold at alpha = 1/3; we look at the
# monotone trend and the size of the largest percolating cluster instead.

# %%
from k4perc.asymptotics import beta_star
from k4perc.experiments import (ExperimentConfig, largest_clique_scan, monotone_violations,
                                percolation_fractions, percolation_probability_scan, rows_to_csv)

cfg = ExperimentConfig(n=1000, alphas=[0.1, 0.33, 1, 3, 10], trials=20)
rows = percolation_probability_scan(cfg)
fr = percolation_fractions(rows)
print(fr)
print("drops beyond 2 sigma:", monotone_violations(fr))

# %%
summary, rows = largest_clique_scan(ExperimentConfig(n=10_000, alphas=[0.2], trials=5))
print(summary, beta_star(0.2))

# %%
print(rows_to_csv(rows[:3]))
