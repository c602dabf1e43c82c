# %% [markdown]
# # Threshold exponents and numeric constants

# %%
import numpy as np

from k4perc import asymptotics as A

for a in (0.05, 0.1, 0.2, 0.3, 1 / 3 - 1e-9):
    print(f"alpha={a:.4f}  beta*={A.beta_star(a):.5f}  eps*={A.eps_star(a) if a < 1/3 else float('nan'):.5f}")

# %% [markdown]
# mu(alpha, beta) changes sign once on (0, 3]; its root is the scale of the
# largest percolating subgraph, in units of log n.

# %%
bs = np.linspace(0.05, 3, 12)
print([round(A.mu(0.2, b), 3) for b in bs])

# %%
rep = A.proof_constants(8)
for name, c in rep.checks.items():
    print(f"{name:20s} {c['value']:+.5f}  ref {c['reference']:+.4f}  {'ok' if c['pass'] else 'FAIL'}")
print("50-digit recheck agrees:", rep.extended_agree)

# %%
x1, x2 = A.zeta_stationary_points()
print(x1, x2, A.zeta(x1), A.zeta(x2))
