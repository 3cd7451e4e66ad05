"""
Checking the bounds without trusting them
=========================================

Three independent checks of the root-transform bound: a brute-force search
over the attainable (p1, p2) pairs, a seeded sample of class members, and the
extremal functions with their rotations.
"""

# %%
import math

from fekete_szego import bounds
from fekete_szego.mclass import SectorAlpha
from fekete_szego.verify import OracleGrid, oracle_max_fs, sharpness_gap, verify_mu_grid

s, k = SectorAlpha(5 * math.pi / 6), 2
mus = [-1.0, 0.0, 0.5, 1.5, 3.0]
grid = OracleGrid(resolution=40)

# %%
print(" mu     bound    oracle   grid-only  samples   extremal gap")
reports = verify_mu_grid(s, k, mus, n_samples=500, seed=42)
for mu, rep in zip(mus, reports):
    orc = oracle_max_fs(s, k, mu, grid)
    print(f"{mu:+.1f}  {rep.bound:.5f}  {orc.value:.5f}  {orc.grid_value:.5f}   "
          f"{rep.max_observed:.5f}  {sharpness_gap(s, k, mu):+.1e}")

# %%
# A deliberately weakened bound is caught: f1 rotations in the sample beat it.
weak = verify_mu_grid(s, k, [3.0], n_samples=500, bound_scale=0.9)[0]
print("violations against 0.9 x bound:", weak.violations)

# %%
# Where the maximum sits.
print(oracle_max_fs(s, k, 3.0, grid).argmax)
print(bounds.root_transform_fs_bound(s, k, 3.0))
