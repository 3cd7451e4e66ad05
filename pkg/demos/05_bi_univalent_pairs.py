"""
Bi-univalent pairs
==================

A function belongs to M_Sigma(alpha) when it and its inverse both satisfy the
strip condition. Small perturbations of the identity are tested as pairs and
their coefficients compared with the bounds.
"""

# %%
import math

import numpy as np

from fekete_szego import bounds
from fekete_szego.mclass import SectorAlpha
from fekete_szego.transforms import inverse_transfer_coeffs
from fekete_szego.verify import (
    check_sigma_pair,
    perturbation_family,
    verify_sigma_bounds,
    verify_sigma_derivation,
)

s = SectorAlpha(2 * math.pi / 3)

# %%
f = perturbation_family("z2", 0.05)
pair = check_sigma_pair(f, s)
print("inverse coefficients:", np.round(pair.g.coeffs[:5].real, 8))
print(pair.to_dict())

# %%
# z f'/f - 1 for the inverse starts with -a2 and 3 a2^2 - 2 a3.
print(inverse_transfer_coeffs(f), (-f[2], 3 * f[2] ** 2 - 2 * f[3]))

# %%
eps = [r * np.exp(1j * t) for r in (0.01, 0.05) for t in np.linspace(0, 2 * np.pi, 6, endpoint=False)]
rep = verify_sigma_bounds(s, eps, np.linspace(-2, 3, 21))
print(f"{rep.n_accepted}/{rep.n_candidates} accepted, violations {rep.violations}, "
      f"max |a3 - mu a2^2| / bound {rep.max_fs_ratio:.3f}")

# %%
# The coefficient relations from the Caratheodory data of f and its inverse.
print(verify_sigma_derivation(2, 2, 2, SectorAlpha(math.pi / 2)))
print(bounds.sigma_fs_bound(s, 0.0))
