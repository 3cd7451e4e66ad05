"""
Fekete-Szego bounds across mu
=============================

Closed-form bounds for |b_{2k+1} - mu b_{k+1}^2| over k-th root transforms,
their thresholds, and the bi-univalent counterpart.
"""

# %%
import math

import numpy as np

from fekete_szego import bounds
from fekete_szego.mclass import SectorAlpha

mus = np.round(np.arange(-2, 3.01, 0.5), 12)

# %%
for alpha in (math.pi / 2, 2 * math.pi / 3, 5 * math.pi / 6):
    s = SectorAlpha(alpha)
    print(f"\nalpha = {alpha:.4f}")
    for k in (1, 2, 3):
        d1, d2 = bounds.transform_thresholds(s, k)
        vals = [bounds.root_transform_fs_bound(s, k, m).value for m in mus]
        print(f"  k={k} thresholds ({d1:+.3f}, {d2:+.3f}):", " ".join(f"{v:.3f}" for v in vals))

# %%
# The bound is the Caratheodory lemma rescaled: with an effective parameter
# mu', it equals ma_minda_bound(mu') / (4k).
s, k, mu = SectorAlpha(2.2), 2, 0.7
print(bounds.root_transform_fs_bound(s, k, mu).value,
      bounds.ma_minda_bound(bounds.mu_prime(s, k, mu)) / (4 * k))

# %%
# Near alpha = pi the class bound approaches the starlike-of-order-1/2 one.
near = SectorAlpha(math.pi - 1e-6)
print(max(abs(bounds.fs_bound(near, m).value - bounds.starlike_half_fs_bound(m).value)
          for m in mus))

# %%
# Bi-univalent bounds. The stated |a2| bound exceeds 1 past pi/2; the
# effective one caps it.
for alpha in (math.pi / 2, 2 * math.pi / 3, 5 * math.pi / 6):
    s = SectorAlpha(alpha)
    print(f"alpha={alpha:.4f}  |a2| <= {bounds.sigma_a2_bound(s):.4f} "
          f"(effective {bounds.sigma_a2_effective_bound(s):.4f})  |a3| <= {bounds.sigma_a3_bound(s):.4f}")
