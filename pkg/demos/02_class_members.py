"""
Building members of M(alpha)
============================

A member is generated from a Caratheodory function p (positive real part)
through its Schwarz function w = (p - 1)/(p + 1) and the strip map B_alpha:
z f'/f = 1 + B_alpha(w). The strip test is then run numerically.
"""

# %%
import math

import numpy as np

from fekete_szego.mclass import (
    HerglotzMeasure,
    SectorAlpha,
    balpha_coeffs,
    caratheodory_series,
    extremal_f1,
    extremal_f2,
    member_from_measure,
    membership_check,
    sample_rng,
)

s = SectorAlpha(2 * math.pi / 3)
print(f"strip for alpha = 2pi/3: ({s.lower:.6f}, {s.upper:.6f})")
print("B_alpha coefficients:", np.round(balpha_coeffs(s, 6).coeffs.real, 6))

# %%
# A random finite Herglotz measure, its p and the resulting member.
h = HerglotzMeasure.sample(sample_rng(seed=42, index=7))
print(h.to_json())
p = caratheodory_series(h, 6)
f = member_from_measure(s, h, 128)
print("p1, p2      :", np.round(p.coeffs[1:3], 6))
print("a2 vs p1/2  :", np.round([f[2], p[1] / 2], 12))
print("a3 vs formula:", np.round([f[3], (p[2] - s.cos * p[1] ** 2 / 2) / 4], 12))

# %%
# The strip check works on the series of z f'/f, with a guard on the
# truncation tail. A high order keeps the tail small out to r = 0.95.
report = membership_check(f, s, margin=0.0)
print(report.to_json())

# %%
# The two extremal members: w = z and w = z^2.
for name, g in (("f1", extremal_f1(s, 128)), ("f2", extremal_f2(s, 128))):
    rep = membership_check(g, s)
    print(name, np.round(g.coeffs[1:5].real, 6), "accepted" if rep.accepted else "rejected",
          f"Re range [{rep.min_value:.4f}, {rep.max_value:.4f}]")
