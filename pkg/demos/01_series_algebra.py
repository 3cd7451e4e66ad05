"""
Truncated power series
======================

Every object in the package is a truncated complex power series. This walk
through builds a few by hand and checks the identities the rest of the code
leans on.
"""

# %%
import numpy as np

from fekete_szego.series import (
    NormalizedSeries,
    TruncatedSeries,
    compose,
    dilate,
    exp_series,
    log_series,
    revert,
    root_k,
    to_csv,
)

N = 10
z = TruncatedSeries.monomial(1, N)
one = TruncatedSeries.constant(1, N)

# %%
# Arithmetic truncates to the shorter operand. 1/(1 - z) is the geometric
# series, and multiplying it back recovers 1 exactly.
geometric = one / (one - z)
print("1/(1-z)      ", geometric.coeffs.real)
print("(1-z)/(1-z)  ", ((one - z) * geometric).coeffs.real)

# %%
# exp and log are inverse on series with the right constant terms.
u = TruncatedSeries([0, 0.5, -0.25, 0.1] + [0] * (N - 3))
print("exp(log(1+u)) - (1+u):", np.abs(exp_series(log_series(one + u)) - (one + u)).max())

# %%
# Reversion. The inverse of z/(1 - z) is w/(1 + w): alternating signs.
f = NormalizedSeries(geometric.coeffs * np.r_[0, np.ones(N)])
g = revert(f)
print("inverse of z/(1-z):", g.coeffs.real)
print("g(f(z)) - z       :", np.abs(compose(g, f).coeffs - z.coeffs).max())

# %%
# Square root of the Koebe function at z^2 is the odd function z/(1 - z^2).
koebe = NormalizedSeries(np.arange(N + 1, dtype=float))
print("sqrt(koebe(z^2)):", root_k(dilate(koebe, 2), 2).coeffs.real)

# %%
# Series serialize losslessly; 17 significant digits round-trip any double.
print(to_csv(TruncatedSeries([0, 1, 1 / 3])))
