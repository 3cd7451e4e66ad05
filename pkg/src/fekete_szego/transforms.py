"""k-th root transforms, inverse series and the Fekete-Szego functional."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .mclass import quotient_series
from .series import NormalizedSeries, SeriesError, dilate, revert, root_k

__all__ = [
    "CapacityError",
    "SeriesKernelError",
    "RootTransformSeries",
    "FSRecord",
    "kth_root_transform",
    "b_from_a",
    "fs_functional",
    "fs_record",
    "fs_records_to_csv",
    "inverse_closed_form",
    "invert_series",
    "inverse_transfer_coeffs",
]

SPARSITY_TOL = 1e-10
FS_CSV_HEADER = ["k", "mu", "b_low_re", "b_low_im", "b_high_re", "b_high_im", "value"]


class CapacityError(SeriesError):
    pass


class SeriesKernelError(AssertionError):
    """A closed-form cross-check of the series kernel failed."""


@dataclass(frozen=True)
class RootTransformSeries:
    """``F(z) = f(z^k)^(1/k) = z + b_{k+1} z^{k+1} + b_{2k+1} z^{2k+1} + ...``"""

    k: int
    F: NormalizedSeries

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.k > 1:
            n = np.arange(len(self.F))
            off = np.abs(self.F.coeffs[(n - 1) % self.k != 0])
            if off.size and off.max() > SPARSITY_TOL:
                raise SeriesError(
                    f"root transform has {off.max():.3g} at an exponent not = 1 mod {self.k}")

    @property
    def b_low(self) -> complex:
        return self.b(self.k + 1)

    @property
    def b_high(self) -> complex:
        return self.b(2 * self.k + 1)

    def b(self, n: int) -> complex:
        if n > self.F.order:
            raise CapacityError(f"coefficient {n} beyond order {self.F.order}")
        return complex(self.F[n])


def kth_root_transform(f: NormalizedSeries, k: int, N: int | None = None) -> RootTransformSeries:
    """``f(z^k)^(1/k)``, truncated to order ``N``.

    ``f`` of order ``n`` determines the transform up to order ``k (n - 1) + 1``;
    asking for more, or an input too short to reach ``b_{2k+1}``, raises
    :class:`CapacityError`. ``N`` defaults to the full capacity.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    capacity = k * (f.order - 1) + 1
    if N is None:
        N = capacity
    if N > capacity or capacity < 2 * k + 1:
        raise CapacityError(
            f"order {f.order} input gives a k={k} transform only to order {capacity}; "
            f"need {max(N, 2 * k + 1)}")
    F = root_k(dilate(f, k), k)
    return RootTransformSeries(k, NormalizedSeries(F.truncate(N)))


def b_from_a(a2: complex, a3: complex, k: int) -> tuple[complex, complex]:
    """``(b_{k+1}, b_{2k+1}) = (a2/k, a3/k - (k-1) a2^2 / (2k^2))``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return a2 / k, a3 / k - 0.5 * (k - 1) / k**2 * a2 * a2


def fs_functional(b_low, b_high, mu):
    """``|b_high - mu b_low^2|``; vectorizes over numpy arrays."""
    return np.abs(b_high - mu * b_low * b_low)


@dataclass(frozen=True)
class FSRecord:
    k: int
    mu: float
    b_low: complex
    b_high: complex
    value: float

    def to_row(self) -> list[str]:
        return [str(self.k)] + [format(float(x), ".17g") for x in (
            self.mu, self.b_low.real, self.b_low.imag, self.b_high.real, self.b_high.imag,
            self.value)]


def fs_record(F: RootTransformSeries, mu: float) -> FSRecord:
    lo, hi = F.b_low, F.b_high
    return FSRecord(F.k, float(mu), lo, hi, float(fs_functional(lo, hi, mu)))


def fs_records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FS_CSV_HEADER)
    for r in records:
        w.writerow(r.to_row())
    return buf.getvalue()


def inverse_closed_form(a2: complex, a3: complex, a4: complex) -> tuple[complex, complex, complex]:
    """Degree 2..4 coefficients of the inverse of ``z + a2 z^2 + a3 z^3 + a4 z^4 + ...``."""
    return -a2, 2 * a2**2 - a3, -(5 * a2**3 - 5 * a2 * a3 + a4)


def invert_series(f: NormalizedSeries, tol: float = 1e-10) -> NormalizedSeries:
    """Inverse series ``g`` with ``g(f(z)) = z``, checked against the low-degree closed forms."""
    g = revert(f)
    c = np.zeros(5, dtype=complex)
    m = min(f.order, 4)
    c[: m + 1] = f.coeffs[: m + 1]
    expected = inverse_closed_form(c[2], c[3], c[4])
    for deg in range(2, m + 1):
        err = abs(g[deg] - expected[deg - 2])
        if err > tol * max(1.0, abs(expected[deg - 2])):
            raise SeriesKernelError(
                f"reverted coefficient {deg} off by {err:.3g} from its closed form")
    return g


def inverse_transfer_coeffs(f: NormalizedSeries) -> tuple[complex, complex]:
    """First two coefficients of ``w g'(w)/g(w) - 1`` for ``g`` the inverse of ``f``.

    For a normalized ``f`` these are ``(-a2, 3 a2^2 - 2 a3)``.
    """
    if f.order < 3:
        raise CapacityError("need order >= 3")
    q = quotient_series(invert_series(f))
    return complex(q[1]), complex(q[2])
